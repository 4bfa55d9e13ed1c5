// Copyright 2026 The certun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "certun/privacy/problem_constants.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace certun {
namespace {

// Relative slack on step-size upper limits so that η = 1/L computed in
// floating point is accepted.
constexpr double kStepSlack = 1e-12;

bool PositiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

absl::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kStronglyConvex:
      return "strongly-convex";
    case Regime::kConvex:
      return "convex";
    case Regime::kNonConvex:
      return "non-convex";
  }
  return "unknown";
}

absl::StatusOr<Regime> ParseRegime(absl::string_view name) {
  if (name == "strongly-convex" || name == "sc") return Regime::kStronglyConvex;
  if (name == "convex") return Regime::kConvex;
  if (name == "non-convex" || name == "nonconvex") return Regime::kNonConvex;
  return absl::InvalidArgumentError(absl::StrCat("unknown regime '", name, "'"));
}

absl::Status ProblemConstants::Validate() const {
  if (!PositiveFinite(smoothness)) {
    return absl::InvalidArgumentError("smoothness L must be positive");
  }
  if (!std::isfinite(strong_convexity) || strong_convexity < 0.0) {
    return absl::InvalidArgumentError("strong convexity m must be >= 0");
  }
  if (strong_convexity > smoothness) {
    return absl::InvalidArgumentError(absl::StrCat(
        "strong convexity m=", strong_convexity, " exceeds smoothness L=",
        smoothness));
  }
  if (!PositiveFinite(lipschitz)) {
    return absl::InvalidArgumentError("Lipschitz constant M must be positive");
  }
  if (!PositiveFinite(radius)) {
    return absl::InvalidArgumentError("radius R must be positive");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (dim < 1) return absl::InvalidArgumentError("dim must be >= 1");
  if (!std::isfinite(reg) || reg < 0.0) {
    return absl::InvalidArgumentError("regularization must be >= 0");
  }
  return absl::OkStatus();
}

absl::Status ProblemConstants::ValidateFor(Regime regime) const {
  if (absl::Status s = Validate(); !s.ok()) return s;
  switch (regime) {
    case Regime::kStronglyConvex:
      if (strong_convexity <= 0.0) {
        return absl::InvalidArgumentError(
            "strongly convex regime requires m > 0");
      }
      break;
    case Regime::kConvex:
      if (strong_convexity != 0.0) {
        return absl::InvalidArgumentError("convex regime requires m = 0");
      }
      break;
    case Regime::kNonConvex:
      break;
  }
  return absl::OkStatus();
}

ProblemConstants ProblemConstants::BinaryLogistic(int64_t n, int64_t dim,
                                                  double reg, double radius) {
  return ProblemConstants{.smoothness = 0.25 + reg,
                          .strong_convexity = reg,
                          .lipschitz = 1.0,
                          .radius = radius,
                          .n = n,
                          .dim = dim,
                          .reg = reg};
}

ProblemConstants ProblemConstants::MulticlassLogistic(int64_t n, int64_t dim,
                                                      double reg,
                                                      double radius) {
  return ProblemConstants{.smoothness = 1.0 + reg,
                          .strong_convexity = reg,
                          .lipschitz = 2.0,
                          .radius = radius,
                          .n = n,
                          .dim = dim,
                          .reg = reg};
}

absl::Status NoiseSchedule::Validate(const ProblemConstants& constants,
                                     Regime regime) const {
  if (!PositiveFinite(step)) {
    return absl::InvalidArgumentError("step size must be positive");
  }
  if (!PositiveFinite(noise_std)) {
    return absl::InvalidArgumentError("noise std sigma must be positive");
  }
  if (!learn_iters.infinite() && learn_iters.steps() < 0) {
    return absl::InvalidArgumentError("learning iterations must be >= 0");
  }
  if (unlearn_iters < 0) {
    return absl::InvalidArgumentError("unlearning iterations must be >= 0");
  }
  const double L = constants.smoothness;
  switch (regime) {
    case Regime::kStronglyConvex: {
      const double limit =
          std::min(1.0 / constants.strong_convexity, 1.0 / L);
      if (step > limit * (1.0 + kStepSlack)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "strongly convex regime requires step <= min(1/m, 1/L) = ", limit,
            ", got ", step));
      }
      break;
    }
    case Regime::kConvex:
      if (step > (2.0 / L) * (1.0 + kStepSlack)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "convex regime requires step <= 2/L = ", 2.0 / L, ", got ", step));
      }
      break;
    case Regime::kNonConvex:
      break;
  }
  return absl::OkStatus();
}

}  // namespace certun
