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

#include "certun/d2d/d2d.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "certun/status.h"

namespace certun {
namespace {

absl::Status CheckCommon(double epsilon, double delta, double lipschitz,
                         double m, int64_t n, double L) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(lipschitz > 0.0)) {
    return absl::InvalidArgumentError("Lipschitz constant must be positive");
  }
  if (!(m > 0.0) || !(L >= m)) {
    return absl::InvalidArgumentError("D2D needs 0 < m <= L");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  return absl::OkStatus();
}

// √(a+x) − √(a+y) for x > y without cancellation.
double SqrtGap(double a, double x, double y) {
  return (x - y) / (std::sqrt(a + x) + std::sqrt(a + y));
}

// γ^I / (1 − γ^I).
double GeometricRatio(double gamma, int64_t iters) {
  if (gamma == 0.0) return 0.0;
  const double log_pow = static_cast<double>(iters) * std::log(gamma);
  return std::exp(log_pow) / -std::expm1(log_pow);
}

Eigen::MatrixXd AddNoise(const Eigen::MatrixXd& w, double noise_std,
                         Rng& rng) {
  Eigen::MatrixXd out = w;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) += noise_std * rng.Normal();
    }
  }
  return out;
}

}  // namespace

double D2DContraction(double smoothness, double strong_convexity) {
  return (smoothness - strong_convexity) / (smoothness + strong_convexity);
}

double D2DStepSize(double smoothness, double strong_convexity) {
  return 2.0 / (smoothness + strong_convexity);
}

absl::StatusOr<double> D2DSigmaThm9(double epsilon, double delta,
                                    int64_t iters, double lipschitz,
                                    double strong_convexity, int64_t n,
                                    double smoothness) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(epsilon, delta, lipschitz,
                                     strong_convexity, n, smoothness));
  if (iters < 1) return absl::InvalidArgumentError("iters must be >= 1");
  const double gamma = D2DContraction(smoothness, strong_convexity);
  const double gap = SqrtGap(-std::log(delta), epsilon, 0.0);
  return 4.0 * std::sqrt(2.0) * lipschitz * GeometricRatio(gamma, iters) /
         (strong_convexity * static_cast<double>(n) * gap);
}

absl::StatusOr<D2DThm28> D2DSigmaThm28(double epsilon, double delta,
                                       double lipschitz,
                                       double strong_convexity, int64_t n,
                                       double smoothness, int64_t dim) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(epsilon, delta, lipschitz,
                                     strong_convexity, n, smoothness));
  if (dim < 1) return absl::InvalidArgumentError("dim must be >= 1");
  const double gamma = D2DContraction(smoothness, strong_convexity);
  const double b = 2.0 * std::log(2.0 / delta);

  const double arg = std::sqrt(2.0 * static_cast<double>(dim)) /
                     (1.0 - gamma) / SqrtGap(b, epsilon, 0.0);
  if (!(arg > 0.0) || !std::isfinite(arg)) {
    return InfeasibleBudgetError(absl::StrCat(
        "iteration bound has non-positive log argument ", arg));
  }
  D2DThm28 out;
  out.min_iters = gamma == 0.0 ? 0.0 : std::log(arg) / -std::log(gamma);
  if (!std::isfinite(out.min_iters)) {
    return InfeasibleBudgetError("iteration bound is not finite");
  }
  out.iters = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(out.min_iters)));
  out.sigma = 8.0 * lipschitz * GeometricRatio(gamma, out.iters) /
              (strong_convexity * static_cast<double>(n) *
               SqrtGap(b, 3.0 * epsilon, 2.0 * epsilon));
  return out;
}

int64_t D2DRequestIters(const D2DThm28& calibration, int64_t request,
                        double delta, int64_t dim, double smoothness,
                        double strong_convexity) {
  const double gamma = D2DContraction(smoothness, strong_convexity);
  if (gamma == 0.0) return calibration.iters;
  const double inner = std::log(4.0 * static_cast<double>(dim) *
                                static_cast<double>(request) / delta);
  const double extra = std::log(inner) / -std::log(gamma);
  return calibration.iters +
         std::max<int64_t>(0, static_cast<int64_t>(std::ceil(extra)));
}

ModelParams D2DTrain(const Dataset& data, const Objective& objective,
                     int64_t iters, double step, double radius,
                     const ModelParams& init) {
  ModelParams params = init;
  for (int64_t t = 0; t < iters; ++t) {
    params.weights = ProjectBall(
        params.weights - step * objective.Gradient(params.weights, data),
        radius);
  }
  return params;
}

D2DState D2DInitialState(const ModelParams& trained, double noise_std,
                         bool internal_state, Rng& rng) {
  D2DState state;
  state.published = ModelParams{AddNoise(trained.weights, noise_std, rng)};
  if (internal_state) state.internal = trained;
  return state;
}

D2DState D2DUnlearn(const D2DState& state, const Dataset& new_data,
                    const Objective& objective, int64_t iters, double step,
                    double noise_std, double radius, bool internal_state,
                    Rng& rng) {
  const ModelParams& start = internal_state && state.internal
                                 ? *state.internal
                                 : state.published;
  const ModelParams tuned =
      D2DTrain(new_data, objective, iters, step, radius, start);
  return D2DInitialState(tuned, noise_std, internal_state, rng);
}

}  // namespace certun
