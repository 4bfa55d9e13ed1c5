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

#include "certun/privacy/accountant.h"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "certun/status.h"
#include "kahan.h"

namespace certun {
namespace {

constexpr double kStepSlack = 1e-12;

bool PositiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

absl::Status CheckCommon(const ProblemConstants& pc, const NoiseSchedule& ns,
                         Regime regime) {
  CERTUN_RETURN_IF_ERROR(pc.ValidateFor(regime));
  return ns.Validate(pc, regime);
}

// Strongly convex bounds need C_LSI > σ²/m and
// η ≤ min(2/m·(1 − σ²/(m·C_LSI)), 1/L).
absl::Status CheckStronglyConvexLsi(const ProblemConstants& pc,
                                    const NoiseSchedule& ns, double lsi) {
  const double m = pc.strong_convexity;
  const double s2 = ns.noise_std * ns.noise_std;
  if (!(lsi > s2 / m)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "strongly convex bound requires C_LSI > sigma^2/m = ", s2 / m,
        ", got ", lsi));
  }
  const double limit =
      std::min(2.0 / m * (1.0 - s2 / (m * lsi)), 1.0 / pc.smoothness);
  if (ns.step > limit * (1.0 + kStepSlack)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "step ", ns.step, " exceeds the strongly convex limit ", limit));
  }
  return absl::OkStatus();
}

// Cap, or nullopt when it is not representable.
std::optional<double> OptionalCap(const ProblemConstants& pc, double step,
                                  double xi) {
  absl::StatusOr<double> cap = LsiCap(pc.radius, pc.lipschitz, step, xi);
  if (!cap.ok()) return std::nullopt;
  return *cap;
}

absl::Status CapExhausted(const ProblemConstants& pc, double step, double xi,
                          absl::string_view what) {
  absl::StatusOr<double> cap = LsiCap(pc.radius, pc.lipschitz, step, xi);
  if (cap.ok()) {
    return absl::InternalError(absl::StrCat(what, ": non-finite LSI constant"));
  }
  return CapOverflowError(CapOverflowExponent(cap.status()).value_or(0.0),
                          what);
}

double Contraction(const ProblemConstants& pc, const NoiseSchedule& ns,
                   Regime regime) {
  if (regime != Regime::kNonConvex) return 1.0;
  const double a = 1.0 + ns.step * pc.smoothness;
  return a * a;
}

}  // namespace

absl::StatusOr<double> LsiCap(double radius, double clip_norm, double step,
                              double half_step_noise) {
  if (!std::isfinite(radius) || radius < 0.0 || !std::isfinite(clip_norm) ||
      clip_norm < 0.0 || !std::isfinite(step) || step < 0.0) {
    return absl::InvalidArgumentError(
        "LSI cap needs finite non-negative R, M and step");
  }
  if (!PositiveFinite(half_step_noise)) {
    return absl::InvalidArgumentError("LSI cap needs positive noise variance");
  }
  const double r = radius + step * clip_norm;
  const double r2 = 4.0 * r * r;
  const double exponent = r2 / half_step_noise;
  const double prefactor = 6.0 * (r2 + half_step_noise);
  if (!std::isfinite(exponent) || !std::isfinite(prefactor) ||
      exponent + std::log(prefactor) >= std::log(DBL_MAX)) {
    return CapOverflowError(exponent, "LSI cap");
  }
  const double value = prefactor * std::exp(exponent);
  if (!std::isfinite(value)) return CapOverflowError(exponent, "LSI cap");
  return value;
}

absl::StatusOr<LsiTrace> LsiUnlearnTrace(const ProblemConstants& pc,
                                         const NoiseSchedule& ns,
                                         Regime regime, double initial_lsi,
                                         int64_t steps) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, regime));
  if (!PositiveFinite(initial_lsi)) {
    return absl::InvalidArgumentError("initial LSI constant must be positive");
  }
  if (steps < 0) return absl::InvalidArgumentError("steps must be >= 0");

  const double xi = 2.0 * ns.step * ns.noise_std * ns.noise_std;
  LsiTrace trace;
  trace.cap = OptionalCap(pc, ns.step, xi);
  trace.constants.reserve(static_cast<size_t>(steps) + 1);
  trace.constants.push_back(initial_lsi);

  if (regime == Regime::kStronglyConvex) {
    CERTUN_RETURN_IF_ERROR(CheckStronglyConvexLsi(pc, ns, initial_lsi));
    trace.constants.resize(static_cast<size_t>(steps) + 1, initial_lsi);
    return trace;
  }

  const double a = Contraction(pc, ns, regime);
  double c = initial_lsi;
  for (int64_t k = 0; k < steps; ++k) {
    c = a * c + xi;
    if (trace.cap) c = std::min(c, *trace.cap);
    if (!std::isfinite(c)) {
      return CapExhausted(pc, ns.step, xi, "unlearning LSI trace");
    }
    trace.constants.push_back(c);
  }
  return trace;
}

absl::StatusOr<double> UnlearnRate(const ProblemConstants& pc,
                                   const NoiseSchedule& ns, Regime regime,
                                   double lsi_constant) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, regime));
  if (!PositiveFinite(lsi_constant)) {
    return absl::InvalidArgumentError("LSI constant must be positive");
  }
  const double xi = 2.0 * ns.step * ns.noise_std * ns.noise_std;
  switch (regime) {
    case Regime::kStronglyConvex:
      CERTUN_RETURN_IF_ERROR(CheckStronglyConvexLsi(pc, ns, lsi_constant));
      return xi / lsi_constant;
    case Regime::kConvex:
      return std::log1p(xi / lsi_constant);
    case Regime::kNonConvex:
      return std::log1p(xi / (Contraction(pc, ns, regime) * lsi_constant));
  }
  return absl::InternalError("unknown regime");
}

absl::StatusOr<double> UnlearnDecayTotal(const ProblemConstants& pc,
                                         const NoiseSchedule& ns,
                                         Regime regime, double initial_lsi,
                                         int64_t steps) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, regime));
  if (!PositiveFinite(initial_lsi)) {
    return absl::InvalidArgumentError("initial LSI constant must be positive");
  }
  if (steps < 0) return absl::InvalidArgumentError("steps must be >= 0");
  if (steps == 0) return 0.0;

  if (regime == Regime::kStronglyConvex) {
    CERTUN_ASSIGN_OR_RETURN(double rate,
                            UnlearnRate(pc, ns, regime, initial_lsi));
    return static_cast<double>(steps) * rate;
  }

  const double xi = 2.0 * ns.step * ns.noise_std * ns.noise_std;
  const std::optional<double> cap = OptionalCap(pc, ns.step, xi);
  const double a = Contraction(pc, ns, regime);
  internal::KahanSum total;
  double c = initial_lsi;
  for (int64_t k = 0; k < steps; ++k) {
    total.Add(std::log1p(xi / (a * c)));
    c = a * c + xi;
    if (cap) {
      if (c >= *cap) {
        // Every remaining step has the same rate once the cap binds.
        const double capped = std::log1p(xi / (a * *cap));
        total.Add(static_cast<double>(steps - k - 1) * capped);
        break;
      }
    } else if (!std::isfinite(c)) {
      if (k + 1 == steps) break;
      return CapExhausted(pc, ns.step, xi, "unlearning LSI trace");
    }
  }
  return total.value();
}

absl::StatusOr<RenyiBound> UnlearnEpsilon(const RenyiBound& learn_epsilon,
                                          const ProblemConstants& pc,
                                          const NoiseSchedule& ns,
                                          Regime regime, double initial_lsi,
                                          int64_t steps) {
  CERTUN_ASSIGN_OR_RETURN(
      double total, UnlearnDecayTotal(pc, ns, regime, initial_lsi, steps));
  return learn_epsilon.Decayed(total);
}

absl::StatusOr<RenyiBound> LearnEpsilon0(const ProblemConstants& pc,
                                         const NoiseSchedule& ns,
                                         Regime regime, int64_t group_size,
                                         Horizon iters, double initial_lsi) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, regime));
  if (group_size < 0) {
    return absl::InvalidArgumentError("group size must be >= 0");
  }
  if (!PositiveFinite(initial_lsi)) {
    return absl::InvalidArgumentError("initial LSI constant must be positive");
  }
  if (!iters.infinite() && iters.steps() < 0) {
    return absl::InvalidArgumentError("learning iterations must be >= 0");
  }
  if (group_size == 0) return RenyiBound();

  const double s = static_cast<double>(group_size);
  const double n = static_cast<double>(pc.n);
  const double M = pc.lipschitz;
  const double s2 = ns.noise_std * ns.noise_std;
  const double eta = ns.step;

  if (regime == Regime::kStronglyConvex) {
    CERTUN_RETURN_IF_ERROR(CheckStronglyConvexLsi(pc, ns, initial_lsi));
    const double m = pc.strong_convexity;
    double factor = 1.0;
    if (!iters.infinite()) {
      factor = -std::expm1(-m * eta * static_cast<double>(iters.steps()));
    }
    return RenyiBound::Linear(4.0 * s * s * M * M / (m * s2 * n * n) * factor);
  }

  const double xi = eta * s2;
  const double lead = 2.0 * eta * s * s * M * M / (s2 * n * n);
  if (iters.infinite()) {
    CERTUN_ASSIGN_OR_RETURN(double cap, LsiCap(pc.radius, M, eta, xi));
    return RenyiBound::Linear(lead * cap / xi);
  }

  // acc_{t+1} = q_t·(acc_t + 1) with q_t = (1 + ησ²/C_{t,1})⁻¹ unrolls to
  // Σ_t Π_{t'≥t} q_{t'}.
  const std::optional<double> cap = OptionalCap(pc, eta, xi);
  const double a = Contraction(pc, ns, regime);
  double c = initial_lsi;
  double acc = 0.0;
  for (int64_t t = 0; t < iters.steps(); ++t) {
    double c1 = a * c + xi;
    if (cap) c1 = std::min(c1, *cap);
    if (!std::isfinite(c1)) {
      return CapExhausted(pc, eta, xi, "learning LSI recursion");
    }
    acc = (acc + 1.0) / (1.0 + xi / c1);
    c = c1 + xi;
    if (cap) c = std::min(c, *cap);
  }
  return RenyiBound::Linear(lead * acc);
}

absl::StatusOr<double> LearnTerminalLsi(const ProblemConstants& pc,
                                        const NoiseSchedule& ns,
                                        Regime regime, Horizon iters,
                                        double initial_lsi) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, regime));
  if (!PositiveFinite(initial_lsi)) {
    return absl::InvalidArgumentError("initial LSI constant must be positive");
  }
  if (regime == Regime::kStronglyConvex) return initial_lsi;

  const double xi = ns.step * ns.noise_std * ns.noise_std;
  if (iters.infinite()) {
    return LsiCap(pc.radius, pc.lipschitz, ns.step, xi);
  }
  const std::optional<double> cap = OptionalCap(pc, ns.step, xi);
  const double a = Contraction(pc, ns, regime);
  double c = initial_lsi;
  for (int64_t t = 0; t < iters.steps(); ++t) {
    c = a * c + 2.0 * xi;
    if (cap) c = std::min(c, *cap);
    if (!std::isfinite(c)) {
      return CapExhausted(pc, ns.step, xi, "learning LSI recursion");
    }
    if (cap && c == *cap) break;
  }
  return c;
}

double DefaultInitialLsi(const ProblemConstants& pc, const NoiseSchedule& ns,
                         Regime regime) {
  const double s2 = ns.noise_std * ns.noise_std;
  if (regime == Regime::kStronglyConvex) {
    return 2.0 * s2 / pc.strong_convexity;
  }
  return ns.step * s2;
}

double WeakTriangle(double alpha, double first_at_2alpha,
                    double second_at_2alpha) {
  return (alpha - 0.5) / (alpha - 1.0) * (first_at_2alpha + second_at_2alpha);
}

double AdjacencyBoundUnbiased(double loss_sensitivity, int64_t n) {
  return 2.0 * loss_sensitivity / static_cast<double>(n);
}

absl::StatusOr<RetrainSaving> RetrainSavingLowerBound(
    const ProblemConstants& pc, const NoiseSchedule& ns, double alpha) {
  CERTUN_RETURN_IF_ERROR(CheckCommon(pc, ns, Regime::kStronglyConvex));
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError("alpha must be > 1");
  }
  const double m = pc.strong_convexity;
  const double n = static_cast<double>(pc.n);
  const double M = pc.lipschitz;
  const double ratio = (m * m * n * n) / (16.0 * M * M);
  RetrainSaving out;
  out.vacuous = ratio <= 1.0;
  out.iterations = alpha / (m * ns.step) * std::log(ratio);
  return out;
}

}  // namespace certun
