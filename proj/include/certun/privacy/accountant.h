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

#ifndef CERTUN_PRIVACY_ACCOUNTANT_H_
#define CERTUN_PRIVACY_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "certun/privacy/problem_constants.h"
#include "certun/privacy/renyi_bound.h"

namespace certun {

// Upper bound on the LSI constant of μ * N(0, ξI) for μ supported on the
// radius-(R + ηM) ball: 6(4(R+ηM)² + ξ)·exp(4(R+ηM)²/ξ).
//
// Fails with ErrorKind::kCapOverflow (carrying the exponent) when the value
// does not fit in a double; at realistic radii and noise levels this is the
// common case and means the capped recursions give no usable bound.
absl::StatusOr<double> LsiCap(double radius, double clip_norm, double step,
                              double half_step_noise);

// LSI constants C_0..C_K of the unlearning chain.
struct LsiTrace {
  std::vector<double> constants;
  // Cap C̃ = LsiCap(R, M, η, 2ησ²); nullopt when it exceeds double range.
  std::optional<double> cap;
};

// Unlearning-chain recursion for the regime:
//   non-convex:       C_{k+1} = min((1+ηL)²C_k + 2ησ², C̃)
//   convex:           C_{k+1} = min(C_k + 2ησ², C̃)
//   strongly convex:  C_k = C_0 (requires C_0 > σ²/m)
// Fails with kCapOverflow only when an uncapped entry leaves double range
// and the cap itself is not representable.
absl::StatusOr<LsiTrace> LsiUnlearnTrace(const ProblemConstants& constants,
                                         const NoiseSchedule& schedule,
                                         Regime regime, double initial_lsi,
                                         int64_t steps);

// Per-step privacy recuperation rate R_k for an iterate with LSI constant
// `lsi_constant` (C_k, or C_LSI in the strongly convex regime).
absl::StatusOr<double> UnlearnRate(const ProblemConstants& constants,
                                   const NoiseSchedule& schedule,
                                   Regime regime, double lsi_constant);

// Σ_{k<steps} R_k along the unlearning chain started at `initial_lsi`.
absl::StatusOr<double> UnlearnDecayTotal(const ProblemConstants& constants,
                                         const NoiseSchedule& schedule,
                                         Regime regime, double initial_lsi,
                                         int64_t steps);

// α ↦ exp(−(1/α)·Σ_{k<steps} R_k)·ε₀(α).
absl::StatusOr<RenyiBound> UnlearnEpsilon(const RenyiBound& learn_epsilon,
                                          const ProblemConstants& constants,
                                          const NoiseSchedule& schedule,
                                          Regime regime, double initial_lsi,
                                          int64_t steps);

// RDP loss ε₀(α) of the learning chain for datasets differing in up to
// `group_size` entries, after `iters` steps from a C_0-LSI initialization.
//
// Strongly convex: 4αS²M²/(mσ²n²)·(1 − exp(−mηT)), and the T-uniform bound
// for Horizon::Infinite().
// Convex / non-convex: (2αηS²M²/(σ²n²))·Σ_t Π_{t'≥t}(1 + ησ²/C_{t',1})⁻¹
// with the capped C_{t,1}, C_{t+1} recursions (cap C̄ = LsiCap(R,M,η,ησ²)).
// The infinite horizon uses the exact limit of that sum, C̄/(ησ²), and so
// needs a representable cap.
absl::StatusOr<RenyiBound> LearnEpsilon0(const ProblemConstants& constants,
                                         const NoiseSchedule& schedule,
                                         Regime regime, int64_t group_size,
                                         Horizon iters, double initial_lsi);

// LSI constant of the learned distribution after `iters` steps: C_0 itself
// in the strongly convex regime, C_T from the learning recursion otherwise.
// This is the default starting constant for the unlearning chain.
absl::StatusOr<double> LearnTerminalLsi(const ProblemConstants& constants,
                                        const NoiseSchedule& schedule,
                                        Regime regime, Horizon iters,
                                        double initial_lsi);

// Default C_0 for the learning chain: 2σ²/m when strongly convex, ησ²
// otherwise.
double DefaultInitialLsi(const ProblemConstants& constants,
                         const NoiseSchedule& schedule, Regime regime);

// d_α(P,R) ≤ ((α−½)/(α−1))·(d_{2α}(P,Q) + d_{2α}(Q,R)).
double WeakTriangle(double alpha, double first_at_2alpha,
                    double second_at_2alpha);

// Rényi difference bound 2F/n between the unbiased limits of adjacent
// datasets whose per-sample losses differ by at most F.
double AdjacencyBoundUnbiased(double loss_sensitivity, int64_t n);

struct RetrainSaving {
  double iterations = 0.0;
  // True when m²n² ≤ 16M², where the bound carries no saving.
  bool vacuous = false;
};

// Lower bound (α/(mη))·log(m²n²/(16M²)) on the iterations saved versus
// retraining. Strongly convex only.
absl::StatusOr<RetrainSaving> RetrainSavingLowerBound(
    const ProblemConstants& constants, const NoiseSchedule& schedule,
    double alpha);

}  // namespace certun

#endif  // CERTUN_PRIVACY_ACCOUNTANT_H_
