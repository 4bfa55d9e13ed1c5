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

#ifndef CERTUN_PRIVACY_CALIBRATION_H_
#define CERTUN_PRIVACY_CALIBRATION_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "certun/privacy/accountant.h"
#include "certun/privacy/conversion.h"
#include "certun/privacy/problem_constants.h"

namespace certun {

inline constexpr int64_t kDefaultMaxUnlearnSteps = 1'000'000;

// Everything the accountant needs besides the removal count and step count.
struct AccountingContext {
  ProblemConstants constants;
  Regime regime = Regime::kStronglyConvex;
  // step, noise_std and learn_iters are used; unlearn_iters is ignored.
  NoiseSchedule schedule;
  // C_0 of the learning chain; DefaultInitialLsi() when unset.
  std::optional<double> learn_initial_lsi;
};

// ε₀ for a group of `group_size` removals together with the LSI constant the
// unlearning chain starts from.
struct LearnedState {
  RenyiBound epsilon0;
  double unlearn_initial_lsi = 0.0;
};

absl::StatusOr<LearnedState> PrepareLearnedState(const AccountingContext& ctx,
                                                 int64_t group_size);

// (ε, δ) after `steps` unlearning steps for a single batch of removals.
absl::StatusOr<DpConversion> SingleRequestEpsilon(const AccountingContext& ctx,
                                                  int64_t group_size,
                                                  int64_t steps, double delta);

// Smallest K ≥ 0 whose single-request guarantee is at most `target_epsilon`.
// Fails with ErrorKind::kBudgetUnreachable when K = max_steps does not
// suffice.
absl::StatusOr<int64_t> FindMinK(double target_epsilon, double delta,
                                 const AccountingContext& ctx,
                                 int64_t group_size,
                                 int64_t max_steps = kDefaultMaxUnlearnSteps);

struct SigmaSearchOptions {
  double lower = 1e-6;
  double upper = 100.0;
  // Stop once (hi − lo)/lo falls below this.
  double relative_tolerance = 1e-4;
};

struct SigmaCalibration {
  double sigma = 0.0;
  // FindMinK at the returned σ; always ≤ the step budget.
  int64_t steps = 0;
};

// Smallest σ (to the search tolerance) for which FindMinK stays within
// `step_budget`. Bisects on feasibility and returns the feasible end.
// Fails with ErrorKind::kNoFeasibleSigma when the upper end is infeasible.
absl::StatusOr<SigmaCalibration> BinarySearchSigma(
    double target_epsilon, double delta, int64_t step_budget,
    const AccountingContext& ctx, int64_t group_size,
    const SigmaSearchOptions& options = {});

}  // namespace certun

#endif  // CERTUN_PRIVACY_CALIBRATION_H_
