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

#include "certun/privacy/calibration.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "certun/status.h"
#include "least_k.h"

namespace certun {
namespace {

AccountingContext WithSigma(const AccountingContext& ctx, double sigma) {
  AccountingContext out = ctx;
  out.schedule.noise_std = sigma;
  return out;
}

}  // namespace

absl::StatusOr<LearnedState> PrepareLearnedState(const AccountingContext& ctx,
                                                 int64_t group_size) {
  const ProblemConstants& pc = ctx.constants;
  const NoiseSchedule& ns = ctx.schedule;
  const double c0 = ctx.learn_initial_lsi.value_or(
      DefaultInitialLsi(pc, ns, ctx.regime));
  LearnedState state;
  CERTUN_ASSIGN_OR_RETURN(state.epsilon0,
                          LearnEpsilon0(pc, ns, ctx.regime, group_size,
                                        ns.learn_iters, c0));
  CERTUN_ASSIGN_OR_RETURN(
      state.unlearn_initial_lsi,
      LearnTerminalLsi(pc, ns, ctx.regime, ns.learn_iters, c0));
  return state;
}

absl::StatusOr<DpConversion> SingleRequestEpsilon(const AccountingContext& ctx,
                                                  int64_t group_size,
                                                  int64_t steps, double delta) {
  CERTUN_ASSIGN_OR_RETURN(LearnedState state,
                          PrepareLearnedState(ctx, group_size));
  CERTUN_ASSIGN_OR_RETURN(
      RenyiBound bound,
      UnlearnEpsilon(state.epsilon0, ctx.constants, ctx.schedule, ctx.regime,
                     state.unlearn_initial_lsi, steps));
  return RdpToDp(bound, delta);
}

absl::StatusOr<int64_t> FindMinK(double target_epsilon, double delta,
                                 const AccountingContext& ctx,
                                 int64_t group_size, int64_t max_steps) {
  if (!(target_epsilon > 0.0) || !std::isfinite(target_epsilon)) {
    return absl::InvalidArgumentError("target epsilon must be positive");
  }
  if (max_steps < 0) {
    return absl::InvalidArgumentError("max steps must be >= 0");
  }
  CERTUN_ASSIGN_OR_RETURN(LearnedState state,
                          PrepareLearnedState(ctx, group_size));

  auto meets = [&](int64_t k) -> absl::StatusOr<bool> {
    CERTUN_ASSIGN_OR_RETURN(
        RenyiBound bound,
        UnlearnEpsilon(state.epsilon0, ctx.constants, ctx.schedule,
                       ctx.regime, state.unlearn_initial_lsi, k));
    CERTUN_ASSIGN_OR_RETURN(DpConversion dp, RdpToDp(bound, delta));
    return dp.epsilon <= target_epsilon;
  };

  CERTUN_ASSIGN_OR_RETURN(std::optional<int64_t> k,
                          internal::LeastK(meets, max_steps));
  if (!k) {
    return BudgetUnreachableError(absl::StrCat(
        "epsilon ", target_epsilon, " not reached within ", max_steps,
        " unlearning steps"));
  }
  return *k;
}

absl::StatusOr<SigmaCalibration> BinarySearchSigma(
    double target_epsilon, double delta, int64_t step_budget,
    const AccountingContext& ctx, int64_t group_size,
    const SigmaSearchOptions& options) {
  if (!(options.lower > 0.0) || !(options.upper > options.lower) ||
      !(options.relative_tolerance > 0.0)) {
    return absl::InvalidArgumentError("invalid sigma search range");
  }
  if (step_budget < 0) {
    return absl::InvalidArgumentError("step budget must be >= 0");
  }

  // Feasible means FindMinK succeeds within the budget; any other error is
  // propagated.
  auto steps_at = [&](double sigma) -> absl::StatusOr<int64_t> {
    return FindMinK(target_epsilon, delta, WithSigma(ctx, sigma), group_size,
                    step_budget);
  };

  absl::StatusOr<int64_t> at_hi = steps_at(options.upper);
  if (!at_hi.ok()) {
    if (HasErrorKind(at_hi.status(), ErrorKind::kBudgetUnreachable)) {
      return NoFeasibleSigmaError(absl::StrCat(
          "sigma=", options.upper, " does not reach epsilon ", target_epsilon,
          " within ", step_budget, " steps"));
    }
    return at_hi.status();
  }

  double lo = options.lower;
  double hi = options.upper;
  int64_t hi_steps = *at_hi;
  while ((hi - lo) / lo >= options.relative_tolerance) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<int64_t> k = steps_at(mid);
    if (k.ok()) {
      hi = mid;
      hi_steps = *k;
    } else if (HasErrorKind(k.status(), ErrorKind::kBudgetUnreachable)) {
      lo = mid;
    } else {
      return k.status();
    }
  }
  return SigmaCalibration{hi, hi_steps};
}

}  // namespace certun
