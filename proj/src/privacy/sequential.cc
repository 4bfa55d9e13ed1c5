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

#include "certun/privacy/sequential.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "certun/privacy/accountant.h"
#include "certun/privacy/conversion.h"
#include "certun/status.h"
#include "least_k.h"

namespace certun {
namespace {

// One request: ε₀ of its batch and the unlearning chain it runs.
struct RequestTerms {
  RenyiBound epsilon0;
  double unlearn_initial_lsi = 0.0;
};

absl::StatusOr<RequestTerms> TermsFor(const AccountingContext& ctx,
                                      int64_t batch) {
  CERTUN_ASSIGN_OR_RETURN(LearnedState state, PrepareLearnedState(ctx, batch));
  return RequestTerms{state.epsilon0, state.unlearn_initial_lsi};
}

absl::StatusOr<RenyiBound> Step(const AccountingContext& ctx,
                                const RequestTerms& terms,
                                const RenyiBound* previous, int64_t steps) {
  CERTUN_ASSIGN_OR_RETURN(
      double decay,
      UnlearnDecayTotal(ctx.constants, ctx.schedule, ctx.regime,
                        terms.unlearn_initial_lsi, steps));
  if (previous == nullptr) return terms.epsilon0.Decayed(decay);
  return RenyiBound::WeakTriangle(terms.epsilon0, *previous).Decayed(decay);
}

}  // namespace

absl::StatusOr<std::vector<int64_t>> SplitIntoBatches(int64_t total,
                                                      int64_t batch) {
  if (total < 1) return absl::InvalidArgumentError("total removals must be >= 1");
  if (batch < 1) return absl::InvalidArgumentError("batch size must be >= 1");
  std::vector<int64_t> out;
  for (int64_t left = total; left > 0; left -= batch) {
    out.push_back(std::min(left, batch));
  }
  return out;
}

absl::StatusOr<RenyiBound> SequentialBound(const AccountingContext& ctx,
                                           absl::Span<const int64_t> batch_sizes,
                                           absl::Span<const int64_t> steps,
                                           int64_t requests) {
  if (requests < 1) return absl::InvalidArgumentError("request index must be >= 1");
  if (static_cast<int64_t>(batch_sizes.size()) < requests ||
      static_cast<int64_t>(steps.size()) < requests) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need ", requests, " batch sizes and step counts, got ",
        batch_sizes.size(), " and ", steps.size()));
  }
  RenyiBound bound;
  for (int64_t i = 0; i < requests; ++i) {
    CERTUN_ASSIGN_OR_RETURN(RequestTerms terms, TermsFor(ctx, batch_sizes[i]));
    CERTUN_ASSIGN_OR_RETURN(
        bound, Step(ctx, terms, i == 0 ? nullptr : &bound, steps[i]));
  }
  return bound;
}

absl::StatusOr<double> SequentialEpsilon(double alpha,
                                         const AccountingContext& ctx,
                                         int64_t batch, int64_t request,
                                         absl::Span<const int64_t> steps) {
  if (!(alpha > 1.0)) return absl::InvalidArgumentError("alpha must be > 1");
  if (request < 1) return absl::InvalidArgumentError("request index must be >= 1");
  const std::vector<int64_t> sizes(static_cast<size_t>(request), batch);
  CERTUN_ASSIGN_OR_RETURN(RenyiBound bound,
                          SequentialBound(ctx, sizes, steps, request));
  return bound(alpha);
}

absl::StatusOr<std::vector<int64_t>> SequentialKSchedule(
    double target_epsilon, double delta, const AccountingContext& ctx,
    int64_t total_removals, int64_t batch, int64_t max_steps) {
  if (!(target_epsilon > 0.0) || !std::isfinite(target_epsilon)) {
    return absl::InvalidArgumentError("target epsilon must be positive");
  }
  if (max_steps < 0) return absl::InvalidArgumentError("max steps must be >= 0");
  CERTUN_ASSIGN_OR_RETURN(std::vector<int64_t> sizes,
                          SplitIntoBatches(total_removals, batch));

  std::vector<int64_t> schedule;
  schedule.reserve(sizes.size());
  RenyiBound previous;
  for (size_t i = 0; i < sizes.size(); ++i) {
    CERTUN_ASSIGN_OR_RETURN(RequestTerms terms, TermsFor(ctx, sizes[i]));
    const RenyiBound* prev = i == 0 ? nullptr : &previous;

    auto meets = [&](int64_t k) -> absl::StatusOr<bool> {
      CERTUN_ASSIGN_OR_RETURN(RenyiBound b, Step(ctx, terms, prev, k));
      CERTUN_ASSIGN_OR_RETURN(DpConversion dp, RdpToDp(b, delta));
      return dp.epsilon <= target_epsilon;
    };

    CERTUN_ASSIGN_OR_RETURN(std::optional<int64_t> k,
                            internal::LeastK(meets, max_steps));
    if (!k) {
      return BudgetUnreachableError(absl::StrCat(
          "request ", i + 1, " does not reach epsilon ", target_epsilon,
          " within ", max_steps, " unlearning steps"));
    }
    schedule.push_back(*k);
    CERTUN_ASSIGN_OR_RETURN(previous, Step(ctx, terms, prev, *k));
  }
  return schedule;
}

}  // namespace certun
