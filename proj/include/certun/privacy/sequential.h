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

#ifndef CERTUN_PRIVACY_SEQUENTIAL_H_
#define CERTUN_PRIVACY_SEQUENTIAL_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "certun/privacy/calibration.h"
#include "certun/privacy/renyi_bound.h"

namespace certun {

// Batch sizes for removing `total` points `batch` at a time. When `batch`
// does not divide `total` the last batch holds the remainder.
absl::StatusOr<std::vector<int64_t>> SplitIntoBatches(int64_t total,
                                                      int64_t batch);

// Bound after the first `requests` requests of a stream, request j removing
// batch_sizes[j] points with steps[j] unlearning steps:
//   ε^(1)(α) = exp(−ΣR/α)·ε₀(α; b₁)
//   ε^(i)(α) = exp(−ΣR/α)·((α−½)/(α−1))·(ε₀(2α; b_i) + ε^(i−1)(2α))
absl::StatusOr<RenyiBound> SequentialBound(const AccountingContext& ctx,
                                           absl::Span<const int64_t> batch_sizes,
                                           absl::Span<const int64_t> steps,
                                           int64_t requests);

// SequentialBound with every batch of size `batch`, evaluated at α.
absl::StatusOr<double> SequentialEpsilon(double alpha,
                                         const AccountingContext& ctx,
                                         int64_t batch, int64_t request,
                                         absl::Span<const int64_t> steps);

// Least K for each request in turn, earlier entries frozen before the next
// is searched, so that every prefix of the stream meets (ε̂, δ).
// Fails with ErrorKind::kBudgetUnreachable when some request needs more
// than `max_steps`.
absl::StatusOr<std::vector<int64_t>> SequentialKSchedule(
    double target_epsilon, double delta, const AccountingContext& ctx,
    int64_t total_removals, int64_t batch,
    int64_t max_steps = kDefaultMaxUnlearnSteps);

}  // namespace certun

#endif  // CERTUN_PRIVACY_SEQUENTIAL_H_
