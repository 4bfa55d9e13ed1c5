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

#ifndef CERTUN_SRC_PRIVACY_LEAST_K_H_
#define CERTUN_SRC_PRIVACY_LEAST_K_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"

namespace certun::internal {

// Least k in [0, max_k] with meets(k), for meets monotone in k. Probes 0,
// then 1, 2, 4, ... up to max_k, then bisects. nullopt when meets(max_k)
// is false.
template <typename Pred>
absl::StatusOr<std::optional<int64_t>> LeastK(Pred&& meets, int64_t max_k) {
  absl::StatusOr<bool> ok = meets(int64_t{0});
  if (!ok.ok()) return ok.status();
  if (*ok) return std::optional<int64_t>(0);
  int64_t lo = 0;
  int64_t hi = 1;
  while (true) {
    if (hi > max_k) hi = max_k;
    if (hi <= lo) return std::optional<int64_t>();
    ok = meets(hi);
    if (!ok.ok()) return ok.status();
    if (*ok) break;
    if (hi == max_k) return std::optional<int64_t>();
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    ok = meets(mid);
    if (!ok.ok()) return ok.status();
    if (*ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::optional<int64_t>(hi);
}

}  // namespace certun::internal

#endif  // CERTUN_SRC_PRIVACY_LEAST_K_H_
