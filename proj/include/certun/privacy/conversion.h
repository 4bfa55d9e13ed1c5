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

#ifndef CERTUN_PRIVACY_CONVERSION_H_
#define CERTUN_PRIVACY_CONVERSION_H_

#include "absl/status/statusor.h"
#include "certun/privacy/renyi_bound.h"

namespace certun {

struct DpConversion {
  double epsilon = 0.0;
  // Order at which the minimum was attained.
  double alpha = 0.0;
};

// (ε, δ)-DP guarantee implied by an RDP curve:
//   ε = min_{α>1} ε(α) + log(1/δ)/(α−1).
// Scans 2000 log-spaced points of α−1 in [1e-6, 1e6], then refines the best
// bracket by golden-section search. The result never exceeds the grid
// minimum. Requires 0 < δ < 1.
absl::StatusOr<DpConversion> RdpToDp(const RenyiBound& bound, double delta);

}  // namespace certun

#endif  // CERTUN_PRIVACY_CONVERSION_H_
