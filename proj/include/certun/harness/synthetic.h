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

#ifndef CERTUN_HARNESS_SYNTHETIC_H_
#define CERTUN_HARNESS_SYNTHETIC_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "certun/erm/dataset.h"

namespace certun {

// Gaussian clusters: class k has mean separation·e_k (binary: ±separation·e₁)
// and identity covariance, so `separation` is in units of the noise
// standard deviation. Rows are scaled to unit norm afterwards. Labels cycle
// through the classes, keeping them balanced.
struct SyntheticSpec {
  int64_t n = 2000;
  int64_t dim = 20;
  int num_classes = 2;
  double separation = 3.0;
};

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticSpec& spec,
                                          uint64_t seed, uint64_t stream);

}  // namespace certun

#endif  // CERTUN_HARNESS_SYNTHETIC_H_
