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

#include "certun/harness/synthetic.h"

#include "certun/random.h"

namespace certun {

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticSpec& spec,
                                          uint64_t seed, uint64_t stream) {
  if (spec.n < 1 || spec.dim < 1) {
    return absl::InvalidArgumentError("synthetic data needs n, d >= 1");
  }
  if (spec.num_classes < 2) {
    return absl::InvalidArgumentError("synthetic data needs >= 2 classes");
  }
  if (spec.num_classes > 2 && spec.num_classes > spec.dim) {
    return absl::InvalidArgumentError(
        "multiclass synthetic data needs d >= number of classes");
  }
  Rng rng(seed, stream);
  Eigen::MatrixXd x(spec.n, spec.dim);
  Eigen::VectorXi y(spec.n);
  for (int64_t i = 0; i < spec.n; ++i) {
    const int label = static_cast<int>(i % spec.num_classes);
    y(i) = label;
    for (int64_t j = 0; j < spec.dim; ++j) x(i, j) = rng.Normal();
    if (spec.num_classes == 2) {
      x(i, 0) += label == 1 ? spec.separation : -spec.separation;
    } else {
      x(i, label) += spec.separation;
    }
  }
  return Dataset::CreateNormalized(std::move(x), std::move(y),
                                   spec.num_classes);
}

}  // namespace certun
