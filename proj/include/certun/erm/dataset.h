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

#ifndef CERTUN_ERM_DATASET_H_
#define CERTUN_ERM_DATASET_H_

#include <cstdint>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace certun {

// Labelled samples. Labels are class indices in [0, num_classes); binary
// data uses 0 for y = −1 and 1 for y = +1.
class Dataset {
 public:
  Dataset() = default;

  // Fails when shapes disagree, a label is out of range, or `normalized` is
  // claimed but some row norm is off from 1 by more than 1e-12.
  static absl::StatusOr<Dataset> Create(Eigen::MatrixXd features,
                                        Eigen::VectorXi labels,
                                        int num_classes, bool normalized);

  // Scales every nonzero row to unit norm and marks the set normalized.
  static absl::StatusOr<Dataset> CreateNormalized(Eigen::MatrixXd features,
                                                  Eigen::VectorXi labels,
                                                  int num_classes);

  int64_t n() const { return features_.rows(); }
  int64_t dim() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }
  bool normalized() const { return normalized_; }

  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXi& labels() const { return labels_; }
  const Eigen::VectorXd& row_norms() const { return row_norms_; }

  // ±1 label of a binary sample.
  double SignedLabel(int64_t i) const { return labels_(i) == 1 ? 1.0 : -1.0; }

  // Overwrites row i; keeps the cached norm current.
  void SetRow(int64_t i, const Eigen::VectorXd& x, int label);
  void set_normalized(bool normalized) { normalized_ = normalized; }

 private:
  Eigen::MatrixXd features_;
  Eigen::VectorXi labels_;
  Eigen::VectorXd row_norms_;
  int num_classes_ = 2;
  bool normalized_ = false;
};

// Rows to erase, each replaced by a fresh random sample.
struct UnlearningRequest {
  std::vector<int64_t> indices;
  uint64_t replacement_seed = 0;
};

// Replaces every requested row with N(0, I_d) features (scaled to unit norm
// when `renormalize`) and a uniformly random label. Other rows are left
// untouched. Fails on duplicate or out-of-range indices.
absl::StatusOr<Dataset> ApplyRequest(const Dataset& data,
                                     const UnlearningRequest& request,
                                     bool renormalize = true);

// `count` distinct indices drawn uniformly from [0, n).
std::vector<int64_t> SampleIndices(int64_t n, int64_t count, uint64_t seed,
                                   uint64_t stream);

}  // namespace certun

#endif  // CERTUN_ERM_DATASET_H_
