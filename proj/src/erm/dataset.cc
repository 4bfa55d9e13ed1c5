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

#include "certun/erm/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "certun/random.h"

namespace certun {
namespace {

constexpr double kNormTolerance = 1e-12;

}  // namespace

absl::StatusOr<Dataset> Dataset::Create(Eigen::MatrixXd features,
                                        Eigen::VectorXi labels,
                                        int num_classes, bool normalized) {
  if (features.rows() != labels.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "features have ", features.rows(), " rows but there are ",
        labels.size(), " labels"));
  }
  if (features.cols() < 1) {
    return absl::InvalidArgumentError("features need at least one column");
  }
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least two classes");
  }
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) < 0 || labels(i) >= num_classes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label ", labels(i), " of row ", i, " outside [0, ", num_classes,
          ")"));
    }
  }
  if (!features.allFinite()) {
    return absl::InvalidArgumentError("features must be finite");
  }
  Dataset out;
  out.row_norms_ = features.rowwise().norm();
  if (normalized) {
    for (Eigen::Index i = 0; i < out.row_norms_.size(); ++i) {
      if (std::abs(out.row_norms_(i) - 1.0) > kNormTolerance) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", i, " has norm ", out.row_norms_(i),
            " but the data is marked normalized"));
      }
    }
  }
  out.features_ = std::move(features);
  out.labels_ = std::move(labels);
  out.num_classes_ = num_classes;
  out.normalized_ = normalized;
  return out;
}

absl::StatusOr<Dataset> Dataset::CreateNormalized(Eigen::MatrixXd features,
                                                  Eigen::VectorXi labels,
                                                  int num_classes) {
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const double norm = features.row(i).norm();
    if (norm == 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " is zero and cannot be normalized"));
    }
    features.row(i) /= norm;
  }
  return Create(std::move(features), std::move(labels), num_classes, true);
}

void Dataset::SetRow(int64_t i, const Eigen::VectorXd& x, int label) {
  features_.row(i) = x.transpose();
  labels_(i) = label;
  row_norms_(i) = x.norm();
}

absl::StatusOr<Dataset> ApplyRequest(const Dataset& data,
                                     const UnlearningRequest& request,
                                     bool renormalize) {
  std::vector<int64_t> sorted = request.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return absl::InvalidArgumentError("request indices must be distinct");
  }
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= data.n())) {
    return absl::InvalidArgumentError(
        absl::StrCat("request index outside [0, ", data.n(), ")"));
  }

  Dataset out = data;
  Rng rng(request.replacement_seed, 0);
  Eigen::VectorXd x(data.dim());
  // Rows are replaced in request order so the draws follow the caller's
  // listing.
  for (int64_t idx : request.indices) {
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = rng.Normal();
    if (renormalize) x /= x.norm();
    const int label =
        static_cast<int>(rng.UniformInt(static_cast<uint64_t>(data.num_classes())));
    out.SetRow(idx, x, label);
  }
  if (!renormalize && !request.indices.empty()) out.set_normalized(false);
  return out;
}

std::vector<int64_t> SampleIndices(int64_t n, int64_t count, uint64_t seed,
                                   uint64_t stream) {
  count = std::clamp<int64_t>(count, 0, n);
  // Partial Fisher–Yates.
  std::vector<int64_t> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), int64_t{0});
  Rng rng(seed, stream);
  for (int64_t i = 0; i < count; ++i) {
    const int64_t j =
        i + static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<size_t>(count));
  return pool;
}

}  // namespace certun
