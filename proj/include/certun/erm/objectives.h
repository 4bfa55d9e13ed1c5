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

#ifndef CERTUN_ERM_OBJECTIVES_H_
#define CERTUN_ERM_OBJECTIVES_H_

#include <cstdint>
#include <memory>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "certun/erm/dataset.h"
#include "certun/privacy/problem_constants.h"

namespace certun {

// Regularized empirical risk
//   f(w; D) = (1/n) Σ_i ℓ(w; d_i) + (λ/2)‖w‖²
// over a weight matrix of shape dim × outputs (outputs = 1 for binary).
// Objects are immutable; all methods are safe to call concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual int64_t dim() const = 0;
  virtual int64_t outputs() const = 0;

  virtual double Loss(const Eigen::MatrixXd& w, const Dataset& data) const = 0;
  // Mean of per-sample data gradients clipped to norm M, plus λw.
  virtual Eigen::MatrixXd Gradient(const Eigen::MatrixXd& w,
                                   const Dataset& data) const = 0;
  // Unclipped ∇ℓ(w; d_i), without the regularizer.
  virtual Eigen::MatrixXd SampleDataGradient(const Eigen::MatrixXd& w,
                                             const Dataset& data,
                                             int64_t i) const = 0;
  virtual double SampleDataLoss(const Eigen::MatrixXd& w, const Dataset& data,
                                int64_t i) const = 0;
  // Predicted class of sample i.
  virtual int Predict(const Eigen::MatrixXd& w, const Dataset& data,
                      int64_t i) const = 0;

  // Certified constants for a dataset of size n, projection radius R.
  virtual ProblemConstants Constants(int64_t n, double radius) const = 0;
};

// λ = 1e-6·n.
double DefaultRegularization(int64_t n);

struct LogisticOptions {
  double reg = 0.0;
  // Accept data not marked normalized; the clip still bounds M but the
  // smoothness constant is then no longer certified.
  bool allow_unnormalized = false;
};

// ℓ(w; x, y) = log(1 + exp(−y wᵀx)), y ∈ {−1, +1}; L = 1/4 + λ, m = λ,
// M = 1.
absl::StatusOr<std::unique_ptr<Objective>> CreateLogisticObjective(
    const Dataset& data, const LogisticOptions& options);

// Softmax cross-entropy over c classes; L = 1 + λ, m = λ, M = 2.
absl::StatusOr<std::unique_ptr<Objective>> CreateMulticlassObjective(
    const Dataset& data, const LogisticOptions& options);

// Binary logistic for c = 2, multiclass otherwise.
absl::StatusOr<std::unique_ptr<Objective>> CreateObjectiveFor(
    const Dataset& data, const LogisticOptions& options);

// f(w) = (m/2)‖w − center‖², independent of the data; L = m.
std::unique_ptr<Objective> CreateQuadraticObjective(Eigen::VectorXd center,
                                                    double curvature);

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Mean regularized loss and accuracy. Binary ties (wᵀx = 0) predict +1;
// multiclass ties go to the lowest class index.
absl::StatusOr<Evaluation> Evaluate(const Objective& objective,
                                    const Eigen::MatrixXd& w,
                                    const Dataset& data);

}  // namespace certun

#endif  // CERTUN_ERM_OBJECTIVES_H_
