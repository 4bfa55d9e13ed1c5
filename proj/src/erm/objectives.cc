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

#include "certun/erm/objectives.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace certun {
namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Factor bringing a per-sample gradient of norm `norm` inside radius M.
double ClipScale(double norm, double clip) {
  return norm > clip ? clip / norm : 1.0;
}

absl::Status CheckData(const Dataset& data, const LogisticOptions& options) {
  if (!std::isfinite(options.reg) || options.reg < 0.0) {
    return absl::InvalidArgumentError("regularization must be >= 0");
  }
  if (!data.normalized() && !options.allow_unnormalized) {
    return absl::InvalidArgumentError(
        "logistic objectives need unit-norm features; normalize the data or "
        "allow unnormalized input explicitly");
  }
  if (data.n() < 1) return absl::InvalidArgumentError("empty dataset");
  return absl::OkStatus();
}

class LogisticObjective final : public Objective {
 public:
  LogisticObjective(int64_t dim, double reg) : dim_(dim), reg_(reg) {}

  int64_t dim() const override { return dim_; }
  int64_t outputs() const override { return 1; }

  double Loss(const Eigen::MatrixXd& w, const Dataset& data) const override {
    const Eigen::VectorXd z = data.features() * w.col(0);
    double total = 0.0;
    for (int64_t i = 0; i < data.n(); ++i) {
      total += Softplus(-data.SignedLabel(i) * z(i));
    }
    return total / static_cast<double>(data.n()) +
           0.5 * reg_ * w.squaredNorm();
  }

  Eigen::MatrixXd Gradient(const Eigen::MatrixXd& w,
                           const Dataset& data) const override {
    const Eigen::VectorXd z = data.features() * w.col(0);
    Eigen::VectorXd coef(data.n());
    for (int64_t i = 0; i < data.n(); ++i) {
      const double y = data.SignedLabel(i);
      const double c = (Sigmoid(y * z(i)) - 1.0) * y;
      coef(i) = c * ClipScale(std::abs(c) * data.row_norms()(i), kClip);
    }
    Eigen::MatrixXd g = data.features().transpose() * coef;
    g /= static_cast<double>(data.n());
    g += reg_ * w;
    return g;
  }

  Eigen::MatrixXd SampleDataGradient(const Eigen::MatrixXd& w,
                                     const Dataset& data,
                                     int64_t i) const override {
    const double y = data.SignedLabel(i);
    const double z = data.features().row(i).dot(w.col(0));
    return ((Sigmoid(y * z) - 1.0) * y) * data.features().row(i).transpose();
  }

  double SampleDataLoss(const Eigen::MatrixXd& w, const Dataset& data,
                        int64_t i) const override {
    const double z = data.features().row(i).dot(w.col(0));
    return Softplus(-data.SignedLabel(i) * z);
  }

  int Predict(const Eigen::MatrixXd& w, const Dataset& data,
              int64_t i) const override {
    return data.features().row(i).dot(w.col(0)) >= 0.0 ? 1 : 0;
  }

  ProblemConstants Constants(int64_t n, double radius) const override {
    return ProblemConstants::BinaryLogistic(n, dim_, reg_, radius);
  }

 private:
  static constexpr double kClip = 1.0;
  int64_t dim_;
  double reg_;
};

class MulticlassObjective final : public Objective {
 public:
  MulticlassObjective(int64_t dim, int classes, double reg)
      : dim_(dim), classes_(classes), reg_(reg) {}

  int64_t dim() const override { return dim_; }
  int64_t outputs() const override { return classes_; }

  double Loss(const Eigen::MatrixXd& w, const Dataset& data) const override {
    const Eigen::MatrixXd z = data.features() * w;
    double total = 0.0;
    for (int64_t i = 0; i < data.n(); ++i) {
      total += RowLoss(z.row(i), data.labels()(i));
    }
    return total / static_cast<double>(data.n()) +
           0.5 * reg_ * w.squaredNorm();
  }

  Eigen::MatrixXd Gradient(const Eigen::MatrixXd& w,
                           const Dataset& data) const override {
    Eigen::MatrixXd r = data.features() * w;  // becomes scaled p − e_y
    for (int64_t i = 0; i < data.n(); ++i) {
      Eigen::RowVectorXd p = Softmax(r.row(i));
      p(data.labels()(i)) -= 1.0;
      // ‖x (p − e)ᵀ‖_F = ‖x‖·‖p − e‖.
      r.row(i) = p * ClipScale(data.row_norms()(i) * p.norm(), kClip);
    }
    Eigen::MatrixXd g = data.features().transpose() * r;
    g /= static_cast<double>(data.n());
    g += reg_ * w;
    return g;
  }

  Eigen::MatrixXd SampleDataGradient(const Eigen::MatrixXd& w,
                                     const Dataset& data,
                                     int64_t i) const override {
    Eigen::RowVectorXd p = Softmax(data.features().row(i) * w);
    p(data.labels()(i)) -= 1.0;
    return data.features().row(i).transpose() * p;
  }

  double SampleDataLoss(const Eigen::MatrixXd& w, const Dataset& data,
                        int64_t i) const override {
    return RowLoss(data.features().row(i) * w, data.labels()(i));
  }

  int Predict(const Eigen::MatrixXd& w, const Dataset& data,
              int64_t i) const override {
    const Eigen::RowVectorXd z = data.features().row(i) * w;
    int best = 0;
    for (int k = 1; k < z.size(); ++k) {
      if (z(k) > z(best)) best = k;
    }
    return best;
  }

  ProblemConstants Constants(int64_t n, double radius) const override {
    return ProblemConstants::MulticlassLogistic(n, dim_, reg_, radius);
  }

 private:
  static constexpr double kClip = 2.0;

  static Eigen::RowVectorXd Softmax(const Eigen::RowVectorXd& z) {
    Eigen::RowVectorXd e = (z.array() - z.maxCoeff()).exp();
    return e / e.sum();
  }

  static double RowLoss(const Eigen::RowVectorXd& z, int label) {
    const double top = z.maxCoeff();
    return top + std::log((z.array() - top).exp().sum()) - z(label);
  }

  int64_t dim_;
  int classes_;
  double reg_;
};

class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Eigen::VectorXd center, double curvature)
      : center_(std::move(center)), m_(curvature) {}

  int64_t dim() const override { return center_.size(); }
  int64_t outputs() const override { return 1; }

  double Loss(const Eigen::MatrixXd& w, const Dataset&) const override {
    return 0.5 * m_ * (w.col(0) - center_).squaredNorm();
  }
  Eigen::MatrixXd Gradient(const Eigen::MatrixXd& w,
                           const Dataset&) const override {
    return m_ * (w.col(0) - center_);
  }
  Eigen::MatrixXd SampleDataGradient(const Eigen::MatrixXd& w,
                                     const Dataset& data,
                                     int64_t) const override {
    return Gradient(w, data);
  }
  double SampleDataLoss(const Eigen::MatrixXd& w, const Dataset& data,
                        int64_t) const override {
    return Loss(w, data);
  }
  int Predict(const Eigen::MatrixXd&, const Dataset&, int64_t) const override {
    return 0;
  }
  ProblemConstants Constants(int64_t n, double radius) const override {
    return ProblemConstants{.smoothness = m_,
                            .strong_convexity = m_,
                            .lipschitz = 1.0,
                            .radius = radius,
                            .n = n,
                            .dim = dim(),
                            .reg = 0.0};
  }

 private:
  Eigen::VectorXd center_;
  double m_;
};

}  // namespace

double DefaultRegularization(int64_t n) {
  return 1e-6 * static_cast<double>(n);
}

absl::StatusOr<std::unique_ptr<Objective>> CreateLogisticObjective(
    const Dataset& data, const LogisticOptions& options) {
  if (absl::Status s = CheckData(data, options); !s.ok()) return s;
  if (data.num_classes() != 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "binary logistic objective needs 2 classes, got ",
        data.num_classes()));
  }
  return std::unique_ptr<Objective>(
      new LogisticObjective(data.dim(), options.reg));
}

absl::StatusOr<std::unique_ptr<Objective>> CreateMulticlassObjective(
    const Dataset& data, const LogisticOptions& options) {
  if (absl::Status s = CheckData(data, options); !s.ok()) return s;
  return std::unique_ptr<Objective>(
      new MulticlassObjective(data.dim(), data.num_classes(), options.reg));
}

absl::StatusOr<std::unique_ptr<Objective>> CreateObjectiveFor(
    const Dataset& data, const LogisticOptions& options) {
  if (data.num_classes() == 2) return CreateLogisticObjective(data, options);
  return CreateMulticlassObjective(data, options);
}

std::unique_ptr<Objective> CreateQuadraticObjective(Eigen::VectorXd center,
                                                    double curvature) {
  return std::make_unique<QuadraticObjective>(std::move(center), curvature);
}

absl::StatusOr<Evaluation> Evaluate(const Objective& objective,
                                    const Eigen::MatrixXd& w,
                                    const Dataset& data) {
  if (w.rows() != objective.dim() || w.cols() != objective.outputs()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "weights are ", w.rows(), "x", w.cols(), ", objective expects ",
        objective.dim(), "x", objective.outputs()));
  }
  if (data.dim() != objective.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "data dimension ", data.dim(), " != model dimension ",
        objective.dim()));
  }
  if (data.n() < 1) return absl::InvalidArgumentError("empty dataset");
  int64_t correct = 0;
  for (int64_t i = 0; i < data.n(); ++i) {
    if (objective.Predict(w, data, i) == data.labels()(i)) ++correct;
  }
  return Evaluation{objective.Loss(w, data),
                    static_cast<double>(correct) / static_cast<double>(data.n())};
}

}  // namespace certun
