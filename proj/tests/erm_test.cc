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

#include <cmath>
#include <set>

#include "certun/erm/dataset.h"
#include "certun/erm/dataset_io.h"
#include "certun/erm/objectives.h"
#include "certun/random.h"
#include "certun/status.h"
#include "gtest/gtest.h"

namespace certun {
namespace {

Dataset RandomData(int64_t n, int64_t d, int classes, uint64_t seed) {
  Rng rng(seed, 0);
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXi y(n);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < d; ++j) x(i, j) = rng.Normal();
    y(i) = static_cast<int>(rng.UniformInt(classes));
  }
  return *Dataset::CreateNormalized(std::move(x), std::move(y), classes);
}

TEST(DatasetTest, NormalizesRows) {
  const Dataset d = RandomData(20, 5, 2, 1);
  for (int64_t i = 0; i < d.n(); ++i) {
    EXPECT_NEAR(d.features().row(i).norm(), 1.0, 1e-14);
    EXPECT_NEAR(d.row_norms()(i), 1.0, 1e-14);
  }
  EXPECT_TRUE(d.normalized());
}

TEST(DatasetTest, RejectsBadInput) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 2);
  Eigen::VectorXi y(2);
  y << 0, 3;
  EXPECT_FALSE(Dataset::Create(x, y, 2, false).ok());
  y << 0, 1;
  EXPECT_FALSE(Dataset::Create(x, y, 2, true).ok());  // norms are √2
  EXPECT_TRUE(Dataset::Create(x, y, 2, false).ok());
  EXPECT_FALSE(Dataset::Create(x, Eigen::VectorXi::Zero(3), 2, false).ok());
}

TEST(ApplyRequestTest, ReplacesOnlyRequestedRows) {
  const Dataset d = RandomData(30, 4, 3, 2);
  const UnlearningRequest req{{3, 17}, 99};
  const Dataset out = *ApplyRequest(d, req);
  for (int64_t i = 0; i < d.n(); ++i) {
    if (i == 3 || i == 17) {
      EXPECT_NE(out.features().row(i), d.features().row(i));
      EXPECT_NEAR(out.features().row(i).norm(), 1.0, 1e-14);
    } else {
      EXPECT_EQ(out.features().row(i), d.features().row(i));
      EXPECT_EQ(out.labels()(i), d.labels()(i));
    }
  }
  const Dataset again = *ApplyRequest(d, req);
  EXPECT_EQ(again.features(), out.features());
  EXPECT_EQ(again.labels(), out.labels());
}

TEST(ApplyRequestTest, RawReplacementsClearNormalizedFlag) {
  const Dataset d = RandomData(10, 6, 2, 3);
  const Dataset out = *ApplyRequest(d, UnlearningRequest{{0}, 5}, false);
  EXPECT_FALSE(out.normalized());
}

TEST(ApplyRequestTest, RejectsBadIndices) {
  const Dataset d = RandomData(10, 2, 2, 4);
  EXPECT_FALSE(ApplyRequest(d, UnlearningRequest{{1, 1}, 0}).ok());
  EXPECT_FALSE(ApplyRequest(d, UnlearningRequest{{10}, 0}).ok());
  EXPECT_FALSE(ApplyRequest(d, UnlearningRequest{{-1}, 0}).ok());
}

TEST(SampleIndicesTest, DistinctAndDeterministic) {
  const std::vector<int64_t> a = SampleIndices(50, 20, 7, 3);
  EXPECT_EQ(a, SampleIndices(50, 20, 7, 3));
  EXPECT_NE(a, SampleIndices(50, 20, 7, 4));
  const std::set<int64_t> uniq(a.begin(), a.end());
  EXPECT_EQ(uniq.size(), 20u);
  for (int64_t i : a) {
    EXPECT_GE(i, 0);
    EXPECT_LT(i, 50);
  }
}

TEST(DatasetIoTest, RoundTrip) {
  const Dataset d = RandomData(7, 3, 4, 5);
  const Dataset back = *ParseDatasetCsv(FormatDatasetCsv(d));
  EXPECT_EQ(back.features(), d.features());
  EXPECT_EQ(back.labels(), d.labels());
  EXPECT_EQ(back.num_classes(), 4);
  EXPECT_TRUE(back.normalized());
}

TEST(DatasetIoTest, BinaryMinusOneLabels) {
  const Dataset d =
      *ParseDatasetCsv("# d=2 c=2 normalized=0\n-1,1,0\n1,0,1\n");
  EXPECT_EQ(d.labels()(0), 0);
  EXPECT_EQ(d.labels()(1), 1);
}

TEST(DatasetIoTest, ParseErrorsNameTheLine) {
  absl::StatusOr<Dataset> d =
      ParseDatasetCsv("# d=2 c=2 normalized=0\n1,0,1\n0,abc,1\n");
  ASSERT_FALSE(d.ok());
  EXPECT_TRUE(HasErrorKind(d.status(), ErrorKind::kParse));
  EXPECT_NE(d.status().message().find("line 3"), absl::string_view::npos)
      << d.status();
  EXPECT_FALSE(ParseDatasetCsv("# d=2 c=2 normalized=0\n1,0\n").ok());
}

TEST(DatasetIoTest, MissingFileIsIoError) {
  absl::StatusOr<Dataset> d = LoadDatasetCsv("/nonexistent/x.csv");
  ASSERT_FALSE(d.ok());
  EXPECT_TRUE(HasErrorKind(d.status(), ErrorKind::kIo));
}

// Central differences of the loss against the analytic gradient. With unit
// rows the per-sample gradients never reach the clip norm.
void CheckGradient(const Objective& obj, const Dataset& data, uint64_t seed) {
  Rng rng(seed, 1);
  Eigen::MatrixXd w(obj.dim(), obj.outputs());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.Normal();
  const Eigen::MatrixXd g = obj.Gradient(w, data);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    Eigen::MatrixXd p = w, q = w;
    p(i) += h;
    q(i) -= h;
    const double fd = (obj.Loss(p, data) - obj.Loss(q, data)) / (2 * h);
    EXPECT_NEAR(g(i), fd, 1e-7) << i;
  }
}

TEST(ObjectiveTest, LogisticGradient) {
  const Dataset d = RandomData(40, 5, 2, 6);
  auto obj = *CreateLogisticObjective(d, LogisticOptions{.reg = 0.1});
  CheckGradient(*obj, d, 1);
  const ProblemConstants pc = obj->Constants(40, 100.0);
  EXPECT_DOUBLE_EQ(pc.smoothness, 0.35);
  EXPECT_DOUBLE_EQ(pc.strong_convexity, 0.1);
  EXPECT_DOUBLE_EQ(pc.lipschitz, 1.0);
}

TEST(ObjectiveTest, MulticlassGradient) {
  const Dataset d = RandomData(40, 4, 3, 7);
  auto obj = *CreateMulticlassObjective(d, LogisticOptions{.reg = 0.05});
  EXPECT_EQ(obj->outputs(), 3);
  CheckGradient(*obj, d, 2);
  const ProblemConstants pc = obj->Constants(40, 100.0);
  EXPECT_DOUBLE_EQ(pc.smoothness, 1.05);
  EXPECT_DOUBLE_EQ(pc.lipschitz, 2.0);
}

TEST(ObjectiveTest, SampleGradientsAreClipped) {
  const Dataset d = RandomData(10, 3, 3, 8);
  auto obj = *CreateMulticlassObjective(d, LogisticOptions{.reg = 0.0});
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(3, 3, 50.0);
  w(0, 0) = -500.0;
  for (int64_t i = 0; i < d.n(); ++i) {
    EXPECT_LE(obj->SampleDataGradient(w, d, i).norm(), 2.0 + 1e-12);
  }
}

TEST(ObjectiveTest, UnnormalizedDataNeedsOptIn) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(2, 2, 3.0);
  Eigen::VectorXi y(2);
  y << 0, 1;
  const Dataset d = *Dataset::Create(x, y, 2, false);
  EXPECT_FALSE(CreateLogisticObjective(d, LogisticOptions{}).ok());
  EXPECT_TRUE(CreateLogisticObjective(
                  d, LogisticOptions{.reg = 0.0, .allow_unnormalized = true})
                  .ok());
}

TEST(ObjectiveTest, QuadraticConstants) {
  auto obj = CreateQuadraticObjective(Eigen::VectorXd::Ones(3), 0.5);
  const ProblemConstants pc = obj->Constants(10, 2.0);
  EXPECT_EQ(pc.smoothness, 0.5);
  EXPECT_EQ(pc.strong_convexity, 0.5);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 1);
  EXPECT_DOUBLE_EQ(obj->Loss(w, Dataset()), 0.75);
}

TEST(EvaluateTest, BinaryTieGoesToPositive) {
  Eigen::MatrixXd x(2, 2);
  x << 1, 0, 0, 1;
  Eigen::VectorXi y(2);
  y << 1, 0;
  const Dataset d = *Dataset::CreateNormalized(x, y, 2);
  auto obj = *CreateLogisticObjective(d, LogisticOptions{.reg = 0.1});
  const Evaluation e = *Evaluate(*obj, Eigen::MatrixXd::Zero(2, 1), d);
  EXPECT_DOUBLE_EQ(e.accuracy, 0.5);
  EXPECT_NEAR(e.loss, std::log(2.0), 1e-15);
}

TEST(EvaluateTest, MulticlassTieGoesToLowestIndex) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 0, 1, 1, 0;
  Eigen::VectorXi y(3);
  y << 0, 1, 2;
  const Dataset d = *Dataset::CreateNormalized(x, y, 3);
  auto obj = *CreateMulticlassObjective(d, LogisticOptions{.reg = 0.0});
  const Evaluation e = *Evaluate(*obj, Eigen::MatrixXd::Zero(2, 3), d);
  EXPECT_NEAR(e.accuracy, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(e.loss, std::log(3.0), 1e-15);
  EXPECT_FALSE(Evaluate(*obj, Eigen::MatrixXd::Zero(2, 2), d).ok());
}

TEST(DefaultRegularizationTest, ScalesWithN) {
  EXPECT_DOUBLE_EQ(DefaultRegularization(2000), 2e-3);
}

}  // namespace
}  // namespace certun
