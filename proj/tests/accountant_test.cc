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

#include "certun/privacy/accountant.h"

#include <cmath>
#include <numbers>
#include <random>

#include "certun/status.h"
#include "gtest/gtest.h"
#include "test_presets.h"

namespace certun {
namespace {

ProblemConstants Constants(double L, double m, double R = 100.0) {
  return ProblemConstants{.smoothness = L,
                          .strong_convexity = m,
                          .lipschitz = 1.0,
                          .radius = R,
                          .n = 100,
                          .dim = 2,
                          .reg = m};
}

NoiseSchedule Schedule(double eta, double sigma) {
  NoiseSchedule ns;
  ns.step = eta;
  ns.noise_std = sigma;
  return ns;
}

TEST(LsiCapTest, ClosedForms) {
  EXPECT_NEAR(*LsiCap(0.25, 0.0, 1.0, 0.25), 8.1548454853771357, 1e-14);
  EXPECT_NEAR(*LsiCap(1.0, 1.0, 1.0, 16.0), 521.91011106413669, 1e-12);
  EXPECT_NEAR(*LsiCap(0.25, 0.0, 1.0, 0.25), 3.0 * std::numbers::e, 1e-14);
}

TEST(LsiCapTest, OverflowReportsExponent) {
  const double eta = 3.8168;
  absl::StatusOr<double> cap = LsiCap(10.0, 1.0, eta, 2.0 * eta * 0.03 * 0.03);
  ASSERT_FALSE(cap.ok());
  EXPECT_TRUE(HasErrorKind(cap.status(), ErrorKind::kCapOverflow));
  ASSERT_TRUE(CapOverflowExponent(cap.status()).has_value());
  EXPECT_NEAR(*CapOverflowExponent(cap.status()), 111148.35128903794,
              1e-12 * 111148.35128903794);
}

TEST(LsiCapTest, RejectsBadInput) {
  EXPECT_FALSE(LsiCap(1.0, 1.0, 1.0, 0.0).ok());
  EXPECT_FALSE(LsiCap(-1.0, 1.0, 1.0, 1.0).ok());
}

TEST(LsiTraceTest, StronglyConvexIsConstant) {
  const ProblemConstants pc = Constants(1.0, 0.5);
  const NoiseSchedule ns = Schedule(1.0, 0.3);
  const double c0 = 2.0 * 0.09 / 0.5;
  absl::StatusOr<LsiTrace> trace =
      LsiUnlearnTrace(pc, ns, Regime::kStronglyConvex, c0, 5);
  ASSERT_TRUE(trace.ok()) << trace.status();
  ASSERT_EQ(trace->constants.size(), 6u);
  for (double c : trace->constants) EXPECT_EQ(c, c0);
}

TEST(LsiTraceTest, StronglyConvexNeedsLargeEnoughConstant) {
  const ProblemConstants pc = Constants(1.0, 0.5);
  EXPECT_FALSE(
      LsiUnlearnTrace(pc, Schedule(1.0, 0.3), Regime::kStronglyConvex,
                      0.09 / 0.5, 1)
          .ok());
}

TEST(LsiTraceTest, ConvexIsAffine) {
  absl::StatusOr<LsiTrace> trace = LsiUnlearnTrace(
      Constants(1.0, 0.0), Schedule(0.1, 1.0), Regime::kConvex, 1.0, 2);
  ASSERT_TRUE(trace.ok()) << trace.status();
  EXPECT_FALSE(trace->cap.has_value());  // exponent ≈ 2e5
  ASSERT_EQ(trace->constants.size(), 3u);
  EXPECT_DOUBLE_EQ(trace->constants[0], 1.0);
  EXPECT_DOUBLE_EQ(trace->constants[1], 1.2);
  EXPECT_DOUBLE_EQ(trace->constants[2], 1.4);
}

TEST(LsiTraceTest, NonConvexStep) {
  absl::StatusOr<LsiTrace> trace = LsiUnlearnTrace(
      Constants(1.0, 0.0), Schedule(0.1, 1.0), Regime::kNonConvex, 1.0, 1);
  ASSERT_TRUE(trace.ok()) << trace.status();
  EXPECT_NEAR(trace->constants[1], 1.41, 1e-15);
}

TEST(LsiTraceTest, EntriesNeverExceedRepresentableCap) {
  // R small enough for a finite cap: 4(0.1+0.1)²/0.2 = 0.8.
  const ProblemConstants pc = Constants(1.0, 0.0, 0.1);
  absl::StatusOr<LsiTrace> trace = LsiUnlearnTrace(
      pc, Schedule(0.1, 1.0), Regime::kNonConvex, 0.5, 200);
  ASSERT_TRUE(trace.ok()) << trace.status();
  ASSERT_TRUE(trace->cap.has_value());
  for (size_t k = 1; k < trace->constants.size(); ++k) {
    EXPECT_LE(trace->constants[k], *trace->cap);
  }
  EXPECT_EQ(trace->constants.back(), *trace->cap);
}

TEST(UnlearnRateTest, Regimes) {
  const ProblemConstants sc = Constants(1.0, 0.5);
  const NoiseSchedule ns = Schedule(0.7, 0.3);
  EXPECT_NEAR(*UnlearnRate(sc, ns, Regime::kStronglyConvex,
                           2.0 * 0.09 / 0.5),
              0.7 * 0.5, 1e-15);
  const ProblemConstants cvx = Constants(1.0, 0.0);
  const NoiseSchedule ns2 = Schedule(0.1, 1.0);
  EXPECT_NEAR(*UnlearnRate(cvx, ns2, Regime::kConvex, 0.2), std::log(2.0),
              1e-15);
  EXPECT_NEAR(*UnlearnRate(cvx, ns2, Regime::kNonConvex, 1.0),
              0.15296934478142719, 1e-15);
  EXPECT_FALSE(UnlearnRate(cvx, ns2, Regime::kConvex, 0.0).ok());
}

TEST(UnlearnEpsilonTest, ZeroStepsIsIdentity) {
  const RenyiBound eps0 = RenyiBound::Linear(0.2);
  for (Regime r : {Regime::kConvex, Regime::kNonConvex}) {
    absl::StatusOr<RenyiBound> b =
        UnlearnEpsilon(eps0, Constants(1.0, 0.0), Schedule(0.1, 1.0), r, 1.0, 0);
    ASSERT_TRUE(b.ok());
    EXPECT_EQ((*b)(3.0), eps0(3.0));
  }
}

TEST(UnlearnEpsilonTest, StronglyConvexDecaySlopeIsExact) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.001 + 0.5 * unit(gen);
    const double L = m + 2.0 * unit(gen);
    const double eta = (0.05 + 0.95 * unit(gen)) / L;
    const double sigma = 0.01 + unit(gen);
    const int64_t K = static_cast<int64_t>(1 + 500 * unit(gen));
    const double alpha = 1.0 + 1e-3 + 100.0 * unit(gen);
    const ProblemConstants pc = Constants(L, m);
    const NoiseSchedule ns = Schedule(eta, sigma);
    const double c = 2.0 * sigma * sigma / m;
    const RenyiBound eps0 = *LearnEpsilon0(pc, ns, Regime::kStronglyConvex, 1,
                                           Horizon::Infinite(), c);
    const RenyiBound epsk =
        *UnlearnEpsilon(eps0, pc, ns, Regime::kStronglyConvex, c, K);
    const double lhs = std::log(epsk(alpha)) - std::log(eps0(alpha));
    const double rhs = -eta * m * static_cast<double>(K) / alpha;
    ASSERT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
  }
}

TEST(UnlearnEpsilonTest, NonIncreasingInSteps) {
  const RenyiBound eps0 = RenyiBound::Linear(0.5);
  for (Regime r : {Regime::kConvex, Regime::kNonConvex}) {
    double prev = eps0(4.0);
    for (int64_t k = 1; k < 50; ++k) {
      const double v = (*UnlearnEpsilon(eps0, Constants(1.0, 0.0),
                                        Schedule(0.1, 1.0), r, 1.0, k))(4.0);
      ASSERT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(UnlearnEpsilonTest, CappedDecayMatchesTrace) {
  const ProblemConstants pc = Constants(1.0, 0.0, 0.1);
  const NoiseSchedule ns = Schedule(0.1, 1.0);
  const LsiTrace trace = *LsiUnlearnTrace(pc, ns, Regime::kNonConvex, 0.5, 300);
  double total = 0.0;
  for (size_t k = 0; k + 1 < trace.constants.size(); ++k) {
    total += *UnlearnRate(pc, ns, Regime::kNonConvex, trace.constants[k]);
  }
  EXPECT_NEAR(*UnlearnDecayTotal(pc, ns, Regime::kNonConvex, 0.5, 300), total,
              1e-12 * total);
}

TEST(LearnEpsilon0Test, StronglyConvexInfiniteHorizon) {
  const ProblemConstants pc = Constants(1.0, 0.2);
  const NoiseSchedule ns = Schedule(1.0, 0.5);
  const double c = 2.0 * 0.25 / 0.2;
  const RenyiBound b = *LearnEpsilon0(pc, ns, Regime::kStronglyConvex, 1,
                                      Horizon::Infinite(), c);
  EXPECT_NEAR(b(3.0), 3.0 * 4.0 / (0.2 * 0.25 * 100.0 * 100.0), 1e-15);
}

TEST(LearnEpsilon0Test, StronglyConvexHalfHorizon) {
  // mηT = ln 2 with m = 0.2, η = 1/(T·0.2/ln 2).
  const int64_t T = 10;
  const double m = 0.2;
  const double eta = std::log(2.0) / (m * T);
  const ProblemConstants pc = Constants(1.0, m);
  const NoiseSchedule ns = Schedule(eta, 0.5);
  const double c = 2.0 * 0.25 / m;
  const double full = (*LearnEpsilon0(pc, ns, Regime::kStronglyConvex, 1,
                                      Horizon::Infinite(), c))(2.0);
  const double half = (*LearnEpsilon0(pc, ns, Regime::kStronglyConvex, 1,
                                      Horizon::Finite(T), c))(2.0);
  EXPECT_NEAR(half, 0.5 * full, 1e-15 * full);
}

TEST(LearnEpsilon0Test, ZeroStepsIsZero) {
  for (Regime r :
       {Regime::kStronglyConvex, Regime::kConvex, Regime::kNonConvex}) {
    const double m = r == Regime::kStronglyConvex ? 0.2 : 0.0;
    const ProblemConstants pc = Constants(1.0, m);
    const NoiseSchedule ns = Schedule(0.5, 0.5);
    const RenyiBound b = *LearnEpsilon0(pc, ns, r, 3, Horizon::Finite(0),
                                        DefaultInitialLsi(pc, ns, r));
    EXPECT_EQ(b(5.0), 0.0) << RegimeName(r);
  }
}

// The sum-product Σ_t Π_{t'≥t}(1 + ησ²/C_{t',1})⁻¹ evaluated literally.
long double LiteralSumProduct(Regime regime, long double L, long double eta,
                              long double sigma, long double c0,
                              long double cap, int T) {
  std::vector<long double> q(T);
  long double c = c0;
  const long double xi = eta * sigma * sigma;
  const long double a =
      regime == Regime::kNonConvex ? (1 + eta * L) * (1 + eta * L) : 1.0L;
  for (int t = 0; t < T; ++t) {
    long double c1 = std::min(a * c + xi, cap);
    q[t] = 1.0L / (1.0L + xi / c1);
    c = std::min(c1 + xi, cap);
  }
  long double total = 0.0L;
  for (int t = 0; t < T; ++t) {
    long double prod = 1.0L;
    for (int s = t; s < T; ++s) prod *= q[s];
    total += prod;
  }
  return total;
}

TEST(LearnEpsilon0Test, ConvexAndNonConvexMatchLiteralSum) {
  const double R = 0.1, eta = 0.1, sigma = 1.0, L = 1.0;
  const ProblemConstants pc = Constants(L, 0.0, R);
  const NoiseSchedule ns = Schedule(eta, sigma);
  const double cap = *LsiCap(R, 1.0, eta, eta * sigma * sigma);
  for (Regime r : {Regime::kConvex, Regime::kNonConvex}) {
    for (int T : {1, 2, 7, 50, 400}) {
      const double c0 = 0.05;
      const double got =
          (*LearnEpsilon0(pc, ns, r, 2, Horizon::Finite(T), c0))(3.0);
      const long double lead = 2.0L * 3.0L * eta * 4.0L /
                               (sigma * sigma * 100.0L * 100.0L);
      const long double want =
          lead * LiteralSumProduct(r, L, eta, sigma, c0, cap, T);
      EXPECT_NEAR(got, static_cast<double>(want), 1e-13 * want)
          << RegimeName(r) << " T=" << T;
    }
  }
}

TEST(LearnEpsilon0Test, InfiniteHorizonIsTheLimit) {
  const double R = 0.1, eta = 0.1, sigma = 1.0;
  const ProblemConstants pc = Constants(1.0, 0.0, R);
  const NoiseSchedule ns = Schedule(eta, sigma);
  const double cap = *LsiCap(R, 1.0, eta, eta);
  for (Regime r : {Regime::kConvex, Regime::kNonConvex}) {
    const double inf =
        (*LearnEpsilon0(pc, ns, r, 1, Horizon::Infinite(), 0.1))(2.0);
    EXPECT_NEAR(inf, 2.0 * 2.0 * eta / (100.0 * 100.0) * cap / eta, 1e-15);
    const double big =
        (*LearnEpsilon0(pc, ns, r, 1, Horizon::Finite(20000), 0.1))(2.0);
    EXPECT_NEAR(big, inf, 1e-9 * inf);
  }
}

TEST(LearnEpsilon0Test, InfiniteHorizonNeedsRepresentableCap) {
  absl::StatusOr<RenyiBound> b =
      LearnEpsilon0(Constants(1.0, 0.0, 100.0), Schedule(0.1, 0.1),
                    Regime::kConvex, 1, Horizon::Infinite(), 0.001);
  ASSERT_FALSE(b.ok());
  EXPECT_TRUE(HasErrorKind(b.status(), ErrorKind::kCapOverflow));
}

TEST(LearnEpsilon0Test, MonotoneInGroupNoiseAndSize) {
  const NoiseSchedule ns = Schedule(1.0, 0.1);
  auto at = [&](int64_t n, double sigma, int64_t s) {
    ProblemConstants pc = Constants(1.0, 0.1);
    pc.n = n;
    NoiseSchedule x = ns;
    x.noise_std = sigma;
    return (*LearnEpsilon0(pc, x, Regime::kStronglyConvex, s,
                           Horizon::Finite(100),
                           2.0 * sigma * sigma / 0.1))(5.0);
  };
  EXPECT_GT(at(100, 0.1, 1), at(200, 0.1, 1));
  EXPECT_GT(at(100, 0.1, 1), at(100, 0.2, 1));
  EXPECT_NEAR(at(100, 0.1, 3), 9.0 * at(100, 0.1, 1), 1e-12);
}

TEST(WeakTriangleTest, Examples) {
  EXPECT_DOUBLE_EQ(WeakTriangle(1.5, 1.0, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(WeakTriangle(2.0, 0.3, 0.7), 1.5);
  EXPECT_NEAR(WeakTriangle(1e9, 1.0, 1.0), 2.0, 1e-8);
}

TEST(AdjacencyTest, Examples) {
  EXPECT_EQ(AdjacencyBoundUnbiased(0.0, 10), 0.0);
  EXPECT_EQ(AdjacencyBoundUnbiased(1.0, 2), 1.0);
  EXPECT_NEAR(AdjacencyBoundUnbiased(0.5, 11982), 8.3458521115005842e-5,
              1e-19);
}

TEST(RetrainSavingTest, BoundaryIsVacuous) {
  ProblemConstants pc = Constants(1.0, 0.04);
  pc.n = 100;  // m·n = 4 = 4M
  const RetrainSaving s = *RetrainSavingLowerBound(pc, Schedule(1.0, 1.0), 2.0);
  EXPECT_TRUE(s.vacuous);
  EXPECT_NEAR(s.iterations, 0.0, 1e-12);
}

TEST(RetrainSavingTest, MnistValue) {
  const auto& p = testing::kMnist;
  const AccountingContext ctx = testing::ContextFor(p, 1.0);
  const RetrainSaving s =
      *RetrainSavingLowerBound(ctx.constants, ctx.schedule, 20.0);
  EXPECT_FALSE(s.vacuous);
  EXPECT_NEAR(s.iterations, 3146.0128418839581, 1e-10);
}

TEST(RetrainSavingTest, DoublingNAddsLogFour) {
  const AccountingContext ctx = testing::ContextFor(testing::kMnist, 1.0);
  ProblemConstants twice = ctx.constants;
  twice.n *= 2;
  const double a = RetrainSavingLowerBound(ctx.constants, ctx.schedule, 20.0)
                       ->iterations;
  const double b = RetrainSavingLowerBound(twice, ctx.schedule, 20.0)->iterations;
  const double m = ctx.constants.strong_convexity;
  EXPECT_NEAR(b - a, 20.0 / (m * ctx.schedule.step) * std::log(4.0), 1e-9);
}

}  // namespace
}  // namespace certun
