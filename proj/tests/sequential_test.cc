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

#include "certun/privacy/sequential.h"

#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "test_presets.h"

namespace certun {
namespace {

using testing::ContextFor;
using testing::kMnist;

TEST(SplitIntoBatchesTest, EvenAndUneven) {
  EXPECT_EQ(*SplitIntoBatches(100, 5), std::vector<int64_t>(20, 5));
  EXPECT_EQ(*SplitIntoBatches(7, 3), (std::vector<int64_t>{3, 3, 1}));
  EXPECT_EQ(*SplitIntoBatches(2, 5), (std::vector<int64_t>{2}));
  EXPECT_FALSE(SplitIntoBatches(5, 0).ok());
  EXPECT_FALSE(SplitIntoBatches(0, 1).ok());
}

TEST(SequentialKScheduleTest, FrozenSchedules) {
  const AccountingContext ctx = ContextFor(kMnist, 0.03);
  const std::vector<int64_t> b5 = {359,  721,  796,  854,  914,  978,  1048,
                                   1124, 1203, 1285, 1367, 1451, 1535, 1618,
                                   1703, 1786, 1871, 1954, 2038, 2121};
  const std::vector<int64_t> b10 = {785,  1053, 1093, 1125, 1160,
                                    1202, 1255, 1319, 1389, 1466};
  const std::vector<int64_t> b20 = {1172, 1397, 1416, 1429, 1444};
  EXPECT_EQ(*SequentialKSchedule(1.0, kMnist.delta, ctx, 100, 5), b5);
  EXPECT_EQ(*SequentialKSchedule(1.0, kMnist.delta, ctx, 100, 10), b10);
  EXPECT_EQ(*SequentialKSchedule(1.0, kMnist.delta, ctx, 100, 20), b20);
  EXPECT_EQ(std::accumulate(b5.begin(), b5.end(), int64_t{0}), 26726);
  EXPECT_EQ(std::accumulate(b10.begin(), b10.end(), int64_t{0}), 11847);
  EXPECT_EQ(std::accumulate(b20.begin(), b20.end(), int64_t{0}), 6858);
}

TEST(SequentialEpsilonTest, FrozenValues) {
  const AccountingContext ctx = ContextFor(kMnist, 0.03);
  const std::vector<int64_t> ks =
      *SequentialKSchedule(1.0, kMnist.delta, ctx, 100, 5);
  EXPECT_NEAR(*SequentialEpsilon(2.0, ctx, 5, 3, ks), 5.468127728167358990e-9,
              1e-12 * 5.468127728167358990e-9);
  EXPECT_NEAR(*SequentialEpsilon(10.0, ctx, 5, 3, ks), 0.06139637526365347194,
              1e-12 * 0.0613963752636535);
  EXPECT_NEAR(*SequentialEpsilon(37.5, ctx, 5, 3, ks), 6.535947451435410224,
              1e-12 * 6.535947451435410224);
}

TEST(SequentialEpsilonTest, FirstRequestIsSingleRequestBound) {
  const AccountingContext ctx = ContextFor(kMnist, 0.03);
  const std::vector<int64_t> ks = {500};
  const LearnedState st = *PrepareLearnedState(ctx, 5);
  const RenyiBound single =
      *UnlearnEpsilon(st.epsilon0, ctx.constants, ctx.schedule, ctx.regime,
                      st.unlearn_initial_lsi, 500);
  for (double a : {1.5, 4.0, 30.0}) {
    EXPECT_NEAR(*SequentialEpsilon(a, ctx, 5, 1, ks), single(a),
                1e-14 * single(a));
  }
}

TEST(SequentialEpsilonTest, NonNegative) {
  const AccountingContext ctx = ContextFor(kMnist, 0.03);
  const std::vector<int64_t> ks = {10, 0, 30, 5};
  for (int64_t i = 1; i <= 4; ++i) {
    for (double a = 1.01; a < 200.0; a *= 1.7) {
      EXPECT_GE(*SequentialEpsilon(a, ctx, 5, i, ks), 0.0);
    }
  }
}

TEST(SequentialKScheduleTest, EachRequestMeetsTarget) {
  const AccountingContext ctx = ContextFor(kMnist, 0.03);
  const std::vector<int64_t> ks =
      *SequentialKSchedule(1.0, kMnist.delta, ctx, 23, 5);
  const std::vector<int64_t> sizes = *SplitIntoBatches(23, 5);
  ASSERT_EQ(ks.size(), sizes.size());
  for (size_t i = 1; i <= ks.size(); ++i) {
    const RenyiBound b = *SequentialBound(
        ctx, sizes, absl::MakeConstSpan(ks).first(i), static_cast<int64_t>(i));
    EXPECT_LE(RdpToDp(b, kMnist.delta)->epsilon, 1.0);
  }
}

}  // namespace
}  // namespace certun
