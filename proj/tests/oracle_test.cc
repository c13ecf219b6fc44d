// Copyright 2026 The roommatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roommatch/oracle.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "roommatch/errors.h"
#include "test_util.h"

namespace roommatch {
namespace {

constexpr UtilityModel kL = UtilityModel::kLeontief;
constexpr UtilityModel kA = UtilityModel::kAdditive;

TEST(EnumeratorTest, CountsMatchIndependentEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    const auto expected = testing::AllMatchingsByPermutation(n);
    const std::vector<Matching> all = MatchingEnumerator(n).All();
    EXPECT_EQ(all.size(), expected.size()) << "n=" << n;
    EXPECT_EQ(MatchingEnumerator::Count(n), expected.size());
    const std::set<Matching> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size()) << "duplicates at n=" << n;
    EXPECT_TRUE(std::equal(distinct.begin(), distinct.end(), expected.begin()));
  }
}

TEST(EnumeratorTest, FrozenCounts) {
  EXPECT_EQ(MatchingEnumerator::Count(1), 1u);
  EXPECT_EQ(MatchingEnumerator::Count(2), 6u);
  EXPECT_EQ(MatchingEnumerator::Count(3), 90u);
}

TEST(EnumeratorTest, OrderStartsWithSmallestPairing) {
  const auto all = MatchingEnumerator(2).All();
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all[0], Matching(2, {{0, 1, 0}, {2, 3, 1}}));
  EXPECT_EQ(all[1], Matching(2, {{2, 3, 0}, {0, 1, 1}}));
  EXPECT_EQ(all[2], Matching(2, {{0, 2, 0}, {1, 3, 1}}));
}

TEST(EnumeratorTest, CapAndDomain) {
  EXPECT_THROW(MatchingEnumerator(7), CapExceededError);
  EXPECT_THROW(MatchingEnumerator(3, 2), CapExceededError);
  EXPECT_THROW(MatchingEnumerator(0), std::invalid_argument);
  EXPECT_NO_THROW(MatchingEnumerator(7, 7));
}

TEST(MaxWelfareTest, CycleOfFourAdditive) {
  const OracleResult r = MaxWelfare(testing::CycleOfFour(0), kA);
  EXPECT_EQ(r.max_welfare, 2);
  // Pairings {a1a2, a3a4} and {a1a4, a2a3}, each with both room orders.
  EXPECT_EQ(r.witnesses.size(), 4u);
}

TEST(MaxWelfareTest, HubInstanceHasExactlyTwoOptima) {
  const OracleResult r = MaxWelfare(testing::HubInstance(false), kA);
  EXPECT_EQ(r.max_welfare, 2);
  const std::vector<Matching> want = {Matching(2, {{0, 1, 0}, {2, 3, 1}}),
                                      Matching(2, {{1, 2, 0}, {0, 3, 1}})};
  EXPECT_EQ(r.witnesses, want);
}

TEST(MaxWelfareTest, HubWithReturnEdges) {
  EXPECT_EQ(MaxWelfare(testing::HubInstance(true), kA).max_welfare, 3);
}

TEST(MaxWelfareTest, AllZero) {
  const OracleResult r = MaxWelfare(Instance::Zero(3), kL);
  EXPECT_EQ(r.max_welfare, 0);
  EXPECT_EQ(r.witnesses.size(), 90u);
  EXPECT_TRUE(std::is_sorted(r.witnesses.begin(), r.witnesses.end()));
}

TEST(MaxWelfareTest, AgreesWithBruteForceOnRationalInstances) {
  std::mt19937_64 rng(3);
  const std::vector<Rational> grid = {0, 1, Rational(1, 3), Rational(5, 2)};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Instance inst = testing::RandomGrid(n, grid, rng);
    for (UtilityModel m : {kL, kA}) {
      const OracleResult r = MaxWelfare(inst, m);
      EXPECT_EQ(r.max_welfare, testing::BruteMax(inst, m));
      for (const Matching& w : r.witnesses) {
        EXPECT_EQ(Welfare(inst, m, w), r.max_welfare);
      }
    }
  }
}

TEST(RatioTest, DefinedAsOneOnZeroOptimum) {
  const WelfareRatio z = Ratio(Instance::Zero(2), kL, IndexOrderMatching(2));
  EXPECT_EQ(z.value, 1);
  EXPECT_TRUE(z.defined_as_one);
  const Instance cycle = testing::CycleOfFour(0);
  const WelfareRatio opt = Ratio(cycle, kA, Matching(2, {{0, 1, 0}, {2, 3, 1}}));
  EXPECT_EQ(opt.value, 1);
  EXPECT_FALSE(opt.defined_as_one);
  EXPECT_EQ(Ratio(cycle, kA, Matching(2, {{0, 2, 0}, {1, 3, 1}})).value, 0);
  EXPECT_EQ(RatioAgainst(2, 8).value, Rational(1, 4));
}

TEST(PropertyTest, BinaryLeontiefMaxIsBoundedInteger) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const Instance inst = testing::RandomBinary(n, 0.6, false, rng);
    const Rational m = MaxWelfare(inst, kL).max_welfare;
    EXPECT_EQ(m.denominator(), 1);
    EXPECT_LE(m, 2 * n);
  }
}

TEST(PropertyTest, ZeroingAnAgentNeverRaisesMax) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const Instance inst = testing::RandomBinary(n, 0.5, false, rng);
    const int i = trial % (2 * n);
    const std::vector<Rational> zc(static_cast<std::size_t>(2 * n));
    const std::vector<Rational> zr(static_cast<std::size_t>(n));
    const Instance zeroed = inst.WithReport(i, zc, zr);
    for (UtilityModel m : {kL, kA}) {
      EXPECT_LE(MaxWelfare(zeroed, m).max_welfare, MaxWelfare(inst, m).max_welfare);
    }
  }
}

}  // namespace
}  // namespace roommatch
