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

#include "roommatch/set_packing.h"

#include <optional>
#include <random>

#include "gtest/gtest.h"
#include "roommatch/errors.h"
#include "roommatch/oracle.h"
#include "test_util.h"

namespace roommatch {
namespace {

constexpr UtilityModel kL = UtilityModel::kLeontief;
constexpr UtilityModel kA = UtilityModel::kAdditive;

WeightedSet Set(int a, int b, int c, Rational w) {
  const Rational third = w / 3;
  return {{a, b, c}, w, {third, third, w - 2 * third}};
}

// Micro-oracle: every subset of the sets, keep disjoint ones of the right size.
std::optional<Rational> NaiveBest(const SetPackingInstance& spi, int required) {
  const int m = static_cast<int>(spi.sets.size());
  std::optional<Rational> best;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != required) continue;
    std::vector<bool> used(static_cast<std::size_t>(spi.universe_size));
    bool ok = true;
    Rational w = 0;
    for (int s = 0; s < m && ok; ++s) {
      if (!(mask >> s & 1)) continue;
      for (int e : spi.sets[s].elements) {
        if (used[e]) ok = false;
        used[e] = true;
      }
      w += spi.sets[s].weight;
    }
    if (ok && (!best || w > *best)) best = w;
  }
  return best;
}

void ExpectDisjoint(const SetPackingInstance& spi, const Packing& p) {
  std::vector<bool> used(static_cast<std::size_t>(spi.universe_size));
  for (int s : p.chosen) {
    for (int e : spi.sets[s].elements) {
      EXPECT_FALSE(used[e]);
      used[e] = true;
    }
  }
}

TEST(ReduceTest, SetCounts) {
  EXPECT_EQ(Reduce(Instance::Zero(1), kL).sets.size(), 1u);
  EXPECT_EQ(Reduce(Instance::Zero(2), kL).sets.size(), 12u);
  EXPECT_EQ(Reduce(Instance::Zero(2), kL).universe_size, 6);
}

TEST(ReduceTest, CycleOfFourAdditiveWeights) {
  const SetPackingInstance spi = Reduce(testing::CycleOfFour(0), kA);
  int ones = 0;
  int zeros = 0;
  for (const WeightedSet& s : spi.sets) {
    if (s.weight == 1) ++ones;
    if (s.weight == 0) ++zeros;
  }
  EXPECT_EQ(ones, 8);
  EXPECT_EQ(zeros, 4);
}

TEST(ReduceTest, ModelOnlyChangesWeights) {
  std::mt19937_64 rng(1);
  const Instance inst = testing::RandomBinary(3, 0.5, false, rng);
  const auto a = Reduce(inst, kA);
  const auto l = Reduce(inst, kL);
  ASSERT_EQ(a.sets.size(), l.sets.size());
  for (std::size_t k = 0; k < a.sets.size(); ++k) {
    EXPECT_EQ(a.sets[k].elements, l.sets[k].elements);
  }
}

TEST(SolveMaxWeightTest, SingleSet) {
  SetPackingInstance spi{3, {Set(0, 1, 2, Rational(7, 2))}};
  const MaxWeightResult r = SolveMaxWeight(spi, 1);
  EXPECT_EQ(r.weight, Rational(7, 2));
  EXPECT_EQ(r.packing.chosen, std::vector<int>{0});
}

TEST(SolveMaxWeightTest, CycleOfFour) {
  const Instance cycle = testing::CycleOfFour(0);
  const SetPackingInstance spi = Reduce(cycle, kA);
  const MaxWeightResult r = SolveMaxWeight(spi, 2);
  EXPECT_EQ(r.weight, 2);
  EXPECT_EQ(Welfare(cycle, kA, MatchingFromPacking(spi, r.packing, 2)), 2);
}

TEST(SolveMaxWeightTest, InfeasibleThrows) {
  SetPackingInstance spi{6, {Set(0, 1, 2, 1), Set(2, 3, 4, 1)}};
  EXPECT_THROW(SolveMaxWeight(spi, 2), std::invalid_argument);
  spi.sets.push_back(Set(0, 0, 1, 1));
  EXPECT_THROW(SolveMaxWeight(spi, 1), std::invalid_argument);
}

TEST(SolveMaxWeightTest, MatchesMicroOracle) {
  std::mt19937_64 rng(17);
  const std::vector<Rational> grid = {0, 1, 2, Rational(1, 2), Rational(5, 3)};
  std::uniform_int_distribution<int> pick_w(0, 4);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int universe = 6 + trial % 7;
    std::uniform_int_distribution<int> pick_e(0, universe - 1);
    std::uniform_int_distribution<int> pick_m(1, 12);
    SetPackingInstance spi{universe, {}};
    const int m = pick_m(rng);
    while (static_cast<int>(spi.sets.size()) < m) {
      const int a = pick_e(rng), b = pick_e(rng), c = pick_e(rng);
      if (a == b || b == c || a == c) continue;
      spi.sets.push_back(Set(a, b, c, grid[pick_w(rng)]));
    }
    for (int required = 0; required <= universe / 3; ++required) {
      const std::optional<Rational> want = NaiveBest(spi, required);
      if (!want) {
        EXPECT_THROW(SolveMaxWeight(spi, required), std::invalid_argument);
        continue;
      }
      const MaxWeightResult got = SolveMaxWeight(spi, required);
      ASSERT_EQ(got.weight, *want) << "trial " << trial << " k=" << required;
      EXPECT_EQ(static_cast<int>(got.packing.chosen.size()), required);
      EXPECT_EQ(PackingWeight(spi, got.packing), got.weight);
      ExpectDisjoint(spi, got.packing);
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(SolveMaxWeightTest, EqualsOracleAndReconstructs) {
  std::mt19937_64 rng(23);
  const std::vector<Rational> grid = {0, 1, 2, Rational(1, 2)};
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const Instance inst = trial % 2 == 0
                              ? testing::RandomBinary(n, 0.4, false, rng)
                              : testing::RandomGrid(n, grid, rng);
    for (UtilityModel m : {kL, kA}) {
      const SetPackingInstance spi = Reduce(inst, m);
      const MaxWeightResult r = SolveMaxWeight(spi, n);
      EXPECT_EQ(r.weight, MaxWelfare(inst, m).max_welfare);
      EXPECT_EQ(Welfare(inst, m, MatchingFromPacking(spi, r.packing, n)), r.weight);
    }
  }
}

TEST(SolveMaxWeightTest, Deterministic) {
  std::mt19937_64 rng(29);
  const Instance inst = testing::RandomBinary(4, 0.5, true, rng);
  const SetPackingInstance spi = Reduce(inst, kL);
  EXPECT_EQ(SolveMaxWeight(spi, 4).packing.chosen,
            SolveMaxWeight(spi, 4).packing.chosen);
}

TEST(SolveFeasibilityTest, Basics) {
  EXPECT_FALSE(SolveFeasibility(6, {}, 1).has_value());
  EXPECT_TRUE(SolveFeasibility(6, {}, 0).has_value());
  // The triples of one full matching, n = 2: agents 0..3, rooms 4, 5.
  const std::vector<std::array<int, 3>> sets = {{0, 3, 5}, {1, 2, 4}};
  const auto p = SolveFeasibility(6, sets, 2);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->chosen, (std::vector<int>{0, 1}));
  EXPECT_FALSE(SolveFeasibility(6, {{0, 1, 4}, {1, 2, 5}}, 2).has_value());
}

TEST(SolveFeasibilityTest, FirstInSearchOrder) {
  const std::vector<std::array<int, 3>> sets = {
      {2, 3, 5}, {0, 1, 4}, {0, 2, 4}, {1, 3, 5}};
  const auto p = SolveFeasibility(6, sets, 2);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->chosen, (std::vector<int>{0, 1}));
}

TEST(SolveFeasibilityTest, AgreesWithMicroOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int universe = 6 + trial % 7;
    std::uniform_int_distribution<int> pick_e(0, universe - 1);
    SetPackingInstance spi{universe, {}};
    std::vector<std::array<int, 3>> raw;
    while (raw.size() < 10) {
      const int a = pick_e(rng), b = pick_e(rng), c = pick_e(rng);
      if (a == b || b == c || a == c) continue;
      raw.push_back({a, b, c});
      spi.sets.push_back(Set(a, b, c, 0));
    }
    for (int required = 0; required <= universe / 3; ++required) {
      const auto got = SolveFeasibility(universe, raw, required);
      EXPECT_EQ(got.has_value(), NaiveBest(spi, required).has_value());
      if (got) ExpectDisjoint(spi, *got);
    }
  }
}

TEST(GreedyTest, PicksHeavySetsFirst) {
  SetPackingInstance spi{6, {Set(0, 1, 2, 1), Set(1, 2, 3, 5), Set(3, 4, 5, 2)}};
  EXPECT_EQ(GreedyPacking(spi).chosen, std::vector<int>{1});
  EXPECT_EQ(PackingWeight(spi, GreedyPacking(spi)), 5);
}

TEST(JsonTest, RoundTrip) {
  SetPackingInstance spi{6, {Set(0, 1, 2, Rational(1, 2)), Set(3, 4, 5, 2)}};
  const nlohmann::json j = SetPackingToJson(spi);
  EXPECT_EQ(j["sets"][0][3], "1/2");
  const SetPackingInstance back = SetPackingFromJson(j);
  ASSERT_EQ(back.sets.size(), 2u);
  EXPECT_EQ(back.sets[0].weight, Rational(1, 2));
  EXPECT_EQ(back.sets[1].elements, (std::array<int, 3>{3, 4, 5}));
  EXPECT_THROW(SetPackingFromJson(nlohmann::json::parse(
                   R"({"universe":3,"sets":[[0,1,1,"1"]]})")),
               ParseError);
}

}  // namespace
}  // namespace roommatch
