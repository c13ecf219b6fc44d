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

#include "roommatch/instance.h"

#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "roommatch/errors.h"
#include "roommatch/json_io.h"
#include "roommatch/oracle.h"
#include "test_util.h"

namespace roommatch {
namespace {

using ::roommatch::testing::CycleOfFour;
using ::roommatch::testing::FromEdges;
using ::roommatch::testing::HubInstance;

constexpr UtilityModel kL = UtilityModel::kLeontief;
constexpr UtilityModel kA = UtilityModel::kAdditive;

TEST(RationalTest, ParsesAndFormats) {
  EXPECT_EQ(ParseRational("3"), Rational(3));
  EXPECT_EQ(ParseRational("6/4"), Rational(3, 2));
  EXPECT_EQ(ParseRational(" +2/3 "), Rational(2, 3));
  EXPECT_EQ(FormatRational(Rational(4, 6)), "2/3");
  EXPECT_EQ(FormatRational(Rational(5)), "5");
  EXPECT_EQ(FormatDecimal(Rational(1, 3)), "0.333333");
  EXPECT_THROW(ParseRational("1/0"), ParseError);
  EXPECT_THROW(ParseRational("x"), ParseError);
  EXPECT_THROW(ParseRational("1/2/3"), ParseError);
}

TEST(RationalTest, CommonDenominator) {
  const std::vector<Rational> v = {Rational(1, 4), Rational(5, 6), Rational(2)};
  EXPECT_EQ(CommonDenominator(v), 12);
}

TEST(InstanceTest, RejectsBadShapes) {
  Instance::Matrix v(4, std::vector<Rational>(4));
  Instance::Matrix h(4, std::vector<Rational>(2));
  v[1][1] = 1;
  EXPECT_THROW(Instance(2, v, h), std::invalid_argument);
  v[1][1] = 0;
  v[0][1] = -1;
  EXPECT_THROW(Instance(2, v, h), std::invalid_argument);
  v[0][1] = 0;
  h.pop_back();
  EXPECT_THROW(Instance(2, v, h), std::invalid_argument);
  EXPECT_THROW(Instance::Zero(0), std::invalid_argument);
}

TEST(UtilityTest, LeontiefAndAdditive) {
  const Instance cycle = CycleOfFour(1);
  EXPECT_EQ(Utility(cycle, kL, 0, 1, 0), 1);
  EXPECT_EQ(Utility(cycle, kL, 1, 0, 0), 0);  // min with a zero
  EXPECT_EQ(Utility(cycle, kA, 0, 1, 0), 2);
  EXPECT_THROW(Utility(cycle, kL, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(Utility(cycle, kL, 0, 4, 0), std::out_of_range);
  EXPECT_THROW(Utility(cycle, kL, 0, 1, 2), std::out_of_range);
}

TEST(WelfareTest, CycleOfFourAdditive) {
  const Instance cycle = CycleOfFour(0);
  EXPECT_EQ(Welfare(cycle, kA, Matching(2, {{0, 1, 0}, {2, 3, 1}})), 2);
  EXPECT_EQ(Welfare(cycle, kA, Matching(2, {{0, 2, 0}, {1, 3, 1}})), 0);
  EXPECT_EQ(Welfare(cycle, kA, Matching(2, {{0, 2, 1}, {1, 3, 0}})), 0);
}

TEST(WelfareTest, HubWithReturnEdges) {
  const Instance hub = HubInstance(true);
  EXPECT_EQ(Welfare(hub, kA, Matching(2, {{0, 1, 0}, {2, 3, 1}})), 3);
}

TEST(MatchingTest, RejectsNonPartitions) {
  EXPECT_THROW(Matching(2, {{0, 1, 0}, {1, 2, 1}}), std::invalid_argument);
  EXPECT_THROW(Matching(2, {{0, 1, 0}, {2, 3, 0}}), std::invalid_argument);
  EXPECT_THROW(Matching(2, {{0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(Matching(2, {{0, 1, 0}, {2, 4, 1}}), std::invalid_argument);
}

TEST(MatchingTest, CanonicalForm) {
  const Matching mu(2, {{3, 2, 1}, {1, 0, 0}});
  ASSERT_EQ(mu.triples().size(), 2u);
  EXPECT_EQ(mu.triple_of_room(0), (Triple{0, 1, 0}));
  EXPECT_EQ(mu.triple_of_room(1), (Triple{2, 3, 1}));
  EXPECT_EQ(mu.partner_of(3), 2);
  EXPECT_EQ(mu.room_of(3), 1);
  EXPECT_EQ(mu, Matching(2, {{0, 1, 0}, {2, 3, 1}}));
}

TEST(ClassifyTest, Shapes) {
  testing::Edges e;
  e.agent = {{0, 1}, {1, 0}, {2, 3}};
  e.room = {{0, 0}, {1, 0}, {2, 1}};
  const Instance inst = FromEdges(2, e);
  EXPECT_EQ(Classify(inst, 0, 1, 0).kind, TripleShape::Kind::kTriangle);
  const TripleShape l = Classify(FromEdges(2, {{{0, 1}, {1, 0}}, {{0, 0}}}), 0, 1, 0);
  EXPECT_EQ(l.kind, TripleShape::Kind::kL);
  EXPECT_EQ(l.satisfied_agent, 0);
  EXPECT_EQ(Classify(inst, 2, 3, 1).kind, TripleShape::Kind::kOther);
  EXPECT_EQ(Classify(inst, 0, 1, 1).kind, TripleShape::Kind::kOther);
  EXPECT_THROW(Classify(FromEdges(2, e, Rational(1, 2)), 0, 1, 0),
               std::invalid_argument);
}

TEST(PredicatesTest, BinaryAndSymmetric) {
  EXPECT_TRUE(Instance::Zero(2).is_binary());
  EXPECT_TRUE(Instance::Zero(2).is_symmetric());
  EXPECT_FALSE(FromEdges(2, {{{0, 1}}, {}}, Rational(1, 2)).is_binary());
  EXPECT_FALSE(HubInstance(false).is_symmetric());
  EXPECT_TRUE(FromEdges(2, {{{0, 1}, {1, 0}}, {}}).is_symmetric());
}

TEST(PreferenceGraphTest, Edges) {
  EXPECT_TRUE(BuildPreferenceGraph(Instance::Zero(3)).edges.empty());
  const PreferenceGraph g = BuildPreferenceGraph(HubInstance(false));
  // a1 -> a2, a2 -> r1 (vertex 4 + 0), a3 -> a2.
  const std::vector<PrefEdge> want = {{0, 1}, {1, 4}, {2, 1}};
  EXPECT_EQ(g.edges, want);
  EXPECT_TRUE(g.edges[1].to_room(4));

  const PreferenceGraph s =
      BuildPreferenceGraph(FromEdges(2, {{{0, 2}, {2, 0}}, {}}));
  EXPECT_EQ(s.edges, (std::vector<PrefEdge>{{0, 2}, {2, 0}}));
  EXPECT_THROW(BuildPreferenceGraph(FromEdges(2, {{{0, 2}}, {}}, 2)),
               std::invalid_argument);
}

TEST(JsonTest, InstanceRoundTrip) {
  testing::Edges e;
  e.agent = {{0, 3}, {2, 1}};
  e.room = {{1, 1}};
  const Instance inst = FromEdges(2, e, Rational(3, 7));
  const nlohmann::json j = InstanceToJson(inst);
  EXPECT_EQ(j["v"][0][3], "3/7");
  EXPECT_EQ(j["v"][0][0], 0);
  EXPECT_EQ(InstanceFromJson(j), inst);
  EXPECT_EQ(InstanceFromJson(ParseJsonText(j.dump())), inst);
}

TEST(JsonTest, RejectsMalformed) {
  EXPECT_THROW(ParseJsonText("{"), ParseError);
  EXPECT_THROW(InstanceFromJson(nlohmann::json::object()), ParseError);
  EXPECT_THROW(InstanceFromJson(ParseJsonText(
                   R"({"n":1,"v":[[1,0],[0,0]],"v_hat":[[0],[0]]})")),
               ParseError);
  EXPECT_THROW(InstanceFromJson(ParseJsonText(
                   R"({"n":1,"v":[[0,"a"],[0,0]],"v_hat":[[0],[0]]})")),
               ParseError);
  EXPECT_THROW(MatchingFromJson(ParseJsonText(R"({"triples":[[0,0,0]]})"), 1),
               ParseError);
}

TEST(JsonTest, MatchingRoundTripsForEveryMatching) {
  for (int n = 1; n <= 3; ++n) {
    MatchingEnumerator(n).ForEach([&](const Matching& mu) {
      EXPECT_EQ(MatchingFromJson(ParseJsonText(MatchingToJson(mu).dump()), n), mu);
    });
  }
}

// Relabeling agents and rooms, and mapping the matching along, keeps welfare.
TEST(PropertyTest, WelfareIsPermutationEquivariant) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const std::vector<Rational> grid = {0, 1, Rational(1, 2), 3};
    const Instance inst = testing::RandomGrid(n, grid, rng);
    std::vector<int> pa(static_cast<std::size_t>(2 * n));
    std::vector<int> pr(static_cast<std::size_t>(n));
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pr.begin(), pr.end(), 0);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pr.begin(), pr.end(), rng);
    Instance::Matrix v(pa.size(), std::vector<Rational>(pa.size()));
    Instance::Matrix h(pa.size(), std::vector<Rational>(pr.size()));
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) v[pa[i]][pa[j]] = inst.compat(i, j);
      for (int r = 0; r < n; ++r) h[pa[i]][pr[r]] = inst.room_value(i, r);
    }
    const Instance relabeled(n, v, h);
    MatchingEnumerator(n).ForEach([&](const Matching& mu) {
      std::vector<Triple> moved;
      for (const Triple& t : mu.triples()) {
        moved.push_back(Triple::Make(pa[t.agent_lo], pa[t.agent_hi], pr[t.room]));
      }
      const Matching image(n, moved);
      for (UtilityModel m : {kL, kA}) {
        ASSERT_EQ(Welfare(inst, m, mu), Welfare(relabeled, m, image));
      }
    });
  }
}

TEST(PropertyTest, BinaryUtilityRangesAndLeontiefBelowAdditive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::RandomBinary(2, 0.5, trial % 2 == 0, rng);
    MatchingEnumerator(2).ForEach([&](const Matching& mu) {
      const auto lu = AgentUtilities(inst, kL, mu);
      const auto au = AgentUtilities(inst, kA, mu);
      for (std::size_t i = 0; i < lu.size(); ++i) {
        EXPECT_TRUE(lu[i] == 0 || lu[i] == 1);
        EXPECT_TRUE(au[i] >= 0 && au[i] <= 2);
        EXPECT_LE(lu[i], au[i]);
      }
    });
  }
}

TEST(IndexOrderMatchingTest, Layout) {
  const Matching mu = IndexOrderMatching(3);
  EXPECT_EQ(mu.triples(), (std::vector<Triple>{{0, 1, 0}, {2, 3, 1}, {4, 5, 2}}));
}

}  // namespace
}  // namespace roommatch
