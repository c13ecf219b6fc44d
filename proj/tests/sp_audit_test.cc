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

#include "roommatch/sp_audit.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "roommatch/errors.h"
#include "roommatch/generators.h"
#include "roommatch/oracle.h"
#include "test_util.h"

namespace roommatch {
namespace {

constexpr auto kLeontief = UtilityModel::kLeontief;
constexpr auto kAdditive = UtilityModel::kAdditive;

std::vector<Rational> Concat(const Misreport& m) {
  std::vector<Rational> out = m.compat_row;
  out.insert(out.end(), m.room_row.begin(), m.room_row.end());
  return out;
}

TEST(MisreportTest, EnumeratesEveryReportOnceInOrder) {
  const Instance inst = testing::CycleOfFour(1);
  const MisreportDomain domain = MisreportDomain::BinaryAll();
  EXPECT_EQ(MisreportCount(inst, domain), 32u);
  for (int agent = 0; agent < 4; ++agent) {
    std::vector<std::vector<Rational>> seen;
    ForEachMisreport(inst, agent, domain, [&](const Misreport& m) {
      EXPECT_EQ(m.compat_row[static_cast<std::size_t>(agent)], 0);
      seen.push_back(Concat(m));
      return true;
    });
    EXPECT_EQ(seen.size(), 32u);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(std::set(seen.begin(), seen.end()).size(), 32u);
  }
}

TEST(MisreportTest, StopsWhenVisitorDeclines) {
  int visits = 0;
  ForEachMisreport(testing::CycleOfFour(1), 0, MisreportDomain::BinaryAll(),
                   [&](const Misreport&) { return ++visits < 5; });
  EXPECT_EQ(visits, 5);
}

TEST(MisreportTest, SymmetricDomainKeepsRoommateValues) {
  const Instance inst = testing::HubInstance(true);
  EXPECT_EQ(MisreportCount(inst, MisreportDomain::BinarySymmetric()), 4u);
  ForEachMisreport(inst, 1, MisreportDomain::BinarySymmetric(), [&](const Misreport& m) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m.compat_row[static_cast<std::size_t>(j)], inst.compat(1, j));
    return true;
  });
}

TEST(MisreportTest, GridDomain) {
  const Instance inst = testing::CycleOfFour(1);
  const MisreportDomain grid = MisreportDomain::Grid({0, 1, 3});
  EXPECT_EQ(MisreportCount(inst, grid), 243u);
  EXPECT_NO_THROW(CheckDomain(inst, grid));
  EXPECT_THROW(CheckDomain(inst, MisreportDomain::Grid({1, 0})), std::invalid_argument);
  EXPECT_EQ(ParseMisreportDomain("grid").name(), "grid");
  EXPECT_EQ(ParseMisreportDomain("binary-symmetric").name(), "binary-symmetric");
  EXPECT_THROW(ParseMisreportDomain("all"), ParseError);
}

TEST(AuditTest, RejectsOutOfDomainAndOversized) {
  EXPECT_THROW(Audit("triangle-then-l", testing::CycleOfFour(2), kLeontief,
                     MisreportDomain::BinaryAll()),
               std::invalid_argument);
  EXPECT_THROW(Audit("triangle-then-l", testing::HubInstance(false), kLeontief,
                     MisreportDomain::BinarySymmetric()),
               std::invalid_argument);
  std::mt19937_64 rng(1);
  EXPECT_THROW(Audit("triangle-then-l", testing::RandomBinary(4, 0.5, false, rng),
                     kLeontief, MisreportDomain::BinaryAll()),
               CapExceededError);
}

// The parity rule is manipulable on its fixture; the witness is re-checked
// by hand against the mechanism's outputs.
TEST(AuditTest, ParityRuleHasWitness) {
  const Figure fig = GenFigure({FigureFamily::kParity});
  const AuditReport report = Audit("parity", fig.instance, kLeontief,
                                   MisreportDomain::BinaryAll());
  ASSERT_TRUE(report.witness.has_value());
  const ManipulationWitness& w = *report.witness;
  EXPECT_EQ(w.agent, 0);
  EXPECT_EQ(w.honest_utility, 0);
  EXPECT_EQ(w.deviating_utility, 1);
  const Mechanism parity = MakeMechanism("parity");
  EXPECT_TRUE(Reverify(parity, fig.instance, kLeontief, {}, w));
  const Instance lied = fig.instance.WithReport(0, w.misreport_v, w.misreport_vhat);
  const Matching after = parity(lied, kLeontief, {}).matching;
  EXPECT_EQ(AgentUtility(fig.instance, kLeontief, after, 0), 1);

  ManipulationWitness forged = w;
  forged.deviating_utility = 2;
  EXPECT_FALSE(Reverify(parity, fig.instance, kLeontief, {}, forged));

  const nlohmann::json j = AuditReportToJson(report);
  EXPECT_EQ(j.at("witness").at("agent"), 0);
  EXPECT_EQ(j.at("searched"), report.searched);
}

// Welfare-maximizing SP rules for binary Leontief, plus the triangle rule.
TEST(AuditTest, StrategyproofRulesOnRandomSmallInstances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::RandomBinary(2, 0.45, false, rng);
    for (const char* id : {"triangle-then-l", "welfare-set-reduction",
                           "precedence-search", "lt-sd"}) {
      const AuditReport report = Audit(id, inst, kLeontief, MisreportDomain::BinaryAll());
      EXPECT_FALSE(report.witness.has_value()) << id << " trial " << trial;
      EXPECT_EQ(report.searched, 4u * 32u);
    }
  }
}

// Serial rules must be truthful under every priority order.
TEST(AuditTest, LtSerialDictatorshipUnderEveryOrder) {
  std::mt19937_64 rng(3);
  std::vector<int> sigma = {0, 1, 2, 3};
  for (int trial = 0; trial < 6; ++trial) {
    const Instance inst = testing::RandomBinary(2, 0.5, false, rng);
    do {
      MechanismOptions options;
      options.sigma = sigma;
      const AuditReport report =
          Audit("lt-sd", inst, kLeontief, MisreportDomain::BinaryAll(), options);
      EXPECT_FALSE(report.witness.has_value());
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

// Reported welfare of a fixed matching moves only against the reporter:
// down if it is satisfied, up if not. Every matching and report at n = 2.
TEST(ObservationTest, HoldsExhaustivelyOnSmallCorpus) {
  std::mt19937_64 rng(5);
  const std::vector<Matching> all = MatchingEnumerator(2).All();
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = testing::RandomBinary(2, 0.5, trial % 2 == 0, rng);
    for (int agent = 0; agent < 4; ++agent) {
      ForEachMisreport(inst, agent, MisreportDomain::BinaryAll(), [&](const Misreport& m) {
        for (const Matching& mu : all) EXPECT_TRUE(CheckObservation1(inst, agent, mu, m));
        return true;
      });
    }
  }
  EXPECT_THROW(CheckObservation1(testing::CycleOfFour(2), 0, all[0],
                                 {{0, 1, 0, 0}, {1, 1}}),
               std::invalid_argument);
}

TEST(ImpossibilityTest, FourCycleForcesAlternatingPairings) {
  for (UtilityModel model : {kAdditive, kLeontief}) {
    for (Rational alpha : {Rational(1), Rational(1, 2), Rational(1, 4)}) {
      const ImpossibilityReport rep =
          ReproduceImpossibility(ImpossibilityFamily::kFig5, model, alpha);
      EXPECT_TRUE(rep.verified) << FormatRational(alpha);
      EXPECT_EQ(rep.honest_max, 2);
      EXPECT_EQ(rep.honest_optima.size(), 4u);
      ASSERT_TRUE(rep.beta.has_value());
      EXPECT_EQ(*rep.beta, 2 / alpha);
      ASSERT_EQ(rep.steps.size(), 2u);
      for (const DeviationStep& s : rep.steps) {
        EXPECT_TRUE(s.forced);
        EXPECT_EQ(s.utility_before, 0);
        EXPECT_GT(s.utility_after, 0);
        EXPECT_EQ(s.passing.size(), 2u);
      }
    }
  }
}

TEST(ImpossibilityTest, HubInstancesForceUniqueOptimum) {
  const ImpossibilityReport plain =
      ReproduceImpossibility(ImpossibilityFamily::kFig6, kAdditive, Rational(3, 4));
  EXPECT_TRUE(plain.verified);
  EXPECT_EQ(plain.honest_max, 2);
  for (const DeviationStep& s : plain.steps) {
    EXPECT_EQ(s.misreported_max, 3);
    ASSERT_EQ(s.passing.size(), 1u);
  }
  const ImpossibilityReport sym =
      ReproduceImpossibility(ImpossibilityFamily::kFig6Symmetric, kAdditive, Rational(4, 5));
  EXPECT_TRUE(sym.verified);
  EXPECT_EQ(sym.honest_max, 3);
  for (const DeviationStep& s : sym.steps) EXPECT_EQ(s.misreported_max, 4);

  EXPECT_THROW(ReproduceImpossibility(ImpossibilityFamily::kFig6, kAdditive, Rational(2, 3)),
               std::invalid_argument);
  EXPECT_THROW(ReproduceImpossibility(ImpossibilityFamily::kFig6Symmetric, kAdditive,
                                      Rational(3, 4)),
               std::invalid_argument);
  EXPECT_THROW(ReproduceImpossibility(ImpossibilityFamily::kFig6, kLeontief, 1),
               std::invalid_argument);
  EXPECT_THROW(ReproduceImpossibility(ImpossibilityFamily::kFig5, kLeontief, 0),
               std::invalid_argument);
}

// At or below the threshold the deviation no longer forces a single outcome.
TEST(ImpossibilityTest, ThresholdIsSharp) {
  const Instance inst = GenFigure({FigureFamily::kFig6}).instance;
  Misreport m{{0, 1, 0, 0}, {1, 0}};
  const Instance lied = inst.WithReport(0, m.compat_row, m.room_row);
  int passing = 0;
  for (const Matching& mu : MatchingEnumerator(2).All()) {
    if (Welfare(lied, kAdditive, mu) >= Rational(2, 3) * 3) ++passing;
  }
  EXPECT_GT(passing, 1);
}

TEST(ImpossibilityTest, JsonAndParse) {
  EXPECT_EQ(ParseImpossibilityFamily("fig6-symmetric"), ImpossibilityFamily::kFig6Symmetric);
  EXPECT_THROW(ParseImpossibilityFamily("fig4"), ParseError);
  const nlohmann::json j = ImpossibilityReportToJson(
      ReproduceImpossibility(ImpossibilityFamily::kFig5, kLeontief, Rational(1, 2)));
  EXPECT_EQ(j.at("beta"), "4");
  EXPECT_EQ(j.at("verified"), true);
  EXPECT_EQ(j.at("steps").size(), 2u);
}

}  // namespace
}  // namespace roommatch
