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

// Instance constructors: seeded random families, the worst-case and
// impossibility fixtures, the serial-dictatorship family and the Max-3SAT
// gadget.

#ifndef ROOMMATCH_GENERATORS_H_
#define ROOMMATCH_GENERATORS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "roommatch/instance.h"
#include "roommatch/mechanisms.h"

namespace roommatch {

// Binary instance; every valuation is 1 independently with probability
// `density`. Draws come from mt19937_64 in row order (all of v, then all of
// v_hat); symmetric mode draws only j > i and mirrors.
Instance GenRandom(int n, double density, bool symmetric, std::uint64_t seed);

// Every valuation drawn uniformly from `grid` (off-diagonal v, then v_hat).
Instance GenGrid(int n, const std::vector<Rational>& grid, std::uint64_t seed);

enum class FigureFamily {
  kFig2,           // naive maximal, Leontief, ratio 0
  kFig3,           // naive maximal, additive, ratio 1/4
  kFig4,           // L/T maximal, Leontief, ratio 1/6
  kFig5,           // four-cycle impossibility instance
  kFig6,           // binary additive impossibility instance
  kFig6Symmetric,  // its symmetric variant
  kBadSd,          // plain serial dictatorship family, parameter k
  kFig7,           // 3SAT gadget for (!x1 | x2)(x1 | !x2)
  kParity,         // manipulable instance for the parity rule
};

struct FigureSpec {
  FigureFamily family = FigureFamily::kFig2;
  UtilityModel model = UtilityModel::kLeontief;  // Fig5 only
  int k = 1;                                     // BadSd only
};

// "fig2", "fig3", "fig4", "fig5", "fig6", "fig6-symmetric", "badsd:<k>",
// "fig7", "parity". Fig5 takes its model from `model`. Throws ParseError.
FigureSpec ParseFigureSpec(std::string_view name,
                           UtilityModel model = UtilityModel::kLeontief);
std::string FigureName(const FigureSpec& spec);
std::vector<std::string> FigureNames();

struct Figure {
  std::string name;
  Instance instance = Instance::Zero(1);
  UtilityModel model = UtilityModel::kLeontief;
  // Adversarial run reproducing the stated outcome; empty when the fixture
  // is not about a mechanism.
  std::string mechanism;
  MechanismOptions options;
  // Values stated for the family by its source. Keys: "oracle_max",
  // "optimal_count", "mechanism_welfare", "ratio".
  std::map<std::string, Rational> claimed;
};

// Throws std::invalid_argument for k < 1.
Figure GenFigure(const FigureSpec& spec);

// Recomputes every key present in `fig.claimed`. The optimum comes from the
// oracle when the instance fits `oracle_cap`, otherwise from set packing
// ("optimal_count" is then omitted).
std::map<std::string, Rational> MeasureFigure(const Figure& fig,
                                              int oracle_cap = kDefaultOracleCap);

// ---------------------------------------------------------------------------
// Max-3SAT gadget.

struct Literal {
  int var = 0;
  bool positive = true;
  bool operator==(const Literal&) const = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<Literal>> clauses;
};

// Throws std::invalid_argument unless every clause has exactly
// `clause_size` literals over distinct in-range variables and every
// variable occurs somewhere. clause_size 0 accepts 1..3.
void ValidateCnf(const Cnf& cnf, int clause_size = 3);

// "1 -2 3; -1 2 3" style, clauses separated by ';', variables 1-based.
Cnf ParseCnf(std::string_view text);
std::string FormatCnf(const Cnf& cnf);

struct VariableGadget {
  std::vector<int> a_agents;    // a_{i1..id}
  std::vector<int> b_agents;    // b_{i1..i2d}; position 0 is b_{i1} (odd)
  std::vector<int> rooms;       // r_{i1..id}
  std::vector<int> occurrence_clause;  // clause of the t-th occurrence
};

struct ReductionMap {
  std::vector<int> clause_agents;
  std::vector<int> clause_rooms;
  std::vector<VariableGadget> variables;
  std::vector<int> dummy_rooms;
  int dummy_agent = -1;
};

struct Reduction {
  Instance instance = Instance::Zero(1);
  ReductionMap map;
};

// Binary symmetric instance whose Leontief optimum is
// (total occurrences) + (max satisfiable clauses). Clauses of one to three
// literals are accepted; the hardness statement uses three.
Reduction FromClauses(const Cnf& cnf);
// Same, but insists on exactly three literals per clause.
Reduction From3Sat(const Cnf& cnf);

// Brute force over assignments. Throws std::invalid_argument above 20
// variables.
int SatMaxClauses(const Cnf& cnf);
int SatisfiedClauses(const Cnf& cnf, const std::vector<bool>& assignment);

// Matching with welfare (total occurrences) + SatisfiedClauses(assignment).
Matching AssignmentToMatching(const Cnf& cnf, const Reduction& red,
                              const std::vector<bool>& assignment);
// A variable is true when one of its odd b-agents shares a room with a clause
// agent, false when an even one does, and false by default.
std::vector<bool> MatchingToAssignment(const Reduction& red, const Matching& mu);

// True when, inside every variable gadget, the b-agents with Leontief utility
// 1 under `mu` are all odd or all even.
bool OddEvenConsistent(const Reduction& red, const Matching& mu);

nlohmann::json ReductionMapToJson(const ReductionMap& map);

}  // namespace roommatch

#endif  // ROOMMATCH_GENERATORS_H_
