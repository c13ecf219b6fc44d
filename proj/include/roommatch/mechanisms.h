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

// Matching mechanisms. Every mechanism is a pure function of the instance,
// the utility model, an agent ordering and policy knobs. Choices that are
// left open by the underlying procedures are resolved lexicographically on
// canonical forms, and leftovers are completed by pairing the remaining
// agents in index order with the remaining rooms in index order.

#ifndef ROOMMATCH_MECHANISMS_H_
#define ROOMMATCH_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roommatch/instance.h"
#include "roommatch/oracle.h"

namespace roommatch {

class AgentOrdering {
 public:
  // Throws std::invalid_argument unless `sigma` is a permutation of
  // 0..sigma.size()-1.
  explicit AgentOrdering(std::vector<int> sigma);
  static AgentOrdering Identity(int agents);
  // "identity" or a comma-separated permutation. Throws ParseError.
  static AgentOrdering Parse(std::string_view text, int agents);

  const std::vector<int>& sigma() const { return sigma_; }
  int size() const { return static_cast<int>(sigma_.size()); }
  int agent_at(int position) const {
    return sigma_[static_cast<std::size_t>(position)];
  }
  int position_of(int agent) const {
    return position_[static_cast<std::size_t>(agent)];
  }
  std::string ToString() const;

  bool operator==(const AgentOrdering& other) const {
    return sigma_ == other.sigma_;
  }

 private:
  std::vector<int> sigma_;
  std::vector<int> position_;
};

struct DecisionRecord {
  std::string rule;
  int agent = -1;    // first agent / source vertex, when meaningful
  int partner = -1;  // second agent / target vertex
  int room = -1;
  int tie_set_size = 1;

  bool operator==(const DecisionRecord&) const = default;
};

struct MechanismResult {
  Matching matching;
  std::vector<Rational> per_agent_utility;
  Rational welfare;
  std::vector<DecisionRecord> trace;

  bool operator==(const MechanismResult&) const = default;
};

// Evaluates `mu` and packages it with `trace`.
MechanismResult MakeResult(const Instance& inst, UtilityModel model,
                           Matching mu, std::vector<DecisionRecord> trace);

struct EdgePickPolicy {
  enum class Kind { kIndexOrder, kAgentEdgesFirst, kScripted };
  Kind kind = Kind::kIndexOrder;
  // Scripted edges (naive maximal) and scripted triples (L/T maximal) are
  // consumed first, in the given order; index order takes over afterwards.
  std::vector<PrefEdge> edges;
  std::vector<Triple> triples;

  static EdgePickPolicy IndexOrder() { return {}; }
  static EdgePickPolicy AgentEdgesFirst() {
    return {Kind::kAgentEdgesFirst, {}, {}};
  }
  static EdgePickPolicy ScriptedEdges(std::vector<PrefEdge> e) {
    return {Kind::kScripted, std::move(e), {}};
  }
  static EdgePickPolicy ScriptedTriples(std::vector<Triple> t) {
    return {Kind::kScripted, {}, std::move(t)};
  }
};

// Edge-consumption procedure on the preference graph. Room vertices are
// numbered agents() + r. Binary instances only; throws std::invalid_argument
// otherwise or when a scripted edge is not available at its turn.
MechanismResult NaiveMaximal(const Instance& inst, UtilityModel model,
                             const EdgePickPolicy& policy = {});

// Repeatedly admits an L or triangle triple among unmatched agents and rooms
// (lexicographically smallest; triangles before Ls under kAgentEdgesFirst).
MechanismResult LtMaximal(const Instance& inst, UtilityModel model,
                          const EdgePickPolicy& policy = {});

// Greedy on combined utility; ties broken by (agent_lo, agent_hi, room).
MechanismResult TriangleThenL(const Instance& inst, UtilityModel model);

// Each unmatched agent in sigma order takes the lexicographically smallest
// (partner, room) it values on both sides, if any.
MechanismResult LtSerialDictatorship(const Instance& inst, UtilityModel model,
                                     const AgentOrdering& sigma);

// Agents with nothing of value left are set aside; the others take a
// best partner (ties: earliest in sigma) and a best room (ties: lowest index).
MechanismResult WelfarePrioritizedSd(const Instance& inst, UtilityModel model,
                                     const AgentOrdering& sigma);

// S_0 = all maximum-welfare matchings; S_t keeps the members of S_{t-1} that
// are best for the t-th agent of sigma. Element t of the result is S_t.
std::vector<std::vector<Matching>> WelfareSetChain(
    const Instance& inst, UtilityModel model, const AgentOrdering& sigma,
    int oracle_cap = kDefaultOracleCap);
MechanismResult WelfareSetReduction(const Instance& inst, UtilityModel model,
                                    const AgentOrdering& sigma,
                                    int oracle_cap = kDefaultOracleCap);

// Size-k agent subsets in precedence order under sigma: lexicographic on the
// sorted sigma-positions. Subsets are returned as sorted agent lists.
std::vector<std::vector<int>> SubsetsInPrecedenceOrder(
    const AgentOrdering& sigma, int k);
// True when `a` precedes `b`: some agent of a \ b comes before every agent
// of b \ a in sigma. Both must have equal size.
bool HasHigherPrecedence(const std::vector<int>& a, const std::vector<int>& b,
                         const AgentOrdering& sigma);

// Searches utility profiles from 2n satisfied agents downwards, returning the
// first exact 3-set packing found. Binary Leontief only.
MechanismResult PrecedenceSearch(const Instance& inst, UtilityModel model,
                                 const AgentOrdering& sigma);

// Deliberately manipulable maximum-welfare rule keyed on agent `agent`.
MechanismResult ParityMechanism(const Instance& inst, UtilityModel model,
                                int agent, int oracle_cap = kDefaultOracleCap);

// Plain serial dictatorship over agents that value something: each picks a
// best remaining (partner, room); agents valuing nothing are completed last.
// `picks` may fix an agent's choice among its equally good options.
using ScriptedPicks = std::map<int, std::pair<int, int>>;  // agent -> (j, r)
MechanismResult SerialDictatorship(const Instance& inst, UtilityModel model,
                                   const AgentOrdering& sigma,
                                   const ScriptedPicks& picks = {});

// Registry keyed by stable identifiers.
struct MechanismOptions {
  std::vector<int> sigma;  // empty means identity
  EdgePickPolicy policy;
  ScriptedPicks picks;
  int parity_agent = 0;
  int oracle_cap = kDefaultOracleCap;
};
using Mechanism = std::function<MechanismResult(
    const Instance&, UtilityModel, const MechanismOptions&)>;

// naive-maximal, naive-maximal-agent-first, lt-maximal, triangle-then-l,
// lt-sd, wp-sd, welfare-set-reduction, precedence-search, parity,
// serial-dictatorship.
const std::vector<std::string>& MechanismIds();
bool IsMechanismId(std::string_view id);
// Throws ParseError for an unknown id.
Mechanism MakeMechanism(std::string_view id);

}  // namespace roommatch

#endif  // ROOMMATCH_MECHANISMS_H_
