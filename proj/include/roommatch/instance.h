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

// Core data model: instances with 2n agents and n rooms, roommate matchings
// (partitions into n agent-agent-room triples), per-agent utilities under
// Leontief or additive aggregation, and structural predicates on binary
// instances.
//
// Agents are indexed 0..2n-1 and rooms 0..n-1. All values are exact
// rationals so that welfare comparisons and argmax ties are decided exactly.

#ifndef ROOMMATCH_INSTANCE_H_
#define ROOMMATCH_INSTANCE_H_

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roommatch/rational.h"

namespace roommatch {

enum class UtilityModel { kLeontief, kAdditive };

std::string_view UtilityModelName(UtilityModel model);
// "leontief" / "additive"; throws ParseError otherwise.
UtilityModel ParseUtilityModel(std::string_view name);

// An immutable problem instance.
//
// compat(i, j) is agent i's value for having j as roommate (zero diagonal);
// room_value(i, r) is agent i's value for room r. All entries are >= 0.
class Instance {
 public:
  using Matrix = std::vector<std::vector<Rational>>;

  // Validates shapes, the zero diagonal and non-negativity; throws
  // std::invalid_argument on violation.
  Instance(int n, Matrix compat, Matrix room_values,
           std::map<std::string, std::string> labels = {});

  // All-zero instance with n rooms.
  static Instance Zero(int n);

  int rooms() const { return n_; }
  int agents() const { return 2 * n_; }

  const Rational& compat(int i, int j) const {
    return compat_[static_cast<std::size_t>(i * agents() + j)];
  }
  const Rational& room_value(int i, int r) const {
    return rooms_[static_cast<std::size_t>(i * n_ + r)];
  }
  std::span<const Rational> compat_row(int i) const {
    return {compat_.data() + i * agents(), static_cast<std::size_t>(agents())};
  }
  std::span<const Rational> room_row(int i) const {
    return {rooms_.data() + i * n_, static_cast<std::size_t>(n_)};
  }
  const std::map<std::string, std::string>& labels() const { return labels_; }

  Matrix compat_matrix() const;
  Matrix room_matrix() const;

  // Copy of this instance in which agent i reports the given rows instead of
  // its own. compat_row must have agents() entries with compat_row[i] == 0.
  Instance WithReport(int i, std::span<const Rational> compat_row,
                      std::span<const Rational> room_row) const;

  bool is_binary() const;
  bool is_symmetric() const;

  bool operator==(const Instance& other) const = default;

 private:
  int n_;
  std::vector<Rational> compat_;  // row-major agents() x agents()
  std::vector<Rational> rooms_;   // row-major agents() x n
  std::map<std::string, std::string> labels_;
};

inline bool IsBinary(const Instance& inst) { return inst.is_binary(); }
inline bool IsSymmetric(const Instance& inst) { return inst.is_symmetric(); }

// Two agents and a room, stored with agent_lo < agent_hi.
struct Triple {
  int agent_lo = 0;
  int agent_hi = 0;
  int room = 0;

  // Orients (a, b) so that agent_lo < agent_hi. Throws on a == b.
  static Triple Make(int a, int b, int room);

  auto operator<=>(const Triple&) const = default;
};

// A complete roommate matching: every agent and every room lies in exactly
// one triple. Stored sorted by room, which makes the representation
// canonical; the ordering operator compares these canonical forms
// lexicographically.
class Matching {
 public:
  Matching() = default;
  // Throws std::invalid_argument unless `triples` partitions the 2n agents
  // and n rooms.
  Matching(int n, std::vector<Triple> triples);

  int rooms() const { return static_cast<int>(triples_.size()); }
  const std::vector<Triple>& triples() const { return triples_; }
  const Triple& triple_of_room(int r) const {
    return triples_[static_cast<std::size_t>(r)];
  }
  int partner_of(int agent) const {
    return partner_[static_cast<std::size_t>(agent)];
  }
  int room_of(int agent) const {
    return room_[static_cast<std::size_t>(agent)];
  }

  // Agents paired with each other, as sorted (lo, hi) pairs; room-agnostic.
  std::vector<std::pair<int, int>> pairing() const;

  auto operator<=>(const Matching& other) const {
    return triples_ <=> other.triples_;
  }
  bool operator==(const Matching& other) const {
    return triples_ == other.triples_;
  }

 private:
  std::vector<Triple> triples_;
  std::vector<int> partner_;
  std::vector<int> room_;
};

// Pairs agents 2k, 2k+1 into room k.
Matching IndexOrderMatching(int n);

// u_i for being matched with partner j in room r.
Rational Utility(const Instance& inst, UtilityModel model, int i, int j,
                 int r);

Rational AgentUtility(const Instance& inst, UtilityModel model,
                      const Matching& mu, int agent);
std::vector<Rational> AgentUtilities(const Instance& inst, UtilityModel model,
                                     const Matching& mu);
// u_i + u_j for a triple.
Rational TripleWelfare(const Instance& inst, UtilityModel model,
                       const Triple& t);
// Sum of all agents' utilities. Throws if mu has the wrong size.
Rational Welfare(const Instance& inst, UtilityModel model, const Matching& mu);

// Shape of a triple in a binary instance.
struct TripleShape {
  enum class Kind { kTriangle, kL, kOther };
  Kind kind = Kind::kOther;
  int satisfied_agent = -1;  // only for kL

  bool operator==(const TripleShape&) const = default;
};

// Throws std::invalid_argument for non-binary instances.
TripleShape Classify(const Instance& inst, int i, int j, int r);
inline bool IsLOrTriangle(const TripleShape& s) {
  return s.kind != TripleShape::Kind::kOther;
}

// Directed edge of the preference graph. Vertices are numbered agents first
// (0..2n-1) then rooms (2n..3n-1); `target` uses that numbering.
struct PrefEdge {
  int source = 0;
  int target = 0;

  bool to_room(int num_agents) const { return target >= num_agents; }
  auto operator<=>(const PrefEdge&) const = default;
};

struct PreferenceGraph {
  int num_agents = 0;
  int num_rooms = 0;
  std::vector<PrefEdge> edges;  // sorted by (source, target)
};

// Throws std::invalid_argument for non-binary instances.
PreferenceGraph BuildPreferenceGraph(const Instance& inst);

}  // namespace roommatch

#endif  // ROOMMATCH_INSTANCE_H_
