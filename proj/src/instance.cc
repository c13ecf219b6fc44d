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

#include <algorithm>
#include <stdexcept>

#include "roommatch/errors.h"

namespace roommatch {
namespace {

bool IsZeroOrOne(const Rational& v) { return v == 0 || v == 1; }

void RequireBinary(const Instance& inst, const char* what) {
  if (!inst.is_binary()) {
    throw std::invalid_argument(std::string(what) +
                                " requires a binary instance");
  }
}

}  // namespace

std::string_view UtilityModelName(UtilityModel model) {
  return model == UtilityModel::kLeontief ? "leontief" : "additive";
}

UtilityModel ParseUtilityModel(std::string_view name) {
  if (name == "leontief") return UtilityModel::kLeontief;
  if (name == "additive") return UtilityModel::kAdditive;
  throw ParseError("unknown utility model '" + std::string(name) + "'");
}

Instance::Instance(int n, Matrix compat, Matrix room_values,
                   std::map<std::string, std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n < 1) throw std::invalid_argument("instance needs at least one room");
  const auto agents = static_cast<std::size_t>(2 * n);
  if (compat.size() != agents || room_values.size() != agents) {
    throw std::invalid_argument("valuation matrices must have 2n rows");
  }
  compat_.reserve(agents * agents);
  rooms_.reserve(agents * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < agents; ++i) {
    if (compat[i].size() != agents) {
      throw std::invalid_argument("compatibility rows must have 2n entries");
    }
    if (room_values[i].size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("room-value rows must have n entries");
    }
    for (std::size_t j = 0; j < agents; ++j) {
      const Rational& v = compat[i][j];
      if (v < 0) throw std::invalid_argument("valuations must be >= 0");
      if (i == j && v != 0) {
        throw std::invalid_argument("compatibility diagonal must be zero");
      }
      compat_.push_back(v);
    }
    for (const Rational& v : room_values[i]) {
      if (v < 0) throw std::invalid_argument("valuations must be >= 0");
      rooms_.push_back(v);
    }
  }
}

Instance Instance::Zero(int n) {
  const auto agents = static_cast<std::size_t>(2 * std::max(n, 0));
  return Instance(n, Matrix(agents, std::vector<Rational>(agents)),
                  Matrix(agents, std::vector<Rational>(
                                     static_cast<std::size_t>(std::max(n, 0)))));
}

Instance::Matrix Instance::compat_matrix() const {
  Matrix m;
  for (int i = 0; i < agents(); ++i) {
    auto row = compat_row(i);
    m.emplace_back(row.begin(), row.end());
  }
  return m;
}

Instance::Matrix Instance::room_matrix() const {
  Matrix m;
  for (int i = 0; i < agents(); ++i) {
    auto row = room_row(i);
    m.emplace_back(row.begin(), row.end());
  }
  return m;
}

Instance Instance::WithReport(int i, std::span<const Rational> compat_row,
                              std::span<const Rational> room_row) const {
  if (i < 0 || i >= agents()) throw std::out_of_range("agent out of range");
  Matrix c = compat_matrix();
  Matrix r = room_matrix();
  c[static_cast<std::size_t>(i)].assign(compat_row.begin(), compat_row.end());
  r[static_cast<std::size_t>(i)].assign(room_row.begin(), room_row.end());
  return Instance(n_, std::move(c), std::move(r), labels_);
}

bool Instance::is_binary() const {
  return std::all_of(compat_.begin(), compat_.end(), IsZeroOrOne) &&
         std::all_of(rooms_.begin(), rooms_.end(), IsZeroOrOne);
}

bool Instance::is_symmetric() const {
  for (int i = 0; i < agents(); ++i) {
    for (int j = i + 1; j < agents(); ++j) {
      if (compat(i, j) != compat(j, i)) return false;
    }
  }
  return true;
}

Triple Triple::Make(int a, int b, int room) {
  if (a == b) throw std::invalid_argument("triple needs two distinct agents");
  return a < b ? Triple{a, b, room} : Triple{b, a, room};
}

Matching::Matching(int n, std::vector<Triple> triples)
    : triples_(std::move(triples)) {
  if (n < 1 || triples_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("matching must contain exactly n triples");
  }
  const auto agents = static_cast<std::size_t>(2 * n);
  partner_.assign(agents, -1);
  room_.assign(agents, -1);
  std::vector<bool> room_used(static_cast<std::size_t>(n), false);
  for (Triple& t : triples_) {
    if (t.agent_lo > t.agent_hi) std::swap(t.agent_lo, t.agent_hi);
    if (t.agent_lo == t.agent_hi || t.agent_lo < 0 ||
        t.agent_hi >= 2 * n || t.room < 0 || t.room >= n) {
      throw std::invalid_argument("triple has invalid indices");
    }
    const auto lo = static_cast<std::size_t>(t.agent_lo);
    const auto hi = static_cast<std::size_t>(t.agent_hi);
    const auto r = static_cast<std::size_t>(t.room);
    if (partner_[lo] != -1 || partner_[hi] != -1) {
      throw std::invalid_argument("agent appears in more than one triple");
    }
    if (room_used[r]) {
      throw std::invalid_argument("room appears in more than one triple");
    }
    room_used[r] = true;
    partner_[lo] = t.agent_hi;
    partner_[hi] = t.agent_lo;
    room_[lo] = room_[hi] = t.room;
  }
  std::sort(triples_.begin(), triples_.end(),
            [](const Triple& a, const Triple& b) { return a.room < b.room; });
}

std::vector<std::pair<int, int>> Matching::pairing() const {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(triples_.size());
  for (const Triple& t : triples_) pairs.emplace_back(t.agent_lo, t.agent_hi);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Matching IndexOrderMatching(int n) {
  std::vector<Triple> triples;
  for (int k = 0; k < n; ++k) triples.push_back({2 * k, 2 * k + 1, k});
  return Matching(n, std::move(triples));
}

Rational Utility(const Instance& inst, UtilityModel model, int i, int j,
                 int r) {
  if (i < 0 || j < 0 || i >= inst.agents() || j >= inst.agents() || r < 0 ||
      r >= inst.rooms()) {
    throw std::out_of_range("utility: index out of range");
  }
  if (i == j) throw std::invalid_argument("utility: agent paired with itself");
  const Rational& partner = inst.compat(i, j);
  const Rational& room = inst.room_value(i, r);
  return model == UtilityModel::kLeontief ? std::min(partner, room)
                                          : partner + room;
}

Rational AgentUtility(const Instance& inst, UtilityModel model,
                      const Matching& mu, int agent) {
  return Utility(inst, model, agent, mu.partner_of(agent), mu.room_of(agent));
}

std::vector<Rational> AgentUtilities(const Instance& inst, UtilityModel model,
                                     const Matching& mu) {
  if (mu.rooms() != inst.rooms()) {
    throw std::invalid_argument("matching does not fit the instance");
  }
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(inst.agents()));
  for (int i = 0; i < inst.agents(); ++i) {
    out.push_back(AgentUtility(inst, model, mu, i));
  }
  return out;
}

Rational TripleWelfare(const Instance& inst, UtilityModel model,
                       const Triple& t) {
  return Utility(inst, model, t.agent_lo, t.agent_hi, t.room) +
         Utility(inst, model, t.agent_hi, t.agent_lo, t.room);
}

Rational Welfare(const Instance& inst, UtilityModel model, const Matching& mu) {
  if (mu.rooms() != inst.rooms()) {
    throw std::invalid_argument("matching does not fit the instance");
  }
  Rational total = 0;
  for (const Triple& t : mu.triples()) total += TripleWelfare(inst, model, t);
  return total;
}

TripleShape Classify(const Instance& inst, int i, int j, int r) {
  RequireBinary(inst, "classify");
  if (i == j) throw std::invalid_argument("classify: identical agents");
  const bool mutual = inst.compat(i, j) == 1 && inst.compat(j, i) == 1;
  if (!mutual) return {};
  const bool i_room = inst.room_value(i, r) == 1;
  const bool j_room = inst.room_value(j, r) == 1;
  if (i_room && j_room) return {TripleShape::Kind::kTriangle, -1};
  if (i_room) return {TripleShape::Kind::kL, i};
  if (j_room) return {TripleShape::Kind::kL, j};
  return {};
}

PreferenceGraph BuildPreferenceGraph(const Instance& inst) {
  RequireBinary(inst, "preference graph");
  PreferenceGraph g;
  g.num_agents = inst.agents();
  g.num_rooms = inst.rooms();
  for (int i = 0; i < inst.agents(); ++i) {
    for (int j = 0; j < inst.agents(); ++j) {
      if (inst.compat(i, j) == 1) g.edges.push_back({i, j});
    }
    for (int r = 0; r < inst.rooms(); ++r) {
      if (inst.room_value(i, r) == 1) {
        g.edges.push_back({i, inst.agents() + r});
      }
    }
  }
  return g;
}

}  // namespace roommatch
