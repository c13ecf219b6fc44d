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

#include "roommatch/mechanisms.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "roommatch/errors.h"
#include "roommatch/set_packing.h"

namespace roommatch {
namespace {

void RequireBinary(const Instance& inst, const char* mechanism) {
  if (!inst.is_binary()) {
    throw std::invalid_argument(std::string(mechanism) +
                                " requires binary valuations");
  }
}

void RequireOrdering(const Instance& inst, const AgentOrdering& sigma) {
  if (sigma.size() != inst.agents()) {
    throw std::invalid_argument("ordering does not cover all agents");
  }
}

// Tracks which agents and rooms are still unmatched.
class Pool {
 public:
  explicit Pool(const Instance& inst)
      : agent_free_(static_cast<std::size_t>(inst.agents()), true),
        room_free_(static_cast<std::size_t>(inst.rooms()), true) {}

  bool agent_free(int i) const { return agent_free_[static_cast<std::size_t>(i)]; }
  bool room_free(int r) const { return room_free_[static_cast<std::size_t>(r)]; }
  void TakeAgent(int i) { agent_free_[static_cast<std::size_t>(i)] = false; }
  void TakeRoom(int r) { room_free_[static_cast<std::size_t>(r)] = false; }
  void Take(const Triple& t) {
    TakeAgent(t.agent_lo);
    TakeAgent(t.agent_hi);
    TakeRoom(t.room);
  }
  std::vector<int> FreeAgents() const { return Collect(agent_free_); }
  std::vector<int> FreeRooms() const { return Collect(room_free_); }

 private:
  static std::vector<int> Collect(const std::vector<bool>& flags) {
    std::vector<int> out;
    for (std::size_t k = 0; k < flags.size(); ++k) {
      if (flags[k]) out.push_back(static_cast<int>(k));
    }
    return out;
  }

  std::vector<bool> agent_free_;
  std::vector<bool> room_free_;
};

// Pairs the given agents consecutively with the given rooms, both in index
// order.
void CompleteInIndexOrder(std::vector<int> agents, std::vector<int> rooms,
                          std::vector<Triple>& triples,
                          std::vector<DecisionRecord>& trace) {
  std::sort(agents.begin(), agents.end());
  std::sort(rooms.begin(), rooms.end());
  if (agents.size() != 2 * rooms.size()) {
    throw InvariantError("completion: agent and room counts do not match");
  }
  for (std::size_t k = 0; k < rooms.size(); ++k) {
    const Triple t{agents[2 * k], agents[2 * k + 1], rooms[k]};
    triples.push_back(t);
    trace.push_back({"complete", t.agent_lo, t.agent_hi, t.room, 1});
  }
}

void CompleteFromPool(const Pool& pool, std::vector<Triple>& triples,
                      std::vector<DecisionRecord>& trace) {
  CompleteInIndexOrder(pool.FreeAgents(), pool.FreeRooms(), triples, trace);
}

}  // namespace

// ---------------------------------------------------------------------------
// AgentOrdering

AgentOrdering::AgentOrdering(std::vector<int> sigma) : sigma_(std::move(sigma)) {
  position_.assign(sigma_.size(), -1);
  for (std::size_t p = 0; p < sigma_.size(); ++p) {
    const int a = sigma_[p];
    if (a < 0 || a >= static_cast<int>(sigma_.size()) ||
        position_[static_cast<std::size_t>(a)] != -1) {
      throw std::invalid_argument("ordering must be a permutation of agents");
    }
    position_[static_cast<std::size_t>(a)] = static_cast<int>(p);
  }
}

AgentOrdering AgentOrdering::Identity(int agents) {
  std::vector<int> s(static_cast<std::size_t>(agents));
  for (int i = 0; i < agents; ++i) s[static_cast<std::size_t>(i)] = i;
  return AgentOrdering(std::move(s));
}

AgentOrdering AgentOrdering::Parse(std::string_view text, int agents) {
  if (text == "identity" || text.empty()) return Identity(agents);
  std::vector<int> s;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ParseError("bad ordering entry '" + std::string(item) + "'");
    }
    s.push_back(value);
    start = end + 1;
  }
  if (static_cast<int>(s.size()) != agents) {
    throw ParseError("ordering must list all " + std::to_string(agents) +
                     " agents");
  }
  try {
    return AgentOrdering(std::move(s));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string AgentOrdering::ToString() const {
  std::ostringstream out;
  for (std::size_t p = 0; p < sigma_.size(); ++p) {
    if (p > 0) out << ',';
    out << sigma_[p];
  }
  return out.str();
}

MechanismResult MakeResult(const Instance& inst, UtilityModel model,
                           Matching mu, std::vector<DecisionRecord> trace) {
  MechanismResult out;
  out.per_agent_utility = AgentUtilities(inst, model, mu);
  out.welfare = 0;
  for (const Rational& u : out.per_agent_utility) out.welfare += u;
  out.matching = std::move(mu);
  out.trace = std::move(trace);
  return out;
}

// ---------------------------------------------------------------------------
// Naive maximal matching on the preference graph.

namespace {

class NaiveMaximalRun {
 public:
  NaiveMaximalRun(const Instance& inst, const EdgePickPolicy& policy)
      : inst_(inst),
        policy_(policy),
        agents_(inst.agents()),
        owner_(static_cast<std::size_t>(inst.agents() + inst.rooms()), -1) {
    for (const PrefEdge& e : BuildPreferenceGraph(inst).edges) edges_.insert(e);
  }

  Matching Run() {
    for (const PrefEdge& e : policy_.edges) {
      if (!edges_.contains(e)) {
        throw std::invalid_argument("scripted edge " + std::to_string(e.source) +
                                    "->" + std::to_string(e.target) +
                                    " is not available");
      }
      Consume(e, "scripted");
    }
    while (!edges_.empty()) Consume(NextEdge(), "pick");
    Complete();
    return Matching(inst_.rooms(), triples_);
  }

  std::vector<DecisionRecord> TakeTrace() { return std::move(trace_); }

 private:
  struct Structure {
    std::vector<int> agents;
    int room = -1;
    bool done = false;
  };

  bool IsRoom(int v) const { return v >= agents_; }

  PrefEdge NextEdge() const {
    if (policy_.kind == EdgePickPolicy::Kind::kAgentEdgesFirst) {
      // A freshly formed pair first looks for a room one of its agents likes.
      if (open_pair_ >= 0) {
        const Structure& s = structures_[static_cast<std::size_t>(open_pair_)];
        for (const PrefEdge& e : edges_) {
          if (IsRoom(e.target) && owner_[static_cast<std::size_t>(e.target)] == -1 &&
              (e.source == s.agents[0] || e.source == s.agents[1])) {
            return e;
          }
        }
      }
      for (const PrefEdge& e : edges_) {
        if (!IsRoom(e.target)) return e;
      }
    }
    return *edges_.begin();
  }

  void RemoveIf(const std::function<bool(const PrefEdge&)>& pred) {
    for (auto it = edges_.begin(); it != edges_.end();) {
      it = pred(*it) ? edges_.erase(it) : std::next(it);
    }
  }

  void RemoveTouching(const Structure& s) {
    auto in = [&](int v) {
      if (v == s.room + agents_) return true;
      return std::find(s.agents.begin(), s.agents.end(), v) != s.agents.end();
    };
    RemoveIf([&](const PrefEdge& e) { return in(e.source) || in(e.target); });
  }

  int NewStructure(Structure s) {
    structures_.push_back(std::move(s));
    const int id = static_cast<int>(structures_.size()) - 1;
    for (int a : structures_.back().agents) owner_[static_cast<std::size_t>(a)] = id;
    if (structures_.back().room >= 0) {
      owner_[static_cast<std::size_t>(structures_.back().room + agents_)] = id;
    }
    return id;
  }

  void Finish(int id, const char* rule) {
    Structure& s = structures_[static_cast<std::size_t>(id)];
    s.done = true;
    const Triple t = Triple::Make(s.agents[0], s.agents[1], s.room);
    triples_.push_back(t);
    RemoveTouching(s);
    trace_.push_back({rule, t.agent_lo, t.agent_hi, t.room, 1});
  }

  void Consume(const PrefEdge& e, const char* rule) {
    edges_.erase(e);
    const int src = e.source;
    const int dst = e.target;
    const int os = owner_[static_cast<std::size_t>(src)];
    const int ot = owner_[static_cast<std::size_t>(dst)];
    const int room = IsRoom(dst) ? dst - agents_ : -1;
    trace_.push_back({rule, src, IsRoom(dst) ? -1 : dst, room, 1});

    open_pair_ = -1;
    if (os == -1 && ot == -1) {
      if (room < 0) {
        open_pair_ = NewStructure({{src, dst}, -1, false});
        // Both agents drop every agent-agent edge.
        RemoveIf([&](const PrefEdge& x) {
          return !IsRoom(x.target) && (x.source == src || x.source == dst ||
                                       x.target == src || x.target == dst);
        });
      } else {
        NewStructure({{src}, room, false});
        RemoveIf([&](const PrefEdge& x) { return x.source == src && IsRoom(x.target); });
      }
      return;
    }
    if (os != -1 && ot != -1) {
      trace_.back().rule = "discard";
      return;
    }
    // Exactly one endpoint belongs to a partial structure: extend it.
    const int id = os != -1 ? os : ot;
    const int lone = os != -1 ? dst : src;
    Structure& s = structures_[static_cast<std::size_t>(id)];
    const bool lone_is_room = IsRoom(lone);
    const bool fits = s.room < 0 ? lone_is_room : !lone_is_room;
    if (s.done || !fits) {
      trace_.back().rule = "discard";
      return;
    }
    if (lone_is_room) {
      s.room = lone - agents_;
    } else {
      s.agents.push_back(lone);
    }
    owner_[static_cast<std::size_t>(lone)] = id;
    Finish(id, "close");
  }

  void Complete() {
    std::vector<int> pairs;     // structures with two agents, no room
    std::vector<int> partials;  // structures with one agent and a room
    for (std::size_t id = 0; id < structures_.size(); ++id) {
      const Structure& s = structures_[id];
      if (s.done) continue;
      (s.room < 0 ? pairs : partials).push_back(static_cast<int>(id));
    }
    auto first_agent = [&](int id) {
      return *std::min_element(structures_[static_cast<std::size_t>(id)].agents.begin(),
                               structures_[static_cast<std::size_t>(id)].agents.end());
    };
    auto by_agent = [&](int a, int b) { return first_agent(a) < first_agent(b); };
    std::sort(pairs.begin(), pairs.end(), by_agent);
    std::sort(partials.begin(), partials.end(), by_agent);

    std::vector<int> lone_agents;
    std::vector<int> lone_rooms;
    for (int a = 0; a < agents_; ++a) {
      if (owner_[static_cast<std::size_t>(a)] == -1) lone_agents.push_back(a);
    }
    for (int r = 0; r < inst_.rooms(); ++r) {
      if (owner_[static_cast<std::size_t>(r + agents_)] == -1) lone_rooms.push_back(r);
    }

    auto close = [&](int id) {
      Structure& s = structures_[static_cast<std::size_t>(id)];
      s.done = true;
      const Triple t = Triple::Make(s.agents[0], s.agents[1], s.room);
      triples_.push_back(t);
      trace_.push_back({"complete", t.agent_lo, t.agent_hi, t.room, 1});
    };

    // 1. Pairs take lone rooms.
    std::size_t next_room = 0;
    std::vector<int> roomless;
    for (int id : pairs) {
      if (next_room < lone_rooms.size()) {
        structures_[static_cast<std::size_t>(id)].room = lone_rooms[next_room++];
        close(id);
      } else {
        roomless.push_back(id);
      }
    }
    lone_rooms.erase(lone_rooms.begin(),
                     lone_rooms.begin() + static_cast<std::ptrdiff_t>(next_room));
    // 2. Agent-room partials take lone agents.
    std::size_t next_agent = 0;
    std::vector<int> open;
    for (int id : partials) {
      if (next_agent < lone_agents.size()) {
        structures_[static_cast<std::size_t>(id)].agents.push_back(
            lone_agents[next_agent++]);
        close(id);
      } else {
        open.push_back(id);
      }
    }
    lone_agents.erase(lone_agents.begin(),
                      lone_agents.begin() + static_cast<std::ptrdiff_t>(next_agent));
    // 3. A roomless pair breaks one partial (k1, r1): it takes r1 and k1
    //    joins the next partial (k2, r2).
    std::size_t next_open = 0;
    for (int id : roomless) {
      if (next_open + 2 > open.size()) {
        throw InvariantError("naive maximal: cannot complete roomless pair");
      }
      Structure& donor = structures_[static_cast<std::size_t>(open[next_open])];
      Structure& host = structures_[static_cast<std::size_t>(open[next_open + 1])];
      structures_[static_cast<std::size_t>(id)].room = donor.room;
      close(id);
      host.agents.push_back(donor.agents[0]);
      donor.done = true;
      close(open[next_open + 1]);
      next_open += 2;
    }
    if (next_open != open.size()) {
      throw InvariantError("naive maximal: unmatched agent-room partial");
    }
    // 4. Whatever is left.
    CompleteInIndexOrder(lone_agents, lone_rooms, triples_, trace_);
  }

  const Instance& inst_;
  const EdgePickPolicy& policy_;
  int agents_;
  std::set<PrefEdge> edges_;
  std::vector<int> owner_;  // vertex -> structure id
  int open_pair_ = -1;      // pair formed by the previous pick, if any
  std::vector<Structure> structures_;
  std::vector<Triple> triples_;
  std::vector<DecisionRecord> trace_;
};

}  // namespace

MechanismResult NaiveMaximal(const Instance& inst, UtilityModel model,
                             const EdgePickPolicy& policy) {
  RequireBinary(inst, "naive maximal");
  NaiveMaximalRun run(inst, policy);
  Matching mu = run.Run();
  return MakeResult(inst, model, std::move(mu), run.TakeTrace());
}

// ---------------------------------------------------------------------------
// L/T maximal matching.

MechanismResult LtMaximal(const Instance& inst, UtilityModel model,
                          const EdgePickPolicy& policy) {
  RequireBinary(inst, "L/T maximal");
  Pool pool(inst);
  std::vector<Triple> triples;
  std::vector<DecisionRecord> trace;
  auto available = [&](const Triple& t) {
    return pool.agent_free(t.agent_lo) && pool.agent_free(t.agent_hi) &&
           pool.room_free(t.room);
  };
  auto admit = [&](const Triple& t, const char* rule, int ties) {
    pool.Take(t);
    triples.push_back(t);
    trace.push_back({rule, t.agent_lo, t.agent_hi, t.room, ties});
  };
  for (const Triple& raw : policy.triples) {
    const Triple t = Triple::Make(raw.agent_lo, raw.agent_hi, raw.room);
    if (t.agent_hi >= inst.agents() || t.room < 0 || t.room >= inst.rooms() ||
        !available(t) || !IsLOrTriangle(Classify(inst, t.agent_lo, t.agent_hi, t.room))) {
      throw std::invalid_argument("scripted triple is not an available L/T triple");
    }
    admit(t, "scripted", 1);
  }
  const bool triangles_first = policy.kind == EdgePickPolicy::Kind::kAgentEdgesFirst;
  while (true) {
    std::optional<Triple> best;
    bool best_is_triangle = false;
    int candidates = 0;
    for (int i : pool.FreeAgents()) {
      for (int j : pool.FreeAgents()) {
        if (j <= i) continue;
        for (int r : pool.FreeRooms()) {
          const TripleShape s = Classify(inst, i, j, r);
          if (!IsLOrTriangle(s)) continue;
          ++candidates;
          const bool tri = s.kind == TripleShape::Kind::kTriangle;
          if (!best || (triangles_first && tri && !best_is_triangle)) {
            best = Triple{i, j, r};
            best_is_triangle = tri;
          }
        }
      }
    }
    if (!best) break;
    admit(*best, best_is_triangle ? "triangle" : "L", candidates);
  }
  CompleteFromPool(pool, triples, trace);
  return MakeResult(inst, model, Matching(inst.rooms(), std::move(triples)),
                    std::move(trace));
}

// ---------------------------------------------------------------------------
// Triangle-then-L.

MechanismResult TriangleThenL(const Instance& inst, UtilityModel model) {
  Pool pool(inst);
  std::vector<Triple> triples;
  std::vector<DecisionRecord> trace;
  for (int step = 0; step < inst.rooms(); ++step) {
    std::optional<Triple> best;
    Rational best_value = -1;
    int ties = 0;
    const std::vector<int> agents = pool.FreeAgents();
    const std::vector<int> rooms = pool.FreeRooms();
    for (std::size_t a = 0; a < agents.size(); ++a) {
      for (std::size_t b = a + 1; b < agents.size(); ++b) {
        for (int r : rooms) {
          const Triple t{agents[a], agents[b], r};
          const Rational value = TripleWelfare(inst, model, t);
          if (value > best_value) {
            best_value = value;
            best = t;
            ties = 1;
          } else if (value == best_value) {
            ++ties;  // first seen stays: iteration is lexicographic
          }
        }
      }
    }
    pool.Take(*best);
    triples.push_back(*best);
    trace.push_back({"argmax", best->agent_lo, best->agent_hi, best->room, ties});
  }
  return MakeResult(inst, model, Matching(inst.rooms(), std::move(triples)),
                    std::move(trace));
}

// ---------------------------------------------------------------------------
// Serial dictatorships.

MechanismResult LtSerialDictatorship(const Instance& inst, UtilityModel model,
                                     const AgentOrdering& sigma) {
  RequireBinary(inst, "L/T serial dictatorship");
  RequireOrdering(inst, sigma);
  Pool pool(inst);
  std::vector<Triple> triples;
  std::vector<DecisionRecord> trace;
  for (int i : sigma.sigma()) {
    if (!pool.agent_free(i)) continue;
    std::optional<Triple> pick;
    int options = 0;
    for (int j : pool.FreeAgents()) {
      if (j == i || inst.compat(i, j) != 1) continue;
      for (int r : pool.FreeRooms()) {
        if (inst.room_value(i, r) != 1) continue;
        if (!pick) pick = Triple::Make(i, j, r);
        ++options;
      }
    }
    if (!pick) {
      trace.push_back({"skip", i, -1, -1, 0});
      continue;
    }
    pool.Take(*pick);
    triples.push_back(*pick);
    trace.push_back({"pick", i, pick->agent_lo == i ? pick->agent_hi : pick->agent_lo,
                     pick->room, options});
  }
  CompleteFromPool(pool, triples, trace);
  return MakeResult(inst, model, Matching(inst.rooms(), std::move(triples)),
                    std::move(trace));
}

MechanismResult WelfarePrioritizedSd(const Instance& inst, UtilityModel model,
                                     const AgentOrdering& sigma) {
  RequireOrdering(inst, sigma);
  Pool pool(inst);
  std::vector<int> set_aside;
  std::vector<Triple> triples;
  std::vector<DecisionRecord> trace;
  for (int i : sigma.sigma()) {
    if (!pool.agent_free(i)) continue;
    pool.TakeAgent(i);
    const std::vector<int> others = pool.FreeAgents();
    const std::vector<int> rooms = pool.FreeRooms();
    bool has_value = false;
    for (int j : others) {
      for (int r : rooms) {
        if (Utility(inst, model, i, j, r) > 0) has_value = true;
      }
    }
    if (others.empty() || !has_value) {
      set_aside.push_back(i);
      trace.push_back({"set-aside", i, -1, -1, 0});
      continue;
    }
    Rational best_compat = -1;
    for (int j : others) best_compat = std::max(best_compat, inst.compat(i, j));
    int partner = -1;
    int partner_ties = 0;
    for (int j : others) {
      if (inst.compat(i, j) != best_compat) continue;
      ++partner_ties;
      if (partner == -1 || sigma.position_of(j) < sigma.position_of(partner)) {
        partner = j;
      }
    }
    int room = -1;
    for (int r : rooms) {
      if (room == -1 || inst.room_value(i, r) > inst.room_value(i, room)) room = r;
    }
    const Triple t = Triple::Make(i, partner, room);
    pool.Take(t);
    triples.push_back(t);
    trace.push_back({"pick", i, partner, room, partner_ties});
  }
  std::vector<int> rooms = pool.FreeRooms();
  CompleteInIndexOrder(set_aside, rooms, triples, trace);
  return MakeResult(inst, model, Matching(inst.rooms(), std::move(triples)),
                    std::move(trace));
}

MechanismResult SerialDictatorship(const Instance& inst, UtilityModel model,
                                   const AgentOrdering& sigma,
                                   const ScriptedPicks& picks) {
  RequireOrdering(inst, sigma);
  auto values_something = [&](int i) {
    for (int j = 0; j < inst.agents(); ++j) {
      if (inst.compat(i, j) > 0) return true;
    }
    for (int r = 0; r < inst.rooms(); ++r) {
      if (inst.room_value(i, r) > 0) return true;
    }
    return false;
  };
  Pool pool(inst);
  std::vector<Triple> triples;
  std::vector<DecisionRecord> trace;
  for (int i : sigma.sigma()) {
    if (!pool.agent_free(i) || !values_something(i)) continue;
    pool.TakeAgent(i);
    std::vector<std::pair<int, int>> best;
    Rational best_value = -1;
    for (int j : pool.FreeAgents()) {
      for (int r : pool.FreeRooms()) {
        const Rational u = Utility(inst, model, i, j, r);
        if (u > best_value) {
          best_value = u;
          best.clear();
        }
        if (u == best_value) best.emplace_back(j, r);
      }
    }
    if (best.empty()) {
      throw InvariantError("serial dictatorship: no partner left to pick");
    }
    std::pair<int, int> choice = best.front();
    if (auto it = picks.find(i); it != picks.end()) {
      if (std::find(best.begin(), best.end(), it->second) == best.end()) {
        throw std::invalid_argument("scripted pick for agent " + std::to_string(i) +
                                    " is not among its best options");
      }
      choice = it->second;
    }
    const Triple t = Triple::Make(i, choice.first, choice.second);
    pool.Take(t);
    triples.push_back(t);
    trace.push_back({picks.contains(i) ? "scripted" : "pick", i, choice.first,
                     choice.second, static_cast<int>(best.size())});
  }
  CompleteFromPool(pool, triples, trace);
  return MakeResult(inst, model, Matching(inst.rooms(), std::move(triples)),
                    std::move(trace));
}

// ---------------------------------------------------------------------------
// Maximum-welfare mechanisms.

std::vector<std::vector<Matching>> WelfareSetChain(const Instance& inst,
                                                   UtilityModel model,
                                                   const AgentOrdering& sigma,
                                                   int oracle_cap) {
  RequireOrdering(inst, sigma);
  std::vector<std::vector<Matching>> chain;
  chain.push_back(MaxWelfare(inst, model, oracle_cap).witnesses);
  for (int agent : sigma.sigma()) {
    const std::vector<Matching>& prev = chain.back();
    Rational best = -1;
    for (const Matching& mu : prev) best = std::max(best, AgentUtility(inst, model, mu, agent));
    std::vector<Matching> next;
    for (const Matching& mu : prev) {
      if (AgentUtility(inst, model, mu, agent) == best) next.push_back(mu);
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

MechanismResult WelfareSetReduction(const Instance& inst, UtilityModel model,
                                    const AgentOrdering& sigma, int oracle_cap) {
  const auto chain = WelfareSetChain(inst, model, sigma, oracle_cap);
  std::vector<DecisionRecord> trace;
  trace.push_back({"S0", -1, -1, -1, static_cast<int>(chain[0].size())});
  for (std::size_t t = 1; t < chain.size(); ++t) {
    trace.push_back({"reduce", sigma.agent_at(static_cast<int>(t) - 1), -1, -1,
                     static_cast<int>(chain[t].size())});
  }
  return MakeResult(inst, model, chain.back().front(), std::move(trace));
}

std::vector<std::vector<int>> SubsetsInPrecedenceOrder(const AgentOrdering& sigma,
                                                       int k) {
  const int m = sigma.size();
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) pos[static_cast<std::size_t>(t)] = t;
  while (true) {
    std::vector<int> agents;
    for (int p : pos) agents.push_back(sigma.agent_at(p));
    std::sort(agents.begin(), agents.end());
    out.push_back(std::move(agents));
    int t = k - 1;
    while (t >= 0 && pos[static_cast<std::size_t>(t)] == m - k + t) --t;
    if (t < 0) break;
    ++pos[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < k; ++u) {
      pos[static_cast<std::size_t>(u)] = pos[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
  return out;
}

bool HasHigherPrecedence(const std::vector<int>& a, const std::vector<int>& b,
                         const AgentOrdering& sigma) {
  if (a.size() != b.size()) throw std::invalid_argument("subset sizes differ");
  auto contains = [](const std::vector<int>& s, int x) {
    return std::find(s.begin(), s.end(), x) != s.end();
  };
  int best_a = sigma.size();
  int best_b = sigma.size();
  for (int x : a) {
    if (!contains(b, x)) best_a = std::min(best_a, sigma.position_of(x));
  }
  for (int x : b) {
    if (!contains(a, x)) best_b = std::min(best_b, sigma.position_of(x));
  }
  // Some agent of a \ b precedes all of b \ a (vacuous when b \ a is empty,
  // which for equal sizes means a == b: not strictly higher).
  return best_a < best_b;
}

MechanismResult PrecedenceSearch(const Instance& inst, UtilityModel model,
                                 const AgentOrdering& sigma) {
  RequireBinary(inst, "precedence search");
  RequireOrdering(inst, sigma);
  if (model != UtilityModel::kLeontief) {
    throw std::invalid_argument("precedence search is defined for Leontief utilities");
  }
  const int n = inst.rooms();
  const int agents = inst.agents();
  struct Candidate {
    Triple triple;
    bool lo_happy;
    bool hi_happy;
  };
  std::vector<Candidate> all;
  for (int i = 0; i < agents; ++i) {
    for (int j = i + 1; j < agents; ++j) {
      for (int r = 0; r < n; ++r) {
        all.push_back({{i, j, r},
                       Utility(inst, model, i, j, r) == 1,
                       Utility(inst, model, j, i, r) == 1});
      }
    }
  }
  std::vector<DecisionRecord> trace;
  for (int k = agents; k >= 1; --k) {
    int tried = 0;
    for (const std::vector<int>& subset : SubsetsInPrecedenceOrder(sigma, k)) {
      ++tried;
      std::vector<bool> in(static_cast<std::size_t>(agents), false);
      for (int a : subset) in[static_cast<std::size_t>(a)] = true;
      std::vector<std::array<int, 3>> tau;
      std::vector<Triple> tau_triples;
      for (const Candidate& c : all) {
        if (c.lo_happy != in[static_cast<std::size_t>(c.triple.agent_lo)] ||
            c.hi_happy != in[static_cast<std::size_t>(c.triple.agent_hi)]) {
          continue;
        }
        tau.push_back({c.triple.agent_lo, c.triple.agent_hi, agents + c.triple.room});
        tau_triples.push_back(c.triple);
      }
      const std::optional<Packing> packing = SolveFeasibility(agents + n, tau, n);
      if (!packing) continue;
      std::vector<Triple> chosen;
      for (int s : packing->chosen) chosen.push_back(tau_triples[static_cast<std::size_t>(s)]);
      trace.push_back({"found", k, -1, -1, tried});
      return MakeResult(inst, model, Matching(n, std::move(chosen)), std::move(trace));
    }
    trace.push_back({"exhausted", k, -1, -1, tried});
  }
  trace.push_back({"fallback", -1, -1, -1, 1});
  return MakeResult(inst, model, IndexOrderMatching(n), std::move(trace));
}

MechanismResult ParityMechanism(const Instance& inst, UtilityModel model,
                                int agent, int oracle_cap) {
  if (agent < 0 || agent >= inst.agents()) {
    throw std::out_of_range("parity mechanism: agent out of range");
  }
  const OracleResult oracle = MaxWelfare(inst, model, oracle_cap);
  const bool odd = oracle.witnesses.size() % 2 == 1;
  const Rational wanted = odd ? 1 : 0;
  const Matching* pick = &oracle.witnesses.front();
  for (const Matching& mu : oracle.witnesses) {
    if (AgentUtility(inst, model, mu, agent) == wanted) {
      pick = &mu;
      break;
    }
  }
  std::vector<DecisionRecord> trace = {
      {odd ? "odd" : "even", agent, -1, -1, static_cast<int>(oracle.witnesses.size())}};
  return MakeResult(inst, model, *pick, std::move(trace));
}

// ---------------------------------------------------------------------------
// Registry.

namespace {

AgentOrdering OrderingFor(const Instance& inst, const MechanismOptions& o) {
  if (o.sigma.empty()) return AgentOrdering::Identity(inst.agents());
  return AgentOrdering(o.sigma);
}

const std::map<std::string, Mechanism, std::less<>>& Registry() {
  static const auto* registry = new std::map<std::string, Mechanism, std::less<>>{
      {"naive-maximal",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return NaiveMaximal(i, m, o.policy);
       }},
      {"naive-maximal-agent-first",
       [](const Instance& i, UtilityModel m, const MechanismOptions&) {
         return NaiveMaximal(i, m, EdgePickPolicy::AgentEdgesFirst());
       }},
      {"lt-maximal",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return LtMaximal(i, m, o.policy);
       }},
      {"triangle-then-l",
       [](const Instance& i, UtilityModel m, const MechanismOptions&) {
         return TriangleThenL(i, m);
       }},
      {"lt-sd",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return LtSerialDictatorship(i, m, OrderingFor(i, o));
       }},
      {"wp-sd",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return WelfarePrioritizedSd(i, m, OrderingFor(i, o));
       }},
      {"welfare-set-reduction",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return WelfareSetReduction(i, m, OrderingFor(i, o), o.oracle_cap);
       }},
      {"precedence-search",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return PrecedenceSearch(i, m, OrderingFor(i, o));
       }},
      {"parity",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return ParityMechanism(i, m, o.parity_agent, o.oracle_cap);
       }},
      {"serial-dictatorship",
       [](const Instance& i, UtilityModel m, const MechanismOptions& o) {
         return SerialDictatorship(i, m, OrderingFor(i, o), o.picks);
       }},
  };
  return *registry;
}

}  // namespace

const std::vector<std::string>& MechanismIds() {
  static const auto* ids = new std::vector<std::string>{
      "naive-maximal", "naive-maximal-agent-first", "lt-maximal",
      "triangle-then-l", "lt-sd", "wp-sd", "welfare-set-reduction",
      "precedence-search", "parity", "serial-dictatorship"};
  return *ids;
}

bool IsMechanismId(std::string_view id) { return Registry().contains(id); }

Mechanism MakeMechanism(std::string_view id) {
  const auto it = Registry().find(id);
  if (it == Registry().end()) {
    throw ParseError("unknown mechanism '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace roommatch
