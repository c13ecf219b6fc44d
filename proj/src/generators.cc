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

#include "roommatch/generators.h"

#include <algorithm>
#include <cstdlib>
#include <charconv>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "roommatch/errors.h"
#include "roommatch/oracle.h"
#include "roommatch/set_packing.h"

namespace roommatch {
namespace {

using Matrix = Instance::Matrix;

Matrix Square(int agents) {
  return Matrix(static_cast<std::size_t>(agents),
                std::vector<Rational>(static_cast<std::size_t>(agents)));
}
Matrix Rect(int agents, int rooms) {
  return Matrix(static_cast<std::size_t>(agents),
                std::vector<Rational>(static_cast<std::size_t>(rooms)));
}

void Like(Matrix& m, int i, int j) {
  m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
}
void Mutual(Matrix& v, int i, int j) {
  Like(v, i, j);
  Like(v, j, i);
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike the std distributions.
double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Instance Labeled(int n, Matrix v, Matrix h, const std::string& family) {
  return Instance(n, std::move(v), std::move(h), {{"family", family}});
}

// Three mutual triangles (a1,a2,r1), (a3,a4,r2), (a5,a6,r3).
void ThreeTriangles(Matrix& v, Matrix& h) {
  for (int t = 0; t < 3; ++t) {
    Mutual(v, 2 * t, 2 * t + 1);
    Like(h, 2 * t, t);
    Like(h, 2 * t + 1, t);
  }
}

Instance Fig2() {
  Matrix v = Square(6);
  Matrix h = Rect(6, 3);
  ThreeTriangles(v, h);
  Like(v, 0, 2);  // a1 -> a3, not returned
  Like(h, 2, 2);  // a3 -> r3
  return Labeled(3, std::move(v), std::move(h), "fig2");
}

Instance Fig3() {
  Matrix v = Square(6);
  Matrix h = Rect(6, 3);
  Mutual(v, 0, 1);
  Mutual(v, 2, 3);
  Like(h, 0, 0);
  Like(h, 2, 1);
  Like(h, 4, 2);
  Like(h, 5, 2);
  Like(h, 0, 2);  // the two bait edges
  Like(h, 2, 2);
  return Labeled(3, std::move(v), std::move(h), "fig3");
}

Instance Fig4() {
  Matrix v = Square(6);
  Matrix h = Rect(6, 3);
  ThreeTriangles(v, h);
  Mutual(v, 0, 2);
  Like(h, 2, 2);
  return Labeled(3, std::move(v), std::move(h), "fig4");
}

Instance Fig5(UtilityModel model) {
  Matrix v = Square(4);
  Like(v, 0, 1);
  Like(v, 1, 2);
  Like(v, 2, 3);
  Like(v, 3, 0);
  const Rational k = model == UtilityModel::kAdditive ? 0 : 1;
  Matrix h(4, std::vector<Rational>(2, k));
  return Labeled(2, std::move(v), std::move(h), "fig5");
}

Instance Fig6(bool symmetric) {
  Matrix v = Square(4);
  Matrix h = Rect(4, 2);
  Like(v, 0, 1);
  Like(v, 2, 1);
  if (symmetric) {
    Like(v, 1, 0);
    Like(v, 1, 2);
  }
  Like(h, 1, 0);
  return Labeled(2, std::move(v), std::move(h),
                 symmetric ? "fig6-symmetric" : "fig6");
}

Instance Parity() {
  Matrix v = Square(4);
  Matrix h = Rect(4, 2);
  Like(v, 0, 3);
  Like(v, 3, 2);
  Like(h, 0, 1);
  Like(h, 3, 1);
  return Labeled(2, std::move(v), std::move(h), "parity");
}

// Agents: d1, d2, then a_{11}, a_{12}, ..., then the b pairs, then the c
// pairs. Rooms: r*, then r_{i1}, r_{i2}, r_{i3} for each i.
struct BadSdLayout {
  int k;
  int d1() const { return 0; }
  int d2() const { return 1; }
  int a(int i, int s) const { return 2 + 2 * i + s; }
  int b(int i, int s) const { return 2 + 2 * k + 2 * i + s; }
  int c(int i, int s) const { return 2 + 4 * k + 2 * i + s; }
  int star() const { return 0; }
  int room(int i, int s) const { return 1 + 3 * i + s; }
};

Figure BadSd(int k) {
  if (k < 1) throw std::invalid_argument("badsd: k must be >= 1");
  const BadSdLayout at{k};
  const int n = 3 * k + 1;
  Matrix v = Square(2 * n);
  Matrix h = Rect(2 * n, n);
  Mutual(v, at.d1(), at.d2());
  Like(h, at.d1(), at.star());
  Like(h, at.d2(), at.star());
  for (int i = 0; i < k; ++i) {
    Like(h, at.a(i, 0), at.star());
    Like(h, at.a(i, 1), at.star());
    Mutual(v, at.b(i, 0), at.b(i, 1));
    Mutual(v, at.c(i, 0), at.c(i, 1));
    Like(h, at.b(i, 0), at.room(i, 1));
    Like(h, at.c(i, 0), at.room(i, 2));
  }
  Figure fig;
  fig.name = "badsd:" + std::to_string(k);
  fig.instance = Labeled(n, std::move(v), std::move(h), fig.name);
  fig.model = UtilityModel::kAdditive;
  fig.mechanism = "serial-dictatorship";
  // d1 first, then the A agents, then everyone else in index order.
  std::vector<int> sigma = {at.d1()};
  for (int i = 0; i < k; ++i) {
    sigma.push_back(at.a(i, 0));
    sigma.push_back(at.a(i, 1));
  }
  for (int x = 0; x < 2 * n; ++x) {
    if (std::find(sigma.begin(), sigma.end(), x) == sigma.end()) sigma.push_back(x);
  }
  fig.options.sigma = sigma;
  for (int i = 0; i < k; ++i) {
    fig.options.picks[at.a(i, 0)] = {at.c(i, 0), at.room(i, 1)};
    fig.options.picks[at.a(i, 1)] = {at.b(i, 0), at.room(i, 2)};
  }
  fig.claimed = {{"oracle_max", 6 * k + 3},
                 {"mechanism_welfare", 3},
                 {"ratio", Rational(3, 6 * k + 3)}};
  return fig;
}

Cnf Fig7Cnf() {
  // (!x1 | x2)(x1 | !x2)
  Cnf cnf;
  cnf.num_vars = 2;
  cnf.clauses = {{{0, false}, {1, true}}, {{0, true}, {1, false}}};
  return cnf;
}

}  // namespace

Instance GenRandom(int n, double density, bool symmetric, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("gen_random: density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  const int agents = 2 * n;
  Matrix v = Square(agents);
  Matrix h = Rect(agents, n);
  for (int i = 0; i < agents; ++i) {
    for (int j = symmetric ? i + 1 : 0; j < agents; ++j) {
      if (i == j) continue;
      if (Unit(rng) < density) {
        if (symmetric) {
          Mutual(v, i, j);
        } else {
          Like(v, i, j);
        }
      }
    }
  }
  for (int i = 0; i < agents; ++i) {
    for (int r = 0; r < n; ++r) {
      if (Unit(rng) < density) Like(h, i, r);
    }
  }
  return Instance(n, std::move(v), std::move(h));
}

Instance GenGrid(int n, const std::vector<Rational>& grid, std::uint64_t seed) {
  if (n < 1 || grid.empty()) throw std::invalid_argument("gen_grid: bad arguments");
  std::mt19937_64 rng(seed);
  auto draw = [&] { return grid[static_cast<std::size_t>(rng() % grid.size())]; };
  const int agents = 2 * n;
  Matrix v = Square(agents);
  Matrix h = Rect(agents, n);
  for (int i = 0; i < agents; ++i) {
    for (int j = 0; j < agents; ++j) {
      if (i != j) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = draw();
    }
  }
  for (auto& row : h) {
    for (auto& x : row) x = draw();
  }
  return Instance(n, std::move(v), std::move(h));
}

// ---------------------------------------------------------------------------
// Figures.

FigureSpec ParseFigureSpec(std::string_view name, UtilityModel model) {
  static const std::map<std::string, FigureFamily, std::less<>> kFamilies = {
      {"fig2", FigureFamily::kFig2},
      {"fig3", FigureFamily::kFig3},
      {"fig4", FigureFamily::kFig4},
      {"fig5", FigureFamily::kFig5},
      {"fig6", FigureFamily::kFig6},
      {"fig6-symmetric", FigureFamily::kFig6Symmetric},
      {"fig7", FigureFamily::kFig7},
      {"parity", FigureFamily::kParity},
  };
  FigureSpec spec;
  spec.model = model;
  if (name.starts_with("badsd")) {
    spec.family = FigureFamily::kBadSd;
    std::string_view rest = name.substr(5);
    if (rest.empty()) return spec;
    if (rest.front() != ':') throw ParseError("unknown family '" + std::string(name) + "'");
    rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), spec.k);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || spec.k < 1) {
      throw ParseError("badsd needs a positive k, got '" + std::string(rest) + "'");
    }
    return spec;
  }
  const auto it = kFamilies.find(name);
  if (it == kFamilies.end()) throw ParseError("unknown family '" + std::string(name) + "'");
  spec.family = it->second;
  return spec;
}

std::string FigureName(const FigureSpec& spec) {
  switch (spec.family) {
    case FigureFamily::kFig2: return "fig2";
    case FigureFamily::kFig3: return "fig3";
    case FigureFamily::kFig4: return "fig4";
    case FigureFamily::kFig5: return "fig5";
    case FigureFamily::kFig6: return "fig6";
    case FigureFamily::kFig6Symmetric: return "fig6-symmetric";
    case FigureFamily::kBadSd: return "badsd:" + std::to_string(spec.k);
    case FigureFamily::kFig7: return "fig7";
    case FigureFamily::kParity: return "parity";
  }
  return "";
}

std::vector<std::string> FigureNames() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig6-symmetric",
          "badsd:<k>", "fig7", "parity"};
}

Figure GenFigure(const FigureSpec& spec) {
  Figure fig;
  fig.name = FigureName(spec);
  switch (spec.family) {
    case FigureFamily::kFig2:
      fig.instance = Fig2();
      fig.mechanism = "naive-maximal";
      fig.options.policy = EdgePickPolicy::ScriptedEdges({{0, 2}, {2, 6 + 2}});
      fig.claimed = {{"mechanism_welfare", 0}, {"ratio", 0}};
      break;
    case FigureFamily::kFig3:
      fig.instance = Fig3();
      fig.model = UtilityModel::kAdditive;
      fig.mechanism = "naive-maximal";
      fig.options.policy = EdgePickPolicy::ScriptedEdges({{0, 6 + 2}, {2, 6 + 2}});
      fig.claimed = {{"oracle_max", 8},
                     {"mechanism_welfare", 2},
                     {"ratio", Rational(1, 4)}};
      break;
    case FigureFamily::kFig4:
      fig.instance = Fig4();
      fig.mechanism = "lt-maximal";
      fig.options.policy = EdgePickPolicy::ScriptedTriples({{0, 2, 2}});
      fig.claimed = {{"oracle_max", 6},
                     {"mechanism_welfare", 1},
                     {"ratio", Rational(1, 6)}};
      break;
    case FigureFamily::kFig5:
      fig.instance = Fig5(spec.model);
      fig.model = spec.model;
      // Every matching except the two placing a1 with a3 is optimal.
      fig.claimed = {{"oracle_max", 2}, {"optimal_count", 4}};
      break;
    case FigureFamily::kFig6:
    case FigureFamily::kFig6Symmetric: {
      const bool symmetric = spec.family == FigureFamily::kFig6Symmetric;
      fig.instance = Fig6(symmetric);
      fig.model = UtilityModel::kAdditive;
      fig.claimed = {{"oracle_max", symmetric ? 3 : 2}, {"optimal_count", 2}};
      break;
    }
    case FigureFamily::kBadSd:
      return BadSd(spec.k);
    case FigureFamily::kFig7: {
      fig.instance = FromClauses(Fig7Cnf()).instance;
      // Four occurrences plus both clauses satisfiable.
      fig.claimed = {{"oracle_max", 6}};
      break;
    }
    case FigureFamily::kParity:
      fig.instance = Parity();
      fig.mechanism = "parity";
      fig.claimed = {{"oracle_max", 1}, {"optimal_count", 2}};
      break;
  }
  return fig;
}

std::map<std::string, Rational> MeasureFigure(const Figure& fig, int oracle_cap) {
  std::map<std::string, Rational> out;
  const Instance& inst = fig.instance;
  Rational optimum;
  if (inst.rooms() <= oracle_cap) {
    const OracleResult oracle = MaxWelfare(inst, fig.model, oracle_cap);
    optimum = oracle.max_welfare;
    if (fig.claimed.contains("optimal_count")) {
      out["optimal_count"] = static_cast<std::int64_t>(oracle.witnesses.size());
    }
  } else {
    optimum = SolveMaxWeight(Reduce(inst, fig.model), inst.rooms()).weight;
  }
  if (fig.claimed.contains("oracle_max")) out["oracle_max"] = optimum;
  if (!fig.mechanism.empty()) {
    const MechanismResult r = MakeMechanism(fig.mechanism)(inst, fig.model, fig.options);
    if (fig.claimed.contains("mechanism_welfare")) out["mechanism_welfare"] = r.welfare;
    if (fig.claimed.contains("ratio")) out["ratio"] = RatioAgainst(r.welfare, optimum).value;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Max-3SAT gadget.

void ValidateCnf(const Cnf& cnf, int clause_size) {
  if (cnf.num_vars < 1) throw std::invalid_argument("cnf: no variables");
  std::vector<bool> seen(static_cast<std::size_t>(cnf.num_vars), false);
  for (const auto& clause : cnf.clauses) {
    const int size = static_cast<int>(clause.size());
    if (clause_size > 0 ? size != clause_size : (size < 1 || size > 3)) {
      throw std::invalid_argument("cnf: clause has " + std::to_string(size) +
                                  " literals");
    }
    std::set<int> vars;
    for (const Literal& lit : clause) {
      if (lit.var < 0 || lit.var >= cnf.num_vars) {
        throw std::invalid_argument("cnf: variable out of range");
      }
      if (!vars.insert(lit.var).second) {
        throw std::invalid_argument("cnf: repeated variable in a clause");
      }
      seen[static_cast<std::size_t>(lit.var)] = true;
    }
  }
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (!seen[x]) {
      throw std::invalid_argument("cnf: variable x" + std::to_string(x + 1) +
                                  " never occurs");
    }
  }
}

Cnf ParseCnf(std::string_view text) {
  Cnf cnf;
  std::string s(text);
  std::istringstream clauses(s);
  std::string clause_text;
  while (std::getline(clauses, clause_text, ';')) {
    std::istringstream lits(clause_text);
    std::string tok;
    std::vector<Literal> clause;
    while (lits >> tok) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value == 0) {
        throw ParseError("bad literal '" + tok + "'");
      }
      const int var = std::abs(value) - 1;
      clause.push_back({var, value > 0});
      cnf.num_vars = std::max(cnf.num_vars, var + 1);
    }
    if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

std::string FormatCnf(const Cnf& cnf) {
  std::ostringstream out;
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    if (c > 0) out << "; ";
    for (std::size_t l = 0; l < cnf.clauses[c].size(); ++l) {
      if (l > 0) out << ' ';
      const Literal& lit = cnf.clauses[c][l];
      out << (lit.positive ? "" : "-") << lit.var + 1;
    }
  }
  return out.str();
}

Reduction FromClauses(const Cnf& cnf) {
  ValidateCnf(cnf, 0);
  const int m = static_cast<int>(cnf.clauses.size());
  Reduction red;
  ReductionMap& map = red.map;
  map.variables.resize(static_cast<std::size_t>(cnf.num_vars));
  for (int j = 0; j < m; ++j) {
    for (const Literal& lit : cnf.clauses[static_cast<std::size_t>(j)]) {
      map.variables[static_cast<std::size_t>(lit.var)].occurrence_clause.push_back(j);
    }
  }
  int next_agent = 0;
  int next_room = 0;
  for (int j = 0; j < m; ++j) {
    map.clause_agents.push_back(next_agent++);
    map.clause_rooms.push_back(next_room++);
  }
  for (VariableGadget& g : map.variables) {
    const int d = static_cast<int>(g.occurrence_clause.size());
    for (int t = 0; t < d; ++t) g.a_agents.push_back(next_agent++);
    for (int t = 0; t < 2 * d; ++t) g.b_agents.push_back(next_agent++);
    for (int t = 0; t < d; ++t) g.rooms.push_back(next_room++);
  }
  if (next_agent % 2 == 1) map.dummy_agent = next_agent++;
  const int n = next_agent / 2;
  while (next_room < n) map.dummy_rooms.push_back(next_room++);
  if (next_room != n) throw InvariantError("3sat reduction: too many rooms");

  Matrix v = Square(2 * n);
  Matrix h = Rect(2 * n, n);
  for (int j = 0; j < m; ++j) {
    Like(h, map.clause_agents[static_cast<std::size_t>(j)],
         map.clause_rooms[static_cast<std::size_t>(j)]);
  }
  for (int x = 0; x < cnf.num_vars; ++x) {
    const VariableGadget& g = map.variables[static_cast<std::size_t>(x)];
    const int d = static_cast<int>(g.a_agents.size());
    auto b = [&](int one_based) { return g.b_agents[static_cast<std::size_t>(one_based - 1)]; };
    auto a = [&](int one_based) { return g.a_agents[static_cast<std::size_t>(one_based - 1)]; };
    for (int t = 1; t <= d; ++t) {
      const int room = g.rooms[static_cast<std::size_t>(t - 1)];
      Like(h, b(2 * t - 1), room);
      Like(h, b(2 * t), room);
    }
    // The a-agents link consecutive b-pairs into a cycle.
    for (int t = 1; t < d; ++t) {
      Mutual(v, b(2 * t), a(t));
      Mutual(v, b(2 * t + 1), a(t));
    }
    Mutual(v, b(2 * d), a(d));
    Mutual(v, b(1), a(d));
    // Literal wiring.
    for (int t = 1; t <= d; ++t) {
      const int j = g.occurrence_clause[static_cast<std::size_t>(t - 1)];
      const auto& clause = cnf.clauses[static_cast<std::size_t>(j)];
      const auto lit = std::find_if(clause.begin(), clause.end(),
                                    [&](const Literal& l) { return l.var == x; });
      const int clause_agent = map.clause_agents[static_cast<std::size_t>(j)];
      Mutual(v, lit->positive ? b(2 * t - 1) : b(2 * t), clause_agent);
    }
  }
  red.instance = Instance(n, std::move(v), std::move(h), {{"family", "3sat"}});
  return red;
}

Reduction From3Sat(const Cnf& cnf) {
  ValidateCnf(cnf, 3);
  return FromClauses(cnf);
}

int SatisfiedClauses(const Cnf& cnf, const std::vector<bool>& assignment) {
  int count = 0;
  for (const auto& clause : cnf.clauses) {
    for (const Literal& lit : clause) {
      if (assignment[static_cast<std::size_t>(lit.var)] == lit.positive) {
        ++count;
        break;
      }
    }
  }
  return count;
}

int SatMaxClauses(const Cnf& cnf) {
  if (cnf.num_vars > 20) throw std::invalid_argument("sat_max_clauses: too many variables");
  int best = 0;
  std::vector<bool> assignment(static_cast<std::size_t>(cnf.num_vars));
  for (std::uint32_t mask = 0; mask < (1u << cnf.num_vars); ++mask) {
    for (int x = 0; x < cnf.num_vars; ++x) {
      assignment[static_cast<std::size_t>(x)] = (mask >> x) & 1u;
    }
    best = std::max(best, SatisfiedClauses(cnf, assignment));
  }
  return best;
}

Matching AssignmentToMatching(const Cnf& cnf, const Reduction& red,
                              const std::vector<bool>& assignment) {
  const ReductionMap& map = red.map;
  const int n = red.instance.rooms();
  std::vector<bool> agent_used(static_cast<std::size_t>(2 * n), false);
  std::vector<bool> room_used(static_cast<std::size_t>(n), false);
  std::vector<Triple> triples;
  auto add = [&](int i, int j, int r) {
    triples.push_back(Triple::Make(i, j, r));
    agent_used[static_cast<std::size_t>(i)] = agent_used[static_cast<std::size_t>(j)] = true;
    room_used[static_cast<std::size_t>(r)] = true;
  };
  // free_b[j] collects b-agents left free by the assignment that like c_j.
  std::vector<int> clause_partner(cnf.clauses.size(), -1);
  for (std::size_t x = 0; x < map.variables.size(); ++x) {
    const VariableGadget& g = map.variables[x];
    const int d = static_cast<int>(g.a_agents.size());
    auto b = [&](int one_based) { return g.b_agents[static_cast<std::size_t>(one_based - 1)]; };
    const bool value = assignment[x];
    for (int t = 1; t <= d; ++t) {
      const int a = g.a_agents[static_cast<std::size_t>(t - 1)];
      if (value) {
        // Even b_{2t} shares r_t with a_t; odd agents go free.
        add(b(2 * t), a, g.rooms[static_cast<std::size_t>(t - 1)]);
      } else {
        // Odd b_{2t+1} (b_1 for t = d) shares r_{t+1} (r_1) with a_t.
        const int odd = t < d ? 2 * t + 1 : 1;
        const int room = t < d ? t : 0;
        add(b(odd), a, g.rooms[static_cast<std::size_t>(room)]);
      }
    }
    for (int t = 1; t <= d; ++t) {
      const int j = g.occurrence_clause[static_cast<std::size_t>(t - 1)];
      const int liking = red.instance.compat(b(2 * t - 1), map.clause_agents[static_cast<std::size_t>(j)]) == 1
                             ? b(2 * t - 1)
                             : b(2 * t);
      const bool free = !agent_used[static_cast<std::size_t>(liking)];
      if (free && clause_partner[static_cast<std::size_t>(j)] == -1) {
        clause_partner[static_cast<std::size_t>(j)] = liking;
      }
    }
  }
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    if (clause_partner[j] >= 0) {
      add(map.clause_agents[j], clause_partner[j], map.clause_rooms[j]);
    }
  }
  std::vector<int> agents;
  std::vector<int> rooms;
  for (int i = 0; i < 2 * n; ++i) {
    if (!agent_used[static_cast<std::size_t>(i)]) agents.push_back(i);
  }
  for (int r = 0; r < n; ++r) {
    if (!room_used[static_cast<std::size_t>(r)]) rooms.push_back(r);
  }
  for (std::size_t k = 0; k < rooms.size(); ++k) {
    triples.push_back(Triple::Make(agents[2 * k], agents[2 * k + 1], rooms[k]));
  }
  return Matching(n, std::move(triples));
}

std::vector<bool> MatchingToAssignment(const Reduction& red, const Matching& mu) {
  std::vector<bool> assignment(red.map.variables.size(), false);
  std::set<int> clause_agents(red.map.clause_agents.begin(), red.map.clause_agents.end());
  for (std::size_t x = 0; x < red.map.variables.size(); ++x) {
    const auto& b = red.map.variables[x].b_agents;
    for (std::size_t p = 0; p < b.size(); ++p) {
      if (clause_agents.contains(mu.partner_of(b[p])) && p % 2 == 0) {
        assignment[x] = true;
      }
    }
  }
  return assignment;
}

bool OddEvenConsistent(const Reduction& red, const Matching& mu) {
  for (const VariableGadget& g : red.map.variables) {
    bool odd = false;
    bool even = false;
    for (std::size_t p = 0; p < g.b_agents.size(); ++p) {
      if (AgentUtility(red.instance, UtilityModel::kLeontief, mu, g.b_agents[p]) == 1) {
        (p % 2 == 0 ? odd : even) = true;
      }
    }
    if (odd && even) return false;
  }
  return true;
}

nlohmann::json ReductionMapToJson(const ReductionMap& map) {
  nlohmann::json j;
  j["clause_agents"] = map.clause_agents;
  j["clause_rooms"] = map.clause_rooms;
  j["dummy_rooms"] = map.dummy_rooms;
  j["dummy_agent"] = map.dummy_agent;
  j["variables"] = nlohmann::json::array();
  for (const VariableGadget& g : map.variables) {
    j["variables"].push_back({{"a_agents", g.a_agents},
                              {"b_agents", g.b_agents},
                              {"rooms", g.rooms},
                              {"occurrence_clause", g.occurrence_clause}});
  }
  return j;
}

}  // namespace roommatch
