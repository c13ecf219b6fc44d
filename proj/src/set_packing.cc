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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "roommatch/errors.h"
#include "roommatch/json_io.h"

namespace roommatch {
namespace {

// kZero: free, but assumed to gain nothing from the set that covers it.
enum : char { kFree = 0, kCovered = 1, kSkipped = 2, kZero = 3 };

// Depth-first search shared by the weighted and the feasibility solver.
// Feasibility branches on the first free element; the weighted search
// branches on shares instead (see WeightedDfs).
class PackingSearch {
 public:
  PackingSearch(int universe, const std::vector<std::array<int, 3>>& sets,
                int required)
      : universe_(universe),
        sets_(sets),
        required_(required),
        state_(static_cast<std::size_t>(universe), kFree),
        by_element_(static_cast<std::size_t>(universe)),
        undecided_(universe) {
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (int e : sets[s]) {
        by_element_[static_cast<std::size_t>(e)].push_back(static_cast<int>(s));
      }
    }
  }

  void SetWeights(std::vector<std::int64_t> weights,
                  std::vector<std::array<std::int64_t, 3>> shares) {
    weights_ = std::move(weights);
    shares_ = std::move(shares);
    by_weight_.resize(sets_.size());
    std::iota(by_weight_.begin(), by_weight_.end(), 0);
    std::stable_sort(by_weight_.begin(), by_weight_.end(), [&](int a, int b) {
      return weights_[static_cast<std::size_t>(a)] >
             weights_[static_cast<std::size_t>(b)];
    });
    weighted_ = true;
  }

  void SeedIncumbent(std::int64_t value) { best_ = value; }

  // Returns true when a packing was recorded.
  bool Run(bool stop_at_first) {
    stop_at_first_ = stop_at_first;
    if (weighted_) {
      WeightedDfs(0);
    } else {
      Dfs(0);
    }
    return found_;
  }

  std::int64_t best() const { return best_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  bool Compatible(int s) const {
    for (int e : sets_[static_cast<std::size_t>(s)]) {
      const char st = state_[static_cast<std::size_t>(e)];
      if (st != kFree && st != kZero) return false;
    }
    return true;
  }

  std::int64_t Share(int s, int e) const {
    const auto& set = sets_[static_cast<std::size_t>(s)];
    for (std::size_t k = 0; k < 3; ++k) {
      if (set[k] == e) return shares_[static_cast<std::size_t>(s)][k];
    }
    return 0;
  }

  // Optimistic completion value, or -1 when fewer compatible sets remain
  // than still need to be chosen.
  std::int64_t Bound() const {
    const int need = required_ - static_cast<int>(chosen_.size());
    std::int64_t top = 0;
    int taken = 0;
    for (int s : by_weight_) {
      if (taken == need) break;
      if (!Compatible(s)) continue;
      top += weights_[static_cast<std::size_t>(s)];
      ++taken;
    }
    if (taken < need) return -1;
    std::int64_t by_element = 0;
    for (int e = 0; e < universe_; ++e) {
      if (state_[static_cast<std::size_t>(e)] != kFree) continue;
      std::int64_t best_share = 0;
      for (int s : by_element_[static_cast<std::size_t>(e)]) {
        if (!Compatible(s)) continue;
        const auto& set = sets_[static_cast<std::size_t>(s)];
        for (int k = 0; k < 3; ++k) {
          if (set[static_cast<std::size_t>(k)] == e) {
            best_share = std::max(
                best_share,
                shares_[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)]);
          }
        }
      }
      by_element += best_share;
    }
    return std::min(top, by_element);
  }

  void Record() {
    if (!found_ ? value_ >= best_ : value_ > best_) {
      best_ = value_;
      witness_ = chosen_;
      found_ = true;
    }
  }

  void Mark(int s, char mark) {
    for (int e : sets_[static_cast<std::size_t>(s)]) {
      state_[static_cast<std::size_t>(e)] = mark;
    }
  }

  std::array<char, 3> Take(int s) {
    std::array<char, 3> saved{};
    const auto& set = sets_[static_cast<std::size_t>(s)];
    for (std::size_t k = 0; k < 3; ++k) {
      saved[k] = state_[static_cast<std::size_t>(set[k])];
      state_[static_cast<std::size_t>(set[k])] = kCovered;
    }
    chosen_.push_back(s);
    value_ += weights_[static_cast<std::size_t>(s)];
    return saved;
  }

  void Untake(int s, const std::array<char, 3>& saved) {
    const auto& set = sets_[static_cast<std::size_t>(s)];
    for (std::size_t k = 0; k < 3; ++k) {
      state_[static_cast<std::size_t>(set[k])] = saved[k];
    }
    chosen_.pop_back();
    value_ -= weights_[static_cast<std::size_t>(s)];
  }

  // Each element either takes a set in which its share is positive or is
  // marked kZero. An optimum packing is reached along the branch that marks
  // exactly its zero-share elements; the sets of that packing left over are
  // then made of kZero elements only, so any feasible cover of those
  // elements completes a packing at least as heavy.
  void WeightedDfs(int from) {
    if (static_cast<int>(chosen_.size()) == required_) {
      Record();
      return;
    }
    int e = from;
    while (e < universe_ && state_[static_cast<std::size_t>(e)] != kFree) ++e;
    if (e == universe_) {
      completed_ = false;
      Complete(0);
      return;
    }
    const std::int64_t bound = Bound();
    if (bound < 0) return;
    const std::int64_t reachable = value_ + bound;
    if (found_ ? reachable <= best_ : reachable < best_) return;
    for (int s : by_element_[static_cast<std::size_t>(e)]) {
      if (Share(s, e) <= 0 || !Compatible(s)) continue;
      const auto saved = Take(s);
      WeightedDfs(e + 1);
      Untake(s, saved);
    }
    state_[static_cast<std::size_t>(e)] = kZero;
    WeightedDfs(e + 1);
    state_[static_cast<std::size_t>(e)] = kFree;
  }

  // First cover of the remaining kZero elements that reaches `required_`.
  void Complete(int from) {
    if (static_cast<int>(chosen_.size()) == required_) {
      Record();
      completed_ = true;
      return;
    }
    int e = from;
    while (e < universe_ && state_[static_cast<std::size_t>(e)] != kZero) ++e;
    if (e == universe_) return;
    for (int s : by_element_[static_cast<std::size_t>(e)]) {
      if (!Compatible(s)) continue;
      const auto saved = Take(s);
      Complete(e + 1);
      Untake(s, saved);
      if (completed_) return;
    }
    int open = 0;
    for (int x = e + 1; x < universe_; ++x) {
      if (state_[static_cast<std::size_t>(x)] == kZero) ++open;
    }
    const int need = required_ - static_cast<int>(chosen_.size());
    if (open >= 3 * need) {
      state_[static_cast<std::size_t>(e)] = kSkipped;
      Complete(e + 1);
      state_[static_cast<std::size_t>(e)] = kZero;
    }
  }

  void Dfs(int from) {
    if (stop_at_first_ && found_) return;
    if (static_cast<int>(chosen_.size()) == required_) {
      Record();
      return;
    }
    int e = from;
    while (e < universe_ && state_[static_cast<std::size_t>(e)] != kFree) ++e;
    if (e == universe_) return;
    for (int s : by_element_[static_cast<std::size_t>(e)]) {
      if (!Compatible(s)) continue;
      Mark(s, kCovered);
      undecided_ -= 3;
      chosen_.push_back(s);
      Dfs(e + 1);
      chosen_.pop_back();
      undecided_ += 3;
      Mark(s, kFree);
      if (stop_at_first_ && found_) return;
    }
    const int need = required_ - static_cast<int>(chosen_.size());
    if (undecided_ - 1 >= 3 * need) {
      state_[static_cast<std::size_t>(e)] = kSkipped;
      --undecided_;
      Dfs(e + 1);
      ++undecided_;
      state_[static_cast<std::size_t>(e)] = kFree;
    }
  }

  int universe_;
  const std::vector<std::array<int, 3>>& sets_;
  int required_;
  std::vector<char> state_;
  std::vector<std::vector<int>> by_element_;
  int undecided_;
  std::vector<int> chosen_;

  bool weighted_ = false;
  std::vector<std::int64_t> weights_;
  std::vector<std::array<std::int64_t, 3>> shares_;
  std::vector<int> by_weight_;
  std::int64_t value_ = 0;
  std::int64_t best_ = std::numeric_limits<std::int64_t>::min();

  bool stop_at_first_ = false;
  bool completed_ = false;
  bool found_ = false;
  std::vector<int> witness_;
};

void ValidateElements(int universe, const std::array<int, 3>& set) {
  for (int k = 0; k < 3; ++k) {
    if (set[static_cast<std::size_t>(k)] < 0 ||
        set[static_cast<std::size_t>(k)] >= universe) {
      throw std::invalid_argument("set element out of range");
    }
  }
  if (set[0] == set[1] || set[0] == set[2] || set[1] == set[2]) {
    throw std::invalid_argument("set repeats an element");
  }
}

std::vector<std::array<int, 3>> Elements(const SetPackingInstance& spi) {
  std::vector<std::array<int, 3>> out;
  out.reserve(spi.sets.size());
  for (const WeightedSet& s : spi.sets) out.push_back(s.elements);
  return out;
}

}  // namespace

SetPackingInstance Reduce(const Instance& inst, UtilityModel model) {
  const int n = inst.rooms();
  const int agents = inst.agents();
  SetPackingInstance spi;
  spi.universe_size = agents + n;
  for (int i = 0; i < agents; ++i) {
    for (int j = i + 1; j < agents; ++j) {
      for (int r = 0; r < n; ++r) {
        const Rational ui = Utility(inst, model, i, j, r);
        const Rational uj = Utility(inst, model, j, i, r);
        spi.sets.push_back({{i, j, agents + r}, ui + uj, {ui, uj, Rational(0)}});
      }
    }
  }
  return spi;
}

void Validate(const SetPackingInstance& spi) {
  if (spi.universe_size < 0) throw std::invalid_argument("negative universe");
  for (const WeightedSet& s : spi.sets) {
    ValidateElements(spi.universe_size, s.elements);
    if (s.weight < 0) throw std::invalid_argument("negative set weight");
    Rational total = 0;
    for (const Rational& share : s.shares) {
      if (share < 0) throw std::invalid_argument("negative share");
      total += share;
    }
    if (total != s.weight) {
      throw std::invalid_argument("shares must sum to the set weight");
    }
  }
}

Rational PackingWeight(const SetPackingInstance& spi, const Packing& packing) {
  Rational total = 0;
  for (int s : packing.chosen) total += spi.sets.at(static_cast<std::size_t>(s)).weight;
  return total;
}

Packing GreedyPacking(const SetPackingInstance& spi) {
  std::vector<int> order(spi.sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spi.sets[static_cast<std::size_t>(a)].weight >
           spi.sets[static_cast<std::size_t>(b)].weight;
  });
  std::vector<bool> used(static_cast<std::size_t>(spi.universe_size), false);
  Packing out;
  for (int s : order) {
    const auto& el = spi.sets[static_cast<std::size_t>(s)].elements;
    if (used[static_cast<std::size_t>(el[0])] ||
        used[static_cast<std::size_t>(el[1])] ||
        used[static_cast<std::size_t>(el[2])]) {
      continue;
    }
    for (int e : el) used[static_cast<std::size_t>(e)] = true;
    out.chosen.push_back(s);
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  return out;
}

MaxWeightResult SolveMaxWeight(const SetPackingInstance& spi, int required) {
  Validate(spi);
  if (required < 0) throw std::invalid_argument("required must be >= 0");
  std::vector<Rational> all;
  for (const WeightedSet& s : spi.sets) {
    all.push_back(s.weight);
    all.insert(all.end(), s.shares.begin(), s.shares.end());
  }
  const std::int64_t scale = CommonDenominator(all);
  auto scaled = [scale](const Rational& x) {
    return x.numerator() * (scale / x.denominator());
  };
  std::vector<std::int64_t> weights;
  std::vector<std::array<std::int64_t, 3>> shares;
  for (const WeightedSet& s : spi.sets) {
    weights.push_back(scaled(s.weight));
    shares.push_back({scaled(s.shares[0]), scaled(s.shares[1]),
                      scaled(s.shares[2])});
  }

  const auto elements = Elements(spi);
  PackingSearch search(spi.universe_size, elements, required);
  search.SetWeights(weights, shares);
  const Packing greedy = GreedyPacking(spi);
  if (static_cast<int>(greedy.chosen.size()) == required) {
    std::int64_t seed = 0;
    for (int s : greedy.chosen) seed += weights[static_cast<std::size_t>(s)];
    search.SeedIncumbent(seed);
  }
  if (!search.Run(/*stop_at_first=*/false)) {
    throw std::invalid_argument("no packing of " + std::to_string(required) +
                                " disjoint sets exists");
  }
  MaxWeightResult result;
  result.weight = Rational(search.best(), scale);
  result.packing.chosen = search.witness();
  std::sort(result.packing.chosen.begin(), result.packing.chosen.end());
  return result;
}

std::optional<Packing> SolveFeasibility(
    int universe_size, const std::vector<std::array<int, 3>>& sets,
    int required) {
  if (required < 0) throw std::invalid_argument("required must be >= 0");
  for (const auto& s : sets) ValidateElements(universe_size, s);
  if (3 * required > universe_size) return std::nullopt;
  PackingSearch search(universe_size, sets, required);
  if (!search.Run(/*stop_at_first=*/true)) return std::nullopt;
  Packing out{search.witness()};
  std::sort(out.chosen.begin(), out.chosen.end());
  return out;
}

Matching MatchingFromPacking(const SetPackingInstance& spi,
                             const Packing& packing, int n) {
  const int agents = 2 * n;
  std::vector<Triple> triples;
  for (int s : packing.chosen) {
    auto el = spi.sets.at(static_cast<std::size_t>(s)).elements;
    std::sort(el.begin(), el.end());
    if (el[1] >= agents || el[2] < agents) {
      throw std::invalid_argument("set is not an (agent, agent, room) triple");
    }
    triples.push_back(Triple::Make(el[0], el[1], el[2] - agents));
  }
  return Matching(n, std::move(triples));
}

nlohmann::json SetPackingToJson(const SetPackingInstance& spi) {
  nlohmann::json sets = nlohmann::json::array();
  for (const WeightedSet& s : spi.sets) {
    sets.push_back(nlohmann::json::array({s.elements[0], s.elements[1],
                                          s.elements[2],
                                          FormatRational(s.weight)}));
  }
  return {{"universe", spi.universe_size}, {"sets", std::move(sets)}};
}

SetPackingInstance SetPackingFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("universe") || !j.contains("sets") ||
      !j["universe"].is_number_integer() || !j["sets"].is_array()) {
    throw ParseError("set packing JSON needs \"universe\" and \"sets\"");
  }
  SetPackingInstance spi;
  spi.universe_size = j["universe"].get<int>();
  for (const auto& s : j["sets"]) {
    if (!s.is_array() || s.size() != 4 || !s[0].is_number_integer() ||
        !s[1].is_number_integer() || !s[2].is_number_integer()) {
      throw ParseError("each set must be [a, b, c, weight]");
    }
    const Rational w = RationalFromJson(s[3]);
    const Rational third = w / 3;
    spi.sets.push_back(
        {{s[0].get<int>(), s[1].get<int>(), s[2].get<int>()}, w,
         {third, third, w - 2 * third}});
  }
  try {
    Validate(spi);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid set packing: ") + e.what());
  }
  return spi;
}

}  // namespace roommatch
