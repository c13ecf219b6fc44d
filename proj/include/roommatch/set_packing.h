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

// Weighted 3-set packing: the reduction from welfare maximization and two
// exact exponential solvers.
//
// Welfare maximization over roommate matchings is the same problem as
// choosing n disjoint 3-sets {i, j, 2n + r} from the universe agents + rooms,
// where each set weighs u_i + u_j. The solvers here are plain depth-first
// branch-and-bound searches meant for desk-scale instances.

#ifndef ROOMMATCH_SET_PACKING_H_
#define ROOMMATCH_SET_PACKING_H_

#include <array>
#include <optional>
#include <vector>

#include "json.hpp"
#include "roommatch/instance.h"

namespace roommatch {

struct WeightedSet {
  std::array<int, 3> elements{};
  Rational weight;
  // Per-element split of `weight` (non-negative, summing to weight). Only
  // used to tighten the search bound; the split does not change the optimum.
  std::array<Rational, 3> shares;
};

struct SetPackingInstance {
  int universe_size = 0;
  std::vector<WeightedSet> sets;
};

struct Packing {
  std::vector<int> chosen;  // set indices, ascending
};

// One set per (i < j, r), in that lexicographic order. Elements are
// {i, j, 2n + r}; shares are {u_i, u_j, 0}.
SetPackingInstance Reduce(const Instance& inst, UtilityModel model);

// Throws std::invalid_argument when a set has repeated or out-of-range
// elements, a negative weight, or shares that do not sum to its weight.
void Validate(const SetPackingInstance& spi);

struct MaxWeightResult {
  Rational weight;
  Packing packing;
};

// Maximum total weight over packings of exactly `required` disjoint sets.
// The witness is the first maximum packing met by the depth-first search,
// which branches on the lowest undecided element and tries its sets in index
// order before leaving the element uncovered. Throws std::invalid_argument if
// no packing of that size exists.
MaxWeightResult SolveMaxWeight(const SetPackingInstance& spi, int required);

// First packing of exactly `required` disjoint sets in the same search order,
// or nullopt.
std::optional<Packing> SolveFeasibility(
    int universe_size, const std::vector<std::array<int, 3>>& sets,
    int required);

// Weight-greedy baseline (ties by index). No approximation guarantee.
Packing GreedyPacking(const SetPackingInstance& spi);
Rational PackingWeight(const SetPackingInstance& spi, const Packing& packing);

// Decodes a packing of a reduction instance with n rooms.
Matching MatchingFromPacking(const SetPackingInstance& spi,
                             const Packing& packing, int n);

// {"universe": m, "sets": [[a, b, c, "p/q"], ...]}. Shares are not
// serialized; parsing splits each weight evenly.
nlohmann::json SetPackingToJson(const SetPackingInstance& spi);
SetPackingInstance SetPackingFromJson(const nlohmann::json& j);

}  // namespace roommatch

#endif  // ROOMMATCH_SET_PACKING_H_
