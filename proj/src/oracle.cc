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

#include "roommatch/oracle.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "roommatch/errors.h"

namespace roommatch {
namespace {

void Pairings(std::vector<bool>& used, std::vector<std::pair<int, int>>& pairs,
              int agents,
              const std::function<void(std::span<const std::pair<int, int>>)>&
                  visit) {
  int first = 0;
  while (first < agents && used[static_cast<std::size_t>(first)]) ++first;
  if (first == agents) {
    visit(pairs);
    return;
  }
  used[static_cast<std::size_t>(first)] = true;
  for (int other = first + 1; other < agents; ++other) {
    if (used[static_cast<std::size_t>(other)]) continue;
    used[static_cast<std::size_t>(other)] = true;
    pairs.emplace_back(first, other);
    Pairings(used, pairs, agents, visit);
    pairs.pop_back();
    used[static_cast<std::size_t>(other)] = false;
  }
  used[static_cast<std::size_t>(first)] = false;
}

}  // namespace

MatchingEnumerator::MatchingEnumerator(int n, int cap) : n_(n) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > cap) {
    throw CapExceededError("exhaustive enumeration refused: n = " +
                           std::to_string(n) + " exceeds cap " +
                           std::to_string(cap));
  }
}

std::uint64_t MatchingEnumerator::Count(int n) {
  // (2n-1)!! pairings times n! room assignments.
  std::uint64_t count = 1;
  for (int k = 1; k <= n; ++k) {
    count *= static_cast<std::uint64_t>(2 * k - 1) * static_cast<std::uint64_t>(k);
  }
  return count;
}

void MatchingEnumerator::ForEachRaw(const RawVisitor& visit) const {
  std::vector<bool> used(static_cast<std::size_t>(2 * n_), false);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_));
  std::vector<int> perm(static_cast<std::size_t>(n_));
  Pairings(used, pairs, 2 * n_,
           [&](std::span<const std::pair<int, int>> p) {
             std::iota(perm.begin(), perm.end(), 0);
             do {
               visit(p, perm);
             } while (std::next_permutation(perm.begin(), perm.end()));
           });
}

Matching MatchingEnumerator::Build(int n,
                                   std::span<const std::pair<int, int>> pairs,
                                   std::span<const int> room_of_pair) {
  std::vector<Triple> triples;
  triples.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    triples.push_back({pairs[k].first, pairs[k].second, room_of_pair[k]});
  }
  return Matching(n, std::move(triples));
}

void MatchingEnumerator::ForEach(
    const std::function<void(const Matching&)>& visit) const {
  ForEachRaw([&](std::span<const std::pair<int, int>> pairs,
                 std::span<const int> rooms) {
    visit(Build(n_, pairs, rooms));
  });
}

std::vector<Matching> MatchingEnumerator::All() const {
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(Count(n_)));
  ForEach([&](const Matching& mu) { out.push_back(mu); });
  return out;
}

OracleResult MaxWelfare(const Instance& inst, UtilityModel model, int cap) {
  const int n = inst.rooms();
  const int agents = inst.agents();
  MatchingEnumerator enumerator(n, cap);

  // Triple weights scaled to integers by a common denominator.
  std::vector<Rational> weights(static_cast<std::size_t>(agents * agents * n));
  for (int i = 0; i < agents; ++i) {
    for (int j = i + 1; j < agents; ++j) {
      for (int r = 0; r < n; ++r) {
        weights[static_cast<std::size_t>((i * agents + j) * n + r)] =
            TripleWelfare(inst, model, {i, j, r});
      }
    }
  }
  const std::int64_t scale = CommonDenominator(weights);
  std::vector<std::int64_t> scaled(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    scaled[k] = weights[k].numerator() * (scale / weights[k].denominator());
  }

  std::int64_t best = -1;
  std::vector<std::pair<std::vector<std::pair<int, int>>, std::vector<int>>> hits;
  enumerator.ForEachRaw([&](std::span<const std::pair<int, int>> pairs,
                            std::span<const int> rooms) {
    std::int64_t total = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      total += scaled[static_cast<std::size_t>(
          (pairs[k].first * agents + pairs[k].second) * n + rooms[k])];
    }
    if (total < best) return;
    if (total > best) {
      best = total;
      hits.clear();
    }
    hits.emplace_back(std::vector<std::pair<int, int>>(pairs.begin(), pairs.end()),
                      std::vector<int>(rooms.begin(), rooms.end()));
  });

  OracleResult result;
  result.max_welfare = Rational(best, scale);
  result.witnesses.reserve(hits.size());
  for (const auto& [pairs, rooms] : hits) {
    result.witnesses.push_back(MatchingEnumerator::Build(n, pairs, rooms));
  }
  std::sort(result.witnesses.begin(), result.witnesses.end());
  return result;
}

WelfareRatio RatioAgainst(const Rational& welfare, const Rational& optimum) {
  if (optimum == 0) return {Rational(1), true};
  return {welfare / optimum, false};
}

WelfareRatio Ratio(const Instance& inst, UtilityModel model, const Matching& mu,
                   int cap) {
  const OracleResult oracle = MaxWelfare(inst, model, cap);
  return RatioAgainst(Welfare(inst, model, mu), oracle.max_welfare);
}

}  // namespace roommatch
