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

// Brute-force oracle: exhaustive enumeration of all roommate matchings.
//
// Enumeration order is fixed: agent pairings are generated by pairing the
// smallest unpaired agent with each larger unpaired agent in turn, and for
// every pairing the rooms are assigned to the pairs (ordered by their
// smallest agent) by permutations in lexicographic order. Every matching
// appears exactly once; there are (2n)!/(2^n n!) * n! of them.

#ifndef ROOMMATCH_ORACLE_H_
#define ROOMMATCH_ORACLE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "roommatch/instance.h"

namespace roommatch {

inline constexpr int kDefaultOracleCap = 6;

class MatchingEnumerator {
 public:
  // Throws std::invalid_argument for n < 1 and CapExceededError for n > cap.
  explicit MatchingEnumerator(int n, int cap = kDefaultOracleCap);

  int rooms() const { return n_; }
  // Number of distinct matchings for n rooms.
  static std::uint64_t Count(int n);

  // Calls `visit` for every matching in enumeration order.
  void ForEach(const std::function<void(const Matching&)>& visit) const;

  // Lower-level walk without materializing Matching objects. `pairs[k]` is
  // the k-th pair (lo, hi) and `room_of_pair[k]` its room.
  using RawVisitor = std::function<void(std::span<const std::pair<int, int>>,
                                        std::span<const int>)>;
  void ForEachRaw(const RawVisitor& visit) const;

  std::vector<Matching> All() const;

  static Matching Build(int n, std::span<const std::pair<int, int>> pairs,
                        std::span<const int> room_of_pair);

 private:
  int n_;
};

struct OracleResult {
  Rational max_welfare;
  std::vector<Matching> witnesses;  // every maximizer, sorted ascending
};

OracleResult MaxWelfare(const Instance& inst, UtilityModel model,
                        int cap = kDefaultOracleCap);

struct WelfareRatio {
  Rational value;
  bool defined_as_one = false;  // optimum welfare is zero
};

// welfare(mu) / max welfare; exactly 1 (flagged) when the optimum is zero.
WelfareRatio Ratio(const Instance& inst, UtilityModel model, const Matching& mu,
                   int cap = kDefaultOracleCap);
WelfareRatio RatioAgainst(const Rational& welfare, const Rational& optimum);

}  // namespace roommatch

#endif  // ROOMMATCH_ORACLE_H_
