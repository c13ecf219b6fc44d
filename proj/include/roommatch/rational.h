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

#ifndef ROOMMATCH_RATIONAL_H_
#define ROOMMATCH_RATIONAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

// Under C++20 rewritten comparisons, boost's templated mixed
// rational-vs-integer operator== selects its own reversed form and recurses
// forever. Exact non-template overloads take precedence and break the cycle.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
  return a == rational<std::int64_t>(b);
}
inline constexpr bool operator==(const rational<std::int64_t>& a, long b) {
  return a == rational<std::int64_t>(b);
}
inline constexpr bool operator==(const rational<std::int64_t>& a,
                                 long long b) {
  return a == rational<std::int64_t>(static_cast<std::int64_t>(b));
}
}  // namespace boost

namespace roommatch {

// Exact valuation / welfare type. Always normalized (lowest terms, positive
// denominator) by boost::rational.
using Rational = boost::rational<std::int64_t>;

// Accepts "p", "p/q" and "-p/q" with optional surrounding whitespace.
// Throws ParseError on anything else (including a zero denominator).
Rational ParseRational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string FormatRational(const Rational& value);

// Six-place decimal rendering, for display only.
std::string FormatDecimal(const Rational& value);

// Smallest positive integer D such that every value * D is an integer.
// Throws InvariantError if D overflows int64.
std::int64_t CommonDenominator(std::span<const Rational> values);

}  // namespace roommatch

#endif  // ROOMMATCH_RATIONAL_H_
