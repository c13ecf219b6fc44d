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

#include "roommatch/rational.h"

#include <charconv>
#include <cstdio>
#include <numeric>

#include "roommatch/errors.h"

namespace roommatch {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t ParseInt(std::string_view s, std::string_view whole) {
  s = Trim(s);
  std::int64_t value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const std::string_view s = Trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(ParseInt(s, text));
  }
  const std::int64_t num = ParseInt(s.substr(0, slash), text);
  const std::int64_t den = ParseInt(s.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string FormatRational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::string FormatDecimal(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f",
                static_cast<double>(value.numerator()) /
                    static_cast<double>(value.denominator()));
  return buf;
}

std::int64_t CommonDenominator(std::span<const Rational> values) {
  std::int64_t lcm = 1;
  for (const Rational& v : values) {
    const std::int64_t d = v.denominator();
    const std::int64_t g = std::gcd(lcm, d);
    std::int64_t next = 0;
    if (__builtin_mul_overflow(lcm / g, d, &next)) {
      throw InvariantError("common denominator overflows int64");
    }
    lcm = next;
  }
  return lcm;
}

}  // namespace roommatch
