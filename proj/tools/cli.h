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

// Command-line front end: solve, oracle, audit, gen, bench, report.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 size cap exceeded,
// 4 internal invariant violated.

#ifndef ROOMMATCH_TOOLS_CLI_H_
#define ROOMMATCH_TOOLS_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "roommatch/instance.h"
#include "roommatch/mechanisms.h"

namespace roommatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitInvariant = 4;

// Worst-case welfare ratio the mechanism is stated to guarantee under
// `model`, when one is stated unconditionally for binary valuations.
std::optional<Rational> StatedBound(const std::string& mechanism, UtilityModel model);

nlohmann::json MechanismResultToJson(const std::string& mechanism,
                                     UtilityModel model,
                                     const MechanismResult& result);

// "identity" or a comma-separated permutation of 0..size-1. An empty vector
// means identity. Throws ParseError.
std::vector<int> ParseSigma(const std::string& text, int size);

// Bench sweep entry: a figure name or "random:n<=K", "random-sym:n<=K",
// "grid:n<=K".
struct BenchFamily {
  std::string name;     // as given
  std::string kind;     // "figure", "random", "random-sym", "grid"
  int max_n = 0;
};
BenchFamily ParseBenchFamily(const std::string& text);

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roommatch::cli

#endif  // ROOMMATCH_TOOLS_CLI_H_
