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

// JSON wire formats.
//
//   instance: {"n": 2, "v": [[0,1,...],...], "v_hat": [[...],...],
//              "labels": {...}}
//   matching: {"triples": [[i, j, r], ...]}
//
// Valuations are written as JSON integers when integral and as "p/q" strings
// otherwise; both forms (and integral strings) are accepted on input.

#ifndef ROOMMATCH_JSON_IO_H_
#define ROOMMATCH_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "roommatch/instance.h"

namespace roommatch {

nlohmann::json RationalToJson(const Rational& value);
// Throws ParseError.
Rational RationalFromJson(const nlohmann::json& j);

nlohmann::json InstanceToJson(const Instance& inst);
Instance InstanceFromJson(const nlohmann::json& j);

nlohmann::json MatchingToJson(const Matching& mu);
// `n` is the instance's room count; throws ParseError on malformed input.
Matching MatchingFromJson(const nlohmann::json& j, int n);

// Parse helpers that wrap nlohmann's exceptions into ParseError.
nlohmann::json ParseJsonText(const std::string& text);
nlohmann::json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace roommatch

#endif  // ROOMMATCH_JSON_IO_H_
