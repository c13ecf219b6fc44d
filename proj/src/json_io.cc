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

#include "roommatch/json_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "roommatch/errors.h"

namespace roommatch {

using nlohmann::json;

json RationalToJson(const Rational& value) {
  if (value.denominator() == 1) return json(value.numerator());
  return json(FormatRational(value));
}

Rational RationalFromJson(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return ParseRational(j.get<std::string>());
  throw ParseError("valuation must be an integer or a \"p/q\" string, got " +
                   j.dump());
}

json InstanceToJson(const Instance& inst) {
  json out;
  out["n"] = inst.rooms();
  json v = json::array();
  json v_hat = json::array();
  for (int i = 0; i < inst.agents(); ++i) {
    json row = json::array();
    for (const Rational& x : inst.compat_row(i)) row.push_back(RationalToJson(x));
    v.push_back(std::move(row));
    json hrow = json::array();
    for (const Rational& x : inst.room_row(i)) hrow.push_back(RationalToJson(x));
    v_hat.push_back(std::move(hrow));
  }
  out["v"] = std::move(v);
  out["v_hat"] = std::move(v_hat);
  if (!inst.labels().empty()) out["labels"] = inst.labels();
  return out;
}

Instance InstanceFromJson(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("v") ||
      !j.contains("v_hat")) {
    throw ParseError("instance JSON needs \"n\", \"v\" and \"v_hat\"");
  }
  if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int n = j["n"].get<int>();
  auto read_matrix = [](const json& m, const char* name) {
    if (!m.is_array()) throw ParseError(std::string(name) + " must be an array");
    Instance::Matrix out;
    for (const json& row : m) {
      if (!row.is_array()) {
        throw ParseError(std::string(name) + " rows must be arrays");
      }
      std::vector<Rational> r;
      for (const json& x : row) r.push_back(RationalFromJson(x));
      out.push_back(std::move(r));
    }
    return out;
  };
  std::map<std::string, std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) throw ParseError("labels must be an object");
    for (const auto& [k, val] : j["labels"].items()) {
      labels[k] = val.is_string() ? val.get<std::string>() : val.dump();
    }
  }
  try {
    return Instance(n, read_matrix(j["v"], "v"), read_matrix(j["v_hat"], "v_hat"),
                    std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

json MatchingToJson(const Matching& mu) {
  json triples = json::array();
  for (const Triple& t : mu.triples()) {
    triples.push_back(json::array({t.agent_lo, t.agent_hi, t.room}));
  }
  return json{{"triples", std::move(triples)}};
}

Matching MatchingFromJson(const json& j, int n) {
  if (!j.is_object() || !j.contains("triples") || !j["triples"].is_array()) {
    throw ParseError("matching JSON needs a \"triples\" array");
  }
  std::vector<Triple> triples;
  for (const json& t : j["triples"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number_integer()) {
      throw ParseError("each triple must be [i, j, r]");
    }
    const int a = t[0].get<int>();
    const int b = t[1].get<int>();
    if (a == b) throw ParseError("triple repeats an agent");
    triples.push_back(Triple::Make(a, b, t[2].get<int>()));
  }
  try {
    return Matching(n, std::move(triples));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid matching: ") + e.what());
  }
}

json ParseJsonText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseJsonText(buf.str());
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace roommatch
