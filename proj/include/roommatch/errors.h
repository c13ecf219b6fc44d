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

#ifndef ROOMMATCH_ERRORS_H_
#define ROOMMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace roommatch {

// Raised when an exhaustive search would exceed its configured size cap.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed JSON, rationals, permutations or formulas.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace roommatch

#endif  // ROOMMATCH_ERRORS_H_
