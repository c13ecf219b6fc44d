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

// Manipulation search. A misreport replaces one agent's own rows (its
// roommate values and its room values); everyone else stays truthful, and
// gains are always measured with the agent's true valuations.

#ifndef ROOMMATCH_SP_AUDIT_H_
#define ROOMMATCH_SP_AUDIT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "roommatch/instance.h"
#include "roommatch/mechanisms.h"

namespace roommatch {

inline constexpr int kDefaultAuditCap = 3;

struct MisreportDomain {
  enum class Kind { kBinaryAll, kBinarySymmetric, kRationalGrid };
  Kind kind = Kind::kBinaryAll;
  std::vector<Rational> grid = {0, 1, 2, 4, 8};  // kRationalGrid only
  bool vary_compat = true;
  bool vary_rooms = true;

  static MisreportDomain BinaryAll() { return {}; }
  // Roommate values stay truthful: changing them alone would break symmetry.
  static MisreportDomain BinarySymmetric() {
    return {Kind::kBinarySymmetric, {}, false, true};
  }
  static MisreportDomain Grid(std::vector<Rational> values = {0, 1, 2, 4, 8}) {
    return {Kind::kRationalGrid, std::move(values), true, true};
  }

  // "binary-all", "binary-symmetric" or "grid".
  std::string name() const;
  // Values an entry may take, ascending.
  std::vector<Rational> values() const;
};

// Throws ParseError.
MisreportDomain ParseMisreportDomain(std::string_view name);

struct Misreport {
  std::vector<Rational> compat_row;  // agents() entries, own entry 0
  std::vector<Rational> room_row;    // rooms() entries
};

// Throws std::invalid_argument when the instance is outside the domain
// (non-binary for the binary domains, non-symmetric for BinarySymmetric, or
// grid values that are negative or unsorted).
void CheckDomain(const Instance& inst, const MisreportDomain& domain);

std::uint64_t MisreportCount(const Instance& inst, const MisreportDomain& domain);

// Visits agent i's reports in lexicographic order of (compat row without the
// own entry, room row), entries ordered by domain value. Stops early when the
// visitor returns false.
void ForEachMisreport(const Instance& inst, int agent,
                      const MisreportDomain& domain,
                      const std::function<bool(const Misreport&)>& visit);

struct ManipulationWitness {
  int agent = -1;
  std::vector<Rational> misreport_v;
  std::vector<Rational> misreport_vhat;
  Rational honest_utility;
  Rational deviating_utility;

  bool operator==(const ManipulationWitness&) const = default;
};

struct AuditReport {
  std::string mechanism;
  std::string domain;
  std::optional<ManipulationWitness> witness;
  std::uint64_t searched = 0;  // misreports evaluated
};

// First witness in (agent, misreport) order. Throws CapExceededError when
// n > audit_cap and std::invalid_argument on a domain mismatch.
AuditReport Audit(const std::string& mechanism_id, const Instance& inst,
                  UtilityModel model, const MisreportDomain& domain,
                  const MechanismOptions& options = {},
                  int audit_cap = kDefaultAuditCap);
AuditReport Audit(const Mechanism& mechanism, const std::string& name,
                  const Instance& inst, UtilityModel model,
                  const MisreportDomain& domain,
                  const MechanismOptions& options = {},
                  int audit_cap = kDefaultAuditCap);

// Re-runs both reports and confirms the strict gain.
bool Reverify(const Mechanism& mechanism, const Instance& inst,
              UtilityModel model, const MechanismOptions& options,
              const ManipulationWitness& witness);

nlohmann::json AuditReportToJson(const AuditReport& report);

// Binary Leontief: an agent with utility 1 under mu cannot raise mu's
// welfare as computed from its report, and one with utility 0 cannot lower
// it. Returns whether that holds for this tuple; throws std::invalid_argument
// for non-binary input.
bool CheckObservation1(const Instance& inst, int agent, const Matching& mu,
                       const Misreport& misreport);

// ---------------------------------------------------------------------------
// Impossibility reproductions.

enum class ImpossibilityFamily { kFig5, kFig6, kFig6Symmetric };

// "fig5", "fig6", "fig6-symmetric". Throws ParseError.
ImpossibilityFamily ParseImpossibilityFamily(std::string_view name);

struct DeviationStep {
  int deviator = -1;
  Misreport misreport;
  std::vector<Matching> before;    // outcomes the deviator escapes
  std::vector<Matching> target;    // outcomes the misreport should force
  Rational misreported_max;
  std::vector<Matching> passing;   // matchings within alpha of that max
  Rational utility_before;         // true utility, worst over `before`
  Rational utility_after;          // true utility, worst over `passing`
  bool forced = false;             // passing == target
  bool gains = false;              // utility_after > utility_before
};

struct ImpossibilityReport {
  ImpossibilityFamily family = ImpossibilityFamily::kFig5;
  UtilityModel model = UtilityModel::kAdditive;
  Rational alpha;
  std::optional<Rational> beta;  // Fig5 only: 2/alpha
  Instance instance = Instance::Zero(2);
  Rational honest_max;
  std::vector<Matching> honest_optima;
  std::vector<DeviationStep> steps;
  bool verified = false;
};

// Fig5 accepts 0 < alpha <= 1 and either model; Fig6 requires
// 2/3 < alpha <= 1 and Fig6Symmetric 3/4 < alpha <= 1 (additive only).
// Throws std::invalid_argument otherwise.
ImpossibilityReport ReproduceImpossibility(ImpossibilityFamily family,
                                           UtilityModel model,
                                           const Rational& alpha);

nlohmann::json ImpossibilityReportToJson(const ImpossibilityReport& report);

}  // namespace roommatch

#endif  // ROOMMATCH_SP_AUDIT_H_
