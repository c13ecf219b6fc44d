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

#include "roommatch/sp_audit.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "roommatch/errors.h"
#include "roommatch/generators.h"
#include "roommatch/json_io.h"
#include "roommatch/oracle.h"

namespace roommatch {
namespace {

// Entry slots an agent may change: compat entries first (skipping its own),
// then rooms. Compat slots are agent indices, room slots are offset by
// agents().
std::vector<int> Slots(const Instance& inst, int agent, const MisreportDomain& d) {
  std::vector<int> slots;
  if (d.vary_compat) {
    for (int j = 0; j < inst.agents(); ++j) {
      if (j != agent) slots.push_back(j);
    }
  }
  if (d.vary_rooms) {
    for (int r = 0; r < inst.rooms(); ++r) slots.push_back(inst.agents() + r);
  }
  return slots;
}

nlohmann::json RowToJson(const std::vector<Rational>& row) {
  nlohmann::json j = nlohmann::json::array();
  for (const Rational& x : row) j.push_back(RationalToJson(x));
  return j;
}

std::vector<Matching> WithPairing(const std::vector<Matching>& all,
                                  std::vector<std::pair<int, int>> pairing) {
  std::sort(pairing.begin(), pairing.end());
  std::vector<Matching> out;
  for (const Matching& mu : all) {
    if (mu.pairing() == pairing) out.push_back(mu);
  }
  return out;
}

Misreport Truthful(const Instance& inst, int agent) {
  const auto c = inst.compat_row(agent);
  const auto r = inst.room_row(agent);
  return {{c.begin(), c.end()}, {r.begin(), r.end()}};
}

DeviationStep RunStep(const Instance& inst, UtilityModel model,
                      const Rational& alpha, const std::vector<Matching>& all,
                      int deviator, Misreport misreport,
                      std::vector<Matching> before, std::vector<Matching> target) {
  DeviationStep step;
  step.deviator = deviator;
  const Instance reported =
      inst.WithReport(deviator, misreport.compat_row, misreport.room_row);
  step.misreport = std::move(misreport);
  step.misreported_max = MaxWelfare(reported, model).max_welfare;
  for (const Matching& mu : all) {
    if (Welfare(reported, model, mu) >= alpha * step.misreported_max) {
      step.passing.push_back(mu);
    }
  }
  std::sort(target.begin(), target.end());
  step.forced = step.passing == target;
  auto worst = [&](const std::vector<Matching>& set) {
    Rational w = -1;
    for (const Matching& mu : set) {
      const Rational u = AgentUtility(inst, model, mu, deviator);
      if (w < 0 || u < w) w = u;
    }
    return w;
  };
  step.utility_before = worst(before);
  step.utility_after = worst(step.passing);
  step.gains = !step.passing.empty() && step.utility_after > step.utility_before;
  step.before = std::move(before);
  step.target = std::move(target);
  return step;
}

}  // namespace

std::string MisreportDomain::name() const {
  switch (kind) {
    case Kind::kBinaryAll: return "binary-all";
    case Kind::kBinarySymmetric: return "binary-symmetric";
    case Kind::kRationalGrid: return "grid";
  }
  return "";
}

std::vector<Rational> MisreportDomain::values() const {
  if (kind == Kind::kRationalGrid) return grid;
  return {0, 1};
}

MisreportDomain ParseMisreportDomain(std::string_view name) {
  if (name == "binary-all") return MisreportDomain::BinaryAll();
  if (name == "binary-symmetric") return MisreportDomain::BinarySymmetric();
  if (name == "grid") return MisreportDomain::Grid();
  throw ParseError("unknown domain '" + std::string(name) + "'");
}

void CheckDomain(const Instance& inst, const MisreportDomain& domain) {
  switch (domain.kind) {
    case MisreportDomain::Kind::kBinaryAll:
      if (!inst.is_binary()) {
        throw std::invalid_argument("binary-all domain needs a binary instance");
      }
      break;
    case MisreportDomain::Kind::kBinarySymmetric:
      if (!inst.is_binary() || !inst.is_symmetric()) {
        throw std::invalid_argument(
            "binary-symmetric domain needs a binary symmetric instance");
      }
      break;
    case MisreportDomain::Kind::kRationalGrid:
      if (domain.grid.empty() ||
          !std::is_sorted(domain.grid.begin(), domain.grid.end()) ||
          domain.grid.front() < 0) {
        throw std::invalid_argument("grid values must be non-negative and sorted");
      }
      break;
  }
}

std::uint64_t MisreportCount(const Instance& inst, const MisreportDomain& domain) {
  const std::size_t slots = Slots(inst, 0, domain).size();
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < slots; ++k) count *= domain.values().size();
  return count;
}

void ForEachMisreport(const Instance& inst, int agent,
                      const MisreportDomain& domain,
                      const std::function<bool(const Misreport&)>& visit) {
  const std::vector<int> slots = Slots(inst, agent, domain);
  const std::vector<Rational> values = domain.values();
  std::vector<std::size_t> digit(slots.size(), 0);
  Misreport m = Truthful(inst, agent);
  while (true) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const int slot = slots[s];
      const Rational& x = values[digit[s]];
      if (slot < inst.agents()) {
        m.compat_row[static_cast<std::size_t>(slot)] = x;
      } else {
        m.room_row[static_cast<std::size_t>(slot - inst.agents())] = x;
      }
    }
    if (!visit(m)) return;
    // Odometer with the first slot most significant.
    std::size_t s = slots.size();
    while (s > 0 && digit[s - 1] + 1 == values.size()) digit[--s] = 0;
    if (s == 0) return;
    ++digit[s - 1];
  }
}

AuditReport Audit(const std::string& mechanism_id, const Instance& inst,
                  UtilityModel model, const MisreportDomain& domain,
                  const MechanismOptions& options, int audit_cap) {
  return Audit(MakeMechanism(mechanism_id), mechanism_id, inst, model, domain,
               options, audit_cap);
}

AuditReport Audit(const Mechanism& mechanism, const std::string& name,
                  const Instance& inst, UtilityModel model,
                  const MisreportDomain& domain,
                  const MechanismOptions& options, int audit_cap) {
  if (inst.rooms() > audit_cap) {
    throw CapExceededError("audit: n = " + std::to_string(inst.rooms()) +
                           " exceeds the audit cap of " + std::to_string(audit_cap));
  }
  CheckDomain(inst, domain);
  AuditReport report;
  report.mechanism = name;
  report.domain = domain.name();
  const MechanismResult honest = mechanism(inst, model, options);
  for (int agent = 0; agent < inst.agents() && !report.witness; ++agent) {
    const Rational honest_u = AgentUtility(inst, model, honest.matching, agent);
    ForEachMisreport(inst, agent, domain, [&](const Misreport& m) {
      ++report.searched;
      const Instance reported = inst.WithReport(agent, m.compat_row, m.room_row);
      const MechanismResult out = mechanism(reported, model, options);
      const Rational u = AgentUtility(inst, model, out.matching, agent);
      if (u > honest_u) {
        report.witness = ManipulationWitness{agent, m.compat_row, m.room_row, honest_u, u};
        return false;
      }
      return true;
    });
  }
  return report;
}

bool Reverify(const Mechanism& mechanism, const Instance& inst,
              UtilityModel model, const MechanismOptions& options,
              const ManipulationWitness& w) {
  const MechanismResult honest = mechanism(inst, model, options);
  const Instance reported = inst.WithReport(w.agent, w.misreport_v, w.misreport_vhat);
  const MechanismResult out = mechanism(reported, model, options);
  const Rational before = AgentUtility(inst, model, honest.matching, w.agent);
  const Rational after = AgentUtility(inst, model, out.matching, w.agent);
  return before == w.honest_utility && after == w.deviating_utility && after > before;
}

nlohmann::json AuditReportToJson(const AuditReport& report) {
  nlohmann::json j;
  j["mechanism"] = report.mechanism;
  j["domain"] = report.domain;
  j["searched"] = report.searched;
  if (report.witness) {
    const ManipulationWitness& w = *report.witness;
    j["witness"] = {{"agent", w.agent},
                    {"misreport_v", RowToJson(w.misreport_v)},
                    {"misreport_vhat", RowToJson(w.misreport_vhat)},
                    {"honest_utility", FormatRational(w.honest_utility)},
                    {"deviating_utility", FormatRational(w.deviating_utility)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

bool CheckObservation1(const Instance& inst, int agent, const Matching& mu,
                       const Misreport& misreport) {
  const Instance reported = inst.WithReport(agent, misreport.compat_row, misreport.room_row);
  if (!inst.is_binary() || !reported.is_binary()) {
    throw std::invalid_argument("observation check needs binary valuations");
  }
  constexpr auto kL = UtilityModel::kLeontief;
  const Rational truth = Welfare(inst, kL, mu);
  const Rational perceived = Welfare(reported, kL, mu);
  return AgentUtility(inst, kL, mu, agent) == 1 ? perceived <= truth
                                                : perceived >= truth;
}

// ---------------------------------------------------------------------------

ImpossibilityFamily ParseImpossibilityFamily(std::string_view name) {
  if (name == "fig5") return ImpossibilityFamily::kFig5;
  if (name == "fig6") return ImpossibilityFamily::kFig6;
  if (name == "fig6-symmetric") return ImpossibilityFamily::kFig6Symmetric;
  throw ParseError("unknown impossibility family '" + std::string(name) + "'");
}

ImpossibilityReport ReproduceImpossibility(ImpossibilityFamily family,
                                           UtilityModel model,
                                           const Rational& alpha) {
  ImpossibilityReport rep;
  rep.family = family;
  rep.alpha = alpha;
  if (alpha > 1 || alpha <= 0) throw std::invalid_argument("alpha must lie in (0, 1]");
  const std::vector<Matching> all = MatchingEnumerator(2).All();
  bool claims_hold = true;

  if (family == ImpossibilityFamily::kFig5) {
    rep.model = model;
    rep.instance = GenFigure({FigureFamily::kFig5, model, 1}).instance;
    const Rational beta = Rational(2) / alpha;
    rep.beta = beta;
    const std::vector<Matching> p1 = WithPairing(all, {{0, 1}, {2, 3}});
    const std::vector<Matching> p2 = WithPairing(all, {{0, 3}, {1, 2}});
    const OracleResult honest = MaxWelfare(rep.instance, model);
    rep.honest_max = honest.max_welfare;
    rep.honest_optima = honest.witnesses;
    std::vector<Matching> expected = p1;
    expected.insert(expected.end(), p2.begin(), p2.end());
    std::sort(expected.begin(), expected.end());
    claims_hold = rep.honest_max == 2 && rep.honest_optima == expected;
    // Whoever is left unsatisfied inflates the value of the partner it likes
    // (and, under Leontief, of every room).
    auto inflate = [&](int agent, int liked) {
      Misreport m = Truthful(rep.instance, agent);
      m.compat_row[static_cast<std::size_t>(liked)] = beta;
      if (model == UtilityModel::kLeontief) {
        std::fill(m.room_row.begin(), m.room_row.end(), beta);
      }
      return m;
    };
    rep.steps.push_back(RunStep(rep.instance, model, alpha, all, 1, inflate(1, 2), p1, p2));
    rep.steps.push_back(RunStep(rep.instance, model, alpha, all, 0, inflate(0, 1), p2, p1));
    for (const DeviationStep& s : rep.steps) {
      claims_hold = claims_hold && s.misreported_max == beta + 1;
    }
  } else {
    const bool symmetric = family == ImpossibilityFamily::kFig6Symmetric;
    const Rational floor = symmetric ? Rational(3, 4) : Rational(2, 3);
    if (alpha <= floor) {
      throw std::invalid_argument("alpha must exceed " + FormatRational(floor));
    }
    if (model != UtilityModel::kAdditive) {
      throw std::invalid_argument("this family is stated for additive utilities");
    }
    rep.model = model;
    rep.instance = GenFigure({symmetric ? FigureFamily::kFig6Symmetric
                                        : FigureFamily::kFig6}).instance;
    const Matching mu1(2, {{0, 1, 0}, {2, 3, 1}});
    const Matching mu2(2, {{1, 2, 0}, {0, 3, 1}});
    const OracleResult honest = MaxWelfare(rep.instance, model);
    rep.honest_max = honest.max_welfare;
    rep.honest_optima = honest.witnesses;
    std::vector<Matching> expected = {mu1, mu2};
    std::sort(expected.begin(), expected.end());
    const Rational honest_claim = symmetric ? 3 : 2;
    claims_hold = rep.honest_max == honest_claim && rep.honest_optima == expected;
    // a1 (then a3) claims to like r1.
    auto likes_r1 = [&](int agent) {
      Misreport m = Truthful(rep.instance, agent);
      m.room_row[0] = 1;
      return m;
    };
    rep.steps.push_back(RunStep(rep.instance, model, alpha, all, 0, likes_r1(0), {mu2}, {mu1}));
    rep.steps.push_back(RunStep(rep.instance, model, alpha, all, 2, likes_r1(2), {mu1}, {mu2}));
    for (const DeviationStep& s : rep.steps) {
      claims_hold = claims_hold && s.misreported_max == honest_claim + 1;
    }
  }
  rep.verified = claims_hold;
  for (const DeviationStep& s : rep.steps) {
    rep.verified = rep.verified && s.forced && s.gains;
  }
  return rep;
}

nlohmann::json ImpossibilityReportToJson(const ImpossibilityReport& rep) {
  auto matchings = [](const std::vector<Matching>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const Matching& mu : v) j.push_back(MatchingToJson(mu));
    return j;
  };
  nlohmann::json j;
  j["family"] = rep.family == ImpossibilityFamily::kFig5   ? "fig5"
                : rep.family == ImpossibilityFamily::kFig6 ? "fig6"
                                                           : "fig6-symmetric";
  j["model"] = std::string(UtilityModelName(rep.model));
  j["alpha"] = FormatRational(rep.alpha);
  if (rep.beta) j["beta"] = FormatRational(*rep.beta);
  j["instance"] = InstanceToJson(rep.instance);
  j["honest_max"] = FormatRational(rep.honest_max);
  j["honest_optima"] = matchings(rep.honest_optima);
  j["steps"] = nlohmann::json::array();
  for (const DeviationStep& s : rep.steps) {
    j["steps"].push_back({{"deviator", s.deviator},
                          {"misreport_v", RowToJson(s.misreport.compat_row)},
                          {"misreport_vhat", RowToJson(s.misreport.room_row)},
                          {"misreported_max", FormatRational(s.misreported_max)},
                          {"passing", matchings(s.passing)},
                          {"utility_before", FormatRational(s.utility_before)},
                          {"utility_after", FormatRational(s.utility_after)},
                          {"forced", s.forced},
                          {"gains", s.gains}});
  }
  j["verified"] = rep.verified;
  return j;
}

}  // namespace roommatch
