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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "roommatch/errors.h"
#include "roommatch/generators.h"
#include "roommatch/json_io.h"
#include "roommatch/oracle.h"
#include "roommatch/set_packing.h"
#include "roommatch/sp_audit.h"

namespace roommatch::cli {
namespace {

struct RunConfig {
  std::string mechanism;
  std::string model = "leontief";
  std::string sigma;
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  std::string family;
  std::string domain = "binary-all";
  int oracle_cap = kDefaultOracleCap;
  int audit_cap = kDefaultAuditCap;
  std::string format = "json";

  // gen
  int n = 2;
  double density = 0.5;
  bool symmetric = false;
  std::string grid = "0,1,2,4,8";
  std::string cnf;
  // bench
  std::string families = "random:n<=3";
  std::string mechanisms = "all";
  int seeds = 20;
  // report
  std::string alpha = "1";
};

UtilityModel ParseModel(const std::string& name) {
  if (name == "leontief") return UtilityModel::kLeontief;
  if (name == "additive") return UtilityModel::kAdditive;
  throw ParseError("unknown model '" + name + "'");
}

int ParseInt(const std::string& text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<std::string> SplitList(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void Emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    WriteTextFile(cfg.out, text);
  }
}

void EmitJson(const RunConfig& cfg, const nlohmann::json& j, std::ostream& out) {
  if (cfg.format != "json") {
    throw ParseError("--format " + cfg.format + " is only supported by bench");
  }
  Emit(cfg, j.dump(2) + "\n", out);
}

// The instance comes from --input or from a named figure in --family.
struct Loaded {
  Instance instance = Instance::Zero(1);
  std::optional<Figure> figure;
};

Loaded LoadInstance(const RunConfig& cfg) {
  if (!cfg.input.empty() && !cfg.family.empty()) {
    throw ParseError("give either --input or --family, not both");
  }
  Loaded loaded;
  if (!cfg.input.empty()) {
    loaded.instance = InstanceFromJson(ReadJsonFile(cfg.input));
  } else if (!cfg.family.empty()) {
    loaded.figure = GenFigure(ParseFigureSpec(cfg.family, ParseModel(cfg.model)));
    loaded.instance = loaded.figure->instance;
  } else {
    throw ParseError("an instance is required (--input or --family)");
  }
  return loaded;
}

MechanismOptions OptionsFor(const RunConfig& cfg, const Instance& inst) {
  MechanismOptions options;
  options.sigma = ParseSigma(cfg.sigma, inst.agents());
  options.oracle_cap = cfg.oracle_cap;
  return options;
}

Rational Optimum(const Instance& inst, UtilityModel model, int oracle_cap) {
  if (inst.rooms() <= oracle_cap) return MaxWelfare(inst, model, oracle_cap).max_welfare;
  return SolveMaxWeight(Reduce(inst, model), inst.rooms()).weight;
}

int CmdSolve(const RunConfig& cfg, std::ostream& out) {
  const Loaded loaded = LoadInstance(cfg);
  std::string id = cfg.mechanism;
  MechanismOptions options = OptionsFor(cfg, loaded.instance);
  UtilityModel model = ParseModel(cfg.model);
  // A figure without an explicit mechanism replays its adversarial run.
  if (loaded.figure && !loaded.figure->mechanism.empty() &&
      (id.empty() || id == loaded.figure->mechanism)) {
    id = loaded.figure->mechanism;
    const std::vector<int> sigma = options.sigma;
    options = loaded.figure->options;
    if (!cfg.sigma.empty()) options.sigma = sigma;
    model = loaded.figure->model;
  }
  if (id.empty()) throw ParseError("--mechanism is required");
  const Mechanism mechanism = MakeMechanism(id);
  const MechanismResult result = mechanism(loaded.instance, model, options);
  EmitJson(cfg, MechanismResultToJson(id, model, result), out);
  return kExitOk;
}

int CmdOracle(const RunConfig& cfg, std::ostream& out) {
  const Loaded loaded = LoadInstance(cfg);
  const UtilityModel model = ParseModel(cfg.model);
  const OracleResult r = MaxWelfare(loaded.instance, model, cfg.oracle_cap);
  nlohmann::json witnesses = nlohmann::json::array();
  for (const Matching& mu : r.witnesses) witnesses.push_back(MatchingToJson(mu));
  EmitJson(cfg,
           {{"model", std::string(UtilityModelName(model))},
            {"max_welfare", FormatRational(r.max_welfare)},
            {"witness_count", r.witnesses.size()},
            {"witnesses", std::move(witnesses)}},
           out);
  return kExitOk;
}

int CmdAudit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mechanism.empty()) throw ParseError("--mechanism is required");
  const Loaded loaded = LoadInstance(cfg);
  const MisreportDomain domain = ParseMisreportDomain(cfg.domain);
  const MechanismOptions options = OptionsFor(cfg, loaded.instance);
  const AuditReport report = Audit(cfg.mechanism, loaded.instance, ParseModel(cfg.model),
                                   domain, options, cfg.audit_cap);
  EmitJson(cfg, AuditReportToJson(report), out);
  return kExitOk;
}

int CmdGen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family.empty()) throw ParseError("--family is required");
  nlohmann::json j;
  if (cfg.family == "random") {
    j = InstanceToJson(GenRandom(cfg.n, cfg.density, cfg.symmetric, cfg.seed));
  } else if (cfg.family == "grid") {
    std::vector<Rational> grid;
    for (const std::string& x : SplitList(cfg.grid, ',')) grid.push_back(ParseRational(x));
    j = InstanceToJson(GenGrid(cfg.n, grid, cfg.seed));
  } else if (cfg.family == "3sat") {
    const Cnf cnf = ParseCnf(cfg.cnf);
    const Reduction red = From3Sat(cnf);
    j = InstanceToJson(red.instance);
    j["cnf"] = FormatCnf(cnf);
    j["reduction"] = ReductionMapToJson(red.map);
  } else {
    j = InstanceToJson(GenFigure(ParseFigureSpec(cfg.family, ParseModel(cfg.model))).instance);
  }
  EmitJson(cfg, j, out);
  return kExitOk;
}

struct BenchRow {
  std::string family;
  std::string params;
  std::string mechanism;
  UtilityModel model;
  Rational welfare;
  Rational oracle;
  Rational ratio;
};

int CmdBench(const RunConfig& cfg, std::ostream& out) {
  const UtilityModel model = ParseModel(cfg.model);
  std::vector<std::string> ids;
  if (cfg.mechanisms == "all") {
    ids = MechanismIds();
  } else {
    ids = SplitList(cfg.mechanisms, ',');
    for (const std::string& id : ids) {
      if (!IsMechanismId(id)) throw ParseError("unknown mechanism '" + id + "'");
    }
  }
  if (cfg.seeds < 1) throw ParseError("--seeds must be positive");

  struct Case {
    std::string family;
    std::string params;
    Instance instance;
  };
  std::vector<Case> cases;
  for (const std::string& text : SplitList(cfg.families, ',')) {
    const BenchFamily fam = ParseBenchFamily(text);
    if (fam.kind == "figure") {
      const Figure fig = GenFigure(ParseFigureSpec(fam.name, model));
      cases.push_back({fam.name, "", fig.instance});
      continue;
    }
    for (int n = 1; n <= fam.max_n; ++n) {
      for (int s = 0; s < cfg.seeds; ++s) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
        const std::string params = "n=" + std::to_string(n) + ";seed=" + std::to_string(seed);
        if (fam.kind == "grid") {
          cases.push_back({fam.name, params, GenGrid(n, {0, 1, 2, 4, 8}, seed)});
        } else {
          cases.push_back({fam.name, params,
                           GenRandom(n, cfg.density, fam.kind == "random-sym", seed)});
        }
      }
    }
  }

  std::vector<BenchRow> rows;
  std::map<std::string, int> skipped;
  for (const Case& c : cases) {
    const Rational optimum = Optimum(c.instance, model, cfg.oracle_cap);
    for (const std::string& id : ids) {
      MechanismOptions options = OptionsFor(cfg, c.instance);
      MechanismResult r;
      try {
        r = MakeMechanism(id)(c.instance, model, options);
      } catch (const std::invalid_argument&) {
        ++skipped[id];  // outside the mechanism's domain
        continue;
      }
      rows.push_back({c.family, c.params, id, model, r.welfare, optimum,
                      RatioAgainst(r.welfare, optimum).value});
    }
  }

  struct Summary {
    Rational worst = 1;
    int runs = 0;
  };
  std::map<std::string, Summary> worst;
  for (const BenchRow& row : rows) {
    Summary& s = worst[row.mechanism];
    s.worst = std::min(s.worst, row.ratio);
    ++s.runs;
  }

  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "family,params,mechanism,model,welfare,oracle,ratio,ratio_decimal\n";
    for (const BenchRow& row : rows) {
      csv << row.family << ',' << row.params << ',' << row.mechanism << ','
          << UtilityModelName(row.model) << ',' << FormatRational(row.welfare) << ','
          << FormatRational(row.oracle) << ',' << FormatRational(row.ratio) << ','
          << FormatDecimal(row.ratio) << '\n';
    }
    for (const std::string& id : ids) {
      if (!worst.contains(id)) continue;
      const auto bound = StatedBound(id, model);
      csv << "summary," << (bound ? "bound=" + FormatRational(*bound) : "bound=none") << ','
          << id << ',' << UtilityModelName(model) << ",,," << FormatRational(worst[id].worst)
          << ',' << FormatDecimal(worst[id].worst) << '\n';
    }
    Emit(cfg, csv.str(), out);
    return kExitOk;
  }
  if (cfg.format != "json") throw ParseError("unknown format '" + cfg.format + "'");
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const BenchRow& row : rows) {
    j["rows"].push_back({{"family", row.family},
                         {"params", row.params},
                         {"mechanism", row.mechanism},
                         {"model", std::string(UtilityModelName(row.model))},
                         {"welfare", FormatRational(row.welfare)},
                         {"oracle", FormatRational(row.oracle)},
                         {"ratio", FormatRational(row.ratio)},
                         {"ratio_decimal", FormatDecimal(row.ratio)}});
  }
  j["summary"] = nlohmann::json::array();
  for (const std::string& id : ids) {
    nlohmann::json s = {{"mechanism", id},
                        {"model", std::string(UtilityModelName(model))},
                        {"runs", worst.contains(id) ? worst[id].runs : 0},
                        {"skipped", skipped[id]}};
    if (worst.contains(id)) s["worst_ratio"] = FormatRational(worst[id].worst);
    if (const auto bound = StatedBound(id, model)) {
      s["bound"] = FormatRational(*bound);
      if (worst.contains(id)) s["within_bound"] = worst[id].worst >= *bound;
    }
    j["summary"].push_back(std::move(s));
  }
  Emit(cfg, j.dump(2) + "\n", out);
  return kExitOk;
}

nlohmann::json FigureReport(const FigureSpec& spec, int oracle_cap) {
  const Figure fig = GenFigure(spec);
  const auto measured = MeasureFigure(fig, oracle_cap);
  nlohmann::json claimed = nlohmann::json::object();
  nlohmann::json got = nlohmann::json::object();
  for (const auto& [k, v] : fig.claimed) claimed[k] = FormatRational(v);
  for (const auto& [k, v] : measured) got[k] = FormatRational(v);
  return {{"figure", fig.name},
          {"model", std::string(UtilityModelName(fig.model))},
          {"mechanism", fig.mechanism},
          {"claimed", claimed},
          {"measured", got},
          {"match", measured == fig.claimed}};
}

int CmdReport(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family.empty()) throw ParseError("--family is required");
  const UtilityModel model = ParseModel(cfg.model);
  if (cfg.family == "fig5" || cfg.family == "fig6" || cfg.family == "fig6-symmetric") {
    const ImpossibilityReport rep = ReproduceImpossibility(
        ParseImpossibilityFamily(cfg.family), model, ParseRational(cfg.alpha));
    EmitJson(cfg, ImpossibilityReportToJson(rep), out);
    return kExitOk;
  }
  if (cfg.family == "all") {
    nlohmann::json all = nlohmann::json::array();
    for (const std::string& name : FigureNames()) {
      if (name.starts_with("badsd")) {
        for (int k = 1; k <= 3; ++k) {
          all.push_back(FigureReport({FigureFamily::kBadSd, model, k}, cfg.oracle_cap));
        }
      } else {
        all.push_back(FigureReport(ParseFigureSpec(name, model), cfg.oracle_cap));
      }
    }
    EmitJson(cfg, all, out);
    return kExitOk;
  }
  EmitJson(cfg, FigureReport(ParseFigureSpec(cfg.family, model), cfg.oracle_cap), out);
  return kExitOk;
}

}  // namespace

std::optional<Rational> StatedBound(const std::string& mechanism, UtilityModel model) {
  const bool leontief = model == UtilityModel::kLeontief;
  if (mechanism == "triangle-then-l" && leontief) return Rational(1, 3);
  if (mechanism == "lt-maximal" && leontief) return Rational(1, 6);
  if (mechanism == "naive-maximal" && !leontief) return Rational(1, 4);
  if (mechanism == "wp-sd" && !leontief) return Rational(1, 7);
  if ((mechanism == "welfare-set-reduction" || mechanism == "precedence-search" ||
       mechanism == "parity") &&
      leontief) {
    return Rational(1);
  }
  return std::nullopt;
}

nlohmann::json MechanismResultToJson(const std::string& mechanism, UtilityModel model,
                                     const MechanismResult& result) {
  nlohmann::json utilities = nlohmann::json::array();
  for (const Rational& u : result.per_agent_utility) utilities.push_back(FormatRational(u));
  nlohmann::json trace = nlohmann::json::array();
  for (const DecisionRecord& d : result.trace) {
    trace.push_back({{"rule", d.rule},
                     {"agent", d.agent},
                     {"partner", d.partner},
                     {"room", d.room},
                     {"tie_set_size", d.tie_set_size}});
  }
  return {{"mechanism", mechanism},
          {"model", std::string(UtilityModelName(model))},
          {"matching", MatchingToJson(result.matching)},
          {"per_agent_utility", std::move(utilities)},
          {"welfare", FormatRational(result.welfare)},
          {"trace", std::move(trace)}};
}

std::vector<int> ParseSigma(const std::string& text, int size) {
  if (text.empty() || text == "identity") return {};
  std::vector<int> sigma;
  for (const std::string& x : SplitList(text, ',')) sigma.push_back(ParseInt(x));
  std::vector<int> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(static_cast<std::size_t>(size));
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) {
    throw ParseError("--sigma must be a permutation of 0.." + std::to_string(size - 1));
  }
  return sigma;
}

BenchFamily ParseBenchFamily(const std::string& text) {
  BenchFamily fam;
  fam.name = text;
  for (const char* kind : {"random-sym", "random", "grid"}) {
    const std::string prefix = std::string(kind) + ":n<=";
    if (text.starts_with(prefix)) {
      fam.kind = kind;
      fam.max_n = ParseInt(text.substr(prefix.size()));
      if (fam.max_n < 1) throw ParseError("bench family needs n >= 1");
      return fam;
    }
  }
  ParseFigureSpec(text);  // throws for unknown names
  fam.kind = "figure";
  return fam;
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"roommatch: roommate and room matching experiments"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "leontief or additive")
        ->check(CLI::IsMember({"leontief", "additive"}));
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--oracle-cap", cfg.oracle_cap)->check(CLI::PositiveNumber);
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Instance JSON");
    sub->add_option("--family", cfg.family, "Named fixture instead of --input");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run a mechanism");
  add_common(solve);
  add_instance(solve);
  solve->add_option("--mechanism", cfg.mechanism);
  solve->add_option("--sigma", cfg.sigma, "identity or a comma-separated permutation");

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive maximum welfare");
  add_common(oracle);
  add_instance(oracle);

  CLI::App* audit = app.add_subcommand("audit", "Search for a profitable misreport");
  add_common(audit);
  add_instance(audit);
  audit->add_option("--mechanism", cfg.mechanism);
  audit->add_option("--sigma", cfg.sigma);
  audit->add_option("--domain", cfg.domain)
      ->check(CLI::IsMember({"binary-all", "binary-symmetric", "grid"}));
  audit->add_option("--audit-cap", cfg.audit_cap)->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen", "Write an instance");
  add_common(gen);
  gen->add_option("--family", cfg.family, "random, grid, 3sat or a figure name");
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--n", cfg.n)->check(CLI::PositiveNumber);
  gen->add_option("--density", cfg.density)->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--symmetric", cfg.symmetric);
  gen->add_option("--grid", cfg.grid, "Comma-separated values for grid");
  gen->add_option("--cnf", cfg.cnf, "Clauses like '1 -2 3; -1 2 3'");

  CLI::App* bench = app.add_subcommand("bench", "Ratio table over a sweep");
  add_common(bench);
  bench->add_option("--families", cfg.families, "e.g. random:n<=3,fig5");
  bench->add_option("--family", cfg.families, "Alias of --families");
  bench->add_option("--mechanisms", cfg.mechanisms, "all or a comma-separated list");
  bench->add_option("--mechanism", cfg.mechanisms, "Alias of --mechanisms");
  bench->add_option("--seeds", cfg.seeds);
  bench->add_option("--seed", cfg.seed, "First seed");
  bench->add_option("--density", cfg.density)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--sigma", cfg.sigma);

  CLI::App* report = app.add_subcommand("report", "Figure claims and impossibility runs");
  add_common(report);
  report->add_option("--family", cfg.family, "A figure name or all");
  report->add_option("--alpha", cfg.alpha, "Approximation factor (impossibility runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!cfg.mechanism.empty() && !IsMechanismId(cfg.mechanism)) {
      throw ParseError("unknown mechanism '" + cfg.mechanism + "'");
    }
    if (solve->parsed()) return CmdSolve(cfg, out);
    if (oracle->parsed()) return CmdOracle(cfg, out);
    if (audit->parsed()) return CmdAudit(cfg, out);
    if (gen->parsed()) return CmdGen(cfg, out);
    if (bench->parsed()) return CmdBench(cfg, out);
    if (report->parsed()) return CmdReport(cfg, out);
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"roommatch"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace roommatch::cli
