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

// Python bindings. Instances and results cross the boundary as JSON text so
// that every value stays an exact fraction; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.h"
#include "roommatch/errors.h"
#include "roommatch/generators.h"
#include "roommatch/json_io.h"
#include "roommatch/oracle.h"
#include "roommatch/set_packing.h"
#include "roommatch/sp_audit.h"

namespace py = pybind11;

namespace roommatch {
namespace {

UtilityModel Model(const std::string& name) {
  if (name == "leontief") return UtilityModel::kLeontief;
  if (name == "additive") return UtilityModel::kAdditive;
  throw ParseError("unknown model '" + name + "'");
}

Instance Load(const std::string& text) { return InstanceFromJson(ParseJsonText(text)); }

std::string Solve(const std::string& instance, const std::string& mechanism,
                  const std::string& model, const std::vector<int>& sigma,
                  int oracle_cap) {
  const Instance inst = Load(instance);
  MechanismOptions options;
  options.sigma = sigma;
  options.oracle_cap = oracle_cap;
  const MechanismResult r = MakeMechanism(mechanism)(inst, Model(model), options);
  return cli::MechanismResultToJson(mechanism, Model(model), r).dump();
}

std::string MaxWelfareJson(const std::string& instance, const std::string& model, int cap) {
  const OracleResult r = MaxWelfare(Load(instance), Model(model), cap);
  nlohmann::json witnesses = nlohmann::json::array();
  for (const Matching& mu : r.witnesses) witnesses.push_back(MatchingToJson(mu));
  return nlohmann::json{{"max_welfare", FormatRational(r.max_welfare)},
                        {"witnesses", std::move(witnesses)}}
      .dump();
}

std::string SolveMaxWeightJson(const std::string& instance, const std::string& model) {
  const Instance inst = Load(instance);
  const SetPackingInstance spi = Reduce(inst, Model(model));
  const MaxWeightResult best = SolveMaxWeight(spi, inst.rooms());
  return nlohmann::json{{"weight", FormatRational(best.weight)},
                        {"matching", MatchingToJson(MatchingFromPacking(
                                         spi, best.packing, inst.rooms()))}}
      .dump();
}

std::string AuditJson(const std::string& instance, const std::string& mechanism,
                      const std::string& model, const std::string& domain,
                      const std::vector<int>& sigma, int cap) {
  MechanismOptions options;
  options.sigma = sigma;
  return AuditReportToJson(Audit(mechanism, Load(instance), Model(model),
                                 ParseMisreportDomain(domain), options, cap))
      .dump();
}

std::string FigureJson(const std::string& name, const std::string& model) {
  return InstanceToJson(GenFigure(ParseFigureSpec(name, Model(model))).instance).dump();
}

std::string From3SatJson(const std::string& cnf_text) {
  const Cnf cnf = ParseCnf(cnf_text);
  const Reduction red = From3Sat(cnf);
  nlohmann::json j = InstanceToJson(red.instance);
  j["reduction"] = ReductionMapToJson(red.map);
  return j.dump();
}

py::tuple RunCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::RunCli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace
}  // namespace roommatch

PYBIND11_MODULE(_roommatch, m) {
  using namespace roommatch;
  m.doc() = "Roommate and room matching: mechanisms, oracle and audits";

  static py::exception<CapExceededError> cap_error(m, "CapExceededError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapExceededError& e) {
      PyErr_SetString(cap_error.ptr(), e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("mechanism_ids", [] { return MechanismIds(); });
  m.def("solve", &Solve, py::arg("instance"), py::arg("mechanism"),
        py::arg("model") = "leontief", py::arg("sigma") = std::vector<int>{},
        py::arg("oracle_cap") = kDefaultOracleCap);
  m.def("max_welfare", &MaxWelfareJson, py::arg("instance"), py::arg("model") = "leontief",
        py::arg("cap") = kDefaultOracleCap);
  m.def("solve_max_weight", &SolveMaxWeightJson, py::arg("instance"),
        py::arg("model") = "leontief");
  m.def("audit", &AuditJson, py::arg("instance"), py::arg("mechanism"),
        py::arg("model") = "leontief", py::arg("domain") = "binary-all",
        py::arg("sigma") = std::vector<int>{}, py::arg("cap") = kDefaultAuditCap);
  m.def("gen_figure", &FigureJson, py::arg("name"), py::arg("model") = "leontief");
  m.def("gen_random",
        [](int n, double density, bool symmetric, std::uint64_t seed) {
          return InstanceToJson(GenRandom(n, density, symmetric, seed)).dump();
        },
        py::arg("n"), py::arg("density") = 0.5, py::arg("symmetric") = false,
        py::arg("seed") = 0);
  m.def("from_3sat", &From3SatJson, py::arg("cnf"));
  m.def("reproduce_impossibility",
        [](const std::string& family, const std::string& model, const std::string& alpha) {
          return ImpossibilityReportToJson(ReproduceImpossibility(
                     ParseImpossibilityFamily(family), Model(model), ParseRational(alpha)))
              .dump();
        },
        py::arg("family"), py::arg("model") = "leontief", py::arg("alpha") = "1");
  m.def("run_cli", &RunCli, py::arg("args"));
}
