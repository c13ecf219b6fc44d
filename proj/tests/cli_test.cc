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

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "roommatch/errors.h"
#include "roommatch/json_io.h"

namespace roommatch::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("roommatch_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
           "_" + name))
      .string();
}

TEST(CliTest, SolveFourCycleThroughFile) {
  const std::string path = TempPath("fig5.json");
  ASSERT_EQ(Call({"gen", "--family", "fig5", "--model", "leontief", "--out", path}).code, 0);
  const Outcome r = Call({"solve", "--mechanism", "triangle-then-l", "--model", "leontief",
                      "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ParseJsonText(r.out).at("welfare"), "2");
  std::filesystem::remove(path);
}

TEST(CliTest, SolveAllZeroInstance) {
  const std::string path = TempPath("zero.json");
  WriteTextFile(path, R"({"n": 2, "v": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
                          "v_hat": [[0,0],[0,0],[0,0],[0,0]]})");
  const Outcome r = Call({"solve", "--mechanism", "precedence-search", "--model", "leontief",
                      "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ParseJsonText(r.out).at("welfare"), "0");
  std::filesystem::remove(path);
}

TEST(CliTest, UsageErrorsExitTwo) {
  Outcome r = Call({"solve", "--mechanism", "no-such-rule", "--family", "fig5"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("unknown mechanism"), std::string::npos);
  EXPECT_EQ(Call({"solve", "--mechanism", "lt-sd"}).code, kExitUsage);  // no instance
  EXPECT_EQ(Call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Call({"solve", "--model", "cobb-douglas", "--family", "fig5"}).code, kExitUsage);
  EXPECT_EQ(Call({"solve", "--mechanism", "lt-sd", "--family", "fig5", "--sigma", "0,1,1,2"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"oracle", "--input", TempPath("missing.json")}).code, kExitUsage);
  EXPECT_EQ(Call({"oracle", "--family", "fig5", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(Call({"--help"}).code, 0);
}

TEST(CliTest, CapsExitThree) {
  EXPECT_EQ(Call({"oracle", "--family", "fig2", "--oracle-cap", "2"}).code, kExitCap);
  EXPECT_EQ(Call({"audit", "--mechanism", "lt-sd", "--family", "fig2", "--audit-cap", "2"}).code,
            kExitCap);
}

TEST(CliTest, AuditFindsParityWitness) {
  const Outcome r = Call({"audit", "--mechanism", "parity", "--domain", "binary-all",
                      "--family", "parity"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(ParseJsonText(r.out).at("witness").is_null());
}

TEST(CliTest, GenThenOracleOnHubInstance) {
  const std::string path = TempPath("fig6.json");
  ASSERT_EQ(Call({"gen", "--family", "fig6", "--out", path}).code, 0);
  const Outcome r = Call({"oracle", "--input", path, "--model", "additive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = ParseJsonText(r.out);
  EXPECT_EQ(j.at("max_welfare"), "2");
  EXPECT_EQ(j.at("witness_count"), 2);
  std::filesystem::remove(path);
}

TEST(CliTest, GenRandomIsSeededAndGadgetCarriesMap) {
  const Outcome a = Call({"gen", "--family", "random", "--n", "3", "--seed", "4"});
  const Outcome b = Call({"gen", "--family", "random", "--n", "3", "--seed", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome sat = Call({"gen", "--family", "3sat", "--cnf", "1 2 3; -1 -2 3"});
  ASSERT_EQ(sat.code, 0) << sat.err;
  const nlohmann::json j = ParseJsonText(sat.out);
  EXPECT_EQ(j.at("n"), 10);
  EXPECT_TRUE(j.contains("reduction"));
  EXPECT_EQ(InstanceFromJson(j).agents(), 20);
}

TEST(CliTest, BenchMeetsTriangleRuleBoundAndIsDeterministic) {
  const std::vector<std::string> args = {"bench", "--families", "random:n<=3",
                                         "--mechanisms", "all", "--model", "leontief",
                                         "--seeds", "20"};
  const Outcome r = Call(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = ParseJsonText(r.out);
  bool seen = false;
  for (const auto& s : j.at("summary")) {
    if (s.at("mechanism") == "triangle-then-l") {
      seen = true;
      EXPECT_GE(ParseRational(s.at("worst_ratio").get<std::string>()), Rational(1, 3));
      EXPECT_EQ(s.at("within_bound"), true);
      EXPECT_EQ(s.at("runs"), 60);
    }
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(Call(args).out, r.out);
}

TEST(CliTest, BenchCsvLayout) {
  const Outcome r = Call({"bench", "--families", "fig5", "--mechanisms", "triangle-then-l,lt-sd",
                      "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "family,params,mechanism,model,welfare,oracle,ratio,ratio_decimal");
  std::getline(lines, line);
  EXPECT_EQ(line, "fig5,,triangle-then-l,leontief,2,2,1,1.000000");
  EXPECT_NE(r.out.find("summary,bound=1/3,triangle-then-l"), std::string::npos);
}

TEST(CliTest, ReportImpossibilityAndFigures) {
  Outcome r = Call({"report", "--family", "fig5", "--alpha", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ParseJsonText(r.out).at("verified"), true);
  r = Call({"report", "--family", "fig3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ParseJsonText(r.out).at("match"), true);
  r = Call({"report", "--family", "fig6", "--model", "additive", "--alpha", "1/2"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliTest, SolveReplaysFigureRun) {
  const Outcome r = Call({"solve", "--family", "fig3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = ParseJsonText(r.out);
  EXPECT_EQ(j.at("mechanism"), "naive-maximal");
  EXPECT_EQ(j.at("welfare"), "2");
}

TEST(SigmaTest, Parse) {
  EXPECT_TRUE(ParseSigma("identity", 4).empty());
  EXPECT_EQ(ParseSigma("3,2,1,0", 4), (std::vector<int>{3, 2, 1, 0}));
  EXPECT_THROW(ParseSigma("0,1,2", 4), ParseError);
  EXPECT_THROW(ParseSigma("0,1,2,x", 4), ParseError);
}

}  // namespace
}  // namespace roommatch::cli
