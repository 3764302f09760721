// Copyright 2026 The nlbb Authors.
//
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

#include "nlbb/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlbb/io.hpp"
#include "support/oracle.hpp"

namespace nlbb {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return (testing::corpus_dir() / rel).string(); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nlbb_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(ExitCode, Mapping) {
  EXPECT_EQ(exit_code(SolveStatus::kOptimal), 0);
  EXPECT_EQ(exit_code(SolveStatus::kFeasibleTimeLimit), 0);
  EXPECT_EQ(exit_code(SolveStatus::kInfeasibleOrUnbounded), 2);
  EXPECT_EQ(exit_code(SolveStatus::kNoSolutionTimeLimit), 3);
  EXPECT_EQ(exit_code(SolveStatus::kError), 1);
}

TEST(Cli, SolvesAndPrintsASummary) {
  const CliRun r = cli({"solve", corpus("oracle/codeblock1.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status     optimal"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("objective  184"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x5 = 3"), std::string::npos) << r.out;
}

TEST(Cli, MissingFileIsAnError) {
  const CliRun r = cli({"solve", "/nonexistent/instance.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/nonexistent/instance.json"), std::string::npos) << r.err;
}

TEST(Cli, InfeasibleExitsWithTwo) {
  EXPECT_EQ(cli({"solve", corpus("extra/infeasible_box.json")}).code, 2);
  EXPECT_EQ(cli({"solve", corpus("oracle/parity_infeasible.json")}).code, 2);
}

TEST(Cli, TimeLimitWithoutPointExitsWithThree) {
  EXPECT_EQ(cli({"solve", corpus("oracle/codeblock1.json"), "--time-limit", "0"}).code, 3);
}

TEST(Cli, OptionsReachTheSolver) {
  const auto out = scratch("opts.json");
  const CliRun r = cli({"solve", corpus("oracle/cover6.json"), "--branching", "most-infeasible",
                     "--traverse", "depth", "--pump", "off", "--gap", "0.001", "--seed", "9",
                     "--workers", "2", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  const ResultFile f = parse_result(text.str());
  EXPECT_EQ(f.options.branching, BranchingStrategy::kMostInfeasible);
  EXPECT_EQ(f.options.traversal, Traversal::kDepthFirst);
  EXPECT_EQ(f.options.pump, PumpMode::kOff);
  EXPECT_DOUBLE_EQ(f.options.gap_tolerance, 0.001);
  EXPECT_EQ(f.options.seed, 9u);
  EXPECT_EQ(f.options.workers, 2);
  EXPECT_FALSE(f.pump_ran);
}

TEST(Cli, ResultFileObjectiveReevaluates) {
  const auto out = scratch("result.json");
  ASSERT_EQ(cli({"solve", corpus("oracle/reciprocal.json"), "--out", out.string()}).code, 0);
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  const ResultFile f = parse_result(text.str());
  const Model m = load_instance(corpus("oracle/reciprocal.json"));
  Point p;
  for (const auto& [name, value] : f.assignment) p.push_back(value);
  ASSERT_TRUE(f.objective.has_value());
  EXPECT_NEAR(m.to_original_sense(evaluate(m.objective(), p)), *f.objective, 1e-8);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"solve"}).code, 1);
  EXPECT_EQ(cli({"solve", corpus("oracle/codeblock1.json"), "--branching", "random"}).code, 1);
  EXPECT_EQ(cli({"solve", corpus("oracle/codeblock1.json"), "--gap", "-1"}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
}

TEST(Cli, HelpSucceeds) {
  const CliRun r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solve"), std::string::npos);
}

TEST(Cli, BenchWritesBothCsvFiles) {
  const auto configs = scratch("configs.json");
  std::ofstream(configs) << R"({"configs": [{"name": "default", "options": {"time_limit": 30}},
                                            {"name": "depth", "options": {"traversal": "depth", "pump": "off", "time_limit": 30}}]})";
  const auto profile = scratch("profile.csv");
  const auto summary = scratch("summary.csv");
  const CliRun r = cli({"bench", corpus("extra"), "--configs", configs.string(), "--profile",
                     profile.string(), "--summary", summary.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream p(profile), s(summary);
  std::string header;
  std::getline(p, header);
  EXPECT_EQ(header, "config,t,fraction");
  std::getline(s, header);
  EXPECT_EQ(header, "config,feasible,timelimit,mean_gap_self,mean_gap_common");
  int rows = 0;
  for (std::string line; std::getline(s, line);) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(Cli, BenchToStdout) {
  const auto configs = scratch("configs1.json");
  std::ofstream(configs) << R"({"configs": [{"name": "only"}]})";
  const CliRun r = cli({"bench", corpus("extra"), "--configs", configs.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("config,t,fraction"), std::string::npos);
  EXPECT_NE(r.out.find("config,feasible,timelimit"), std::string::npos);
}

}  // namespace
}  // namespace nlbb
