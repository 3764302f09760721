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

#include "nlbb/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nlbb/errors.hpp"
#include "support/oracle.hpp"

namespace nlbb {
namespace {

BenchRun run(std::string instance, std::string config, SolveStatus status,
             std::optional<double> objective, double seconds, bool maximize = false) {
  BenchRun r;
  r.instance = std::move(instance);
  r.config = std::move(config);
  r.status = status;
  r.objective = objective;
  r.wall_seconds = seconds;
  r.maximize = maximize;
  return r;
}

std::vector<BenchConfig> two_configs(double time_limit = 100.0) {
  SolverOptions o;
  o.time_limit = time_limit;
  return {{"a", o}, {"b", o}};
}

TEST(ParseBenchConfigs, ReadsNamesAndOptions) {
  const auto configs = parse_bench_configs(
      R"({"configs": [{"name": "fast", "options": {"gap": 0.01, "pump": "off"}},
                      {"name": "default"}]})");
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs[0].name, "fast");
  EXPECT_DOUBLE_EQ(configs[0].options.gap_tolerance, 0.01);
  EXPECT_EQ(configs[0].options.pump, PumpMode::kOff);
  EXPECT_EQ(configs[1].options, SolverOptions{});
}

TEST(ParseBenchConfigs, Rejects) {
  EXPECT_THROW(parse_bench_configs(R"({"configs": []})"), ValidationError);
  EXPECT_THROW(parse_bench_configs(R"({"configs": [{"name": "a"}, {"name": "a"}]})"),
               ValidationError);
  EXPECT_THROW(parse_bench_configs(R"({"configs": [{"name": "a", "colour": 1}]})"),
               ValidationError);
  EXPECT_THROW(parse_bench_configs(R"({"configs": [{"name": "a", "options": {"gap": -1}}]})"),
               ValidationError);
  EXPECT_THROW(parse_bench_configs("{"), ParseError);
}

TEST(ProfileGrid, QuarterDecades) {
  const auto g = profile_grid(10.0);
  ASSERT_EQ(g.size(), 5u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(g[k], std::pow(10.0, k / 4.0));
  EXPECT_DOUBLE_EQ(g.back(), 10.0);
  EXPECT_EQ(profile_grid(0.5), std::vector<double>{1.0});
  const auto h = profile_grid(2.0);
  EXPECT_EQ(h.size(), 3u);  // 1, 10^0.25, 2
  EXPECT_DOUBLE_EQ(h.back(), 2.0);
}

TEST(RuntimeProfile, CountsOptimalRunsOnly) {
  const std::vector<BenchRun> runs{
      run("p", "a", SolveStatus::kOptimal, 1.0, 0.5),
      run("q", "a", SolveStatus::kOptimal, 1.0, 5.0),
      run("r", "a", SolveStatus::kFeasibleTimeLimit, 1.0, 0.1),
      run("p", "b", SolveStatus::kInfeasibleOrUnbounded, std::nullopt, 0.1),
  };
  const auto points = runtime_profile(runs, two_configs(10.0), 3);
  ASSERT_EQ(points.size(), 10u);
  EXPECT_EQ(points[0].config, "a");
  EXPECT_DOUBLE_EQ(points[0].fraction, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(points[4].fraction, 2.0 / 3.0);
  for (std::size_t i = 5; i < 10; ++i) EXPECT_DOUBLE_EQ(points[i].fraction, 0.0);
}

TEST(RuntimeProfile, IsMonotone) {
  std::vector<BenchRun> runs;
  for (int i = 0; i < 20; ++i) {
    runs.push_back(run("i" + std::to_string(i), "a", SolveStatus::kOptimal, 0.0, 0.3 * i * i));
  }
  const auto points = runtime_profile(runs, two_configs(), 20);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].config != points[i - 1].config) continue;
    EXPECT_GE(points[i].fraction, points[i - 1].fraction);
    EXPECT_GT(points[i].t, points[i - 1].t);
  }
}

TEST(PercentGap, Definition) {
  EXPECT_DOUBLE_EQ(percent_gap(101.0, 100.0), 1.0);
  EXPECT_DOUBLE_EQ(percent_gap(-99.0, -100.0), 1.0);
  EXPECT_NEAR(percent_gap(1e-12, 0.0), 1e-12 / 1e-10 * 100.0, 1e-12);
}

TEST(Summarize, GapsAgainstThePerInstanceBest) {
  const std::vector<BenchRun> runs{
      run("p", "a", SolveStatus::kOptimal, 100.0, 1.0),
      run("p", "b", SolveStatus::kFeasibleTimeLimit, 110.0, 1.0),
      run("q", "a", SolveStatus::kOptimal, 50.0, 1.0, true),
      run("q", "b", SolveStatus::kOptimal, 40.0, 1.0, true),
      run("r", "a", SolveStatus::kOptimal, 2.0, 1.0),
      run("r", "b", SolveStatus::kNoSolutionTimeLimit, std::nullopt, 1.0),
  };
  const auto rows = summarize(runs, two_configs());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].feasible, 3);
  EXPECT_EQ(rows[0].time_limit, 0);
  EXPECT_DOUBLE_EQ(rows[0].mean_gap_self, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].mean_gap_common, 0.0);
  EXPECT_EQ(rows[1].feasible, 2);
  EXPECT_EQ(rows[1].time_limit, 2);
  // p: 10 %, q: 20 %
  EXPECT_DOUBLE_EQ(rows[1].mean_gap_self, 15.0);
  EXPECT_DOUBLE_EQ(rows[1].mean_gap_common, 15.0);
}

TEST(Summarize, NoFeasibleRunsGiveNan) {
  const std::vector<BenchRun> runs{run("p", "a", SolveStatus::kOptimal, 1.0, 1.0),
                                   run("p", "b", SolveStatus::kError, std::nullopt, 1.0)};
  const auto rows = summarize(runs, two_configs());
  EXPECT_TRUE(std::isnan(rows[1].mean_gap_self));
  EXPECT_TRUE(std::isnan(rows[0].mean_gap_common));
  const std::string csv = summary_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "config,feasible,timelimit,mean_gap_self,mean_gap_common");
  EXPECT_NE(csv.find("b,0,0,nan,nan"), std::string::npos) << csv;
}

TEST(ProfileCsv, Header) {
  const std::string csv = profile_csv({{"a", 1.0, 0.5}});
  EXPECT_EQ(csv, "config,t,fraction\na,1,0.5\n");
}

TEST(RunBench, SweepsInstancesAndRecordsFailures) {
  const auto dir = testing::corpus_dir() / "extra";
  const auto instances = list_instances(dir);
  ASSERT_EQ(instances.size(), 6u);
  EXPECT_TRUE(std::is_sorted(instances.begin(), instances.end()));
  std::vector<std::filesystem::path> paths{instances[0], dir / "missing.json"};
  const auto runs = run_bench(paths, two_configs());
  ASSERT_EQ(runs.size(), 4u);
  EXPECT_EQ(runs[0].instance, instances[0].stem().string());
  EXPECT_TRUE(runs[0].error.empty());
  EXPECT_FALSE(runs[2].error.empty());
  EXPECT_EQ(runs[3].config, "b");
}

}  // namespace
}  // namespace nlbb
