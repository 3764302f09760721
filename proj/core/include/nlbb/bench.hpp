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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlbb/engine.hpp"
#include "nlbb/options.hpp"

namespace nlbb {

struct BenchConfig {
  std::string name;
  SolverOptions options;
};

/// {"configs": [{"name": "a", "options": {...}}, ...]}. Names must be unique
/// and non-empty.
std::vector<BenchConfig> parse_bench_configs(std::string_view text);

struct BenchRun {
  std::string instance;
  std::string config;
  SolveStatus status = SolveStatus::kError;
  /// User-sense objective when a feasible point was found.
  std::optional<double> objective;
  bool maximize = false;
  double wall_seconds = 0.0;
  /// Load or solve failure; the sweep continues.
  std::string error;
};

/// Solves every (instance, config) pair in order, one at a time. Failures are
/// recorded in the run, never thrown.
std::vector<BenchRun> run_bench(const std::vector<std::filesystem::path>& instances,
                                const std::vector<BenchConfig>& configs);

/// *.json files of a directory, sorted by name.
std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir);

/// Logarithmic grid 10^(k/4) from 1 s up to max(1, horizon), always ending at
/// the horizon itself.
std::vector<double> profile_grid(double horizon);

struct ProfilePoint {
  std::string config;
  double t = 0.0;
  double fraction = 0.0;
};

/// Fraction of instances each config solved to optimality within t seconds,
/// for every t of the grid. `instance_count` is the denominator.
std::vector<ProfilePoint> runtime_profile(const std::vector<BenchRun>& runs,
                                          const std::vector<BenchConfig>& configs,
                                          std::size_t instance_count);

struct SummaryRow {
  std::string config;
  int feasible = 0;
  int time_limit = 0;
  /// Mean percentage gap to the per-instance best objective over the
  /// instances this config found feasible. NaN when there are none.
  double mean_gap_self = 0.0;
  /// Same, over the instances every config found feasible.
  double mean_gap_common = 0.0;
};

/// Gap in percent: |obj - best| / max(|best|, 1e-10) * 100.
double percent_gap(double objective, double best);

std::vector<SummaryRow> summarize(const std::vector<BenchRun>& runs,
                                  const std::vector<BenchConfig>& configs);

/// Header "config,t,fraction".
std::string profile_csv(const std::vector<ProfilePoint>& points);
/// Header "config,feasible,timelimit,mean_gap_self,mean_gap_common".
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace nlbb
