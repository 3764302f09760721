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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json_support.hpp"
#include "nlbb/io.hpp"

namespace nlbb {

namespace {

bool solved(const BenchRun& run) { return run.status == SolveStatus::kOptimal; }

std::string format_number(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

}  // namespace

std::vector<BenchConfig> parse_bench_configs(std::string_view text) {
  const detail::Json doc = detail::parse_json(text);
  auto it = doc.is_object() ? doc.find("configs") : doc.end();
  if (!doc.is_object() || it == doc.end() || !it->is_array()) {
    throw ValidationError("configs", "expected {\"configs\": [...]}");
  }
  std::vector<BenchConfig> configs;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string field = "configs[" + std::to_string(i) + "]";
    const auto& c = (*it)[i];
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) {
      throw ValidationError(field + ".name", "expected a string");
    }
    BenchConfig config;
    config.name = c["name"].get<std::string>();
    if (config.name.empty() || !seen.insert(config.name).second) {
      throw ValidationError(field + ".name", "must be unique and non-empty");
    }
    for (const auto& [key, value] : c.items()) {
      if (key != "name" && key != "options") throw ValidationError(field + "." + key, "unknown field");
    }
    if (auto o = c.find("options"); o != c.end()) {
      config.options = detail::options_from_json(*o, field + ".options");
    }
    configs.push_back(std::move(config));
  }
  if (configs.empty()) throw ValidationError("configs", "at least one config is required");
  return configs;
}

std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BenchRun> run_bench(const std::vector<std::filesystem::path>& instances,
                                const std::vector<BenchConfig>& configs) {
  std::vector<BenchRun> runs;
  for (const auto& path : instances) {
    std::optional<Model> model;
    std::string load_error;
    try {
      model = load_instance(path);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const BenchConfig& config : configs) {
      BenchRun run;
      run.instance = path.stem().string();
      run.config = config.name;
      if (!model) {
        run.error = load_error;
        runs.push_back(std::move(run));
        continue;
      }
      run.maximize = model->was_maximize();
      try {
        const SolveResult r = solve(*model, config.options);
        run.status = r.status;
        run.objective = r.objective();
        run.wall_seconds = r.wall_seconds;
      } catch (const std::exception& e) {
        run.error = e.what();
      }
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

std::vector<double> profile_grid(double horizon) {
  horizon = std::max(1.0, horizon);
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double t = std::pow(10.0, k / 4.0);
    if (t >= horizon * (1.0 - 1e-12)) break;
    grid.push_back(t);
  }
  grid.push_back(horizon);
  return grid;
}

std::vector<ProfilePoint> runtime_profile(const std::vector<BenchRun>& runs,
                                          const std::vector<BenchConfig>& configs,
                                          std::size_t instance_count) {
  double horizon = 1.0;
  for (const auto& c : configs) {
    if (std::isfinite(c.options.time_limit)) horizon = std::max(horizon, c.options.time_limit);
  }
  const std::vector<double> grid = profile_grid(horizon);
  std::vector<ProfilePoint> points;
  for (const auto& c : configs) {
    std::vector<double> times;
    for (const auto& r : runs) {
      if (r.config == c.name && solved(r)) times.push_back(r.wall_seconds);
    }
    std::sort(times.begin(), times.end());
    for (double t : grid) {
      const auto done = std::upper_bound(times.begin(), times.end(), t) - times.begin();
      const double fraction =
          instance_count == 0 ? 0.0 : static_cast<double>(done) / static_cast<double>(instance_count);
      points.push_back({c.name, t, fraction});
    }
  }
  return points;
}

double percent_gap(double objective, double best) {
  return std::fabs(objective - best) / std::max(std::fabs(best), 1e-10) * 100.0;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRun>& runs,
                                  const std::vector<BenchConfig>& configs) {
  // Best user-sense objective per instance across all configs.
  std::map<std::string, double> best;
  std::map<std::string, int> feasible_configs;
  for (const auto& r : runs) {
    if (!r.objective) continue;
    ++feasible_configs[r.instance];
    auto [it, fresh] = best.emplace(r.instance, *r.objective);
    if (!fresh) {
      it->second = r.maximize ? std::max(it->second, *r.objective)
                              : std::min(it->second, *r.objective);
    }
  }
  const int config_count = static_cast<int>(configs.size());

  std::vector<SummaryRow> rows;
  for (const auto& c : configs) {
    SummaryRow row;
    row.config = c.name;
    double self_sum = 0.0, common_sum = 0.0;
    int self_n = 0, common_n = 0;
    for (const auto& r : runs) {
      if (r.config != c.name) continue;
      if (r.status == SolveStatus::kFeasibleTimeLimit ||
          r.status == SolveStatus::kNoSolutionTimeLimit) {
        ++row.time_limit;
      }
      if (!r.objective) continue;
      ++row.feasible;
      const double g = percent_gap(*r.objective, best.at(r.instance));
      self_sum += g;
      ++self_n;
      if (feasible_configs[r.instance] == config_count) {
        common_sum += g;
        ++common_n;
      }
    }
    row.mean_gap_self = self_n ? self_sum / self_n : std::nan("");
    row.mean_gap_common = common_n ? common_sum / common_n : std::nan("");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string profile_csv(const std::vector<ProfilePoint>& points) {
  std::string out = "config,t,fraction\n";
  for (const auto& p : points) {
    out += p.config + "," + format_number(p.t) + "," + format_number(p.fraction) + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "config,feasible,timelimit,mean_gap_self,mean_gap_common\n";
  for (const auto& r : rows) {
    out += r.config + "," + std::to_string(r.feasible) + "," + std::to_string(r.time_limit) + "," +
           format_number(r.mean_gap_self) + "," + format_number(r.mean_gap_common) + "\n";
  }
  return out;
}

}  // namespace nlbb
