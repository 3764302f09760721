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

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nlbb/bench.hpp"
#include "nlbb/errors.hpp"
#include "nlbb/io.hpp"

namespace nlbb {

namespace {

struct SolveArgs {
  std::string instance;
  std::string branching = std::string(to_string(SolverOptions{}.branching));
  std::string traversal = std::string(to_string(SolverOptions{}.traversal));
  std::string pump = std::string(to_string(SolverOptions{}.pump));
  SolverOptions options;
  std::string out;
};

struct BenchArgs {
  std::string dir;
  std::string configs;
  std::string profile;
  std::string summary;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
  if (!file) throw Error("failed writing " + path);
}

void print_summary(std::ostream& out, const Model& model, const SolveResult& r) {
  out << std::setprecision(10);
  out << "status     " << to_string(r.status) << "\n";
  if (auto obj = r.objective()) {
    out << "objective  " << *obj << "\n";
  } else {
    out << "objective  none\n";
  }
  out << "bound      " << r.bound() << "\n";
  out << "gap        " << r.gap << "\n";
  out << "nodes      " << r.nodes << "\n";
  out << "restarts   " << r.restarts << "\n";
  out << "pump       " << (r.pump.incumbent ? "found" : (r.pump.ran ? "none" : "off")) << "\n";
  out << "seconds    " << r.wall_seconds << "\n";
  if (!r.message.empty()) out << "note       " << r.message << "\n";
  if (r.incumbent) {
    for (std::size_t j = 0; j < model.var_count(); ++j) {
      out << "  " << model.variables()[j].name << " = " << r.incumbent->point[j] << "\n";
    }
  }
}

int do_solve(SolveArgs& a, std::ostream& out, std::ostream& err) {
  a.options.branching = *parse_branching(a.branching);
  a.options.traversal = *parse_traversal(a.traversal);
  a.options.pump = *parse_pump_mode(a.pump);
  try {
    a.options.validate();
  } catch (const ValidationError& e) {
    err << "invalid option: " << e.what() << "\n";
    return 1;
  }
  const Model model = load_instance(a.instance);
  const SolveResult result = solve(model, a.options);
  print_summary(out, model, result);
  if (!a.out.empty()) write_file(a.out, write_result(make_result_file(model, result, a.options)));
  return exit_code(result.status);
}

int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto configs = parse_bench_configs(read_file(a.configs));
  const auto instances = list_instances(a.dir);
  if (instances.empty()) {
    err << "no .json instances in " << a.dir << "\n";
    return 1;
  }
  const auto runs = run_bench(instances, configs);
  for (const auto& r : runs) {
    if (!r.error.empty()) err << r.instance << " [" << r.config << "]: " << r.error << "\n";
  }
  const std::string profile = profile_csv(runtime_profile(runs, configs, instances.size()));
  const std::string summary = summary_csv(summarize(runs, configs));
  if (a.profile.empty()) {
    out << profile;
  } else {
    write_file(a.profile, profile);
  }
  if (a.summary.empty()) {
    out << summary;
  } else {
    write_file(a.summary, summary);
  }
  return 0;
}

}  // namespace

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasibleTimeLimit:
      return 0;
    case SolveStatus::kInfeasibleOrUnbounded:
      return 2;
    case SolveStatus::kNoSolutionTimeLimit:
      return 3;
    case SolveStatus::kError:
      return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear branch-and-bound MINLP solver", "nlbb"};
  app.require_subcommand(1);

  SolveArgs s;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("file", s.instance, "Instance file")->required();
  solve_cmd->add_option("--branching", s.branching, "Branching strategy")
      ->check(CLI::IsMember({"strong-root", "pseudo", "strong", "reliability", "most-infeasible"}))
      ->capture_default_str();
  solve_cmd->add_option("--traverse", s.traversal, "Node order")
      ->check(CLI::IsMember({"best", "depth"}))
      ->capture_default_str();
  solve_cmd->add_option("--pump", s.pump, "Feasibility pump mode")
      ->check(CLI::IsMember({"off", "rounding", "mip"}))
      ->capture_default_str();
  solve_cmd->add_option("--pump-time", s.options.pump_time_limit, "Pump time limit (s)")
      ->capture_default_str();
  solve_cmd->add_option("--gap", s.options.gap_tolerance, "Relative gap tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--time-limit", s.options.time_limit, "Time limit (s)")
      ->capture_default_str();
  solve_cmd->add_option("--workers", s.options.workers, "Threads including the orchestrator")
      ->capture_default_str();
  solve_cmd->add_option("--seed", s.options.seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--out", s.out, "Write a JSON result file");

  BenchArgs b;
  auto* bench_cmd = app.add_subcommand("bench", "Run every config on every instance");
  bench_cmd->add_option("dir", b.dir, "Directory of instance files")->required();
  bench_cmd->add_option("--configs", b.configs, "JSON config file")->required();
  bench_cmd->add_option("--profile", b.profile, "Runtime profile CSV output");
  bench_cmd->add_option("--summary", b.summary, "Summary CSV output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return do_solve(s, out, err);
    return do_bench(b, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nlbb
