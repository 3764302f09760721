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

#include <benchmark/benchmark.h>

#include <string>

#include "nlbb/nlbb.hpp"

namespace {

nlbb::Model corpus_model(const std::string& rel) {
  return nlbb::load_instance(std::string(NLBB_CORPUS_DIR) + "/" + rel);
}

void BM_GradientTape(benchmark::State& state) {
  const nlbb::Model m = corpus_model("oracle/codeblock1.json");
  const nlbb::Point p{1.5, 0.5, 2.0, 1.0, 3.0};
  nlbb::TapeWorkspace ws;
  std::vector<double> grad(p.size());
  for (auto _ : state) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const nlbb::Tape& t : m.constraint_tapes()) t.accumulate_gradient(p, 1.0, grad, ws);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_GradientTape);

void BM_RootRelaxation(benchmark::State& state) {
  const nlbb::Model m = corpus_model("oracle/codeblock1.json");
  for (auto _ : state) benchmark::DoNotOptimize(nlbb::solve_nlp({m}).objective);
}
BENCHMARK(BM_RootRelaxation)->Unit(benchmark::kMicrosecond);

void BM_Solve(benchmark::State& state, const std::string& rel, nlbb::BranchingStrategy b) {
  const nlbb::Model m = corpus_model(rel);
  nlbb::SolverOptions o;
  o.branching = b;
  o.pump = nlbb::PumpMode::kOff;
  for (auto _ : state) {
    const nlbb::SolveResult r = nlbb::solve(m, o);
    state.counters["nodes"] = static_cast<double>(r.nodes);
  }
}
BENCHMARK_CAPTURE(BM_Solve, cover6_strong_root, "oracle/cover6.json",
                  nlbb::BranchingStrategy::kStrongRootThenPseudo)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, cover6_most_infeasible, "oracle/cover6.json",
                  nlbb::BranchingStrategy::kMostInfeasible)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, ball_reliability, "oracle/ball.json",
                  nlbb::BranchingStrategy::kReliability)
    ->Unit(benchmark::kMillisecond);

// Wall time against worker count; speedups depend on available cores.
void BM_Workers(benchmark::State& state) {
  const nlbb::Model m = corpus_model("oracle/cover6.json");
  nlbb::SolverOptions o;
  o.workers = static_cast<int>(state.range(0));
  o.pump = nlbb::PumpMode::kOff;
  for (auto _ : state) benchmark::DoNotOptimize(nlbb::solve(m, o).nodes);
}
BENCHMARK(BM_Workers)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Pump(benchmark::State& state) {
  const nlbb::Model m = corpus_model("oracle/quad_budget.json");
  nlbb::PumpSettings s;
  s.mode = state.range(0) == 0 ? nlbb::PumpMode::kRounding : nlbb::PumpMode::kMipProjection;
  for (auto _ : state) benchmark::DoNotOptimize(nlbb::pump(m, s).iterations);
}
BENCHMARK(BM_Pump)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
