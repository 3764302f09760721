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

#include <cstdint>
#include <optional>

#include "nlbb/branching.hpp"
#include "nlbb/engine.hpp"
#include "nlbb/open_set.hpp"
#include "nlbb/timer.hpp"

namespace nlbb::detail {

/// The search state shared by the sequential loop and the parallel
/// orchestrator: open set, incumbent, pseudo costs, counters and the
/// termination test. Owned by exactly one thread at a time.
class TreeSearch {
 public:
  TreeSearch(const Model& model, const SolverOptions& options);

  /// Rounds integer bounds inward and runs the feasibility pump. Returns
  /// false when the search is already decided.
  bool prepare();

  /// Solves the root with restarts and integrates it. Returns false when the
  /// search is decided at the root.
  bool solve_root();

  /// Context for processing a node against the current incumbent.
  NodeContext context() const;

  bool has_open() const { return !open_.empty(); }
  /// Takes the next node in traversal order, recording its bound.
  Node pop();
  /// Returns an unprocessed node to the open set.
  void push_back(Node node) { open_.push(std::move(node)); }

  void integrate(const Node& node, NodeOutcome&& outcome);

  /// Checks the time limit, exhaustion and the gap. `in_flight_bound` is the
  /// smallest bound of nodes handed out but not yet integrated.
  bool should_stop(double in_flight_bound = kInf, bool in_flight = false);

  /// Builds the result. Unfinished nodes must have been pushed back.
  SolveResult finish();

  double incumbent_objective() const { return incumbent_ ? incumbent_->objective : kInf; }
  const Model& model() const { return model_; }
  const SolverOptions& options() const { return options_; }
  const Deadline& deadline() const { return deadline_; }
  const PseudoCostTable& pseudo_costs() const { return pseudo_costs_; }
  std::int64_t nodes() const { return nodes_; }
  void count_dispatched() { ++dispatched_; }
  void count_cancelled() { ++cancelled_; }
  void count_failure() { ++relaxation_failures_; }

 private:
  enum class Stop { kNone, kExhausted, kGap, kTimeLimit, kEmptyLattice, kRootInfeasible, kRootError };

  void offer(const Point& point, double objective, std::int64_t node_id, IncumbentSource source);
  double cutoff() const { return incumbent_objective() - 1e-9; }

  Model model_;
  SolverOptions options_;
  Stopwatch clock_;
  Deadline deadline_;
  OpenSet open_;
  PseudoCostTable pseudo_costs_;
  std::optional<Incumbent> incumbent_;
  std::int64_t next_id_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t dispatched_ = 0;
  std::int64_t cancelled_ = 0;
  int restarts_ = 0;
  int relaxation_failures_ = 0;
  PumpReport pump_;
  SearchTrace trace_;
  Stop stop_ = Stop::kNone;
  std::string message_;
};

}  // namespace nlbb::detail
