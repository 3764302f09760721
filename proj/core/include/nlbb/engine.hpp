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
#include <string_view>
#include <vector>

#include "nlbb/branching.hpp"
#include "nlbb/incumbent.hpp"
#include "nlbb/model.hpp"
#include "nlbb/nlp.hpp"
#include "nlbb/node.hpp"
#include "nlbb/options.hpp"
#include "nlbb/pump.hpp"

namespace nlbb {

enum class SolveStatus {
  kOptimal,
  kFeasibleTimeLimit,
  kInfeasibleOrUnbounded,
  kNoSolutionTimeLimit,
  kError,
};

std::string_view to_string(SolveStatus status);

struct BranchRecord {
  std::int64_t node_id = 0;
  std::size_t variable = 0;
  double value = 0.0;
  friend bool operator==(const BranchRecord&, const BranchRecord&) = default;
};

/// Optional per-run history, filled when SolverOptions::record_trace is set.
/// Incumbent objectives are always recorded.
struct SearchTrace {
  std::vector<BranchRecord> branches;
  /// Bounds of nodes in the order they were taken from the open set.
  std::vector<double> popped_bounds;
  /// Canonical objective of each adopted incumbent.
  std::vector<double> incumbent_objectives;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  std::optional<Incumbent> incumbent;
  /// Canonical (minimize) sense.
  double best_bound = -kInf;
  double gap = kInf;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;
  int restarts = 0;
  bool maximize = false;
  /// Non-root relaxations that ended in a numerical error or an iteration
  /// limit and were pruned.
  int relaxation_failures = 0;
  std::int64_t dispatched = 0;
  std::int64_t cancelled = 0;
  PumpReport pump;
  SearchTrace trace;
  std::string message;

  /// Incumbent objective in the user's sense.
  std::optional<double> objective() const {
    if (!incumbent) return std::nullopt;
    return maximize ? -incumbent->objective : incumbent->objective;
  }
  /// Best bound in the user's sense.
  double bound() const { return maximize ? -best_bound : best_bound; }
};

enum class NodeOutcomeKind { kPrunedInfeasible, kPrunedByBound, kIntegerFeasible, kBranched };

std::string_view to_string(NodeOutcomeKind kind);

struct NodeOutcome {
  NodeOutcomeKind kind = NodeOutcomeKind::kPrunedInfeasible;
  std::optional<NlpResult> relaxation;
  /// Bound proven for the node (its relaxation objective, or the inherited
  /// bound when the relaxation did not converge).
  double bound = -kInf;
  /// Integer-feasible point for kIntegerFeasible.
  Point point;
  double point_objective = kInf;
  /// Left child first. Children with empty boxes or proven infeasible by
  /// strong branching are already dropped.
  std::vector<Node> children;
  std::optional<BranchRecord> decision;
  std::vector<PseudoCostUpdate> updates;
  /// Set when the relaxation did not end locally optimal.
  std::optional<NlpStatus> failure;
  /// The deadline cut the relaxation short; the node is unprocessed.
  bool timed_out = false;
};

/// Solves the node relaxation (warm started at node.warm_start, or the box
/// midpoint) and classifies the node. Bound pruning uses
/// ctx.incumbent_objective - 1e-9 and only applies when the options enable it.
NodeOutcome process_node(const Node& node, const NodeContext& ctx);

/// Start point for root attempt `attempt` (1-based): the box midpoint first,
/// then seeded uniform samples with infinite bounds clipped to +-1e3.
/// Throws ContractViolation when attempt is outside [1, limit].
Point root_restart(std::span<const double> lower, std::span<const double> upper, int attempt,
                   std::uint64_t seed, int limit = 3);
Point root_restart(const Model& model, int attempt, std::uint64_t seed, int limit = 3);

/// Relative optimality gap |inc - bound| / max(|inc|, 1e-10); +inf without an
/// incumbent and 0 when the bound passes the incumbent.
double gap(std::optional<double> incumbent_objective, double best_bound);

/// Runs the feasibility pump and the branch-and-bound search. Dispatches to
/// the parallel search when options.workers > 1.
SolveResult solve(const Model& model, const SolverOptions& options = {});

}  // namespace nlbb
