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

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nlbb/model.hpp"
#include "nlbb/node.hpp"
#include "nlbb/options.hpp"
#include "nlbb/timer.hpp"

namespace nlbb {

/// Per-variable running means of objective degradation per unit of
/// fractionality, one per branching direction.
class PseudoCostTable {
 public:
  struct Entry {
    double down_mean = 0.0;
    double up_mean = 0.0;
    int down_count = 0;
    int up_count = 0;
  };

  PseudoCostTable() = default;
  explicit PseudoCostTable(std::size_t var_count) : entries_(var_count) {}

  const Entry& entry(std::size_t j) const { return entries_.at(j); }
  std::size_t size() const noexcept { return entries_.size(); }

  bool initialized(std::size_t j, BranchDirection dir) const {
    const Entry& e = entries_.at(j);
    return (dir == BranchDirection::kDown ? e.down_count : e.up_count) > 0;
  }

  /// min(down count, up count)
  int reliability(std::size_t j) const {
    const Entry& e = entries_.at(j);
    return std::min(e.down_count, e.up_count);
  }

  /// The entry's mean, or for an uninitialized entry the mean over all
  /// initialized entries of that direction (1 if there are none).
  double estimate(std::size_t j, BranchDirection dir) const;

  /// Folds degradation/fraction into the running mean. Negative degradations
  /// (local-solver noise) count as 0.
  void update(std::size_t j, BranchDirection dir, double degradation, double fraction);

 private:
  std::vector<Entry> entries_;
};

struct PseudoCostUpdate {
  std::size_t variable = 0;
  BranchDirection direction = BranchDirection::kDown;
  double degradation = 0.0;
  double fraction = 0.5;
};

void update_pseudo_costs(PseudoCostTable& table, std::size_t j, BranchDirection direction,
                         double degradation, double fraction);

inline void apply_updates(PseudoCostTable& table, std::span<const PseudoCostUpdate> updates) {
  for (const auto& u : updates) {
    update_pseudo_costs(table, u.variable, u.direction, u.degradation, u.fraction);
  }
}

/// Read-only view of the search state a node needs to be processed. Cheap to
/// build, so worker threads make their own.
struct NodeContext {
  const Model& model;
  const SolverOptions& options;
  const PseudoCostTable& pseudo_costs;
  /// Canonical incumbent objective, +inf when none.
  double incumbent_objective = kInf;
  Deadline deadline;
};

/// Splits `node` on integer variable j at a fractional value: the left child
/// gets upper_j = floor(value), the right child lower_j = floor(value) + 1.
/// Children may have empty boxes; callers discard those. Throws
/// ContractViolation when j is not an integer variable or value lies within
/// `integrality_tolerance` of an integer.
std::pair<Node, Node> branch(const Model& model, const Node& node, std::size_t j, double value,
                             double integrality_tolerance = 1e-6);

/// Integer variables of `point` that are fractional beyond the tolerance,
/// ascending.
std::vector<std::size_t> fractional_variables(const Model& model, std::span<const double> point,
                                              double integrality_tolerance);

struct ChildEstimate {
  bool infeasible = false;
  std::optional<double> objective;
};

struct BranchChoice {
  std::size_t variable = 0;
  double value = 0.0;
  /// Strong branching proved both children of some candidate infeasible.
  bool node_infeasible = false;
  /// Filled when the choice came from solving the children.
  ChildEstimate down;
  ChildEstimate up;
  std::vector<PseudoCostUpdate> updates;
  int child_solves = 0;
};

/// Strong branching over `candidates` (fractional integer variables of the
/// node relaxation). The list is ordered by most-infeasible score and
/// truncated so that 2 * |candidates| * (relaxation wall time) fits the
/// budget, keeping at least one. Each surviving candidate gets both children
/// solved; its score is max(down gain, eps) * max(up gain, eps). If every
/// child solve fails, falls back to the most-infeasible choice.
BranchChoice strong_branching(const Node& node, const NlpResult& relaxation,
                              std::span<const std::size_t> candidates, double budget,
                              const NodeContext& ctx);

/// Picks the branching variable for a node whose relaxation is fractional.
/// Ties go to the lowest index.
BranchChoice select_branch_variable(const Node& node, const NlpResult& relaxation,
                                    BranchingStrategy strategy, const NodeContext& ctx);

/// min(f, 1 - f) for the fractional part f of value.
double infeasibility_score(double value);

/// max(down * f, eps) * max(up * (1 - f), eps)
double pseudo_cost_score(const PseudoCostTable& table, std::size_t j, double value);

}  // namespace nlbb
