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

#include "nlbb/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "nlbb/errors.hpp"
#include "nlbb/parallel.hpp"
#include "tree_search.hpp"

namespace nlbb {

namespace {

constexpr double kPruneSlack = 1e-9;
constexpr double kSampleClip = 1e3;

bool empty_box(const Node& node) {
  for (std::size_t j = 0; j < node.lower.size(); ++j) {
    if (node.lower[j] > node.upper[j]) return true;
  }
  return false;
}

// Turns a relaxation point whose integer variables are integral within
// tolerance into a feasible incumbent candidate, polishing the continuous
// part with the integers fixed when plain rounding is not enough.
std::optional<Point> integer_candidate(const Node& node, const NodeContext& ctx,
                                       const Point& relaxed) {
  const Model& model = ctx.model;
  const double int_tol = ctx.options.integrality_tolerance;
  Point rounded = relaxed;
  for (std::size_t j : model.integer_indices()) rounded[j] = std::round(rounded[j]);
  if (is_feasible(model, rounded, 1e-6, int_tol)) return rounded;
  if (is_feasible(model, relaxed, 1e-6, int_tol)) return relaxed;
  if (model.integer_indices().size() == model.var_count()) return std::nullopt;

  std::vector<double> lower = node.lower;
  std::vector<double> upper = node.upper;
  for (std::size_t j : model.integer_indices()) lower[j] = upper[j] = rounded[j];
  NlpLimits limits;
  limits.time_budget = ctx.deadline.remaining();
  const NlpResult polished = solve_nlp({model, lower, upper, rounded}, limits);
  if (polished.status == NlpStatus::kLocallyOptimal &&
      is_feasible(model, polished.point, 1e-6, int_tol)) {
    return polished.point;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeLimit: return "feasible_time_limit";
    case SolveStatus::kInfeasibleOrUnbounded: return "infeasible_or_unbounded";
    case SolveStatus::kNoSolutionTimeLimit: return "no_solution_time_limit";
    case SolveStatus::kError: return "error";
  }
  return "?";
}

std::string_view to_string(NodeOutcomeKind kind) {
  switch (kind) {
    case NodeOutcomeKind::kPrunedInfeasible: return "pruned_infeasible";
    case NodeOutcomeKind::kPrunedByBound: return "pruned_by_bound";
    case NodeOutcomeKind::kIntegerFeasible: return "integer_feasible";
    case NodeOutcomeKind::kBranched: return "branched";
  }
  return "?";
}

std::string_view to_string(IncumbentSource source) {
  return source == IncumbentSource::kTreeSearch ? "tree_search" : "feasibility_pump";
}

NodeOutcome process_node(const Node& node, const NodeContext& ctx) {
  NodeOutcome out;
  out.bound = node.bound;
  const bool prune = ctx.options.prune_on_local_bound;
  const double cutoff = ctx.incumbent_objective - kPruneSlack;
  if (prune && node.bound >= cutoff) {
    out.kind = NodeOutcomeKind::kPrunedByBound;
    return out;
  }
  if (empty_box(node)) return out;

  NlpLimits limits;
  limits.time_budget = ctx.deadline.remaining();
  NlpResult r = solve_nlp({ctx.model, node.lower, node.upper, node.warm_start}, limits);
  out.relaxation = r;

  if (r.status != NlpStatus::kLocallyOptimal) {
    out.failure = r.status;
    if (ctx.deadline.expired() && r.status != NlpStatus::kInfeasible) {
      out.timed_out = true;
      return out;
    }
    // A run that stopped on its iteration limit at a feasible point is still
    // usable for branching; it proves no bound beyond the inherited one.
    const bool usable = r.status == NlpStatus::kIterationLimit &&
                        r.max_violation <= 1e-6 && std::isfinite(r.objective);
    if (!usable) return out;
  } else {
    out.bound = std::max(node.bound, r.objective);
    if (node.origin) {
      out.updates.push_back({node.origin->variable, node.origin->direction,
                             r.objective - node.origin->parent_objective,
                             node.origin->fraction});
    }
  }

  if (prune && out.bound >= cutoff) {
    out.kind = NodeOutcomeKind::kPrunedByBound;
    return out;
  }

  const auto fractional =
      fractional_variables(ctx.model, r.point, ctx.options.integrality_tolerance);
  if (fractional.empty()) {
    if (auto point = integer_candidate(node, ctx, r.point)) {
      out.kind = NodeOutcomeKind::kIntegerFeasible;
      out.point_objective = evaluate(ctx.model.objective(), *point);
      out.point = std::move(*point);
    }
    return out;
  }

  Node solved = node;
  solved.relaxation = r;
  solved.bound = out.bound;
  BranchChoice choice = select_branch_variable(solved, r, ctx.options.branching, ctx);
  out.updates.insert(out.updates.end(), choice.updates.begin(), choice.updates.end());
  out.decision = BranchRecord{node.id, choice.variable, choice.value};
  if (choice.node_infeasible) return out;

  auto [left, right] =
      branch(ctx.model, solved, choice.variable, choice.value, ctx.options.integrality_tolerance);
  auto admit = [&](Node& child, const ChildEstimate& est) {
    if (est.infeasible || empty_box(child)) return;
    child.bound = out.bound;
    if (est.objective) child.bound = std::max(child.bound, *est.objective);
    out.children.push_back(std::move(child));
  };
  admit(left, choice.down);
  admit(right, choice.up);
  out.kind = NodeOutcomeKind::kBranched;
  return out;
}

Point root_restart(std::span<const double> lower, std::span<const double> upper, int attempt,
                   std::uint64_t seed, int limit) {
  if (attempt < 1 || attempt > limit) {
    throw ContractViolation("root restart attempt " + std::to_string(attempt) +
                            " outside [1, " + std::to_string(limit) + "]");
  }
  const std::vector<double> lo(lower.begin(), lower.end());
  const std::vector<double> hi(upper.begin(), upper.end());
  if (attempt == 1) return box_midpoint(lo, hi);

  std::mt19937_64 rng(seed);
  Point x(lo.size());
  for (int a = 2; a <= attempt; ++a) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double l = std::max(lo[j], -kSampleClip);
      const double h = std::min(hi[j], kSampleClip);
      x[j] = l <= h ? l + u * (h - l) : (std::isfinite(lo[j]) ? lo[j] : hi[j]);
    }
  }
  return x;
}

Point root_restart(const Model& model, int attempt, std::uint64_t seed, int limit) {
  return root_restart(model.lower(), model.upper(), attempt, seed, limit);
}

double gap(std::optional<double> incumbent_objective, double best_bound) {
  if (!incumbent_objective) return kInf;
  const double inc = *incumbent_objective;
  if (best_bound > inc + 1e-9) return 0.0;
  if (inc == best_bound) return 0.0;
  return std::fabs(inc - best_bound) / std::max(std::fabs(inc), 1e-10);
}

namespace detail {

TreeSearch::TreeSearch(const Model& model, const SolverOptions& options)
    : model_(model),
      options_(options),
      deadline_(Deadline::after(options.time_limit)),
      open_(options.traversal),
      pseudo_costs_(model.var_count()) {}

bool TreeSearch::prepare() {
  const double tol = options_.integrality_tolerance;
  std::vector<double> lower = model_.lower();
  std::vector<double> upper = model_.upper();
  bool empty = false;
  for (std::size_t j : model_.integer_indices()) {
    lower[j] = std::ceil(lower[j] - tol);
    upper[j] = std::floor(upper[j] + tol);
    if (lower[j] > upper[j]) empty = true;
  }
  if (empty) {
    stop_ = Stop::kEmptyLattice;
    message_ = "integer bounds contain no integer";
    return false;
  }
  model_ = model_.with_bounds(std::move(lower), std::move(upper));

  if (options_.pump != PumpMode::kOff) {
    PumpSettings settings;
    settings.mode = options_.pump;
    settings.time_limit = std::min(options_.pump_time_limit, deadline_.remaining());
    settings.seed = options_.seed;
    settings.integrality_tolerance = options_.integrality_tolerance;
    pump_ = pump(model_, settings);
    if (pump_.incumbent) {
      offer(pump_.incumbent->point, pump_.incumbent->objective, -1,
            IncumbentSource::kFeasibilityPump);
    }
  }
  if (deadline_.expired()) {
    stop_ = Stop::kTimeLimit;
    return false;
  }
  return true;
}

bool TreeSearch::solve_root() {
  Node root;
  root.id = next_id_++;
  root.lower = model_.lower();
  root.upper = model_.upper();
  count_dispatched();

  const int limit = options_.root_restart_limit;
  std::optional<std::pair<int, NodeOutcome>> fallback;
  NodeOutcome last;
  for (int attempt = 1; attempt <= limit; ++attempt) {
    if (attempt > 1 && deadline_.expired()) break;
    root.warm_start = root_restart(root.lower, root.upper, attempt, options_.seed, limit);
    NodeOutcome out = process_node(root, context());
    if (out.timed_out) {
      --dispatched_;
      root.warm_start.clear();
      open_.push(std::move(root));
      stop_ = Stop::kTimeLimit;
      return false;
    }
    if (!out.failure) {
      restarts_ = attempt - 1;
      integrate(root, std::move(out));
      return true;
    }
    if (!fallback && out.kind != NodeOutcomeKind::kPrunedInfeasible) {
      fallback.emplace(attempt, out);
    }
    last = std::move(out);
    restarts_ = attempt - 1;
  }
  if (fallback) {
    integrate(root, std::move(fallback->second));
    return true;
  }
  if (deadline_.expired()) {
    --dispatched_;
    open_.push(std::move(root));
    stop_ = Stop::kTimeLimit;
    return false;
  }
  ++nodes_;
  if (last.failure == NlpStatus::kInfeasible) {
    stop_ = Stop::kRootInfeasible;
    message_ = "root relaxation infeasible";
  } else {
    stop_ = Stop::kRootError;
    message_ = std::string("root relaxation failed: ") +
               (last.failure ? to_string(*last.failure) : "unknown");
  }
  return false;
}

NodeContext TreeSearch::context() const {
  return NodeContext{model_, options_, pseudo_costs_, incumbent_objective(), deadline_};
}

Node TreeSearch::pop() {
  Node node = open_.pop();
  if (options_.record_trace) trace_.popped_bounds.push_back(node.bound);
  return node;
}

void TreeSearch::offer(const Point& point, double objective, std::int64_t node_id,
                       IncumbentSource source) {
  // Every adopted incumbent must be integral and feasible.
  assert(is_feasible(model_, point, 1e-6, options_.integrality_tolerance));
  if (!is_feasible(model_, point, 1e-6, options_.integrality_tolerance)) return;
  if (incumbent_ && !(objective < incumbent_->objective)) return;
  incumbent_ = Incumbent{point, objective, clock_.seconds(), node_id, source};
  trace_.incumbent_objectives.push_back(objective);
  if (options_.prune_on_local_bound) open_.prune(cutoff());
}

void TreeSearch::integrate(const Node& node, NodeOutcome&& outcome) {
  ++nodes_;
  apply_updates(pseudo_costs_, outcome.updates);
  if (node.depth > 0 && outcome.failure && *outcome.failure != NlpStatus::kInfeasible &&
      outcome.kind == NodeOutcomeKind::kPrunedInfeasible) {
    ++relaxation_failures_;
  }
  if (options_.record_trace && outcome.decision) trace_.branches.push_back(*outcome.decision);

  switch (outcome.kind) {
    case NodeOutcomeKind::kPrunedInfeasible:
    case NodeOutcomeKind::kPrunedByBound:
      return;
    case NodeOutcomeKind::kIntegerFeasible:
      offer(outcome.point, outcome.point_objective, node.id, IncumbentSource::kTreeSearch);
      return;
    case NodeOutcomeKind::kBranched:
      break;
  }
  for (Node& child : outcome.children) child.id = next_id_++;
  // Right child first so that a stack pops the floor child next.
  for (auto it = outcome.children.rbegin(); it != outcome.children.rend(); ++it) {
    if (options_.prune_on_local_bound && it->bound >= cutoff()) continue;
    open_.push(std::move(*it));
  }
}

bool TreeSearch::should_stop(double in_flight_bound, bool in_flight) {
  if (stop_ != Stop::kNone) return true;
  if (deadline_.expired()) {
    stop_ = Stop::kTimeLimit;
    return true;
  }
  if (open_.empty() && !in_flight) {
    stop_ = Stop::kExhausted;
    return true;
  }
  if (incumbent_) {
    const double bound = std::min(open_.min_bound(), in_flight_bound);
    if (gap(incumbent_->objective, bound) <= options_.gap_tolerance) {
      stop_ = Stop::kGap;
      return true;
    }
  }
  return false;
}

SolveResult TreeSearch::finish() {
  SolveResult r;
  r.incumbent = incumbent_;
  r.nodes = nodes_;
  r.wall_seconds = clock_.seconds();
  r.restarts = restarts_;
  r.maximize = model_.was_maximize();
  r.relaxation_failures = relaxation_failures_;
  r.dispatched = dispatched_;
  r.cancelled = cancelled_;
  r.pump = pump_;
  r.trace = std::move(trace_);
  r.message = message_;

  const std::optional<double> inc =
      incumbent_ ? std::optional<double>(incumbent_->objective) : std::nullopt;
  double bound = open_.min_bound();
  if (open_.empty() && stop_ != Stop::kTimeLimit) {
    bound = inc ? *inc : kInf;
  }
  switch (stop_) {
    case Stop::kEmptyLattice:
    case Stop::kRootInfeasible:
      r.status = inc ? SolveStatus::kOptimal : SolveStatus::kInfeasibleOrUnbounded;
      bound = inc ? *inc : kInf;
      break;
    case Stop::kRootError:
      r.status = SolveStatus::kError;
      bound = -kInf;
      break;
    case Stop::kTimeLimit:
      if (open_.empty() && nodes_ > 0) {
        r.status = inc ? SolveStatus::kOptimal : SolveStatus::kInfeasibleOrUnbounded;
        bound = inc ? *inc : kInf;
      } else {
        r.status = inc ? SolveStatus::kFeasibleTimeLimit : SolveStatus::kNoSolutionTimeLimit;
        if (nodes_ == 0 && open_.empty()) bound = -kInf;
      }
      break;
    case Stop::kNone:
    case Stop::kExhausted:
    case Stop::kGap:
      r.status = inc ? SolveStatus::kOptimal : SolveStatus::kInfeasibleOrUnbounded;
      break;
  }
  if (inc) bound = std::min(bound, *inc);
  r.best_bound = bound;
  r.gap = gap(inc, bound);
  return r;
}

SolveResult sequential_solve(const Model& model, const SolverOptions& options) {
  TreeSearch search(model, options);
  if (!search.prepare() || !search.solve_root()) return search.finish();
  while (!search.should_stop()) {
    Node node = search.pop();
    search.count_dispatched();
    NodeOutcome outcome = process_node(node, search.context());
    if (outcome.timed_out) {
      search.count_cancelled();
      search.push_back(std::move(node));
      continue;
    }
    search.integrate(node, std::move(outcome));
  }
  return search.finish();
}

}  // namespace detail

SolveResult solve(const Model& model, const SolverOptions& options) {
  options.validate();
  if (options.workers > 1) return parallel_solve(model, options);
  return detail::sequential_solve(model, options);
}

}  // namespace nlbb
