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

#include "nlbb/branching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlbb/errors.hpp"

namespace nlbb {

namespace {

constexpr double kScoreFloor = 1e-6;

double fractional_part(double value) { return value - std::floor(value); }

struct Scored {
  std::size_t variable;
  double score;
};

// Strictly larger wins; equal scores go to the lower index.
bool better(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.variable < b.variable;
}

BranchChoice most_infeasible_choice(std::span<const std::size_t> candidates,
                                    std::span<const double> point) {
  Scored best{candidates.front(), -1.0};
  for (std::size_t j : candidates) {
    const Scored s{j, infeasibility_score(point[j])};
    if (better(s, best)) best = s;
  }
  BranchChoice choice;
  choice.variable = best.variable;
  choice.value = point[best.variable];
  return choice;
}

Scored best_pseudo_cost(const PseudoCostTable& table, std::span<const std::size_t> candidates,
                        std::span<const double> point) {
  Scored best{candidates.front(), -1.0};
  for (std::size_t j : candidates) {
    const Scored s{j, pseudo_cost_score(table, j, point[j])};
    if (better(s, best)) best = s;
  }
  return best;
}

ChildEstimate solve_child(const NodeContext& ctx, const Node& child, const Point& start,
                          NlpStatus& status, double& wall) {
  ChildEstimate est;
  NlpLimits limits;
  limits.time_budget = ctx.deadline.remaining();
  const NlpResult r = solve_nlp({ctx.model, child.lower, child.upper, start}, limits);
  status = r.status;
  wall = r.wall_seconds;
  if (r.status == NlpStatus::kLocallyOptimal) {
    est.objective = r.objective;
  } else if (r.status == NlpStatus::kInfeasible) {
    est.infeasible = true;
  }
  return est;
}

}  // namespace

double PseudoCostTable::estimate(std::size_t j, BranchDirection dir) const {
  if (initialized(j, dir)) {
    return dir == BranchDirection::kDown ? entries_[j].down_mean : entries_[j].up_mean;
  }
  double sum = 0.0;
  int n = 0;
  for (const Entry& e : entries_) {
    if (dir == BranchDirection::kDown && e.down_count > 0) {
      sum += e.down_mean;
      ++n;
    } else if (dir == BranchDirection::kUp && e.up_count > 0) {
      sum += e.up_mean;
      ++n;
    }
  }
  return n > 0 ? sum / n : 1.0;
}

void PseudoCostTable::update(std::size_t j, BranchDirection dir, double degradation,
                             double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ContractViolation("pseudo-cost fraction must lie in (0, 1)");
  }
  Entry& e = entries_.at(j);
  const double unit = std::max(0.0, degradation) / fraction;
  double& mean = dir == BranchDirection::kDown ? e.down_mean : e.up_mean;
  int& count = dir == BranchDirection::kDown ? e.down_count : e.up_count;
  ++count;
  mean += (unit - mean) / count;
}

void update_pseudo_costs(PseudoCostTable& table, std::size_t j, BranchDirection direction,
                         double degradation, double fraction) {
  table.update(j, direction, degradation, fraction);
}

double infeasibility_score(double value) {
  const double f = fractional_part(value);
  return std::min(f, 1.0 - f);
}

double pseudo_cost_score(const PseudoCostTable& table, std::size_t j, double value) {
  const double f = fractional_part(value);
  const double down = table.estimate(j, BranchDirection::kDown) * f;
  const double up = table.estimate(j, BranchDirection::kUp) * (1.0 - f);
  return std::max(down, kScoreFloor) * std::max(up, kScoreFloor);
}

std::pair<Node, Node> branch(const Model& model, const Node& node, std::size_t j, double value,
                             double integrality_tolerance) {
  if (j >= model.var_count() || !model.is_integer(j)) {
    throw ContractViolation("branching variable " + std::to_string(j) + " is not integer");
  }
  if (std::fabs(value - std::round(value)) <= integrality_tolerance) {
    throw ContractViolation("branching value " + std::to_string(value) +
                            " is integral within tolerance");
  }
  const double down = std::floor(value);
  const double f = value - down;
  Node left = node;
  Node right = node;
  for (Node* child : {&left, &right}) {
    child->relaxation.reset();
    child->depth = node.depth + 1;
    child->id = 0;
  }
  left.upper[j] = std::min(node.upper[j], down);
  right.lower[j] = std::max(node.lower[j], down + 1.0);
  const double parent_obj = node.relaxation ? node.relaxation->objective : node.bound;
  left.origin = BranchOrigin{j, BranchDirection::kDown, parent_obj, f};
  right.origin = BranchOrigin{j, BranchDirection::kUp, parent_obj, 1.0 - f};
  if (node.relaxation) {
    left.warm_start = node.relaxation->point;
    right.warm_start = node.relaxation->point;
  }
  return {std::move(left), std::move(right)};
}

std::vector<std::size_t> fractional_variables(const Model& model, std::span<const double> point,
                                              double integrality_tolerance) {
  std::vector<std::size_t> out;
  for (std::size_t j : model.integer_indices()) {
    if (std::fabs(point[j] - std::round(point[j])) > integrality_tolerance) out.push_back(j);
  }
  return out;
}

BranchChoice strong_branching(const Node& node, const NlpResult& relaxation,
                              std::span<const std::size_t> candidates, double budget,
                              const NodeContext& ctx) {
  if (candidates.empty()) throw ContractViolation("strong branching needs a candidate");
  const Point& point = relaxation.point;
  const double tol = ctx.options.integrality_tolerance;

  std::vector<std::size_t> order(candidates.begin(), candidates.end());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = infeasibility_score(point[a]);
    const double sb = infeasibility_score(point[b]);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  const double per_child = std::max(relaxation.wall_seconds, 1e-12);
  const double affordable = std::floor(std::max(0.0, budget) / (2.0 * per_child));
  const std::size_t keep =
      std::clamp<std::size_t>(affordable >= static_cast<double>(order.size())
                                  ? order.size()
                                  : static_cast<std::size_t>(affordable),
                              1, order.size());
  order.resize(keep);

  Node parent = node;
  parent.relaxation = relaxation;
  const double parent_obj = relaxation.objective;

  BranchChoice best;
  Scored best_score{order.front(), -1.0};
  bool have_best = false;
  Stopwatch clock;
  BranchChoice result;

  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && (clock.seconds() > budget || ctx.deadline.expired())) break;
    const std::size_t j = order[i];
    auto [left, right] = branch(ctx.model, parent, j, point[j], tol);
    const double f = point[j] - std::floor(point[j]);

    NlpStatus down_status, up_status;
    double wall = 0.0;
    const ChildEstimate down = solve_child(ctx, left, point, down_status, wall);
    const ChildEstimate up = solve_child(ctx, right, point, up_status, wall);
    result.child_solves += 2;

    if (down.objective) {
      result.updates.push_back({j, BranchDirection::kDown, *down.objective - parent_obj, f});
    }
    if (up.objective) {
      result.updates.push_back({j, BranchDirection::kUp, *up.objective - parent_obj, 1.0 - f});
    }
    if (down.infeasible && up.infeasible) {
      result.variable = j;
      result.value = point[j];
      result.node_infeasible = true;
      result.down = down;
      result.up = up;
      return result;
    }
    const bool down_known = down.infeasible || down.objective.has_value();
    const bool up_known = up.infeasible || up.objective.has_value();
    if (!down_known && !up_known) continue;

    auto gain = [&](const ChildEstimate& c) {
      if (c.infeasible) return kInf;
      if (c.objective) return std::max(*c.objective - parent_obj, kScoreFloor);
      return kScoreFloor;
    };
    const Scored s{j, gain(down) * gain(up)};
    if (!have_best || better(s, best_score)) {
      have_best = true;
      best_score = s;
      best.variable = j;
      best.value = point[j];
      best.down = down;
      best.up = up;
    }
  }

  if (!have_best) {
    BranchChoice fallback = most_infeasible_choice(candidates, point);
    fallback.updates = std::move(result.updates);
    fallback.child_solves = result.child_solves;
    return fallback;
  }
  best.updates = std::move(result.updates);
  best.child_solves = result.child_solves;
  return best;
}

BranchChoice select_branch_variable(const Node& node, const NlpResult& relaxation,
                                    BranchingStrategy strategy, const NodeContext& ctx) {
  const auto candidates =
      fractional_variables(ctx.model, relaxation.point, ctx.options.integrality_tolerance);
  if (candidates.empty()) throw ContractViolation("relaxation has no fractional variable");
  const Point& point = relaxation.point;
  const double budget = ctx.options.strong_branching_budget;

  switch (strategy) {
    case BranchingStrategy::kMostInfeasible:
      return most_infeasible_choice(candidates, point);

    case BranchingStrategy::kPseudoCost: {
      BranchChoice c;
      c.variable = best_pseudo_cost(ctx.pseudo_costs, candidates, point).variable;
      c.value = point[c.variable];
      return c;
    }

    case BranchingStrategy::kStrong:
      return strong_branching(node, relaxation, candidates, budget, ctx);

    case BranchingStrategy::kStrongRootThenPseudo:
      return select_branch_variable(node, relaxation,
                                    node.depth == 0 ? BranchingStrategy::kStrong
                                                    : BranchingStrategy::kPseudoCost,
                                    ctx);

    case BranchingStrategy::kReliability: {
      std::vector<std::size_t> unreliable;
      std::vector<std::size_t> reliable;
      for (std::size_t j : candidates) {
        (ctx.pseudo_costs.reliability(j) < ctx.options.reliability_threshold ? unreliable
                                                                             : reliable)
            .push_back(j);
      }
      if (unreliable.empty()) {
        return select_branch_variable(node, relaxation, BranchingStrategy::kPseudoCost, ctx);
      }
      BranchChoice sb = strong_branching(node, relaxation, unreliable, budget, ctx);
      if (sb.node_infeasible || reliable.empty()) return sb;

      // Compare the strong-branching winner with the best reliable pseudo-cost
      // estimate on the same gain-product scale.
      auto gain = [&](const ChildEstimate& c, double fallback) {
        if (c.infeasible) return kInf;
        if (c.objective) return std::max(*c.objective - relaxation.objective, kScoreFloor);
        return fallback;
      };
      const double f = point[sb.variable] - std::floor(point[sb.variable]);
      const double sb_score =
          gain(sb.down, std::max(ctx.pseudo_costs.estimate(sb.variable, BranchDirection::kDown) * f,
                                 kScoreFloor)) *
          gain(sb.up, std::max(ctx.pseudo_costs.estimate(sb.variable, BranchDirection::kUp) *
                                   (1.0 - f),
                               kScoreFloor));
      const Scored pc = best_pseudo_cost(ctx.pseudo_costs, reliable, point);
      if (better(Scored{sb.variable, sb_score}, pc)) return sb;
      BranchChoice c;
      c.variable = pc.variable;
      c.value = point[pc.variable];
      c.updates = std::move(sb.updates);
      c.child_solves = sb.child_solves;
      return c;
    }
  }
  return most_infeasible_choice(candidates, point);
}

}  // namespace nlbb
