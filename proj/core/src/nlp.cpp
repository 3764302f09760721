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

#include "nlbb/nlp.hpp"

#include <algorithm>
#include <cmath>

#include "box_minimizer.hpp"
#include "nlbb/errors.hpp"
#include "nlbb/timer.hpp"

namespace nlbb {

namespace {

constexpr double kInitialPenalty = 10.0;
constexpr double kMaxPenalty = 1e8;
constexpr double kPenaltyGrowth = 10.0;
constexpr double kRequiredShrink = 0.25;
// Augmented-Lagrangian values below this are treated as an unbounded relaxation.
constexpr double kUnboundedValue = -1e20;

class Evaluator {
 public:
  explicit Evaluator(const NlpProblem& p) : model_(p.model) {
    if (p.objective) {
      own_objective_ = Tape(*p.objective);
      objective_ = &own_objective_;
    } else {
      objective_ = &model_.objective_tape();
    }
  }

  std::size_t constraint_count() const { return model_.constraint_tapes().size(); }

  double objective(std::span<const double> x, std::span<double> grad) {
    return objective_->accumulate_gradient(x, 1.0, grad, ws_);
  }

  double objective(std::span<const double> x) { return objective_->evaluate(x, ws_); }

  double constraint(std::size_t c, std::span<const double> x) {
    return model_.constraint_tapes()[c].evaluate(x, ws_);
  }

  /// Adds scale * grad g_c(x) using the values of the last constraint(c, x).
  void constraint_backward(std::size_t c, double scale, std::span<double> grad) {
    model_.constraint_tapes()[c].backward(scale, grad, ws_);
  }

 private:
  const Model& model_;
  Tape own_objective_;
  const Tape* objective_ = nullptr;
  TapeWorkspace ws_;
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  bool empty = false;
};

Box resolve_box(const NlpProblem& p) {
  const Model& m = p.model;
  Box box{p.lower.empty() ? m.lower() : p.lower, p.upper.empty() ? m.upper() : p.upper, false};
  if (box.lower.size() != m.var_count() || box.upper.size() != m.var_count()) {
    throw ContractViolation("NLP bound override has wrong length");
  }
  for (std::size_t j = 0; j < m.var_count(); ++j) {
    if (box.lower[j] < m.lower()[j] || box.upper[j] > m.upper()[j]) {
      throw ContractViolation("NLP bound override for variable " + std::to_string(j) +
                              " leaves the model bounds");
    }
    if (box.lower[j] > box.upper[j]) box.empty = true;
  }
  return box;
}

Point start_point(const NlpProblem& p, const Box& box) {
  Point x = p.start.empty() ? box_midpoint(box.lower, box.upper) : p.start;
  if (x.size() != p.model.var_count()) throw ContractViolation("NLP start has wrong length");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j])) throw ContractViolation("NLP start point is not finite");
    x[j] = std::clamp(x[j], box.lower[j], box.upper[j]);
  }
  return x;
}

void fill_measures(Evaluator& ev, NlpResult& r) {
  try {
    r.objective = ev.objective(r.point);
  } catch (const DomainError&) {
    r.objective = std::nan("");
  }
  r.max_violation = 0.0;
  r.infeasibility = 0.0;
  for (std::size_t c = 0; c < ev.constraint_count(); ++c) {
    double g;
    try {
      g = ev.constraint(c, r.point);
    } catch (const DomainError&) {
      g = HUGE_VAL;
    }
    if (g > 0.0) {
      r.max_violation = std::max(r.max_violation, g);
      r.infeasibility += g * g;
    }
  }
}

detail::SmoothFunction restoration_function(Evaluator& ev) {
  return [&ev](std::span<const double> x, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double phi = 0.0;
    for (std::size_t c = 0; c < ev.constraint_count(); ++c) {
      const double g = ev.constraint(c, x);
      if (g > 0.0) {
        phi += g * g;
        ev.constraint_backward(c, 2.0 * g, grad);
      }
    }
    return phi;
  };
}

NlpResult restore(Evaluator& ev, const Box& box, Point x, const NlpLimits& limits,
                  const Deadline& deadline) {
  Stopwatch clock;
  NlpResult r;
  detail::BoxMinimizerSettings s;
  s.max_iterations = limits.max_inner_iterations * 4;
  s.tolerance = 1e-14;
  s.target_value = std::pow(0.1 * limits.feasibility_tolerance, 2);
  s.deadline = deadline;
  const auto br = detail::minimize_in_box(restoration_function(ev), box.lower, box.upper, x, s);
  r.point = std::move(x);
  r.iterations = br.iterations;
  fill_measures(ev, r);
  if (br.status == detail::BoxStatus::kNumericalError) {
    r.status = NlpStatus::kNumericalError;
  } else if (r.max_violation <= limits.feasibility_tolerance) {
    r.status = NlpStatus::kLocallyOptimal;
  } else if (br.status == detail::BoxStatus::kTimeLimit ||
             br.status == detail::BoxStatus::kIterationLimit) {
    r.status = NlpStatus::kIterationLimit;
  } else {
    r.status = NlpStatus::kInfeasible;
  }
  r.wall_seconds = clock.seconds();
  return r;
}

}  // namespace

const char* to_string(NlpStatus status) {
  switch (status) {
    case NlpStatus::kLocallyOptimal: return "locally_optimal";
    case NlpStatus::kInfeasible: return "infeasible";
    case NlpStatus::kIterationLimit: return "iteration_limit";
    case NlpStatus::kNumericalError: return "numerical_error";
  }
  return "?";
}

Point box_midpoint(const std::vector<double>& lower, const std::vector<double>& upper) {
  Point x(lower.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool lo = std::isfinite(lower[j]);
    const bool hi = std::isfinite(upper[j]);
    if (lo && hi) {
      x[j] = 0.5 * (lower[j] + upper[j]);
    } else if (lo) {
      x[j] = lower[j];
    } else if (hi) {
      x[j] = upper[j];
    } else {
      x[j] = 0.0;
    }
  }
  return x;
}

NlpResult restoration_solve(const NlpProblem& problem, const NlpLimits& limits) {
  const Box box = resolve_box(problem);
  if (box.empty) {
    NlpResult r;
    r.status = NlpStatus::kInfeasible;
    r.objective = std::nan("");
    r.max_violation = HUGE_VAL;
    r.infeasibility = HUGE_VAL;
    return r;
  }
  Evaluator ev(problem);
  return restore(ev, box, start_point(problem, box), limits, Deadline::after(limits.time_budget));
}

NlpResult solve_nlp(const NlpProblem& problem, const NlpLimits& limits) {
  Stopwatch clock;
  const Deadline deadline = Deadline::after(limits.time_budget);
  const Box box = resolve_box(problem);
  NlpResult result;
  if (box.empty) {
    result.status = NlpStatus::kInfeasible;
    result.objective = std::nan("");
    result.max_violation = HUGE_VAL;
    result.infeasibility = HUGE_VAL;
    return result;
  }
  Evaluator ev(problem);
  Point x = start_point(problem, box);
  const std::size_t m = ev.constraint_count();

  auto finish = [&](NlpStatus status, Point point, int iterations) {
    result.status = status;
    result.point = std::move(point);
    result.iterations = iterations;
    fill_measures(ev, result);
    if (status == NlpStatus::kLocallyOptimal && !std::isfinite(result.objective)) {
      result.status = NlpStatus::kNumericalError;
    }
    result.wall_seconds = clock.seconds();
    return result;
  };

  std::vector<double> lambda(m, 0.0);
  std::vector<double> g(m, 0.0);
  double rho = kInitialPenalty;

  auto merit = [&](std::span<const double> xv, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double value = ev.objective(xv, grad);
    double penalty = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const double t = lambda[c] + rho * ev.constraint(c, xv);
      if (t > 0.0) {
        penalty += t * t;
        ev.constraint_backward(c, t, grad);
      }
      penalty -= lambda[c] * lambda[c];
    }
    return value + penalty / (2.0 * rho);
  };

  detail::BoxMinimizerSettings inner;
  inner.max_iterations = limits.max_inner_iterations;
  inner.target_value = kUnboundedValue;
  inner.deadline = deadline;

  if (m == 0) {
    inner.tolerance = limits.optimality_tolerance;
    const auto br = detail::minimize_in_box(merit, box.lower, box.upper, x, inner);
    switch (br.status) {
      case detail::BoxStatus::kConverged:
        return finish(NlpStatus::kLocallyOptimal, std::move(x), br.iterations);
      case detail::BoxStatus::kNumericalError:
      case detail::BoxStatus::kTargetReached:
        return finish(NlpStatus::kNumericalError, std::move(x), br.iterations);
      default:
        return finish(NlpStatus::kIterationLimit, std::move(x), br.iterations);
    }
  }

  auto violation_at = [&](std::span<const double> xv) {
    double v = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      g[c] = ev.constraint(c, xv);
      v = std::max(v, g[c]);
    }
    return v;
  };

  double prev_violation;
  try {
    prev_violation = violation_at(x);
  } catch (const DomainError&) {
    return finish(NlpStatus::kNumericalError, std::move(x), 0);
  }

  double inner_tol = std::max(limits.optimality_tolerance, 1e-3);
  int iterations = 0;
  int restorations = 0;
  for (int outer = 0; outer < limits.max_outer_iterations; ++outer) {
    inner.tolerance = inner_tol;
    const auto br = detail::minimize_in_box(merit, box.lower, box.upper, x, inner);
    iterations += br.iterations;
    if (br.status == detail::BoxStatus::kNumericalError ||
        br.status == detail::BoxStatus::kTargetReached) {
      return finish(NlpStatus::kNumericalError, std::move(x), iterations);
    }
    if (br.status == detail::BoxStatus::kTimeLimit) {
      return finish(NlpStatus::kIterationLimit, std::move(x), iterations);
    }

    double violation;
    try {
      violation = violation_at(x);
    } catch (const DomainError&) {
      return finish(NlpStatus::kNumericalError, std::move(x), iterations);
    }
    double complementarity = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      lambda[c] = std::max(0.0, lambda[c] + rho * g[c]);
      complementarity = std::max(complementarity, std::min(lambda[c], -g[c]));
    }
    // The inner gradient is the Lagrangian gradient under the updated multipliers.
    if (violation <= limits.feasibility_tolerance &&
        br.projected_gradient <= limits.optimality_tolerance &&
        complementarity <= limits.optimality_tolerance) {
      return finish(NlpStatus::kLocallyOptimal, std::move(x), iterations);
    }

    const bool stalled = violation > limits.feasibility_tolerance &&
                         violation > kRequiredShrink * prev_violation;
    if (stalled) rho = std::min(rho * kPenaltyGrowth, kMaxPenalty);

    if (stalled && rho >= 1e4 && restorations < 2) {
      ++restorations;
      NlpResult rr = restore(ev, box, x, limits, deadline);
      iterations += rr.iterations;
      if (rr.status == NlpStatus::kInfeasible || rr.status == NlpStatus::kNumericalError) {
        return finish(rr.status, std::move(rr.point), iterations);
      }
      if (rr.status == NlpStatus::kIterationLimit) {
        return finish(NlpStatus::kIterationLimit, std::move(rr.point), iterations);
      }
      x = std::move(rr.point);
      violation = violation_at(x);
    }
    prev_violation = violation;
    inner_tol = std::max(limits.optimality_tolerance, inner_tol * 0.1);
    if (deadline.expired()) break;
  }
  return finish(NlpStatus::kIterationLimit, std::move(x), iterations);
}

}  // namespace nlbb
