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

#include "nlbb/pump.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <type_traits>
#include <unordered_set>

#include "nlbb/engine.hpp"
#include "nlbb/errors.hpp"
#include "nlbb/nlp.hpp"
#include "nlbb/timer.hpp"

namespace nlbb {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> restrict_to(const std::vector<std::size_t>& indices,
                                std::span<const double> values) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t j : indices) out.push_back(values[j]);
  return out;
}

// sum over integer variables of (y_j - target_j)^2
Expr distance_objective(const std::vector<std::size_t>& integers,
                        const std::vector<double>& target) {
  std::vector<Expr> terms;
  terms.reserve(integers.size());
  for (std::size_t k = 0; k < integers.size(); ++k) {
    terms.push_back(
        Expr::power(Expr::var(integers[k]) - Expr::constant(target[k]), 2.0));
  }
  if (terms.empty()) return Expr::constant(0.0);
  return Expr::sum(std::move(terms));
}

class Pump {
 public:
  Pump(const Model& model, const PumpSettings& settings)
      : model_(model),
        settings_(settings),
        integers_(model.integer_indices()),
        deadline_(Deadline::after(settings.time_limit)),
        rng_(settings.seed) {
    lower_ = restrict_to(integers_, model.lower());
    upper_ = restrict_to(integers_, model.upper());
  }

  PumpReport run() {
    report_.ran = true;
    if (!(settings_.time_limit > 0.0)) return finish();

    Point start = box_midpoint(model_.lower(), model_.upper());
    std::vector<double> target;
    for (int it = 1; it <= settings_.max_iterations; ++it) {
      if (deadline_.expired()) break;
      report_.iterations = it;

      NlpLimits limits;
      limits.time_budget = deadline_.remaining();
      std::optional<Expr> objective;
      if (it > 1) objective = distance_objective(integers_, target);
      const NlpResult r = timed([&] {
        return solve_nlp({model_, {}, {}, start, objective}, limits);
      });
      const bool usable = r.status == NlpStatus::kLocallyOptimal ||
                          (r.status == NlpStatus::kIterationLimit && r.max_violation <= 1e-6);
      if (!usable) break;
      const Point& y = r.point;

      if (max_integrality_violation(model_, y) <= settings_.integrality_tolerance) {
        if (accept_fixed(restrict_to(integers_, y), y)) break;
      }

      std::vector<double> next = settings_.mode == PumpMode::kMipProjection
                                     ? project_mip(y)
                                     : round_target(y);
      if (history_.contains(next)) {
        ++report_.perturbations;
        next = perturb(next, restrict_to(integers_, y), lower_, upper_, history_, rng_);
      }
      history_.insert(next);
      if (accept_fixed(next, y)) break;
      target = std::move(next);
      start = y;
    }
    return finish();
  }

 private:
  template <typename F>
  std::invoke_result_t<F&> timed(F&& f) {
    Stopwatch sw;
    auto result = f();
    report_.longest_subsolve = std::max(report_.longest_subsolve, sw.seconds());
    return result;
  }

  PumpReport finish() {
    report_.seconds = clock_.seconds();
    return std::move(report_);
  }

  std::vector<double> round_target(std::span<const double> y) const {
    std::vector<double> t(integers_.size());
    for (std::size_t k = 0; k < integers_.size(); ++k) {
      t[k] = std::clamp(std::round(y[integers_[k]]), lower_[k], upper_[k]);
    }
    return t;
  }

  std::vector<double> project_mip(const Point& y) {
    ++report_.projections;
    try {
      const Model sub = projection_model(model_, y);
      SolverOptions opts;
      opts.pump = PumpMode::kOff;
      opts.gap_tolerance = settings_.projection_gap;
      opts.time_limit = std::min(settings_.projection_time_limit, deadline_.remaining());
      opts.strong_branching_budget = std::min(opts.strong_branching_budget, opts.time_limit);
      opts.integrality_tolerance = settings_.integrality_tolerance;
      opts.seed = settings_.seed;
      opts.workers = 1;
      const SolveResult res = timed([&] { return solve(sub, opts); });
      if (res.incumbent) {
        std::vector<double> t = restrict_to(integers_, res.incumbent->point);
        for (std::size_t k = 0; k < t.size(); ++k) {
          t[k] = std::clamp(std::round(t[k]), lower_[k], upper_[k]);
        }
        return t;
      }
    } catch (const Error&) {
      // Best effort: fall back to rounding.
    }
    return round_target(y);
  }

  // Fixes the integer variables at `values` and looks for a feasible
  // completion of the continuous ones, starting from `start`.
  bool accept_fixed(const std::vector<double>& values, const Point& start) {
    Point x = start;
    for (std::size_t k = 0; k < integers_.size(); ++k) x[integers_[k]] = std::round(values[k]);
    const double tol = settings_.integrality_tolerance;
    if (!is_feasible(model_, x, 1e-6, tol)) {
      if (integers_.size() == model_.var_count() || deadline_.expired()) return false;
      std::vector<double> lower = model_.lower();
      std::vector<double> upper = model_.upper();
      for (std::size_t j : integers_) lower[j] = upper[j] = x[j];
      NlpLimits limits;
      limits.time_budget = deadline_.remaining();
      NlpResult r;
      try {
        r = timed([&] { return solve_nlp({model_, lower, upper, x}, limits); });
      } catch (const Error&) {
        return false;
      }
      if (r.point.empty() || !is_feasible(model_, r.point, 1e-6, tol)) return false;
      x = std::move(r.point);
    }
    double objective;
    try {
      objective = evaluate(model_.objective(), x);
    } catch (const Error&) {
      return false;
    }
    assert(is_feasible(model_, x, 1e-6, tol));
    report_.incumbent = Incumbent{x, objective, clock_.seconds(), -1,
                                  IncumbentSource::kFeasibilityPump};
    return true;
  }

  const Model& model_;
  PumpSettings settings_;
  std::vector<std::size_t> integers_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  Stopwatch clock_;
  Deadline deadline_;
  std::mt19937_64 rng_;
  PumpHistory history_;
  PumpReport report_;
};

}  // namespace

PumpReport pump(const Model& model, const PumpSettings& settings) {
  if (settings.mode == PumpMode::kOff) return {};
  try {
    return Pump(model, settings).run();
  } catch (const Error&) {
    PumpReport report;
    report.ran = true;
    return report;
  }
}

std::vector<double> perturb(std::span<const double> target, std::span<const double> point,
                            std::span<const double> lower, std::span<const double> upper,
                            const PumpHistory& history, std::mt19937_64& rng) {
  const std::size_t n = target.size();
  std::vector<double> out(target.begin(), target.end());
  if (n == 0) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(point[a] - target[a]) > std::fabs(point[b] - target[b]);
  });
  const std::size_t flips = std::max<std::size_t>(1, (n + 2) / 3);
  std::size_t done = 0;
  for (std::size_t k : order) {
    if (done == flips) break;
    const double d = point[k] - target[k];
    if (d == 0.0) break;  // sorted: the rest are zero as well
    const double moved = target[k] + (d > 0.0 ? 1.0 : -1.0);
    if (moved < lower[k] || moved > upper[k]) continue;
    out[k] = moved;
    ++done;
  }

  if (history.contains(out)) {
    std::vector<std::pair<std::size_t, double>> moves;
    for (std::size_t k = 0; k < n; ++k) {
      if (out[k] - 1.0 >= lower[k]) moves.emplace_back(k, -1.0);
      if (out[k] + 1.0 <= upper[k]) moves.emplace_back(k, 1.0);
    }
    if (!moves.empty()) {
      const auto pick = std::min<std::size_t>(
          moves.size() - 1, static_cast<std::size_t>(unit_draw(rng) * moves.size()));
      out[moves[pick].first] += moves[pick].second;
    }
  }
  return out;
}

Model projection_model(const Model& model, std::span<const double> point) {
  RawModel raw;
  raw.variables = model.variables();
  raw.sense = Sense::kMinimize;

  std::unordered_set<std::string> names;
  for (const auto& v : raw.variables) names.insert(v.name);
  const auto& integers = model.integer_indices();
  std::vector<Expr> distance;
  for (std::size_t k = 0; k < integers.size(); ++k) {
    const std::size_t j = integers[k];
    std::string name = "dist_" + model.variables()[j].name;
    while (names.contains(name)) name += "_";
    names.insert(name);
    const std::size_t d = raw.variables.size();
    raw.variables.push_back({name, 0.0, model.upper()[j] - model.lower()[j] + 1.0, false});
    const Expr y = Expr::var(j);
    const Expr dj = Expr::var(d);
    const Expr target = Expr::constant(point[j]);
    raw.constraints.push_back({y - target - dj, Relation::kLessEqual, Expr::constant(0.0)});
    raw.constraints.push_back({target - y - dj, Relation::kLessEqual, Expr::constant(0.0)});
    distance.push_back(dj);
  }
  for (const Constraint& c : model.constraints()) {
    if (c.linear) raw.constraints.push_back({c.body, Relation::kLessEqual, Expr::constant(0.0)});
  }
  raw.objective = distance.empty() ? Expr::constant(0.0) : Expr::sum(std::move(distance));
  return canonicalize(raw);
}

}  // namespace nlbb
