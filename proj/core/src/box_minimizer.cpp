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

#include "box_minimizer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <numeric>

#include "nlbb/errors.hpp"

namespace nlbb::detail {

namespace {

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

double safe_eval(const SmoothFunction& fun, std::span<const double> x, std::span<double> g) {
  try {
    const double v = fun(x, g);
    if (!std::isfinite(v)) return HUGE_VAL;
    for (double gi : g) {
      if (!std::isfinite(gi)) return HUGE_VAL;
    }
    return v;
  } catch (const DomainError&) {
    return HUGE_VAL;
  }
}

// Two-loop recursion restricted to the free variables.
void lbfgs_direction(const std::deque<Pair>& mem, std::span<const double> g,
                     const std::vector<char>& free, double gamma, std::vector<double>& d) {
  const std::size_t n = g.size();
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = free[j] ? g[j] : 0.0;
  std::vector<double> alpha(mem.size());
  auto dot_free = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) s += a[j] * b[j];
    return s;
  };
  for (std::size_t k = mem.size(); k-- > 0;) {
    alpha[k] = mem[k].rho * dot_free(mem[k].s, q);
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) q[j] -= alpha[k] * mem[k].y[j];
  }
  for (std::size_t j = 0; j < n; ++j) q[j] *= gamma;
  for (std::size_t k = 0; k < mem.size(); ++k) {
    const double beta = mem[k].rho * dot_free(mem[k].y, q);
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) q[j] += (alpha[k] - beta) * mem[k].s[j];
  }
  d.resize(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = free[j] ? -q[j] : 0.0;
}

}  // namespace

double projected_gradient_norm(std::span<const double> x, std::span<const double> grad,
                               std::span<const double> lower, std::span<const double> upper) {
  double norm = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    // Distance to the bound along -g, without forming x - g (which loses
    // the gradient entirely once |x| dwarfs it).
    const double room = grad[j] > 0.0 ? x[j] - lower[j] : upper[j] - x[j];
    norm = std::max(norm, std::min(std::fabs(grad[j]), std::max(0.0, room)));
  }
  return norm;
}

BoxResult minimize_in_box(const SmoothFunction& fun, std::span<const double> lower,
                          std::span<const double> upper, std::vector<double>& x,
                          const BoxMinimizerSettings& settings) {
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) x[j] = std::clamp(x[j], lower[j], upper[j]);

  BoxResult result;
  std::vector<double> g(n), g_new(n), x_new(n), d(n);
  std::vector<char> free(n, 1);
  std::deque<Pair> mem;

  double f = safe_eval(fun, x, g);
  if (!std::isfinite(f)) {
    result.status = BoxStatus::kNumericalError;
    result.value = f;
    return result;
  }

  for (int it = 0;; ++it) {
    result.iterations = it;
    result.value = f;
    result.projected_gradient = projected_gradient_norm(x, g, lower, upper);
    if (result.projected_gradient <= settings.tolerance) {
      result.status = BoxStatus::kConverged;
      return result;
    }
    if (f <= settings.target_value) {
      result.status = BoxStatus::kTargetReached;
      return result;
    }
    if (it >= settings.max_iterations) {
      result.status = BoxStatus::kIterationLimit;
      return result;
    }
    if (settings.deadline.expired()) {
      result.status = BoxStatus::kTimeLimit;
      return result;
    }

    double gnorm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool at_lower = x[j] <= lower[j] && g[j] > 0.0;
      const bool at_upper = x[j] >= upper[j] && g[j] < 0.0;
      free[j] = !(at_lower || at_upper);
      if (free[j]) gnorm = std::max(gnorm, std::fabs(g[j]));
    }

    bool accepted = false;
    double f_accepted = f;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool steepest = attempt == 1 || mem.empty();
      if (steepest) {
        const double gamma = 1.0 / std::max(1.0, gnorm);
        for (std::size_t j = 0; j < n; ++j) d[j] = free[j] ? -gamma * g[j] : 0.0;
      } else {
        const Pair& last = mem.back();
        double yy = 0.0;
        for (double v : last.y) yy += v * v;
        const double gamma = 1.0 / (last.rho * yy);
        lbfgs_direction(mem, g, free, gamma, d);
        double gd = 0.0;
        for (std::size_t j = 0; j < n; ++j) gd += g[j] * d[j];
        if (!(gd < 0.0)) continue;
      }

      double alpha = 1.0;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        double decrease = 0.0;
        double step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          x_new[j] = std::clamp(x[j] + alpha * d[j], lower[j], upper[j]);
          decrease += g[j] * (x_new[j] - x[j]);
          step = std::max(step, std::fabs(x_new[j] - x[j]));
        }
        if (step == 0.0 || !(decrease < 0.0)) break;
        const double f_new = safe_eval(fun, x_new, g_new);
        if (f_new <= f + 1e-4 * decrease) {
          assert(f_new <= f);
          f_accepted = f_new;
          accepted = true;
          break;
        }
      }
      // Without curvature information a full steepest step may be far too
      // short (a linear objective, say); keep doubling while it pays.
      if (accepted && steepest && alpha == 1.0) {
        std::vector<double> x_try(n), g_try(n);
        for (int grow = 0; grow < 80; ++grow) {
          alpha *= 2.0;
          double decrease = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            x_try[j] = std::clamp(x[j] + alpha * d[j], lower[j], upper[j]);
            decrease += g[j] * (x_try[j] - x[j]);
          }
          const double f_try = safe_eval(fun, x_try, g_try);
          if (!(f_try < f_accepted && f_try <= f + 1e-4 * decrease)) break;
          f_accepted = f_try;
          x_new.swap(x_try);
          g_new.swap(g_try);
        }
      }
      if (!accepted && !steepest) mem.clear();
      if (!accepted && steepest) break;
    }

    if (!accepted) {
      result.status = BoxStatus::kStalled;
      return result;
    }

    Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
    double sy = 0.0, ss = 0.0, yy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      p.s[j] = x_new[j] - x[j];
      p.y[j] = g_new[j] - g[j];
      sy += p.s[j] * p.y[j];
      ss += p.s[j] * p.s[j];
      yy += p.y[j] * p.y[j];
    }
    if (sy > 1e-12 * std::sqrt(ss * yy) && sy > 0.0) {
      p.rho = 1.0 / sy;
      mem.push_back(std::move(p));
      if (static_cast<int>(mem.size()) > settings.memory) mem.pop_front();
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_accepted;
  }
}

}  // namespace nlbb::detail
