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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nlbb/errors.hpp"

namespace nlbb::detail {
namespace {

// f = sum_i (i + 1) (x_i - t_i)^2
double weighted_bowl(std::span<const double> x, std::span<double> g,
                     const std::vector<double>& t) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = static_cast<double>(i + 1);
    f += w * (x[i] - t[i]) * (x[i] - t[i]);
    g[i] = 2.0 * w * (x[i] - t[i]);
  }
  return f;
}

TEST(BoxMinimizer, UnconstrainedMinimumInsideBox) {
  const std::vector<double> t{1.0, -2.0, 0.5};
  std::vector<double> x{0.0, 0.0, 0.0};
  const std::vector<double> lo(3, -5.0), hi(3, 5.0);
  const auto r = minimize_in_box([&](auto xv, auto g) { return weighted_bowl(xv, g, t); }, lo, hi,
                                 x, {});
  EXPECT_EQ(r.status, BoxStatus::kConverged);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(x[i], t[i], 1e-6);
}

TEST(BoxMinimizer, ActiveBoundsAreRespected) {
  const std::vector<double> t{3.0, -3.0};
  std::vector<double> x{0.0, 0.0};
  const std::vector<double> lo{-1.0, -1.0}, hi{1.0, 1.0};
  const auto r = minimize_in_box([&](auto xv, auto g) { return weighted_bowl(xv, g, t); }, lo, hi,
                                 x, {});
  EXPECT_EQ(r.status, BoxStatus::kConverged);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], -1.0);
  EXPECT_LE(r.projected_gradient, 1e-6);
}

TEST(BoxMinimizer, StartIsProjectedIntoTheBox) {
  const std::vector<double> t{0.2};
  std::vector<double> x{100.0};
  const std::vector<double> lo{0.0}, hi{1.0};
  minimize_in_box([&](auto xv, auto g) { return weighted_bowl(xv, g, t); }, lo, hi, x, {});
  EXPECT_NEAR(x[0], 0.2, 1e-7);
}

TEST(BoxMinimizer, Rosenbrock) {
  std::vector<double> x{-1.2, 1.0};
  const std::vector<double> lo(2, -5.0), hi(2, 5.0);
  BoxMinimizerSettings s;
  s.max_iterations = 2000;
  const auto r = minimize_in_box(
      [](std::span<const double> v, std::span<double> g) {
        const double a = 1.0 - v[0], b = v[1] - v[0] * v[0];
        g[0] = -2.0 * a - 400.0 * v[0] * b;
        g[1] = 200.0 * b;
        return a * a + 100.0 * b * b;
      },
      lo, hi, x, s);
  EXPECT_EQ(r.status, BoxStatus::kConverged);
  EXPECT_NEAR(x[0], 1.0, 1e-5);
  EXPECT_NEAR(x[1], 1.0, 1e-5);
}

TEST(BoxMinimizer, IterationLimit) {
  std::vector<double> x{-1.2, 1.0};
  const std::vector<double> lo(2, -5.0), hi(2, 5.0);
  BoxMinimizerSettings s;
  s.max_iterations = 3;
  const auto r = minimize_in_box(
      [](std::span<const double> v, std::span<double> g) {
        const double a = 1.0 - v[0], b = v[1] - v[0] * v[0];
        g[0] = -2.0 * a - 400.0 * v[0] * b;
        g[1] = 200.0 * b;
        return a * a + 100.0 * b * b;
      },
      lo, hi, x, s);
  EXPECT_EQ(r.status, BoxStatus::kIterationLimit);
  EXPECT_EQ(r.iterations, 3);
}

TEST(BoxMinimizer, UnboundedBelowReachesTarget) {
  std::vector<double> x{0.0};
  const std::vector<double> lo{-HUGE_VAL}, hi{HUGE_VAL};
  BoxMinimizerSettings s;
  s.target_value = -1e20;
  s.max_iterations = 10000;
  const auto r = minimize_in_box(
      [](std::span<const double> v, std::span<double> g) {
        g[0] = 1.0;
        return v[0];
      },
      lo, hi, x, s);
  EXPECT_EQ(r.status, BoxStatus::kTargetReached);
}

TEST(BoxMinimizer, DomainErrorsShortenTheStep) {
  // f = -log(x) + x with minimum at 1; steps past 0 throw.
  std::vector<double> x{5.0};
  const std::vector<double> lo{-10.0}, hi{10.0};
  const auto r = minimize_in_box(
      [](std::span<const double> v, std::span<double> g) {
        if (v[0] <= 0.0) throw DomainError("log of non-positive", "(log x0)");
        g[0] = -1.0 / v[0] + 1.0;
        return -std::log(v[0]) + v[0];
      },
      lo, hi, x, {});
  EXPECT_EQ(r.status, BoxStatus::kConverged);
  EXPECT_NEAR(x[0], 1.0, 1e-6);
}

TEST(ProjectedGradient, ZeroAtBoundOptimum) {
  const std::vector<double> x{0.0, 1.0}, g{3.0, -2.0}, lo{0.0, 0.0}, hi{1.0, 1.0};
  EXPECT_DOUBLE_EQ(projected_gradient_norm(x, g, lo, hi), 0.0);
  const std::vector<double> g2{-0.5, -2.0};
  EXPECT_DOUBLE_EQ(projected_gradient_norm(x, g2, lo, hi), 0.5);
}

}  // namespace
}  // namespace nlbb::detail
