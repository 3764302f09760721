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

#include <functional>
#include <span>
#include <vector>

#include "nlbb/timer.hpp"

namespace nlbb::detail {

/// Smooth objective: writes the gradient into `grad` and returns the value.
/// May throw DomainError, which the minimizer treats as an infinite value.
using SmoothFunction = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct BoxMinimizerSettings {
  int max_iterations = 500;
  double tolerance = 1e-6;  // on the projected-gradient infinity norm
  int memory = 8;
  /// Stop as soon as the value drops to this level.
  double target_value = -HUGE_VAL;
  Deadline deadline;
};

enum class BoxStatus { kConverged, kTargetReached, kIterationLimit, kStalled, kTimeLimit, kNumericalError };

struct BoxResult {
  BoxStatus status = BoxStatus::kIterationLimit;
  double value = 0.0;
  double projected_gradient = HUGE_VAL;
  int iterations = 0;
};

/// Projected limited-memory quasi-Newton method with Armijo backtracking along
/// the projection arc. `x` is projected into [lower, upper] on entry and holds
/// the final iterate on exit. Accepted steps never increase the objective.
BoxResult minimize_in_box(const SmoothFunction& fun, std::span<const double> lower,
                          std::span<const double> upper, std::vector<double>& x,
                          const BoxMinimizerSettings& settings);

/// ||P(x - g) - x||_inf
double projected_gradient_norm(std::span<const double> x, std::span<const double> grad,
                               std::span<const double> lower, std::span<const double> upper);

}  // namespace nlbb::detail
