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

#include <optional>
#include <string>
#include <vector>

#include "nlbb/model.hpp"

namespace nlbb {

/// Continuous relaxation of a Model: integrality dropped, bounds optionally
/// tightened. The objective defaults to the model objective.
struct NlpProblem {
  const Model& model;
  /// Node-local bounds; empty means the model's own bounds.
  std::vector<double> lower = {};
  std::vector<double> upper = {};
  /// Clipped into the bounds before solving; empty means the box midpoint.
  Point start = {};
  std::optional<Expr> objective = std::nullopt;
};

enum class NlpStatus { kLocallyOptimal, kInfeasible, kIterationLimit, kNumericalError };

const char* to_string(NlpStatus status);

struct NlpLimits {
  int max_outer_iterations = 50;
  int max_inner_iterations = 500;
  double time_budget = kInf;  // seconds
  double optimality_tolerance = 1e-6;
  double feasibility_tolerance = 1e-6;
};

struct NlpResult {
  NlpStatus status = NlpStatus::kNumericalError;
  Point point;
  /// Value of the problem objective at `point` (NaN when not evaluable).
  double objective = 0.0;
  /// max(0, max_c g_c(point))
  double max_violation = 0.0;
  /// sum_c max(g_c(point), 0)^2
  double infeasibility = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
};

/// Midpoint of the box; a half-infinite coordinate takes its finite bound and
/// a free coordinate takes 0.
Point box_midpoint(const std::vector<double>& lower, const std::vector<double>& upper);

/// Local solve of min f(x) s.t. g_c(x) <= 0, lower <= x <= upper by an
/// augmented-Lagrangian outer loop around a projected quasi-Newton inner
/// solver. Infeasible is reported when the restoration subproblem stalls with
/// violation above the feasibility tolerance. Deterministic for identical
/// inputs.
NlpResult solve_nlp(const NlpProblem& problem, const NlpLimits& limits = {});

/// Minimizes sum_c max(g_c(x), 0)^2 over the box.
NlpResult restoration_solve(const NlpProblem& problem, const NlpLimits& limits = {});

}  // namespace nlbb
