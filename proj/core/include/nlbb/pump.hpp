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
#include <random>
#include <set>
#include <span>
#include <vector>

#include "nlbb/incumbent.hpp"
#include "nlbb/model.hpp"
#include "nlbb/options.hpp"

namespace nlbb {

struct PumpSettings {
  PumpMode mode = PumpMode::kRounding;
  double time_limit = 60.0;
  std::uint64_t seed = 0;
  double integrality_tolerance = 1e-6;
  int max_iterations = 100;
  /// Per-projection cap for the MIP step.
  double projection_time_limit = 10.0;
  double projection_gap = 1e-2;
};

struct PumpReport {
  bool ran = false;
  std::optional<Incumbent> incumbent;
  int iterations = 0;
  /// MIP projections attempted (MipProjection mode only).
  int projections = 0;
  int perturbations = 0;
  double seconds = 0.0;
  /// Longest single NLP or MIP subsolve, for the overrun bound.
  double longest_subsolve = 0.0;
};

/// Integer vectors already visited, restricted to the integer variables.
using PumpHistory = std::set<std::vector<double>>;

/// Feasibility pump. Alternates an NLP that pulls the integer variables
/// toward an integer target with a projection (rounding or a linear MIP)
/// that picks the next target, until the two agree. Best effort: subsolver
/// failures end the pump without an incumbent. Any returned incumbent is
/// feasible within 1e-6 and integral within the integrality tolerance.
PumpReport pump(const Model& model, const PumpSettings& settings);

/// Cycle breaker. `target`, `point`, `lower` and `upper` are restricted to
/// the integer variables. Flips the max(1, ceil(n/3)) components farthest
/// from `point` one unit toward it (ties to the lowest index, components
/// whose flip would leave the bounds are skipped in favor of the next). If
/// the result is still in `history`, one more uniformly drawn in-bounds unit
/// flip is applied.
std::vector<double> perturb(std::span<const double> target, std::span<const double> point,
                            std::span<const double> lower, std::span<const double> upper,
                            const PumpHistory& history, std::mt19937_64& rng);

/// The linear projection model: the original variables plus one distance
/// variable per integer variable, only the linear constraints of `model`,
/// and the objective sum_j d_j with d_j >= |y_j - point_j|.
Model projection_model(const Model& model, std::span<const double> point);

}  // namespace nlbb
