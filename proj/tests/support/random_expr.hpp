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
#include <random>

#include "nlbb/expr.hpp"
#include "nlbb/model.hpp"

namespace nlbb::testing {

struct ExprCase {
  Expr expr;
  Point point;
};

/// Random smooth expression of depth <= max_depth over `vars` variables,
/// together with an interior point. Arguments of log, sqrt, division and
/// fractional powers are kept at least 0.1 away from their singularities.
/// Returns nullopt when the draw produced a value outside [-1e3, 1e3].
std::optional<ExprCase> random_case(std::mt19937_64& rng, std::size_t vars, int max_depth);

/// (f(x + h e_j) - f(x - h e_j)) / 2h
double central_difference(const Expr& expr, Point point, std::size_t j, double h = 1e-6);

/// |a - b| / max(1, |a|, |b|)
double relative_error(double a, double b);

}  // namespace nlbb::testing
