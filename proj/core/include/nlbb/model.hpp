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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlbb/expr.hpp"

namespace nlbb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  double lower = -kInf;
  double upper = kInf;
  bool integer = false;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct RawConstraint {
  Expr lhs;
  Relation relation = Relation::kLessEqual;
  Expr rhs;
};

/// A model as stated by the user: either objective sense, any relation.
struct RawModel {
  std::vector<Variable> variables;
  Sense sense = Sense::kMinimize;
  Expr objective;
  std::vector<RawConstraint> constraints;
};

/// One canonical constraint body(v) <= 0.
struct Constraint {
  Expr body;
  bool linear = false;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Canonical MINLP: minimize objective(v) s.t. body_c(v) <= 0, lower <= v <= upper,
/// v_j integral for j in integer_indices(). Immutable once built; construct it
/// with canonicalize().
class Model {
 public:
  std::size_t var_count() const noexcept { return variables_.size(); }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  bool is_integer(std::size_t j) const { return variables_[j].integer; }
  /// Ascending.
  const std::vector<std::size_t>& integer_indices() const noexcept { return integers_; }

  const Expr& objective() const noexcept { return objective_; }
  /// True when the user wrote a maximization; objective() is then the negation.
  bool was_maximize() const noexcept { return was_maximize_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  const Tape& objective_tape() const noexcept { return objective_tape_; }
  const std::vector<Tape>& constraint_tapes() const noexcept { return constraint_tapes_; }

  /// Canonical objective value converted back to the user's sense.
  double to_original_sense(double canonical) const {
    return was_maximize_ ? -canonical : canonical;
  }

  /// Same problem with the given variable bounds (used for sub-models).
  Model with_bounds(std::vector<double> lower, std::vector<double> upper) const;

  /// Inverse of canonicalize: a RawModel that canonicalizes back to *this.
  RawModel to_raw() const;

  friend bool operator==(const Model& a, const Model& b);

 private:
  friend Model canonicalize(const RawModel& raw);
  void compile();

  std::vector<Variable> variables_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> integers_;
  Expr objective_;
  bool was_maximize_ = false;
  std::vector<Constraint> constraints_;
  Tape objective_tape_;
  std::vector<Tape> constraint_tapes_;
};

/// Validates and normalizes a RawModel:
///   maximize f  -> minimize -f (sense recorded)
///   a <= b      -> a - b <= 0
///   a >= b      -> b - a <= 0
///   a == b      -> a - b <= 0 and b - a <= 0
/// All bodies are constant-folded and tagged with their linearity.
/// Throws ValidationError on empty/duplicate variables, lower > upper,
/// unbounded integer variables, or out-of-range variable references.
Model canonicalize(const RawModel& raw);

/// Largest positive constraint body at `point` (0 when feasible).
double max_violation(const Model& model, std::span<const double> point);

/// Largest distance of an integer variable from the nearest integer.
double max_integrality_violation(const Model& model, std::span<const double> point);

/// True when `point` is within bounds (+tol), integral within `int_tol` and
/// satisfies every constraint within `feas_tol`. Domain errors count as
/// infeasible.
bool is_feasible(const Model& model, std::span<const double> point, double feas_tol = 1e-6,
                 double int_tol = 1e-6);

}  // namespace nlbb
