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

#include "nlbb/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "nlbb/errors.hpp"

namespace nlbb {

namespace {

Expr difference(const Expr& a, const Expr& b) {
  if (b.is_constant() && b.value() == 0.0) return fold_constants(a);
  return fold_constants(Expr::sum({a, Expr::negate(b)}));
}

void check_indices(const Expr& e, std::size_t n, const std::string& field) {
  if (e.var_bound() > n) {
    throw ValidationError(field, "references variable index " +
                                     std::to_string(e.var_bound() - 1) + " but only " +
                                     std::to_string(n) + " variables exist");
  }
}

}  // namespace

Model canonicalize(const RawModel& raw) {
  const std::size_t n = raw.variables.size();
  if (n == 0) throw ValidationError("variables", "model declares no variables");

  Model m;
  std::unordered_set<std::string> names;
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = raw.variables[j];
    const std::string field = "variables[" + std::to_string(j) + "]";
    if (!v.name.empty() && !names.insert(v.name).second) {
      throw ValidationError(field, "duplicate variable name '" + v.name + "'");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper)) {
      throw ValidationError(field, "bound is NaN");
    }
    if (v.lower > v.upper) {
      throw ValidationError(field, "lower bound exceeds upper bound");
    }
    if (v.integer && (!std::isfinite(v.lower) || !std::isfinite(v.upper))) {
      throw ValidationError(field, "integer variable '" + v.name + "' must have finite bounds");
    }
    m.variables_.push_back(v);
    m.lower_.push_back(v.lower);
    m.upper_.push_back(v.upper);
    if (v.integer) m.integers_.push_back(j);
  }

  check_indices(raw.objective, n, "objective");
  m.was_maximize_ = raw.sense == Sense::kMaximize;
  m.objective_ = m.was_maximize_ ? fold_constants(Expr::negate(raw.objective))
                                 : fold_constants(raw.objective);

  for (std::size_t c = 0; c < raw.constraints.size(); ++c) {
    const RawConstraint& rc = raw.constraints[c];
    const std::string field = "constraints[" + std::to_string(c) + "]";
    check_indices(rc.lhs, n, field);
    check_indices(rc.rhs, n, field);
    auto push = [&m](Expr body) {
      const bool linear = detect_linear(body).has_value();
      m.constraints_.push_back({std::move(body), linear});
    };
    switch (rc.relation) {
      case Relation::kLessEqual:
        push(difference(rc.lhs, rc.rhs));
        break;
      case Relation::kGreaterEqual:
        push(difference(rc.rhs, rc.lhs));
        break;
      case Relation::kEqual:
        push(difference(rc.lhs, rc.rhs));
        push(difference(rc.rhs, rc.lhs));
        break;
    }
  }
  m.compile();
  return m;
}

void Model::compile() {
  objective_tape_ = Tape(objective_);
  constraint_tapes_.clear();
  constraint_tapes_.reserve(constraints_.size());
  for (const auto& c : constraints_) constraint_tapes_.emplace_back(c.body);
}

Model Model::with_bounds(std::vector<double> lower, std::vector<double> upper) const {
  Model m = *this;
  m.lower_ = std::move(lower);
  m.upper_ = std::move(upper);
  for (std::size_t j = 0; j < m.variables_.size(); ++j) {
    m.variables_[j].lower = m.lower_[j];
    m.variables_[j].upper = m.upper_[j];
  }
  return m;
}

RawModel Model::to_raw() const {
  RawModel raw;
  raw.variables = variables_;
  raw.sense = was_maximize_ ? Sense::kMaximize : Sense::kMinimize;
  raw.objective = was_maximize_ ? fold_constants(Expr::negate(objective_)) : objective_;
  for (const auto& c : constraints_) {
    raw.constraints.push_back({c.body, Relation::kLessEqual, Expr::constant(0.0)});
  }
  return raw;
}

bool operator==(const Model& a, const Model& b) {
  return a.variables_ == b.variables_ && a.objective_ == b.objective_ &&
         a.was_maximize_ == b.was_maximize_ && a.constraints_ == b.constraints_;
}

double max_violation(const Model& model, std::span<const double> point) {
  double worst = 0.0;
  for (const auto& c : model.constraints()) {
    worst = std::max(worst, evaluate(c.body, point));
  }
  return worst;
}

double max_integrality_violation(const Model& model, std::span<const double> point) {
  double worst = 0.0;
  for (std::size_t j : model.integer_indices()) {
    worst = std::max(worst, std::fabs(point[j] - std::round(point[j])));
  }
  return worst;
}

bool is_feasible(const Model& model, std::span<const double> point, double feas_tol,
                 double int_tol) {
  if (point.size() != model.var_count()) return false;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (!std::isfinite(point[j])) return false;
    if (point[j] < model.lower()[j] - feas_tol || point[j] > model.upper()[j] + feas_tol) {
      return false;
    }
  }
  if (max_integrality_violation(model, point) > int_tol) return false;
  try {
    return max_violation(model, point) <= feas_tol;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace nlbb
