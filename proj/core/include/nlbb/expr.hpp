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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nlbb {

enum class ExprKind : std::uint8_t {
  kConstant,
  kVar,
  kSum,
  kProduct,
  kPower,
  kNegate,
  kDiv,
  kExp,
  kLog,
  kSin,
  kCos,
  kSqrt,
};

const char* to_string(ExprKind kind);

/// Immutable expression tree with value semantics. Copies share structure,
/// so an Expr can be handed to any number of threads.
///
/// Power carries its exponent as a number rather than a subtree. Integral
/// exponents are evaluated by repeated multiplication and accept negative
/// bases; other exponents require a non-negative base.
class Expr {
 public:
  /// Constant 0.
  Expr();

  static Expr constant(double value);
  static Expr var(std::size_t index);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, double exponent);
  static Expr negate(Expr child);
  static Expr div(Expr numerator, Expr denominator);
  static Expr exp(Expr child);
  static Expr log(Expr child);
  static Expr sin(Expr child);
  static Expr cos(Expr child);
  static Expr sqrt(Expr child);

  ExprKind kind() const noexcept;
  /// Constant value; only meaningful for kConstant.
  double value() const noexcept;
  /// Variable index; only meaningful for kVar.
  std::size_t index() const noexcept;
  /// Exponent; only meaningful for kPower.
  double exponent() const noexcept;
  std::span<const Expr> children() const noexcept;

  bool is_constant() const noexcept { return kind() == ExprKind::kConstant; }

  /// Largest variable index referenced plus one (0 for constant trees).
  std::size_t var_bound() const;
  /// Number of nodes in the tree.
  std::size_t size() const;

  /// Prefix rendering, e.g. "(+ (* 12 (^ x0 2)) x1)".
  std::string to_string() const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

/// Exact recursive evaluation. Throws DomainError naming the offending
/// subexpression.
double evaluate(const Expr& expr, std::span<const double> point);

/// Reverse-mode gradient; the result has point.size() entries.
std::vector<double> gradient(const Expr& expr, std::span<const double> point);

/// Folds constant subtrees, flattens nested sums/products and drops neutral
/// elements. Idempotent: fold_constants(fold_constants(e)) == fold_constants(e).
Expr fold_constants(const Expr& expr);

/// c·x + k with zero coefficients omitted.
struct AffineForm {
  std::map<std::size_t, double> coefficients;
  double constant = 0.0;

  double evaluate(std::span<const double> point) const;
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// Exact affine coefficients when the folded tree is affine in every
/// variable, std::nullopt otherwise.
std::optional<AffineForm> detect_linear(const Expr& expr);

/// Scratch space for Tape evaluation. One per thread.
struct TapeWorkspace {
  std::vector<double> values;
  std::vector<double> adjoints;
};

/// An Expr flattened into post-order for repeated evaluation and
/// differentiation. Immutable after construction.
class Tape {
 public:
  Tape() = default;
  explicit Tape(const Expr& expr);

  double evaluate(std::span<const double> point, TapeWorkspace& ws) const;

  /// Evaluates and adds scale * gradient into `grad`. Returns the value.
  double accumulate_gradient(std::span<const double> point, double scale,
                             std::span<double> grad, TapeWorkspace& ws) const;

  /// Reverse sweep over the values left in `ws` by the last evaluate() call.
  void backward(double scale, std::span<double> grad, TapeWorkspace& ws) const;

  std::size_t size() const noexcept { return ops_.size(); }

 private:
  struct Op {
    ExprKind kind;
    std::uint32_t first_child = 0;  // into child_slots_
    std::uint32_t child_count = 0;
    std::size_t index = 0;
    double value = 0.0;
  };

  void forward(std::span<const double> point, std::vector<double>& values) const;
  [[noreturn]] void domain_error(std::size_t op, const char* what) const;

  std::vector<Op> ops_;
  std::vector<std::uint32_t> child_slots_;
  std::vector<Expr> sources_;  // for error reporting
};

}  // namespace nlbb
