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

#include "nlbb/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "nlbb/errors.hpp"

namespace nlbb {

struct Expr::Node {
  ExprKind kind = ExprKind::kConstant;
  double value = 0.0;  // constant value or exponent
  std::size_t index = 0;
  std::vector<Expr> children;
};

namespace {

bool is_integral(double e) {
  return std::isfinite(e) && e == std::floor(e) && std::fabs(e) < 1e9;
}

double pow_uint(double base, std::uint64_t n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

// Returns NaN to signal a domain violation; callers raise the error.
double power_value(double base, double exponent) {
  if (is_integral(exponent)) {
    if (exponent >= 0) return pow_uint(base, static_cast<std::uint64_t>(exponent));
    if (base == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 / pow_uint(base, static_cast<std::uint64_t>(-exponent));
  }
  if (base < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (base == 0.0) {
    return exponent > 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  }
  return std::exp(exponent * std::log(base));
}

double power_derivative(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (is_integral(exponent)) return exponent * power_value(base, exponent - 1.0);
  if (base == 0.0) {
    return exponent > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return exponent * std::exp((exponent - 1.0) * std::log(base));
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double eval_rec(const Expr& e, std::span<const double> x) {
  const auto ch = e.children();
  switch (e.kind()) {
    case ExprKind::kConstant:
      return e.value();
    case ExprKind::kVar:
      if (e.index() >= x.size()) {
        throw ContractViolation("variable index " + std::to_string(e.index()) +
                                " outside point of length " + std::to_string(x.size()));
      }
      return x[e.index()];
    case ExprKind::kSum: {
      double s = 0.0;
      for (const auto& c : ch) s += eval_rec(c, x);
      return s;
    }
    case ExprKind::kProduct: {
      double p = 1.0;
      for (const auto& c : ch) p *= eval_rec(c, x);
      return p;
    }
    case ExprKind::kPower: {
      const double v = power_value(eval_rec(ch[0], x), e.exponent());
      if (std::isnan(v)) throw DomainError("power outside domain", e.to_string());
      return v;
    }
    case ExprKind::kNegate:
      return -eval_rec(ch[0], x);
    case ExprKind::kDiv: {
      const double num = eval_rec(ch[0], x);
      const double den = eval_rec(ch[1], x);
      if (den == 0.0) throw DomainError("division by zero", e.to_string());
      return num / den;
    }
    case ExprKind::kExp:
      return std::exp(eval_rec(ch[0], x));
    case ExprKind::kLog: {
      const double a = eval_rec(ch[0], x);
      if (!(a > 0.0)) throw DomainError("log of non-positive value", e.to_string());
      return std::log(a);
    }
    case ExprKind::kSin:
      return std::sin(eval_rec(ch[0], x));
    case ExprKind::kCos:
      return std::cos(eval_rec(ch[0], x));
    case ExprKind::kSqrt: {
      const double a = eval_rec(ch[0], x);
      if (a < 0.0) throw DomainError("sqrt of negative value", e.to_string());
      return std::sqrt(a);
    }
  }
  return 0.0;
}

}  // namespace

const char* to_string(ExprKind kind) {
  switch (kind) {
    case ExprKind::kConstant: return "const";
    case ExprKind::kVar: return "var";
    case ExprKind::kSum: return "+";
    case ExprKind::kProduct: return "*";
    case ExprKind::kPower: return "^";
    case ExprKind::kNegate: return "-";
    case ExprKind::kDiv: return "/";
    case ExprKind::kExp: return "exp";
    case ExprKind::kLog: return "log";
    case ExprKind::kSin: return "sin";
    case ExprKind::kCos: return "cos";
    case ExprKind::kSqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kConstant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kVar;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kSum;
  n->children = std::move(terms);
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kProduct;
  n->children = std::move(factors);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kPower;
  n->value = exponent;
  n->children.push_back(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::negate(Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kNegate;
  n->children.push_back(std::move(child));
  return Expr(std::move(n));
}

Expr Expr::div(Expr numerator, Expr denominator) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kDiv;
  n->children.push_back(std::move(numerator));
  n->children.push_back(std::move(denominator));
  return Expr(std::move(n));
}

#define NLBB_UNARY_FACTORY(name, kind_value)      \
  Expr Expr::name(Expr child) {                   \
    auto n = std::make_shared<Node>();            \
    n->kind = kind_value;                         \
    n->children.push_back(std::move(child));      \
    return Expr(std::move(n));                    \
  }

NLBB_UNARY_FACTORY(exp, ExprKind::kExp)
NLBB_UNARY_FACTORY(log, ExprKind::kLog)
NLBB_UNARY_FACTORY(sin, ExprKind::kSin)
NLBB_UNARY_FACTORY(cos, ExprKind::kCos)
NLBB_UNARY_FACTORY(sqrt, ExprKind::kSqrt)
#undef NLBB_UNARY_FACTORY

ExprKind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
std::size_t Expr::index() const noexcept { return node_->index; }
double Expr::exponent() const noexcept { return node_->value; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }

std::size_t Expr::var_bound() const {
  if (kind() == ExprKind::kVar) return index() + 1;
  std::size_t bound = 0;
  for (const auto& c : children()) bound = std::max(bound, c.var_bound());
  return bound;
}

std::size_t Expr::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

std::string Expr::to_string() const {
  switch (kind()) {
    case ExprKind::kConstant:
      return format_number(value());
    case ExprKind::kVar:
      return "x" + std::to_string(index());
    default:
      break;
  }
  std::string out = "(";
  out += nlbb::to_string(kind());
  for (const auto& c : children()) {
    out += ' ';
    out += c.to_string();
  }
  if (kind() == ExprKind::kPower) {
    out += ' ';
    out += format_number(exponent());
  }
  out += ')';
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::kConstant:
      return a.value() == b.value();
    case ExprKind::kVar:
      return a.index() == b.index();
    case ExprKind::kPower:
      if (a.exponent() != b.exponent()) return false;
      break;
    default:
      break;
  }
  const auto ca = a.children();
  const auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

Expr operator+(Expr a, Expr b) { return Expr::sum({std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) {
  return Expr::sum({std::move(a), Expr::negate(std::move(b))});
}
Expr operator*(Expr a, Expr b) { return Expr::product({std::move(a), std::move(b)}); }
Expr operator/(Expr a, Expr b) { return Expr::div(std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::negate(std::move(a)); }

// ---------------------------------------------------------------------------
// Evaluation

double evaluate(const Expr& expr, std::span<const double> point) {
  return eval_rec(expr, point);
}

std::vector<double> gradient(const Expr& expr, std::span<const double> point) {
  std::vector<double> grad(point.size(), 0.0);
  TapeWorkspace ws;
  Tape(expr).accumulate_gradient(point, 1.0, grad, ws);
  return grad;
}

// ---------------------------------------------------------------------------
// Constant folding

namespace {

std::optional<double> try_constant(const Expr& e) {
  if (!e.is_constant()) return std::nullopt;
  return e.value();
}

// Folds a unary node whose child is constant, unless that would raise.
Expr fold_unary(ExprKind kind, Expr child) {
  if (auto c = try_constant(child)) {
    const double a = *c;
    switch (kind) {
      case ExprKind::kExp:
        return Expr::constant(std::exp(a));
      case ExprKind::kLog:
        if (a > 0) return Expr::constant(std::log(a));
        break;
      case ExprKind::kSin:
        return Expr::constant(std::sin(a));
      case ExprKind::kCos:
        return Expr::constant(std::cos(a));
      case ExprKind::kSqrt:
        if (a >= 0) return Expr::constant(std::sqrt(a));
        break;
      default:
        break;
    }
  }
  switch (kind) {
    case ExprKind::kExp: return Expr::exp(std::move(child));
    case ExprKind::kLog: return Expr::log(std::move(child));
    case ExprKind::kSin: return Expr::sin(std::move(child));
    case ExprKind::kCos: return Expr::cos(std::move(child));
    default: return Expr::sqrt(std::move(child));
  }
}

}  // namespace

Expr fold_constants(const Expr& expr) {
  switch (expr.kind()) {
    case ExprKind::kConstant:
    case ExprKind::kVar:
      return expr;

    case ExprKind::kSum: {
      std::vector<Expr> terms;
      double constant = 0.0;
      bool has_constant = false;
      for (const auto& c : expr.children()) {
        Expr f = fold_constants(c);
        if (f.is_constant()) {
          constant += f.value();
          has_constant = true;
        } else if (f.kind() == ExprKind::kSum) {
          // A folded sum keeps its constant last.
          for (const auto& t : f.children()) {
            if (t.is_constant()) {
              constant += t.value();
              has_constant = true;
            } else {
              terms.push_back(t);
            }
          }
        } else {
          terms.push_back(std::move(f));
        }
      }
      if (has_constant && constant != 0.0) terms.push_back(Expr::constant(constant));
      if (terms.empty()) return Expr::constant(constant);
      if (terms.size() == 1) return terms.front();
      return Expr::sum(std::move(terms));
    }

    case ExprKind::kProduct: {
      std::vector<Expr> factors;
      double constant = 1.0;
      for (const auto& c : expr.children()) {
        Expr f = fold_constants(c);
        if (f.is_constant()) {
          constant *= f.value();
        } else if (f.kind() == ExprKind::kProduct) {
          for (const auto& t : f.children()) {
            if (t.is_constant()) {
              constant *= t.value();
            } else {
              factors.push_back(t);
            }
          }
        } else {
          factors.push_back(std::move(f));
        }
      }
      if (constant == 0.0 || factors.empty()) return Expr::constant(constant);
      if (constant != 1.0) factors.insert(factors.begin(), Expr::constant(constant));
      if (factors.size() == 1) return factors.front();
      return Expr::product(std::move(factors));
    }

    case ExprKind::kPower: {
      Expr base = fold_constants(expr.children()[0]);
      const double e = expr.exponent();
      if (e == 0.0) return Expr::constant(1.0);
      if (e == 1.0) return base;
      if (auto c = try_constant(base)) {
        const double v = power_value(*c, e);
        if (!std::isnan(v)) return Expr::constant(v);
      }
      return Expr::power(std::move(base), e);
    }

    case ExprKind::kNegate: {
      Expr child = fold_constants(expr.children()[0]);
      if (child.is_constant()) return Expr::constant(-child.value());
      if (child.kind() == ExprKind::kNegate) return child.children()[0];
      return Expr::negate(std::move(child));
    }

    case ExprKind::kDiv: {
      Expr num = fold_constants(expr.children()[0]);
      Expr den = fold_constants(expr.children()[1]);
      if (den.is_constant() && den.value() != 0.0) {
        if (num.is_constant()) return Expr::constant(num.value() / den.value());
        if (den.value() == 1.0) return num;
      }
      return Expr::div(std::move(num), std::move(den));
    }

    case ExprKind::kExp:
    case ExprKind::kLog:
    case ExprKind::kSin:
    case ExprKind::kCos:
    case ExprKind::kSqrt:
      return fold_unary(expr.kind(), fold_constants(expr.children()[0]));
  }
  return expr;
}

// ---------------------------------------------------------------------------
// Linearity

double AffineForm::evaluate(std::span<const double> point) const {
  double s = 0.0;
  for (const auto& [j, c] : coefficients) s += c * point[j];
  return s + constant;
}

namespace {

void scale(AffineForm& f, double k) {
  for (auto& [j, c] : f.coefficients) c *= k;
  f.constant *= k;
}

void add_into(AffineForm& acc, const AffineForm& f) {
  for (const auto& [j, c] : f.coefficients) acc.coefficients[j] += c;
  acc.constant += f.constant;
}

std::optional<AffineForm> linear_rec(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kConstant: {
      AffineForm f;
      f.constant = e.value();
      return f;
    }
    case ExprKind::kVar: {
      AffineForm f;
      f.coefficients[e.index()] = 1.0;
      return f;
    }
    case ExprKind::kSum: {
      AffineForm acc;
      for (const auto& c : e.children()) {
        auto f = linear_rec(c);
        if (!f) return std::nullopt;
        add_into(acc, *f);
      }
      return acc;
    }
    case ExprKind::kProduct: {
      // Affine only when at most one factor is non-constant.
      double k = 1.0;
      std::optional<AffineForm> varying;
      for (const auto& c : e.children()) {
        auto f = linear_rec(c);
        if (!f) return std::nullopt;
        if (f->coefficients.empty()) {
          k *= f->constant;
        } else if (varying) {
          return std::nullopt;
        } else {
          varying = std::move(f);
        }
      }
      if (!varying) {
        AffineForm f;
        f.constant = k;
        return f;
      }
      scale(*varying, k);
      return varying;
    }
    case ExprKind::kNegate: {
      auto f = linear_rec(e.children()[0]);
      if (f) scale(*f, -1.0);
      return f;
    }
    case ExprKind::kDiv: {
      const Expr& den = e.children()[1];
      if (!den.is_constant() || den.value() == 0.0) return std::nullopt;
      auto f = linear_rec(e.children()[0]);
      if (f) {
        for (auto& [j, c] : f->coefficients) c /= den.value();
        f->constant /= den.value();
      }
      return f;
    }
    case ExprKind::kPower:
    case ExprKind::kExp:
    case ExprKind::kLog:
    case ExprKind::kSin:
    case ExprKind::kCos:
    case ExprKind::kSqrt:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<AffineForm> detect_linear(const Expr& expr) {
  auto f = linear_rec(fold_constants(expr));
  if (f) std::erase_if(f->coefficients, [](const auto& kv) { return kv.second == 0.0; });
  return f;
}

// ---------------------------------------------------------------------------
// Tape

Tape::Tape(const Expr& expr) {
  // Iterative post-order so deep trees cannot overflow the stack.
  struct Frame {
    Expr e;
    bool expanded;
  };
  std::vector<Frame> stack{{expr, false}};
  std::vector<std::uint32_t> slot_stack;
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    const auto ch = fr.e.children();
    if (!fr.expanded && !ch.empty()) {
      stack.push_back({fr.e, true});
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, false});
      continue;
    }
    Op op;
    op.kind = fr.e.kind();
    op.index = fr.e.index();
    op.value = fr.e.kind() == ExprKind::kPower ? fr.e.exponent() : fr.e.value();
    op.child_count = static_cast<std::uint32_t>(ch.size());
    op.first_child = static_cast<std::uint32_t>(child_slots_.size());
    const std::size_t base = slot_stack.size() - ch.size();
    for (std::size_t k = 0; k < ch.size(); ++k) child_slots_.push_back(slot_stack[base + k]);
    slot_stack.resize(base);
    slot_stack.push_back(static_cast<std::uint32_t>(ops_.size()));
    ops_.push_back(op);
    sources_.push_back(fr.e);
  }
}

void Tape::domain_error(std::size_t op, const char* what) const {
  throw DomainError(what, sources_[op].to_string());
}

void Tape::forward(std::span<const double> x, std::vector<double>& v) const {
  v.resize(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    const std::uint32_t* c = child_slots_.data() + op.first_child;
    switch (op.kind) {
      case ExprKind::kConstant:
        v[i] = op.value;
        break;
      case ExprKind::kVar:
        v[i] = x[op.index];
        break;
      case ExprKind::kSum: {
        double s = 0.0;
        for (std::uint32_t k = 0; k < op.child_count; ++k) s += v[c[k]];
        v[i] = s;
        break;
      }
      case ExprKind::kProduct: {
        double p = 1.0;
        for (std::uint32_t k = 0; k < op.child_count; ++k) p *= v[c[k]];
        v[i] = p;
        break;
      }
      case ExprKind::kPower:
        v[i] = power_value(v[c[0]], op.value);
        if (std::isnan(v[i])) domain_error(i, "power outside domain");
        break;
      case ExprKind::kNegate:
        v[i] = -v[c[0]];
        break;
      case ExprKind::kDiv:
        if (v[c[1]] == 0.0) domain_error(i, "division by zero");
        v[i] = v[c[0]] / v[c[1]];
        break;
      case ExprKind::kExp:
        v[i] = std::exp(v[c[0]]);
        break;
      case ExprKind::kLog:
        if (!(v[c[0]] > 0.0)) domain_error(i, "log of non-positive value");
        v[i] = std::log(v[c[0]]);
        break;
      case ExprKind::kSin:
        v[i] = std::sin(v[c[0]]);
        break;
      case ExprKind::kCos:
        v[i] = std::cos(v[c[0]]);
        break;
      case ExprKind::kSqrt:
        if (v[c[0]] < 0.0) domain_error(i, "sqrt of negative value");
        v[i] = std::sqrt(v[c[0]]);
        break;
    }
  }
}

double Tape::evaluate(std::span<const double> point, TapeWorkspace& ws) const {
  forward(point, ws.values);
  return ws.values.back();
}

double Tape::accumulate_gradient(std::span<const double> point, double scale_by,
                                 std::span<double> grad, TapeWorkspace& ws) const {
  forward(point, ws.values);
  backward(scale_by, grad, ws);
  return ws.values.back();
}

void Tape::backward(double scale_by, std::span<double> grad, TapeWorkspace& ws) const {
  const auto& v = ws.values;
  auto& adj = ws.adjoints;
  adj.assign(ops_.size(), 0.0);
  adj.back() = scale_by;
  for (std::size_t i = ops_.size(); i-- > 0;) {
    const double a = adj[i];
    if (a == 0.0) continue;
    const Op& op = ops_[i];
    const std::uint32_t* c = child_slots_.data() + op.first_child;
    switch (op.kind) {
      case ExprKind::kConstant:
        break;
      case ExprKind::kVar:
        grad[op.index] += a;
        break;
      case ExprKind::kSum:
        for (std::uint32_t k = 0; k < op.child_count; ++k) adj[c[k]] += a;
        break;
      case ExprKind::kProduct: {
        // Zero factors are handled exactly rather than through division.
        const std::uint32_t n = op.child_count;
        std::uint32_t zeros = 0;
        std::uint32_t zero_at = 0;
        double nonzero_product = 1.0;
        for (std::uint32_t k = 0; k < n; ++k) {
          if (v[c[k]] == 0.0) {
            ++zeros;
            zero_at = k;
          } else {
            nonzero_product *= v[c[k]];
          }
        }
        if (zeros == 0) {
          for (std::uint32_t k = 0; k < n; ++k) adj[c[k]] += a * nonzero_product / v[c[k]];
        } else if (zeros == 1) {
          adj[c[zero_at]] += a * nonzero_product;
        }
        break;
      }
      case ExprKind::kPower:
        adj[c[0]] += a * power_derivative(v[c[0]], op.value);
        break;
      case ExprKind::kNegate:
        adj[c[0]] -= a;
        break;
      case ExprKind::kDiv: {
        const double den = v[c[1]];
        adj[c[0]] += a / den;
        adj[c[1]] -= a * v[c[0]] / (den * den);
        break;
      }
      case ExprKind::kExp:
        adj[c[0]] += a * v[i];
        break;
      case ExprKind::kLog:
        adj[c[0]] += a / v[c[0]];
        break;
      case ExprKind::kSin:
        adj[c[0]] += a * std::cos(v[c[0]]);
        break;
      case ExprKind::kCos:
        adj[c[0]] -= a * std::sin(v[c[0]]);
        break;
      case ExprKind::kSqrt:
        adj[c[0]] += v[i] > 0.0 ? a * 0.5 / v[i] : a * std::numeric_limits<double>::infinity();
        break;
    }
  }
}

}  // namespace nlbb
