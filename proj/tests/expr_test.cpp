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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlbb/errors.hpp"
#include "support/random_expr.hpp"

namespace nlbb {
namespace {

using testing::central_difference;
using testing::random_case;
using testing::relative_error;

Expr x(std::size_t i) { return Expr::var(i); }
Expr c(double v) { return Expr::constant(v); }

TEST(ExprEvaluate, Arithmetic) {
  const Expr e = x(0) + c(12) * Expr::power(x(1), 2.0);
  const Point p{1.5, 2.0};
  EXPECT_DOUBLE_EQ(evaluate(e, p), 1.5 + 48.0);
  EXPECT_DOUBLE_EQ(evaluate(Expr::div(x(0), x(1)), p), 0.75);
  EXPECT_DOUBLE_EQ(evaluate(-x(0), p), -1.5);
  EXPECT_DOUBLE_EQ(evaluate(x(0) - x(1), p), -0.5);
}

TEST(ExprEvaluate, ElementaryFunctions) {
  const Point p{0.5};
  EXPECT_DOUBLE_EQ(evaluate(Expr::exp(x(0)), p), std::exp(0.5));
  EXPECT_DOUBLE_EQ(evaluate(Expr::log(x(0)), p), std::log(0.5));
  EXPECT_DOUBLE_EQ(evaluate(Expr::sin(x(0)), p), std::sin(0.5));
  EXPECT_DOUBLE_EQ(evaluate(Expr::cos(x(0)), p), std::cos(0.5));
  EXPECT_DOUBLE_EQ(evaluate(Expr::sqrt(x(0)), p), std::sqrt(0.5));
}

TEST(ExprEvaluate, IntegerPowerAcceptsNegativeBase) {
  EXPECT_DOUBLE_EQ(evaluate(Expr::power(x(0), 3.0), Point{-2.0}), -8.0);
  EXPECT_DOUBLE_EQ(evaluate(Expr::power(x(0), -2.0), Point{-2.0}), 0.25);
}

TEST(ExprEvaluate, DomainErrorsNameTheSubexpression) {
  try {
    evaluate(c(1) + Expr::log(x(0)), Point{-1.0});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subexpression(), "(log x0)");
  }
  EXPECT_THROW(evaluate(Expr::sqrt(x(0)), Point{-0.1}), DomainError);
  EXPECT_THROW(evaluate(Expr::div(c(1), x(0)), Point{0.0}), DomainError);
  EXPECT_THROW(evaluate(Expr::power(x(0), 0.5), Point{-1.0}), DomainError);
  EXPECT_THROW(evaluate(Expr::power(x(0), -1.0), Point{0.0}), DomainError);
}

TEST(ExprStructure, PrefixRendering) {
  const Expr e = Expr::sum({x(0), Expr::product({c(12), Expr::power(x(1), 2.0)})});
  EXPECT_EQ(e.to_string(), "(+ x0 (* 12 (^ x1 2)))");
  EXPECT_EQ(e.var_bound(), 2u);
  EXPECT_EQ(c(3).var_bound(), 0u);
}

TEST(ExprStructure, EqualityIsStructural) {
  EXPECT_EQ(x(0) + c(1), x(0) + c(1));
  EXPECT_NE(x(0) + c(1), c(1) + x(0));
  EXPECT_NE(Expr::power(x(0), 2.0), Expr::power(x(0), 3.0));
}

TEST(FoldConstants, CollapsesConstantSubtrees) {
  const Expr e = c(2) * c(3) + x(0) * c(1) + c(0);
  const Expr folded = fold_constants(e);
  EXPECT_EQ(folded, x(0) + c(6)) << folded.to_string();  // constants go last
  EXPECT_EQ(fold_constants(Expr::exp(c(0))), c(1));
  EXPECT_EQ(fold_constants(-(-x(0))), x(0));
}

TEST(FoldConstants, FlattensNestedSums) {
  const Expr folded = fold_constants((x(0) + x(1)) + (x(2) + c(1)) + c(2));
  ASSERT_EQ(folded.kind(), ExprKind::kSum);
  EXPECT_EQ(folded.children().size(), 4u) << folded.to_string();
  EXPECT_EQ(folded.children().back(), c(3));
}

TEST(FoldConstants, IsIdempotentOnRandomTrees) {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 300) {
    auto sample = random_case(rng, 3, 5);
    if (!sample) continue;
    const Expr once = fold_constants(sample->expr);
    EXPECT_EQ(fold_constants(once), once) << sample->expr.to_string();
    EXPECT_NEAR(evaluate(once, sample->point), evaluate(sample->expr, sample->point),
                1e-9 * std::max(1.0, std::fabs(evaluate(sample->expr, sample->point))));
    ++checked;
  }
}

TEST(DetectLinear, AffineForms) {
  const auto form = detect_linear(c(2) * x(0) - c(3) * x(2) + c(5) + x(0) * c(0));
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->coefficients.size(), 2u);
  EXPECT_DOUBLE_EQ(form->coefficients.at(0), 2.0);
  EXPECT_DOUBLE_EQ(form->coefficients.at(2), -3.0);
  EXPECT_DOUBLE_EQ(form->constant, 5.0);
}

TEST(DetectLinear, RejectsNonlinear) {
  EXPECT_FALSE(detect_linear(x(0) * x(1)).has_value());
  EXPECT_FALSE(detect_linear(Expr::power(x(0), 2.0)).has_value());
  EXPECT_FALSE(detect_linear(Expr::exp(x(0))).has_value());
  EXPECT_FALSE(detect_linear(Expr::div(c(1), x(0))).has_value());
}

TEST(DetectLinear, DivisionByConstantAndCancellation) {
  const auto form = detect_linear(Expr::div(x(0), c(4)) + x(1) - x(1));
  ASSERT_TRUE(form.has_value());
  EXPECT_DOUBLE_EQ(form->coefficients.at(0), 0.25);
  EXPECT_EQ(form->coefficients.count(1), 0u);
}

TEST(DetectLinear, ExactOnIntegerPoints) {
  const Expr e = c(3) * x(0) - Expr::div(x(1), c(2)) + c(7) * (x(2) - c(1));
  const auto form = detect_linear(e);
  ASSERT_TRUE(form.has_value());
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      for (int d = -3; d <= 3; ++d) {
        const Point p{double(a), double(b), double(d)};
        EXPECT_EQ(form->evaluate(p), evaluate(e, p));
      }
    }
  }
}

TEST(Gradient, ClosedForm) {
  const Expr e = x(0) * x(1) + Expr::sin(x(0)) + Expr::power(x(1), 3.0);
  const auto g = gradient(e, Point{0.3, -1.2});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0], -1.2 + std::cos(0.3), 1e-15);
  EXPECT_NEAR(g[1], 0.3 + 3 * 1.44, 1e-14);
}

TEST(Gradient, ProductWithZeroFactors) {
  const Expr e = Expr::product({x(0), x(1), x(2)});
  auto g = gradient(e, Point{0.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(g[0], 6.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
  g = gradient(e, Point{0.0, 0.0, 3.0});
  EXPECT_DOUBLE_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[2], 0.0);
}

TEST(Gradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(2026);
  int checked = 0;
  while (checked < 500) {
    auto sample = random_case(rng, 4, 6);
    if (!sample) continue;
    const auto g = gradient(sample->expr, sample->point);
    for (std::size_t j = 0; j < sample->point.size(); ++j) {
      const double fd = central_difference(sample->expr, sample->point, j);
      ASSERT_LE(relative_error(g[j], fd), 1e-5)
          << sample->expr.to_string() << " component " << j;
    }
    ++checked;
  }
}

TEST(Tape, AgreesWithRecursiveEvaluation) {
  std::mt19937_64 rng(11);
  int checked = 0;
  TapeWorkspace ws;
  while (checked < 200) {
    auto sample = random_case(rng, 3, 6);
    if (!sample) continue;
    const Tape tape(sample->expr);
    EXPECT_DOUBLE_EQ(tape.evaluate(sample->point, ws), evaluate(sample->expr, sample->point));
    std::vector<double> grad(3, 1.0);
    tape.accumulate_gradient(sample->point, 2.0, grad, ws);
    const auto g = gradient(sample->expr, sample->point);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(grad[j], 1.0 + 2.0 * g[j], 1e-9 * (1 + std::fabs(g[j])));
    ++checked;
  }
}

TEST(Tape, DeepTreesDoNotOverflowTheStack) {
  Expr e = x(0);
  for (int i = 0; i < 100000; ++i) e = Expr::sin(e);
  const Tape tape(e);
  TapeWorkspace ws;
  std::vector<double> grad(1, 0.0);
  const double v = tape.accumulate_gradient(Point{0.1}, 1.0, grad, ws);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_TRUE(std::isfinite(grad[0]));
}

}  // namespace
}  // namespace nlbb
