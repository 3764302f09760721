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

#include <gtest/gtest.h>

#include "nlbb/errors.hpp"

namespace nlbb {
namespace {

Expr x(std::size_t i) { return Expr::var(i); }
Expr c(double v) { return Expr::constant(v); }

RawModel small_raw() {
  RawModel raw;
  raw.variables = {{"a", 0, 10, true}, {"b", -1, 1, false}};
  raw.sense = Sense::kMaximize;
  raw.objective = c(3) * x(0) + x(1);
  raw.constraints = {
      {x(0) + x(1), Relation::kLessEqual, c(6)},
      {Expr::power(x(1), 2.0), Relation::kGreaterEqual, c(0.25)},
      {x(0) - x(1), Relation::kEqual, c(2)},
  };
  return raw;
}

TEST(Canonicalize, MaximizeBecomesNegatedMinimize) {
  const Model m = canonicalize(small_raw());
  EXPECT_TRUE(m.was_maximize());
  const Point p{2.0, 0.5};
  EXPECT_DOUBLE_EQ(evaluate(m.objective(), p), -6.5);
  EXPECT_DOUBLE_EQ(m.to_original_sense(evaluate(m.objective(), p)), 6.5);
}

TEST(Canonicalize, RelationsBecomeLessEqualZero) {
  const Model m = canonicalize(small_raw());
  ASSERT_EQ(m.constraints().size(), 4u);  // the equality splits in two
  const Point p{2.0, 0.5};
  EXPECT_DOUBLE_EQ(evaluate(m.constraints()[0].body, p), 2.5 - 6.0);
  EXPECT_DOUBLE_EQ(evaluate(m.constraints()[1].body, p), 0.25 - 0.25);
  EXPECT_DOUBLE_EQ(evaluate(m.constraints()[2].body, p), 1.5 - 2.0);
  EXPECT_DOUBLE_EQ(evaluate(m.constraints()[3].body, p), 2.0 - 1.5);
}

TEST(Canonicalize, TagsLinearity) {
  const Model m = canonicalize(small_raw());
  EXPECT_TRUE(m.constraints()[0].linear);
  EXPECT_FALSE(m.constraints()[1].linear);
  EXPECT_TRUE(m.constraints()[2].linear);
}

TEST(Canonicalize, IntegerIndicesAscending) {
  RawModel raw = small_raw();
  raw.variables.push_back({"c", 0, 3, true});
  const Model m = canonicalize(raw);
  EXPECT_EQ(m.integer_indices(), (std::vector<std::size_t>{0, 2}));
}

TEST(Canonicalize, RejectsEmptyVariables) {
  RawModel raw;
  try {
    canonicalize(raw);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "variables");
  }
}

TEST(Canonicalize, RejectsDuplicateNames) {
  RawModel raw = small_raw();
  raw.variables[1].name = "a";
  EXPECT_THROW(canonicalize(raw), ValidationError);
}

TEST(Canonicalize, RejectsInvertedBounds) {
  RawModel raw = small_raw();
  raw.variables[1].lower = 2;
  try {
    canonicalize(raw);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "variables[1]");
  }
}

TEST(Canonicalize, RejectsUnboundedInteger) {
  RawModel raw = small_raw();
  raw.variables[0].upper = kInf;
  EXPECT_THROW(canonicalize(raw), ValidationError);
}

TEST(Canonicalize, RejectsOutOfRangeIndex) {
  RawModel raw = small_raw();
  raw.constraints[0].lhs = x(5);
  try {
    canonicalize(raw);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "constraints[0]");
  }
}

TEST(Canonicalize, IntegerBoxWithoutIntegersIsAccepted) {
  RawModel raw;
  raw.variables = {{"x", 0.3, 0.7, true}};
  raw.objective = x(0);
  EXPECT_NO_THROW(canonicalize(raw));
}

TEST(Model, ToRawRoundTrips) {
  const Model m = canonicalize(small_raw());
  EXPECT_EQ(canonicalize(m.to_raw()), m);
}

TEST(Model, WithBoundsReplacesBoxOnly) {
  const Model m = canonicalize(small_raw());
  const Model sub = m.with_bounds({1, 0}, {2, 1});
  EXPECT_EQ(sub.lower(), (std::vector<double>{1, 0}));
  EXPECT_EQ(sub.objective(), m.objective());
  EXPECT_EQ(sub.constraints(), m.constraints());
}

TEST(Feasibility, ToleranceAndIntegrality) {
  const Model m = canonicalize(small_raw());
  EXPECT_TRUE(is_feasible(m, Point{1.0, -1.0}));
  EXPECT_FALSE(is_feasible(m, Point{2.0, 0.5}));  // a - b = 1.5, not 2
  EXPECT_FALSE(is_feasible(m, Point{2.0, 0.0}));  // b^2 < 0.25
  EXPECT_FALSE(is_feasible(m, Point{1.001, -0.999}));  // fractional a
  EXPECT_TRUE(is_feasible(m, Point{1.0 + 5e-7, -1.0}, 1e-6, 1e-6));
  EXPECT_DOUBLE_EQ(max_integrality_violation(m, Point{1.25, 0.0}), 0.25);
  EXPECT_DOUBLE_EQ(max_violation(m, Point{2.0, 0.5}), 0.5);
}

TEST(Feasibility, DomainErrorCountsAsInfeasible) {
  RawModel raw;
  raw.variables = {{"x", -1, 1, false}};
  raw.objective = x(0);
  raw.constraints = {{Expr::log(x(0)), Relation::kLessEqual, c(0)}};
  const Model m = canonicalize(raw);
  EXPECT_FALSE(is_feasible(m, Point{-0.5}));
  EXPECT_TRUE(is_feasible(m, Point{0.5}));
}

}  // namespace
}  // namespace nlbb
