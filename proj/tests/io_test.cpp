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

#include "nlbb/io.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nlbb/errors.hpp"
#include "support/oracle.hpp"

namespace nlbb {
namespace {

std::vector<std::filesystem::path> all_instances() {
  auto out = testing::oracle_instances();
  const auto extra = testing::extra_instances();
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

TEST(Instance, ParsesTheDocumentedShape) {
  const Model m = parse_instance(R"({
    "variables": [{"name": "x1", "lb": 0, "ub": 10, "integer": true},
                  {"name": "y", "lb": "-inf", "ub": null}],
    "objective": {"sense": "max", "expr": ["+", ["*", 12, ["^", ["var", "x1"], 2]], ["var", "y"]]},
    "constraints": [{"expr": ["-", ["var", "x1"], ["var", "y"]], "op": "==", "rhs": 1},
                    {"expr": ["exp", ["var", "y"]], "op": "<=", "rhs": 6}]
  })");
  EXPECT_EQ(m.var_count(), 2u);
  EXPECT_TRUE(m.was_maximize());
  EXPECT_EQ(m.lower()[1], -kInf);
  EXPECT_EQ(m.upper()[1], kInf);
  EXPECT_EQ(m.constraints().size(), 3u);
  EXPECT_DOUBLE_EQ(evaluate(m.objective(), Point{2, 1}), -(48.0 + 1.0));
}

TEST(Instance, RoundTripsTheCorpus) {
  for (const auto& path : all_instances()) {
    const Model m = load_instance(path);
    const std::string text = write_instance(m);
    EXPECT_EQ(parse_instance(text), m) << path.filename();
    EXPECT_EQ(write_instance(parse_instance(text)), text) << path.filename();
  }
}

TEST(Instance, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_instance("{\n  \"variables\": [\n    {\"name\": \"a\",, }\n  ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 10u);
  }
}

TEST(Instance, UndeclaredNameIsAValidationError) {
  try {
    parse_instance(R"({"variables": [{"name": "a", "lb": 0, "ub": 1}],
                       "objective": {"sense": "min", "expr": ["var", "b"]}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("undeclared variable \"b\""), std::string::npos);
    EXPECT_EQ(e.field().rfind("objective", 0), 0u) << e.field();
  }
}

TEST(Instance, EmptyVariablesAreRejected) {
  try {
    parse_instance(R"({"variables": [], "objective": {"sense": "min", "expr": 0}})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "variables");
  }
}

TEST(Instance, StructuralErrors) {
  const char* bad[] = {
      R"([1, 2])",
      R"({"variables": [{"name": "a"}], "objective": {"sense": "up", "expr": 0}})",
      R"({"variables": [{"name": "a"}], "objective": {"sense": "min", "expr": ["tan", 1]}})",
      R"({"variables": [{"name": "a"}], "objective": {"sense": "min", "expr": ["^", ["var", "a"], ["var", "a"]]}})",
      R"({"variables": [{"name": "a"}], "objective": {"sense": "min", "expr": 0}, "extra": 1})",
      R"({"variables": [{"name": "a"}, {"name": "a"}], "objective": {"sense": "min", "expr": 0}})",
      R"({"variables": [{"name": "a"}], "objective": {"sense": "min", "expr": 0},
          "constraints": [{"expr": 1, "op": "<", "rhs": 0}]})",
      R"({"variables": [{"name": "a", "integer": true}], "objective": {"sense": "min", "expr": 0}})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_instance(text), ValidationError) << text;
}

TEST(Instance, MissingFileNamesThePath) {
  try {
    load_instance("/nonexistent/thing.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/thing.json"), std::string::npos);
  }
}

TEST(ResultFile, RoundTripsAndReevaluates) {
  const Model m = load_instance(testing::corpus_dir() / "oracle" / "log_sqrt.json");
  SolverOptions options;
  options.seed = 17;
  const SolveResult r = solve(m, options);
  const ResultFile file = make_result_file(m, r, options);
  const ResultFile back = parse_result(write_result(file));
  EXPECT_EQ(back, file);
  ASSERT_TRUE(back.objective.has_value());
  ASSERT_EQ(back.assignment.size(), m.var_count());
  Point p;
  for (std::size_t j = 0; j < m.var_count(); ++j) {
    EXPECT_EQ(back.assignment[j].first, m.variables()[j].name);
    p.push_back(back.assignment[j].second);
  }
  EXPECT_NEAR(m.to_original_sense(evaluate(m.objective(), p)), *back.objective, 1e-8);
  EXPECT_EQ(back.status, "optimal");
}

TEST(ResultFile, NonFiniteValuesSurvive) {
  ResultFile f;
  f.status = "no_solution_time_limit";
  f.best_bound = -kInf;
  f.gap = kInf;
  f.options.time_limit = kInf;
  const ResultFile back = parse_result(write_result(f));
  EXPECT_EQ(back, f);
  EXPECT_FALSE(back.objective.has_value());
}

TEST(ResultFile, RejectsGarbage) {
  EXPECT_THROW(parse_result("{"), ParseError);
  EXPECT_THROW(parse_result("[]"), ValidationError);
}

}  // namespace
}  // namespace nlbb
