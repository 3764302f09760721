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

#include "nlbb/options.hpp"

#include <gtest/gtest.h>

#include "nlbb/errors.hpp"
#include "nlbb/io.hpp"

namespace nlbb {
namespace {

TEST(SolverOptions, Defaults) {
  const SolverOptions o;
  EXPECT_EQ(o.branching, BranchingStrategy::kStrongRootThenPseudo);
  EXPECT_EQ(o.traversal, Traversal::kBestFirst);
  EXPECT_DOUBLE_EQ(o.gap_tolerance, 1e-4);
  EXPECT_DOUBLE_EQ(o.time_limit, 3600.0);
  EXPECT_DOUBLE_EQ(o.strong_branching_budget, 100.0);
  EXPECT_EQ(o.root_restart_limit, 3);
  EXPECT_EQ(o.pump, PumpMode::kRounding);
  EXPECT_DOUBLE_EQ(o.pump_time_limit, 60.0);
  EXPECT_EQ(o.workers, 1);
  EXPECT_TRUE(o.prune_on_local_bound);
  EXPECT_NO_THROW(o.validate());
}

void expect_invalid(SolverOptions o, const std::string& field) {
  try {
    o.validate();
    ADD_FAILURE() << "expected ValidationError for " << field;
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), field);
  }
}

TEST(SolverOptions, ValidateNamesTheField) {
  SolverOptions o;
  o.gap_tolerance = -1;
  expect_invalid(o, "gap");
  o = {};
  o.time_limit = -0.5;
  expect_invalid(o, "time_limit");
  o = {};
  o.workers = 0;
  expect_invalid(o, "workers");
  o = {};
  o.root_restart_limit = 0;
  expect_invalid(o, "root_restarts");
  o = {};
  o.integrality_tolerance = 0.5;
  expect_invalid(o, "integrality_tolerance");
}

TEST(SolverOptions, ZeroTimeLimitIsValid) {
  SolverOptions o;
  o.time_limit = 0;
  o.pump_time_limit = 0;
  EXPECT_NO_THROW(o.validate());
}

TEST(Spellings, RoundTrip) {
  for (auto s : {BranchingStrategy::kMostInfeasible, BranchingStrategy::kPseudoCost,
                 BranchingStrategy::kStrong, BranchingStrategy::kReliability,
                 BranchingStrategy::kStrongRootThenPseudo}) {
    EXPECT_EQ(parse_branching(to_string(s)), s);
  }
  for (auto t : {Traversal::kBestFirst, Traversal::kDepthFirst}) {
    EXPECT_EQ(parse_traversal(to_string(t)), t);
  }
  for (auto m : {PumpMode::kOff, PumpMode::kRounding, PumpMode::kMipProjection}) {
    EXPECT_EQ(parse_pump_mode(to_string(m)), m);
  }
  EXPECT_EQ(parse_branching("strong-root"), BranchingStrategy::kStrongRootThenPseudo);
  EXPECT_FALSE(parse_branching("random").has_value());
  EXPECT_FALSE(parse_traversal("").has_value());
}

TEST(OptionsJson, RoundTrip) {
  SolverOptions o;
  o.branching = BranchingStrategy::kReliability;
  o.traversal = Traversal::kDepthFirst;
  o.time_limit = kInf;
  o.seed = 0xfeedfacecafebeefULL;
  o.workers = 3;
  o.record_trace = true;
  EXPECT_EQ(parse_options(write_options(o)), o);
}

TEST(OptionsJson, MissingFieldsKeepDefaults) {
  const SolverOptions o = parse_options(R"({"gap": 0.01})");
  EXPECT_DOUBLE_EQ(o.gap_tolerance, 0.01);
  EXPECT_DOUBLE_EQ(o.time_limit, 3600.0);
}

TEST(OptionsJson, RejectsUnknownAndInvalid) {
  EXPECT_THROW(parse_options(R"({"colour": 1})"), ValidationError);
  EXPECT_THROW(parse_options(R"({"branching": "random"})"), ValidationError);
  EXPECT_THROW(parse_options(R"({"workers": 0})"), ValidationError);
  EXPECT_THROW(parse_options(R"({"gap": )"), ParseError);
}

}  // namespace
}  // namespace nlbb
