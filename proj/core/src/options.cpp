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

#include <array>
#include <cmath>
#include <utility>

#include "nlbb/errors.hpp"

namespace nlbb {

namespace {

constexpr std::array<std::pair<BranchingStrategy, std::string_view>, 5> kBranchingNames{{
    {BranchingStrategy::kMostInfeasible, "most-infeasible"},
    {BranchingStrategy::kPseudoCost, "pseudo"},
    {BranchingStrategy::kStrong, "strong"},
    {BranchingStrategy::kReliability, "reliability"},
    {BranchingStrategy::kStrongRootThenPseudo, "strong-root"},
}};

constexpr std::array<std::pair<Traversal, std::string_view>, 2> kTraversalNames{{
    {Traversal::kBestFirst, "best"},
    {Traversal::kDepthFirst, "depth"},
}};

constexpr std::array<std::pair<PumpMode, std::string_view>, 3> kPumpNames{{
    {PumpMode::kOff, "off"},
    {PumpMode::kRounding, "rounding"},
    {PumpMode::kMipProjection, "mip"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N>& table,
                          std::string_view text) {
  for (const auto& [e, name] : table) {
    if (name == text) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(BranchingStrategy s) { return name_of(kBranchingNames, s); }
std::string_view to_string(Traversal t) { return name_of(kTraversalNames, t); }
std::string_view to_string(PumpMode m) { return name_of(kPumpNames, m); }

std::optional<BranchingStrategy> parse_branching(std::string_view text) {
  return value_of(kBranchingNames, text);
}
std::optional<Traversal> parse_traversal(std::string_view text) {
  return value_of(kTraversalNames, text);
}
std::optional<PumpMode> parse_pump_mode(std::string_view text) {
  return value_of(kPumpNames, text);
}

void SolverOptions::validate() const {
  if (!(gap_tolerance > 0.0 && gap_tolerance < 1.0)) {
    throw ValidationError("gap", "must lie in (0, 1)");
  }
  if (!(time_limit >= 0.0)) throw ValidationError("time_limit", "must be non-negative");
  if (!(pump_time_limit >= 0.0)) throw ValidationError("pump_time", "must be non-negative");
  if (!(strong_branching_budget >= 0.0)) {
    throw ValidationError("strong_branching_budget", "must be non-negative");
  }
  if (!(integrality_tolerance > 0.0 && integrality_tolerance < 0.5)) {
    throw ValidationError("integrality_tolerance", "must lie in (0, 0.5)");
  }
  if (root_restart_limit < 1) throw ValidationError("root_restarts", "must be at least 1");
  if (reliability_threshold < 1) {
    throw ValidationError("reliability_threshold", "must be at least 1");
  }
  if (workers < 1) throw ValidationError("workers", "must be at least 1");
}

}  // namespace nlbb
