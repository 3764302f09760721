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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nlbb {

enum class BranchingStrategy {
  kMostInfeasible,
  kPseudoCost,
  kStrong,
  kReliability,
  /// Strong branching at the root, pseudo-cost branching below it.
  kStrongRootThenPseudo,
};

enum class Traversal { kBestFirst, kDepthFirst };

enum class PumpMode { kOff, kRounding, kMipProjection };

struct SolverOptions {
  BranchingStrategy branching = BranchingStrategy::kStrongRootThenPseudo;
  Traversal traversal = Traversal::kBestFirst;
  double gap_tolerance = 1e-4;             // 0.01 %
  double time_limit = 3600.0;              // seconds
  double integrality_tolerance = 1e-6;
  double strong_branching_budget = 100.0;  // seconds
  int root_restart_limit = 3;
  int reliability_threshold = 5;
  PumpMode pump = PumpMode::kRounding;
  double pump_time_limit = 60.0;  // seconds
  int workers = 1;
  std::uint64_t seed = 0;
  bool prune_on_local_bound = true;
  /// Keep per-node traces (branch decisions, popped bounds) in the result.
  bool record_trace = false;

  /// Throws ValidationError naming the offending field.
  void validate() const;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

// CLI spellings: "most-infeasible", "pseudo", "strong", "reliability",
// "strong-root"; "best", "depth"; "off", "rounding", "mip".
std::string_view to_string(BranchingStrategy s);
std::string_view to_string(Traversal t);
std::string_view to_string(PumpMode m);
std::optional<BranchingStrategy> parse_branching(std::string_view text);
std::optional<Traversal> parse_traversal(std::string_view text);
std::optional<PumpMode> parse_pump_mode(std::string_view text);

}  // namespace nlbb
