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
#include <vector>

#include "nlbb/model.hpp"
#include "nlbb/nlp.hpp"

namespace nlbb {

enum class BranchDirection { kDown, kUp };

/// How a node was created from its parent.
struct BranchOrigin {
  std::size_t variable = 0;
  BranchDirection direction = BranchDirection::kDown;
  /// Parent relaxation objective, for pseudo-cost bookkeeping.
  double parent_objective = 0.0;
  /// Distance the branch moved the variable: f for down, 1 - f for up.
  double fraction = 0.5;
};

/// A tree-search node. Local bounds nest within the parent's and are integral
/// for integer variables.
struct Node {
  std::int64_t id = 0;
  int depth = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Lower bound on every completion of this node. Inherited from the parent
  /// until the node's own relaxation is solved; -inf at an unsolved root.
  double bound = -kInf;
  std::optional<NlpResult> relaxation;
  std::optional<BranchOrigin> origin;
  /// Parent relaxation point, used as the warm start.
  Point warm_start;

  std::optional<std::size_t> branched_variable() const {
    if (origin) return origin->variable;
    return std::nullopt;
  }
};

}  // namespace nlbb
