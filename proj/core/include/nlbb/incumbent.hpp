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
#include <string_view>

#include "nlbb/model.hpp"

namespace nlbb {

enum class IncumbentSource { kTreeSearch, kFeasibilityPump };

std::string_view to_string(IncumbentSource source);

/// Best integer- and constraint-feasible point found so far.
struct Incumbent {
  Point point;
  /// Canonical (minimize) sense.
  double objective = kInf;
  /// Seconds since the solve started.
  double seconds = 0.0;
  /// Node that produced it; -1 for the feasibility pump.
  std::int64_t node_id = -1;
  IncumbentSource source = IncumbentSource::kTreeSearch;
};

}  // namespace nlbb
