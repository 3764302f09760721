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

#include <iosfwd>
#include <string>
#include <vector>

#include "nlbb/engine.hpp"

namespace nlbb {

/// Process exit code for a finished solve: 0 with a feasible point, 2 when
/// proven infeasible, 3 on a time limit without a point, 1 on error.
int exit_code(SolveStatus status);

/// Command-line front end. `args` excludes the program name:
///
///   solve <file> [--branching strong-root|pseudo|strong|reliability|most-infeasible]
///                [--traverse best|depth] [--pump off|rounding|mip] [--pump-time S]
///                [--gap G] [--time-limit S] [--workers N] [--seed K] [--out path]
///   bench <dir> --configs <file> [--profile path] [--summary path]
///
/// Usage, IO and parse errors return 1 with a message on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlbb
