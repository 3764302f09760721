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

#include "nlbb/engine.hpp"

namespace nlbb {

/// Orchestrator/worker tree search with options.workers - 1 worker threads.
/// The calling thread owns the open set, the incumbent, the pseudo-cost
/// table and the termination test; workers process one node at a time and
/// report back over a channel. Final objectives match the sequential search
/// on convex models; node counts and pseudo-cost histories need not.
/// Throws ContractViolation when options.workers < 2.
SolveResult parallel_solve(const Model& model, const SolverOptions& options);

}  // namespace nlbb
