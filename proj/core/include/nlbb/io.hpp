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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlbb/engine.hpp"
#include "nlbb/model.hpp"
#include "nlbb/options.hpp"

namespace nlbb {

// Instance documents are JSON:
//
//   {
//     "variables":   [{"name": "x1", "lb": 0, "ub": 10, "integer": true}, ...],
//     "objective":   {"sense": "max", "expr": <expr>},
//     "constraints": [{"expr": <expr>, "op": "<=", "rhs": 6}, ...]
//   }
//
// <expr> is a number or a prefix array: ["var", name], ["+", a, b, ...],
// ["-", a] or ["-", a, b], ["*", a, b, ...], ["/", a, b], ["^", a, number],
// and ["exp" | "log" | "sin" | "cos" | "sqrt", a]. Infinite bounds are written
// as "inf" / "-inf"; a missing or null bound is infinite.

/// Parses an instance document without canonicalizing it. Throws ParseError
/// (with line and column) on malformed JSON and ValidationError naming the
/// offending field on a structurally wrong document.
RawModel parse_raw_instance(std::string_view text);

/// parse_raw_instance followed by canonicalize.
Model parse_instance(std::string_view text);

/// Reads and parses `path`. Throws Error naming the path when it cannot be read.
Model load_instance(const std::filesystem::path& path);

/// Serializes a model so that parse_instance(write_instance(m)) == m.
std::string write_instance(const Model& model);

/// Everything a solve reports, in the user's objective sense.
struct ResultFile {
  std::string status;
  std::optional<double> objective;
  /// Variable name -> value, in declaration order.
  std::vector<std::pair<std::string, double>> assignment;
  double best_bound = -kInf;
  double gap = kInf;
  std::int64_t nodes = 0;
  int restarts = 0;
  int relaxation_failures = 0;
  bool pump_ran = false;
  bool pump_found = false;
  int pump_iterations = 0;
  double pump_seconds = 0.0;
  double wall_seconds = 0.0;
  SolverOptions options;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

ResultFile make_result_file(const Model& model, const SolveResult& result,
                            const SolverOptions& options);

/// Lossless JSON; non-finite numbers are written as "inf", "-inf" or "nan".
std::string write_result(const ResultFile& result);
ResultFile parse_result(std::string_view text);

/// JSON object with every option field.
std::string write_options(const SolverOptions& options);
/// Reads an options object; missing fields keep their defaults, unknown
/// fields and bad values throw ValidationError.
SolverOptions parse_options(std::string_view text);

}  // namespace nlbb
