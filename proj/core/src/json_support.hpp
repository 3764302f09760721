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

#include <cmath>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nlbb/errors.hpp"
#include "nlbb/options.hpp"

namespace nlbb::detail {

using Json = nlohmann::ordered_json;

/// Finite numbers stay numbers; infinities and NaN become strings.
inline Json encode_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double decode_number(const Json& value, const std::string& field);

/// Parses text, converting syntax errors into ParseError with line/column.
Json parse_json(std::string_view text);

Json options_to_json(const SolverOptions& options);
SolverOptions options_from_json(const Json& object, const std::string& field = "options");

}  // namespace nlbb::detail
