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

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json_support.hpp"

namespace nlbb {

namespace detail {

double decode_number(const Json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ValidationError(field, "expected a number, got " + value.dump());
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the character that failed.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("; "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(what, line, offset - line_start + 1);
  }
}

Json options_to_json(const SolverOptions& o) {
  Json j;
  j["branching"] = std::string(to_string(o.branching));
  j["traversal"] = std::string(to_string(o.traversal));
  j["gap"] = o.gap_tolerance;
  j["time_limit"] = encode_number(o.time_limit);
  j["integrality_tolerance"] = o.integrality_tolerance;
  j["strong_branching_budget"] = encode_number(o.strong_branching_budget);
  j["root_restarts"] = o.root_restart_limit;
  j["reliability_threshold"] = o.reliability_threshold;
  j["pump"] = std::string(to_string(o.pump));
  j["pump_time"] = encode_number(o.pump_time_limit);
  j["workers"] = o.workers;
  j["seed"] = o.seed;
  j["prune_on_local_bound"] = o.prune_on_local_bound;
  j["record_trace"] = o.record_trace;
  return j;
}

namespace {

std::string text_field(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "expected a string");
  return j.get<std::string>();
}

int int_field(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "expected an integer");
  return j.get<int>();
}

bool bool_field(const Json& j, const std::string& field) {
  if (!j.is_boolean()) throw ValidationError(field, "expected true or false");
  return j.get<bool>();
}

}  // namespace

SolverOptions options_from_json(const Json& object, const std::string& field) {
  if (!object.is_object()) throw ValidationError(field, "expected an object");
  SolverOptions o;
  for (const auto& [key, value] : object.items()) {
    const std::string name = field + "." + key;
    if (key == "branching") {
      auto v = parse_branching(text_field(value, name));
      if (!v) throw ValidationError(name, "unknown branching strategy " + value.dump());
      o.branching = *v;
    } else if (key == "traversal") {
      auto v = parse_traversal(text_field(value, name));
      if (!v) throw ValidationError(name, "unknown traversal " + value.dump());
      o.traversal = *v;
    } else if (key == "pump") {
      auto v = parse_pump_mode(text_field(value, name));
      if (!v) throw ValidationError(name, "unknown pump mode " + value.dump());
      o.pump = *v;
    } else if (key == "gap") {
      o.gap_tolerance = decode_number(value, name);
    } else if (key == "time_limit") {
      o.time_limit = decode_number(value, name);
    } else if (key == "integrality_tolerance") {
      o.integrality_tolerance = decode_number(value, name);
    } else if (key == "strong_branching_budget") {
      o.strong_branching_budget = decode_number(value, name);
    } else if (key == "pump_time") {
      o.pump_time_limit = decode_number(value, name);
    } else if (key == "root_restarts") {
      o.root_restart_limit = int_field(value, name);
    } else if (key == "reliability_threshold") {
      o.reliability_threshold = int_field(value, name);
    } else if (key == "workers") {
      o.workers = int_field(value, name);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ValidationError(name, "expected a non-negative integer");
      o.seed = value.get<std::uint64_t>();
    } else if (key == "prune_on_local_bound") {
      o.prune_on_local_bound = bool_field(value, name);
    } else if (key == "record_trace") {
      o.record_trace = bool_field(value, name);
    } else {
      throw ValidationError(name, "unknown option");
    }
  }
  o.validate();
  return o;
}

}  // namespace detail

namespace {

using detail::Json;

class ExprReader {
 public:
  explicit ExprReader(const std::unordered_map<std::string, std::size_t>& names)
      : names_(names) {}

  Expr read(const Json& j, const std::string& field) const {
    if (j.is_number()) return Expr::constant(j.get<double>());
    if (!j.is_array() || j.empty() || !j[0].is_string()) {
      throw ValidationError(field, "expected a number or a prefix array, got " + j.dump());
    }
    const std::string op = j[0].get<std::string>();
    const std::size_t arity = j.size() - 1;
    auto arg = [&](std::size_t i) { return read(j[i], field + "[" + std::to_string(i) + "]"); };
    auto need = [&](bool ok, const char* shape) {
      if (!ok) throw ValidationError(field, "operator \"" + op + "\" takes " + shape);
    };

    if (op == "var") {
      need(arity == 1 && j[1].is_string(), "one variable name");
      const std::string name = j[1].get<std::string>();
      auto it = names_.find(name);
      if (it == names_.end()) throw ValidationError(field, "undeclared variable \"" + name + "\"");
      return Expr::var(it->second);
    }
    if (op == "+" || op == "*") {
      need(arity >= 1, "at least one operand");
      std::vector<Expr> terms;
      for (std::size_t i = 1; i <= arity; ++i) terms.push_back(arg(i));
      if (terms.size() == 1) return terms.front();
      return op == "+" ? Expr::sum(std::move(terms)) : Expr::product(std::move(terms));
    }
    if (op == "-") {
      need(arity == 1 || arity == 2, "one or two operands");
      if (arity == 1) return Expr::negate(arg(1));
      return arg(1) - arg(2);
    }
    if (op == "/") {
      need(arity == 2, "two operands");
      return Expr::div(arg(1), arg(2));
    }
    if (op == "^") {
      need(arity == 2, "a base and an exponent");
      const Expr exponent = fold_constants(arg(2));
      if (!exponent.is_constant()) throw ValidationError(field, "exponent must be a number");
      return Expr::power(arg(1), exponent.value());
    }
    using Unary = Expr (*)(Expr);
    static const std::unordered_map<std::string, Unary> kUnary{
        {"exp", &Expr::exp}, {"log", &Expr::log},   {"sin", &Expr::sin},
        {"cos", &Expr::cos}, {"sqrt", &Expr::sqrt},
    };
    if (auto it = kUnary.find(op); it != kUnary.end()) {
      need(arity == 1, "one operand");
      return it->second(arg(1));
    }
    throw ValidationError(field, "unknown operator \"" + op + "\"");
  }

 private:
  const std::unordered_map<std::string, std::size_t>& names_;
};

Json write_expr(const Expr& e, const std::vector<Variable>& vars) {
  auto with_children = [&](const char* op) {
    Json a = Json::array({op});
    for (const Expr& c : e.children()) a.push_back(write_expr(c, vars));
    return a;
  };
  switch (e.kind()) {
    case ExprKind::kConstant: return detail::encode_number(e.value());
    case ExprKind::kVar: return Json::array({"var", vars.at(e.index()).name});
    case ExprKind::kSum: return with_children("+");
    case ExprKind::kProduct: return with_children("*");
    case ExprKind::kNegate: return with_children("-");
    case ExprKind::kDiv: return with_children("/");
    case ExprKind::kExp: return with_children("exp");
    case ExprKind::kLog: return with_children("log");
    case ExprKind::kSin: return with_children("sin");
    case ExprKind::kCos: return with_children("cos");
    case ExprKind::kSqrt: return with_children("sqrt");
    case ExprKind::kPower: {
      Json a = with_children("^");
      a.push_back(e.exponent());
      return a;
    }
  }
  throw ContractViolation("unknown expression kind");
}

const Json& member(const Json& object, const char* key, const std::string& field) {
  auto it = object.find(key);
  if (it == object.end()) throw ValidationError(field + "." + key, "missing");
  return *it;
}

double bound_field(const Json& object, const char* key, double missing, const std::string& field) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return missing;
  return detail::decode_number(*it, field + "." + key);
}

}  // namespace

RawModel parse_raw_instance(std::string_view text) {
  const Json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ValidationError("", "instance must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "variables" && key != "objective" && key != "constraints" && key != "name") {
      throw ValidationError(key, "unknown top-level field");
    }
  }

  RawModel raw;
  const Json& vars = member(doc, "variables", "instance");
  if (!vars.is_array()) throw ValidationError("variables", "expected an array");
  std::unordered_map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string field = "variables[" + std::to_string(i) + "]";
    const Json& v = vars[i];
    if (!v.is_object()) throw ValidationError(field, "expected an object");
    Variable var;
    const Json& name = member(v, "name", field);
    if (!name.is_string()) throw ValidationError(field + ".name", "expected a string");
    var.name = name.get<std::string>();
    var.lower = bound_field(v, "lb", -kInf, field);
    var.upper = bound_field(v, "ub", kInf, field);
    if (auto it = v.find("integer"); it != v.end()) {
      if (!it->is_boolean()) throw ValidationError(field + ".integer", "expected true or false");
      var.integer = it->get<bool>();
    }
    if (!names.emplace(var.name, i).second) {
      throw ValidationError(field + ".name", "duplicate variable \"" + var.name + "\"");
    }
    raw.variables.push_back(std::move(var));
  }

  const ExprReader reader(names);
  const Json& objective = member(doc, "objective", "instance");
  if (!objective.is_object()) throw ValidationError("objective", "expected an object");
  const Json& sense = member(objective, "sense", "objective");
  if (sense == "min") {
    raw.sense = Sense::kMinimize;
  } else if (sense == "max") {
    raw.sense = Sense::kMaximize;
  } else {
    throw ValidationError("objective.sense", "expected \"min\" or \"max\", got " + sense.dump());
  }
  raw.objective = reader.read(member(objective, "expr", "objective"), "objective.expr");

  if (auto it = doc.find("constraints"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("constraints", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "constraints[" + std::to_string(i) + "]";
      const Json& c = (*it)[i];
      if (!c.is_object()) throw ValidationError(field, "expected an object");
      RawConstraint rc;
      rc.lhs = reader.read(member(c, "expr", field), field + ".expr");
      const Json& op = member(c, "op", field);
      if (op == "<=") {
        rc.relation = Relation::kLessEqual;
      } else if (op == ">=") {
        rc.relation = Relation::kGreaterEqual;
      } else if (op == "==") {
        rc.relation = Relation::kEqual;
      } else {
        throw ValidationError(field + ".op", "expected \"<=\", \">=\" or \"==\", got " + op.dump());
      }
      auto rhs = c.find("rhs");
      rc.rhs = rhs == c.end() ? Expr::constant(0.0) : reader.read(*rhs, field + ".rhs");
      raw.constraints.push_back(std::move(rc));
    }
  }
  return raw;
}

Model parse_instance(std::string_view text) { return canonicalize(parse_raw_instance(text)); }

Model load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string write_instance(const Model& model) {
  const RawModel raw = model.to_raw();
  Json doc;
  Json vars = Json::array();
  for (const Variable& v : raw.variables) {
    vars.push_back({{"name", v.name},
                    {"lb", detail::encode_number(v.lower)},
                    {"ub", detail::encode_number(v.upper)},
                    {"integer", v.integer}});
  }
  doc["variables"] = std::move(vars);
  doc["objective"] = {{"sense", raw.sense == Sense::kMaximize ? "max" : "min"},
                      {"expr", write_expr(raw.objective, raw.variables)}};
  Json cons = Json::array();
  for (const RawConstraint& c : raw.constraints) {
    const char* op = c.relation == Relation::kLessEqual      ? "<="
                     : c.relation == Relation::kGreaterEqual ? ">="
                                                             : "==";
    cons.push_back({{"expr", write_expr(c.lhs, raw.variables)},
                    {"op", op},
                    {"rhs", write_expr(c.rhs, raw.variables)}});
  }
  doc["constraints"] = std::move(cons);
  return doc.dump(2) + "\n";
}

ResultFile make_result_file(const Model& model, const SolveResult& result,
                            const SolverOptions& options) {
  ResultFile f;
  f.status = std::string(to_string(result.status));
  f.objective = result.objective();
  if (result.incumbent) {
    for (std::size_t j = 0; j < model.var_count(); ++j) {
      f.assignment.emplace_back(model.variables()[j].name, result.incumbent->point[j]);
    }
  }
  f.best_bound = result.bound();
  f.gap = result.gap;
  f.nodes = result.nodes;
  f.restarts = result.restarts;
  f.relaxation_failures = result.relaxation_failures;
  f.pump_ran = result.pump.ran;
  f.pump_found = result.pump.incumbent.has_value();
  f.pump_iterations = result.pump.iterations;
  f.pump_seconds = result.pump.seconds;
  f.wall_seconds = result.wall_seconds;
  f.options = options;
  return f;
}

std::string write_result(const ResultFile& r) {
  using detail::encode_number;
  Json doc;
  doc["status"] = r.status;
  doc["objective"] = r.objective ? encode_number(*r.objective) : Json(nullptr);
  Json assignment = Json::object();
  for (const auto& [name, value] : r.assignment) assignment[name] = encode_number(value);
  doc["assignment"] = std::move(assignment);
  doc["best_bound"] = encode_number(r.best_bound);
  doc["gap"] = encode_number(r.gap);
  doc["nodes"] = r.nodes;
  doc["restarts"] = r.restarts;
  doc["relaxation_failures"] = r.relaxation_failures;
  doc["pump"] = {{"ran", r.pump_ran},
                 {"found", r.pump_found},
                 {"iterations", r.pump_iterations},
                 {"seconds", encode_number(r.pump_seconds)}};
  doc["wall_seconds"] = encode_number(r.wall_seconds);
  doc["options"] = detail::options_to_json(r.options);
  return doc.dump(2) + "\n";
}

ResultFile parse_result(std::string_view text) {
  using detail::decode_number;
  const Json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ValidationError("", "result must be a JSON object");
  ResultFile r;
  r.status = member(doc, "status", "result").get<std::string>();
  const Json& obj = member(doc, "objective", "result");
  if (!obj.is_null()) r.objective = decode_number(obj, "objective");
  const Json& assignment = member(doc, "assignment", "result");
  for (const auto& [name, value] : assignment.items()) {
    r.assignment.emplace_back(name, decode_number(value, "assignment." + name));
  }
  r.best_bound = decode_number(member(doc, "best_bound", "result"), "best_bound");
  r.gap = decode_number(member(doc, "gap", "result"), "gap");
  r.nodes = member(doc, "nodes", "result").get<std::int64_t>();
  r.restarts = member(doc, "restarts", "result").get<int>();
  r.relaxation_failures = member(doc, "relaxation_failures", "result").get<int>();
  const Json& pump = member(doc, "pump", "result");
  r.pump_ran = member(pump, "ran", "pump").get<bool>();
  r.pump_found = member(pump, "found", "pump").get<bool>();
  r.pump_iterations = member(pump, "iterations", "pump").get<int>();
  r.pump_seconds = decode_number(member(pump, "seconds", "pump"), "pump.seconds");
  r.wall_seconds = decode_number(member(doc, "wall_seconds", "result"), "wall_seconds");
  r.options = detail::options_from_json(member(doc, "options", "result"));
  return r;
}

std::string write_options(const SolverOptions& options) {
  return detail::options_to_json(options).dump(2) + "\n";
}

SolverOptions parse_options(std::string_view text) {
  return detail::options_from_json(detail::parse_json(text));
}

}  // namespace nlbb
