// Copyright 2026 The CNMA Authors
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

#include "cnma/config.hpp"

#include <fstream>

namespace cnma {

namespace {

using nlohmann::json;

double require_positive(const json& section, const std::string& key,
                        double fallback) {
  if (!section.contains(key)) return fallback;
  if (!section.at(key).is_number())
    throw ConfigError(key + " must be a number");
  const double v = section.at(key).get<double>();
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

int require_positive_int(const json& section, const std::string& key,
                         int fallback) {
  if (!section.contains(key)) return fallback;
  if (!section.at(key).is_number_integer())
    throw ConfigError(key + " must be an integer");
  const int v = section.at(key).get<int>();
  if (v < 1) throw ConfigError(key + " must be >= 1");
  return v;
}

Architecture parse_architecture(const json& widths) {
  std::vector<int> layers;
  for (const auto& w : widths) {
    const int width = w.get<int>();
    if (width < 1) throw ConfigError("architecture widths must be >= 1");
    layers.push_back(width);
  }
  if (layers.empty() || layers.size() > 4)
    throw ConfigError("architecture must have 1 to 4 hidden layers");
  return Architecture{layers};
}

ConstraintOp parse_op(const std::string& text) {
  if (text == "le" || text == "<=") return ConstraintOp::kLe;
  if (text == "ge" || text == ">=") return ConstraintOp::kGe;
  if (text == "eq" || text == "==") return ConstraintOp::kEq;
  if (text == "abs_le") return ConstraintOp::kAbsLe;
  throw ConfigError("unknown constraint op '" + text +
                    "' (expected le, ge, eq, or abs_le)");
}

Constraint parse_constraint(const json& doc, int index) {
  if (!doc.is_object() || !doc.contains("terms") || !doc.contains("op") ||
      !doc.contains("rhs"))
    throw ConfigError("constraint " + std::to_string(index) +
                      " needs terms, op, and rhs");
  Constraint c;
  for (const auto& [name, coeff] : doc.at("terms").items())
    c.lhs.add(coeff.get<double>(), name);
  c.op = parse_op(doc.at("op").get<std::string>());
  c.rhs = LinearExpr(doc.at("rhs").get<double>());
  c.label = doc.value("name", "extra_" + std::to_string(index));
  return c;
}

}  // namespace

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::kCnma:
      return "cnma";
    case EngineKind::kParallelCnma:
      return "parallel_cnma";
    case EngineKind::kRandomSearch:
      return "random_search";
  }
  return "cnma";
}

namespace {

RunConfig parse_run_config_impl(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  if (doc.value("schema_id", "") != kConfigSchemaId)
    throw ConfigError(std::string("schema_id must be '") + kConfigSchemaId +
                      "'");
  RunConfig config;
  config.raw = doc;

  const json problem = doc.value("problem", json::object());
  if (!problem.contains("benchmark"))
    throw ConfigError("problem.benchmark is required");
  config.benchmark = problem.at("benchmark").get<std::string>();
  if (problem.contains("constraints")) {
    int index = 0;
    for (const auto& c : problem.at("constraints"))
      config.extra_constraints.push_back(parse_constraint(c, index++));
  }

  const json engine = doc.value("engine", json::object());
  const std::string kind = engine.value("kind", "cnma");
  if (kind == "cnma")
    config.engine = EngineKind::kCnma;
  else if (kind == "parallel_cnma")
    config.engine = EngineKind::kParallelCnma;
  else if (kind == "random_search")
    config.engine = EngineKind::kRandomSearch;
  else
    throw ConfigError("unknown engine kind '" + kind + "'");

  EngineConfig& e = config.engine_config;
  e.n_initial_samples =
      require_positive_int(engine, "n_initial_samples", e.n_initial_samples);
  e.max_iterations =
      require_positive_int(engine, "max_iterations", e.max_iterations);
  e.time_budget = require_positive(engine, "time_budget", e.time_budget);
  if (engine.contains("objective_threshold"))
    e.objective_threshold = engine.at("objective_threshold").get<double>();
  if (engine.contains("architecture"))
    e.architecture = parse_architecture(engine.at("architecture"));
  if (engine.contains("seed")) e.seed = engine.at("seed").get<std::uint64_t>();
  e.eval_timeout = require_positive(engine, "eval_timeout", e.eval_timeout);
  if (engine.contains("random_search_budget")) {
    config.random_search_budget =
        engine.at("random_search_budget").get<long>();
    if (config.random_search_budget < 1)
      throw ConfigError("random_search_budget must be >= 1");
  }

  const json training = doc.value("training", json::object());
  TrainConfig& t = e.train_config;
  t.epochs = require_positive_int(training, "epochs", t.epochs);
  t.learning_rate =
      require_positive(training, "learning_rate", t.learning_rate);
  t.batch_size = require_positive_int(training, "batch_size", t.batch_size);
  t.l2_penalty = training.value("l2_penalty", t.l2_penalty);
  if (t.l2_penalty < 0.0) throw ConfigError("l2_penalty must be >= 0");

  const json solver = doc.value("solver", json::object());
  e.milp_time_limit =
      require_positive(solver, "milp_time_limit", e.milp_time_limit);
  e.gap_tol = require_positive(solver, "gap_tol", e.gap_tol);
  const std::string big_m = solver.value("big_m_mode", "interval");
  if (big_m == "interval")
    e.big_m_mode = BigMMode::kInterval;
  else if (big_m == "fixed")
    e.big_m_mode = BigMMode::kFixed;
  else
    throw ConfigError("big_m_mode must be 'interval' or 'fixed'");

  ParallelConfig& p = config.parallel_config;
  p.base = e;
  p.base_seed = e.seed;
  p.workers = require_positive_int(engine, "workers", p.workers);
  if (engine.contains("architectures")) {
    p.architectures.clear();
    for (const auto& arch : engine.at("architectures"))
      p.architectures.push_back(parse_architecture(arch));
    if (p.architectures.empty())
      throw ConfigError("architectures must not be empty");
  }

  config.output_dir = doc.value("output_dir", ".");
  return config;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  try {
    return parse_run_config_impl(doc);
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return parse_run_config(doc);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace cnma
