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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cnma/config.hpp"

using namespace cnma;
using nlohmann::json;

namespace {

json minimal_doc() {
  return json{{"schema_id", kConfigSchemaId},
              {"problem", {{"benchmark", "rastrigin1d"}}}};
}

}  // namespace

TEST_CASE("minimal document parses with defaults") {
  RunConfig cfg = parse_run_config(minimal_doc());
  CHECK(cfg.benchmark == "rastrigin1d");
  CHECK(cfg.engine == EngineKind::kCnma);
  CHECK(cfg.engine_config.n_initial_samples == 2);
  CHECK(cfg.engine_config.max_iterations == 100);
  CHECK(cfg.engine_config.seed == 0);
  CHECK_FALSE(cfg.engine_config.objective_threshold.has_value());
  CHECK(cfg.random_search_budget == 1000);
  CHECK(cfg.extra_constraints.empty());
  CHECK(cfg.raw["schema_id"] == kConfigSchemaId);
}

TEST_CASE("schema id is mandatory and checked") {
  json doc = minimal_doc();
  doc.erase("schema_id");
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
  doc["schema_id"] = "something-else/9";
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("benchmark name is mandatory") {
  json doc = minimal_doc();
  doc["problem"].erase("benchmark");
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
  doc.erase("problem");
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("engine section selects the loop variant") {
  json doc = minimal_doc();
  doc["engine"] = {{"kind", "parallel_cnma"}, {"workers", 3}, {"seed", 11}};
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.engine == EngineKind::kParallelCnma);
  CHECK(cfg.parallel_config.workers == 3);
  CHECK(cfg.parallel_config.base_seed == 11);
  CHECK(cfg.parallel_config.base.seed == 11);

  doc["engine"] = {{"kind", "random_search"}, {"random_search_budget", 250}};
  cfg = parse_run_config(doc);
  CHECK(cfg.engine == EngineKind::kRandomSearch);
  CHECK(cfg.random_search_budget == 250);

  doc["engine"] = {{"kind", "warp_drive"}};
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("engine knobs land in the engine config") {
  json doc = minimal_doc();
  doc["engine"] = {{"kind", "cnma"},
                   {"n_initial_samples", 12},
                   {"max_iterations", 77},
                   {"time_budget", 3.5},
                   {"objective_threshold", 40.0},
                   {"architecture", {20, 10}},
                   {"seed", 5},
                   {"eval_timeout", 9.0}};
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.engine_config.n_initial_samples == 12);
  CHECK(cfg.engine_config.max_iterations == 77);
  CHECK(cfg.engine_config.time_budget == doctest::Approx(3.5));
  CHECK(cfg.engine_config.objective_threshold.value() ==
        doctest::Approx(40.0));
  CHECK(cfg.engine_config.architecture == Architecture{{20, 10}});
  CHECK(cfg.engine_config.seed == 5);
  CHECK(cfg.engine_config.eval_timeout == doctest::Approx(9.0));
}

TEST_CASE("training and solver sections map onto their configs") {
  json doc = minimal_doc();
  doc["training"] = {{"epochs", 500},
                     {"learning_rate", 0.005},
                     {"batch_size", 64},
                     {"l2_penalty", 0.001}};
  doc["solver"] = {{"milp_time_limit", 7.5},
                   {"gap_tol", 0.01},
                   {"big_m_mode", "fixed"}};
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.engine_config.train_config.epochs == 500);
  CHECK(cfg.engine_config.train_config.learning_rate == doctest::Approx(0.005));
  CHECK(cfg.engine_config.train_config.batch_size == 64);
  CHECK(cfg.engine_config.train_config.l2_penalty == doctest::Approx(0.001));
  CHECK(cfg.engine_config.milp_time_limit == doctest::Approx(7.5));
  CHECK(cfg.engine_config.gap_tol == doctest::Approx(0.01));
  CHECK(cfg.engine_config.big_m_mode == BigMMode::kFixed);

  doc["solver"]["big_m_mode"] = "interval";
  CHECK(parse_run_config(doc).engine_config.big_m_mode ==
        BigMMode::kInterval);
  doc["solver"]["big_m_mode"] = "huge";
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("parallel architectures parse as a list of lists") {
  json doc = minimal_doc();
  doc["engine"] = {{"kind", "parallel_cnma"},
                   {"architectures", {{10}, {20, 5}}}};
  RunConfig cfg = parse_run_config(doc);
  REQUIRE(cfg.parallel_config.architectures.size() == 2);
  CHECK(cfg.parallel_config.architectures[0] == Architecture{{10}});
  CHECK(cfg.parallel_config.architectures[1] == Architecture{{20, 5}});
}

TEST_CASE("extra constraints parse operators and terms") {
  json doc = minimal_doc();
  doc["problem"]["constraints"] = json::array({
      {{"terms", {{"y", 1.0}}}, {"op", "ge"}, {"rhs", 35.0},
       {"name", "floor"}},
      {{"terms", {{"x", 2.0}}}, {"op", "<="}, {"rhs", 1.0}},
      {{"terms", {{"x", 1.0}}}, {"op", "=="}, {"rhs", 0.25}},
      {{"terms", {{"x", 1.0}}}, {"op", "abs_le"}, {"rhs", 3.0}},
  });
  RunConfig cfg = parse_run_config(doc);
  REQUIRE(cfg.extra_constraints.size() == 4);
  CHECK(cfg.extra_constraints[0].op == ConstraintOp::kGe);
  CHECK(cfg.extra_constraints[0].label == "floor");
  CHECK(cfg.extra_constraints[0].lhs.terms.size() == 1);
  CHECK(cfg.extra_constraints[0].lhs.terms[0].var == "y");
  CHECK(eval_linear(cfg.extra_constraints[0].rhs, {}) ==
        doctest::Approx(35.0));
  CHECK(cfg.extra_constraints[1].op == ConstraintOp::kLe);
  CHECK(cfg.extra_constraints[1].lhs.terms[0].coeff == doctest::Approx(2.0));
  CHECK(cfg.extra_constraints[2].op == ConstraintOp::kEq);
  CHECK(cfg.extra_constraints[3].op == ConstraintOp::kAbsLe);
}

TEST_CASE("bad constraint operators are rejected") {
  json doc = minimal_doc();
  doc["problem"]["constraints"] = json::array(
      {{{"terms", {{"x", 1.0}}}, {"op", "almost"}, {"rhs", 1.0}}});
  CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("diagnostics name the offending field") {
  json doc = minimal_doc();
  doc["engine"] = {{"kind", "cnma"}, {"max_iterations", "lots"}};
  try {
    parse_run_config(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("max_iterations") !=
          std::string::npos);
  }
}

TEST_CASE("load_run_config reads a file and wraps io errors") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "cnma_config_test.json";
  {
    std::ofstream out(path);
    out << minimal_doc().dump(2);
  }
  RunConfig cfg = load_run_config(path.string());
  CHECK(cfg.benchmark == "rastrigin1d");
  fs::remove(path);

  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_run_config(path.string()), ConfigError);
  fs::remove(path);
}
