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

#include <cmath>
#include <limits>

#include "cnma/benchmarks.hpp"
#include "cnma/engine.hpp"

using namespace cnma;

namespace {

EngineConfig quick_config() {
  EngineConfig cfg;
  cfg.n_initial_samples = 4;
  cfg.max_iterations = 3;
  cfg.architecture = {{8}};
  cfg.train_config.epochs = 200;
  cfg.milp_time_limit = 3.0;
  cfg.seed = 1;
  return cfg;
}

void check_trace_invariants(const RunResult& res, Sense sense) {
  long evals = 0;
  double best = sense == Sense::kMaximize
                    ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  bool seen_best = false;
  for (const auto& row : res.trace.rows) {
    CHECK(row.cumulative_evaluations >= evals);
    evals = row.cumulative_evaluations;
    CHECK(row.wall_seconds >= 0.0);
    if (row.best_objective) {
      if (seen_best) {
        if (sense == Sense::kMaximize)
          CHECK(*row.best_objective >= best - 1e-12);
        else
          CHECK(*row.best_objective <= best + 1e-12);
      }
      best = *row.best_objective;
      seen_best = true;
    } else {
      CHECK_FALSE(seen_best);  // an incumbent never disappears
    }
  }
  CHECK(evals == res.evaluations);
  if (res.best) {
    REQUIRE(seen_best);
    CHECK(best == doctest::Approx(res.best->objective));
  }
}

}  // namespace

TEST_CASE("evaluate_candidate folds failures into the status") {
  Blackbox thrower = [](const std::vector<double>&) -> std::vector<double> {
    throw std::runtime_error("boom");
  };
  CHECK_FALSE(evaluate_candidate(thrower, {0.0}, 10.0, 1).ok());

  Blackbox nan_out = [](const std::vector<double>&) {
    return std::vector<double>{std::nan("")};
  };
  CHECK_FALSE(evaluate_candidate(nan_out, {0.0}, 10.0, 1).ok());

  Blackbox inf_out = [](const std::vector<double>&) {
    return std::vector<double>{std::numeric_limits<double>::infinity()};
  };
  CHECK_FALSE(evaluate_candidate(inf_out, {0.0}, 10.0, 1).ok());

  Blackbox short_out = [](const std::vector<double>&) {
    return std::vector<double>{1.0};
  };
  CHECK_FALSE(evaluate_candidate(short_out, {0.0}, 10.0, 2).ok());

  Blackbox fine = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] * 2.0};
  };
  EvalResult ok = evaluate_candidate(fine, {1.5}, 10.0, 1);
  REQUIRE(ok.ok());
  CHECK(ok.y[0] == doctest::Approx(3.0));
}

TEST_CASE("is_acceptable combines incumbent, threshold and budgets") {
  EngineConfig cfg;
  std::optional<BestSolution> none;
  std::optional<BestSolution> some = BestSolution{{0.0}, {5.0}, 5.0};

  CHECK_FALSE(is_acceptable(none, Sense::kMaximize, cfg, true));
  CHECK(is_acceptable(some, Sense::kMaximize, cfg, true));
  CHECK_FALSE(is_acceptable(some, Sense::kMaximize, cfg, false));

  cfg.objective_threshold = 4.0;
  CHECK(is_acceptable(some, Sense::kMaximize, cfg, false));
  cfg.objective_threshold = 6.0;
  CHECK_FALSE(is_acceptable(some, Sense::kMaximize, cfg, false));

  // Minimization flips the comparison.
  cfg.objective_threshold = 6.0;
  CHECK(is_acceptable(some, Sense::kMinimize, cfg, false));
  cfg.objective_threshold = 4.0;
  CHECK_FALSE(is_acceptable(some, Sense::kMinimize, cfg, false));
}

TEST_CASE("short run produces a coherent result") {
  Problem p = make_benchmark("rastrigin1d");
  EngineConfig cfg = quick_config();
  RunResult res = cnma_optimize(p, cfg);

  REQUIRE(res.best.has_value());
  CHECK(res.best->x.size() == 1);
  CHECK(res.best->y.size() == 1);
  // The recorded objective is the blackbox truth, not the surrogate's guess.
  CHECK(res.best->objective ==
        doctest::Approx(rastrigin(res.best->x)).epsilon(1e-9));
  CHECK(res.best->x[0] >= -5.12);
  CHECK(res.best->x[0] <= 5.12);

  check_trace_invariants(res, p.sense);

  // Initial samples plus one evaluation per iteration.
  CHECK(res.evaluations == cfg.n_initial_samples + cfg.max_iterations);
  CHECK(res.samples.size() == static_cast<std::size_t>(res.evaluations));
  CHECK(res.termination == Termination::kIterationsExhausted);
}

TEST_CASE("runs are bitwise deterministic per seed") {
  Problem p = make_benchmark("rastrigin1d");
  EngineConfig cfg = quick_config();
  RunResult a = cnma_optimize(p, cfg);
  RunResult b = cnma_optimize(p, cfg);
  REQUIRE(a.best.has_value());
  REQUIRE(b.best.has_value());
  CHECK(a.best->x == b.best->x);
  CHECK(a.best->objective == b.best->objective);
  REQUIRE(a.trace.rows.size() == b.trace.rows.size());
  for (std::size_t i = 0; i < a.trace.rows.size(); ++i) {
    CHECK(a.trace.rows[i].event == b.trace.rows[i].event);
    CHECK(a.trace.rows[i].best_objective == b.trace.rows[i].best_objective);
  }
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(a.samples[i].x == b.samples[i].x);

  cfg.seed = 2;
  RunResult c = cnma_optimize(p, cfg);
  CHECK(a.samples[0].x != c.samples[0].x);
}

TEST_CASE("threshold stops the loop early") {
  Problem p = make_benchmark("rastrigin1d");
  EngineConfig cfg = quick_config();
  cfg.n_initial_samples = 30;  // all but guarantees a decent incumbent
  cfg.max_iterations = 40;
  cfg.objective_threshold = 10.0;
  RunResult res = cnma_optimize(p, cfg);
  REQUIRE(res.best.has_value());
  CHECK(res.best->objective >= 10.0);
  CHECK(res.termination == Termination::kThresholdMet);
  CHECK(res.evaluations < 70);
}

TEST_CASE("time budget terminates the run") {
  Problem p = make_benchmark("rastrigin1d");
  EngineConfig cfg = quick_config();
  cfg.max_iterations = 100000;
  cfg.time_budget = 1.0;
  RunResult res = cnma_optimize(p, cfg);
  CHECK(res.termination == Termination::kBudgetExhausted);
}

TEST_CASE("evaluation failures are recorded and replaced") {
  Problem p = make_benchmark("failing2d");
  EngineConfig cfg = quick_config();
  cfg.n_initial_samples = 12;
  cfg.max_iterations = 6;
  cfg.seed = 4;
  RunResult res = cnma_optimize(p, cfg);

  long failed_rows = 0, failed_samples = 0;
  for (const auto& row : res.trace.rows)
    if (row.event == TraceEvent::kEvalFailed) ++failed_rows;
  for (const auto& s : res.samples)
    if (!s.result.ok()) ++failed_samples;
  // The dead band covers a fifth of the box, so a 12-draw start virtually
  // always hits it at least once.
  CHECK(failed_rows > 0);
  CHECK(failed_samples == failed_rows);
  check_trace_invariants(res, p.sense);
  if (res.best) {
    CHECK((res.best->x[0] < 0.4 || res.best->x[0] > 0.6));
  }
}

TEST_CASE("incumbents satisfy the problem constraints") {
  Problem p = make_benchmark("toy_constrained");
  EngineConfig cfg = quick_config();
  cfg.n_initial_samples = 10;
  cfg.max_iterations = 4;
  RunResult res = cnma_optimize(p, cfg);
  if (res.best) {
    Assignment a = make_assignment(p, res.best->x, res.best->y);
    CHECK(check_constraints(p, a).satisfied);
  }
  check_trace_invariants(res, p.sense);
}

TEST_CASE("event names cover the whole taxonomy") {
  CHECK(to_string(TraceEvent::kInitialSample) == "initial_sample");
  CHECK(to_string(TraceEvent::kMilpSolved) == "milp_solved");
  CHECK(to_string(TraceEvent::kMilpInfeasibleRandomFallback) ==
        "milp_infeasible_random_fallback");
  CHECK(to_string(TraceEvent::kEvalFailed) == "eval_failed");
  CHECK(to_string(TraceEvent::kAccepted) == "accepted");
  CHECK(to_string(Termination::kThresholdMet) == "threshold_met");
  CHECK(to_string(Termination::kBudgetExhausted) == "budget_exhausted");
  CHECK(to_string(Termination::kIterationsExhausted) ==
        "iterations_exhausted");
}
