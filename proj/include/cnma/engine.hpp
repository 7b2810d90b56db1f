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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cnma/encoding.hpp"
#include "cnma/network.hpp"
#include "cnma/problem.hpp"

namespace cnma {

struct EngineConfig {
  int n_initial_samples = 2;
  int max_iterations = 100;
  double time_budget = std::numeric_limits<double>::infinity();  // seconds
  std::optional<double> objective_threshold;
  Architecture architecture{{35, 10}};
  TrainConfig train_config;
  double milp_time_limit = 10.0;
  double gap_tol = 1e-6;
  std::uint64_t seed = 0;
  double eval_timeout = std::numeric_limits<double>::infinity();
  BigMMode big_m_mode = BigMMode::kInterval;
};

enum class TraceEvent {
  kInitialSample,
  kMilpSolved,
  kMilpInfeasibleRandomFallback,
  kEvalFailed,
  kAccepted,
};

std::string to_string(TraceEvent event);
std::optional<TraceEvent> trace_event_from_string(const std::string& text);

struct TraceRow {
  int iteration = 0;
  double wall_seconds = 0.0;
  long cumulative_evaluations = 0;
  std::optional<double> best_objective;  // best feasible so far
  TraceEvent event = TraceEvent::kInitialSample;
  int worker_id = -1;  // -1 outside parallel runs
};

struct RunTrace {
  std::vector<TraceRow> rows;
};

enum class Termination {
  kBudgetExhausted,
  kThresholdMet,
  kIterationsExhausted,
};

std::string to_string(Termination t);

struct BestSolution {
  std::vector<double> x;
  std::vector<double> y;
  double objective = 0.0;
};

struct RunResult {
  std::optional<BestSolution> best;
  RunTrace trace;
  Termination termination = Termination::kIterationsExhausted;
  std::vector<Sample> samples;  // final training set, failures included
  long evaluations = 0;
};

/// Runs the blackbox at x. Failures (throw, non-finite output, wrong arity,
/// overlong run) all fold into the failed status.
EvalResult evaluate_candidate(const Blackbox& blackbox,
                              const std::vector<double>& x,
                              double eval_timeout,
                              std::size_t expected_outputs);

/// True iff a feasible incumbent exists and either the objective threshold
/// is met or the run's budgets are spent.
bool is_acceptable(const std::optional<BestSolution>& best, Sense sense,
                   const EngineConfig& config, bool budgets_exhausted);

/// Sequential learning-from-failure loop: sample, train, encode, solve,
/// evaluate, feed the result back, until budget/threshold/iterations.
RunResult cnma_optimize(const Problem& problem, const EngineConfig& config);

}  // namespace cnma
