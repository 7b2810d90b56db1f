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

#include "cnma/engine.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "cnma/branch_and_bound.hpp"
#include "cnma/sampling.hpp"

namespace cnma {

std::string to_string(TraceEvent event) {
  switch (event) {
    case TraceEvent::kInitialSample: return "initial_sample";
    case TraceEvent::kMilpSolved: return "milp_solved";
    case TraceEvent::kMilpInfeasibleRandomFallback:
      return "milp_infeasible_random_fallback";
    case TraceEvent::kEvalFailed: return "eval_failed";
    case TraceEvent::kAccepted: return "accepted";
  }
  return "unknown";
}

std::optional<TraceEvent> trace_event_from_string(const std::string& text) {
  for (TraceEvent e :
       {TraceEvent::kInitialSample, TraceEvent::kMilpSolved,
        TraceEvent::kMilpInfeasibleRandomFallback, TraceEvent::kEvalFailed,
        TraceEvent::kAccepted}) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kBudgetExhausted: return "budget_exhausted";
    case Termination::kThresholdMet: return "threshold_met";
    case Termination::kIterationsExhausted: return "iterations_exhausted";
  }
  return "unknown";
}

EvalResult evaluate_candidate(const Blackbox& blackbox,
                              const std::vector<double>& x,
                              double eval_timeout,
                              std::size_t expected_outputs) {
  const auto start = std::chrono::steady_clock::now();
  auto seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  std::vector<double> y;
  try {
    y = blackbox(x);
  } catch (...) {
    return EvalResult::failure(seconds());
  }
  const double duration = seconds();
  if (duration > eval_timeout) return EvalResult::failure(duration);
  if (y.size() != expected_outputs) return EvalResult::failure(duration);
  for (double v : y)
    if (!std::isfinite(v)) return EvalResult::failure(duration);
  return EvalResult::success(std::move(y), duration);
}

bool is_acceptable(const std::optional<BestSolution>& best, Sense sense,
                   const EngineConfig& config, bool budgets_exhausted) {
  if (!best) return false;
  if (config.objective_threshold) {
    const double t = *config.objective_threshold;
    if (sense == Sense::kMaximize ? best->objective >= t
                                  : best->objective <= t)
      return true;
  }
  return budgets_exhausted;
}

namespace {

// Per-iteration retrain seed; mixes the run seed with the iteration index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RunResult cnma_optimize(const Problem& problem, const EngineConfig& config) {
  {
    auto defects = validate_problem(problem);
    if (!defects.empty()) {
      std::ostringstream os;
      os << "invalid problem:";
      for (const auto& d : defects) os << " [" << d << "]";
      throw std::invalid_argument(os.str());
    }
  }

  RunResult result;
  const auto t0 = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  SampleGenerator generator(problem.x_vars, config.seed);
  long evals = 0;

  auto record = [&](int iteration, TraceEvent event) {
    TraceRow row;
    row.iteration = iteration;
    row.wall_seconds = wall();
    row.cumulative_evaluations = evals;
    if (result.best) row.best_objective = result.best->objective;
    row.event = event;
    result.trace.rows.push_back(row);
  };

  auto evaluate = [&](const std::vector<double>& x) {
    ++evals;
    return evaluate_candidate(problem.blackbox, x, config.eval_timeout,
                              problem.y_vars.size());
  };

  // Draws until one evaluation succeeds (bounded); failures are kept as
  // training rows and traced.
  auto draw_ok = [&](int iteration, TraceEvent ok_event, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      std::vector<double> x = generator.draw();
      EvalResult res = evaluate(x);
      result.samples.push_back({x, res});
      record(iteration, res.ok() ? ok_event : TraceEvent::kEvalFailed);
      if (res.ok()) return true;
    }
    return false;
  };

  // Initial training set: at least n_initial ok rows, within a 10x draw cap.
  {
    const int cap = 10 * config.n_initial_samples;
    int ok_rows = 0, draws = 0;
    while (ok_rows < config.n_initial_samples && draws < cap) {
      std::vector<double> x = generator.draw();
      EvalResult res = evaluate(x);
      ++draws;
      result.samples.push_back({x, res});
      record(0, res.ok() ? TraceEvent::kInitialSample : TraceEvent::kEvalFailed);
      if (res.ok()) ++ok_rows;
    }
  }

  result.termination = Termination::kIterationsExhausted;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    if (wall() > config.time_budget) {
      result.termination = Termination::kBudgetExhausted;
      break;
    }

    TrainConfig tc = config.train_config;
    tc.weight_init_seed = mix_seed(config.seed, static_cast<std::uint64_t>(iter));
    ReluNetwork net;
    try {
      net = train(result.samples, config.architecture, tc);
    } catch (const TooFewSamplesError&) {
      draw_ok(iter, TraceEvent::kMilpInfeasibleRandomFallback, 10);
      continue;
    }

    Milp milp = nn_to_milp(net, problem, {config.big_m_mode});
    if (config.objective_threshold) {
      // Steers the solver away from known-bad objective values.
      auto& row = milp.add_row(problem.sense == Sense::kMaximize ? RowRel::kGe
                                                                  : RowRel::kLe,
                               *config.objective_threshold -
                                   milp.objective_constant,
                               "objective_threshold");
      row.terms = milp.objective;
    }

    MilpParams mp;
    mp.time_limit = config.milp_time_limit;
    mp.gap_tol = config.gap_tol;
    MilpSolution sol = solve_milp(milp, mp);

    if (!sol.has_incumbent()) {
      draw_ok(iter, TraceEvent::kMilpInfeasibleRandomFallback, 10);
      continue;
    }

    std::vector<double> x_star(problem.x_vars.size());
    for (std::size_t i = 0; i < problem.x_vars.size(); ++i) {
      const auto& v = problem.x_vars[i];
      double value = sol.assignment[milp.handles.at(v.name)];
      if (v.kind != VarKind::kContinuous) value = std::round(value);
      x_star[i] = std::min(std::max(value, v.lower), v.upper);
    }

    EvalResult res = evaluate(x_star);
    if (!res.ok()) {
      result.samples.push_back({x_star, res});
      record(iter, TraceEvent::kEvalFailed);
      draw_ok(iter, TraceEvent::kMilpInfeasibleRandomFallback, 10);
      continue;
    }

    result.samples.push_back({x_star, res});
    const Assignment assignment = make_assignment(problem, x_star, res.y);
    const CheckReport report = check_constraints(problem, assignment);
    bool threshold_met = false;
    if (report.satisfied) {
      const double phi = eval_linear(problem.objective, assignment);
      const bool better =
          !result.best || (problem.sense == Sense::kMaximize
                               ? phi > result.best->objective
                               : phi < result.best->objective);
      if (better) result.best = BestSolution{x_star, res.y, phi};
      if (config.objective_threshold) {
        const double t = *config.objective_threshold;
        threshold_met = problem.sense == Sense::kMaximize
                            ? result.best->objective >= t
                            : result.best->objective <= t;
      }
    }
    record(iter, threshold_met ? TraceEvent::kAccepted : TraceEvent::kMilpSolved);
    if (threshold_met) {
      result.termination = Termination::kThresholdMet;
      break;
    }
  }

  if (result.termination == Termination::kIterationsExhausted &&
      wall() > config.time_budget)
    result.termination = Termination::kBudgetExhausted;
  result.evaluations = evals;
  return result;
}

}  // namespace cnma
