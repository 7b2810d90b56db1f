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

#include "cnma/parallel.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "cnma/branch_and_bound.hpp"
#include "cnma/sampling.hpp"

namespace cnma {
namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// What one worker hands over at the barrier.
struct Contribution {
  std::vector<Sample> samples;           // in evaluation order
  std::vector<TraceEvent> events;        // parallel to samples
  std::optional<std::size_t> candidate;  // index of the MILP candidate sample
};

}  // namespace

RunResult parallel_cnma(const Problem& problem, const ParallelConfig& config) {
  {
    auto defects = validate_problem(problem);
    if (!defects.empty()) {
      std::ostringstream os;
      os << "invalid problem:";
      for (const auto& d : defects) os << " [" << d << "]";
      throw std::invalid_argument(os.str());
    }
  }
  if (config.workers < 1 || config.architectures.empty())
    throw std::invalid_argument("parallel_cnma: bad worker configuration");

  RunResult result;
  const auto t0 = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  long evals = 0;

  auto record = [&](int iteration, TraceEvent event, int worker) {
    TraceRow row;
    row.iteration = iteration;
    row.wall_seconds = wall();
    row.cumulative_evaluations = evals;
    if (result.best) row.best_objective = result.best->objective;
    row.event = event;
    row.worker_id = worker;
    result.trace.rows.push_back(row);
  };

  const EngineConfig& base = config.base;
  SharedPool pool;

  // Initial samples, drawn by a dedicated generator as in the sequential
  // engine.
  {
    SampleGenerator generator(problem.x_vars, config.base_seed);
    const int cap = 10 * base.n_initial_samples;
    int ok_rows = 0, draws = 0;
    while (ok_rows < base.n_initial_samples && draws < cap) {
      std::vector<double> x = generator.draw();
      EvalResult res = evaluate_candidate(problem.blackbox, x,
                                          base.eval_timeout,
                                          problem.y_vars.size());
      ++evals;
      ++draws;
      pool.append({x, res});
      record(0, res.ok() ? TraceEvent::kInitialSample : TraceEvent::kEvalFailed,
             -1);
      if (res.ok()) ++ok_rows;
    }
  }

  // Each worker owns a persistent fallback generator, so its draw stream
  // does not depend on thread scheduling.
  std::vector<SampleGenerator> generators;
  for (int j = 0; j < config.workers; ++j)
    generators.emplace_back(problem.x_vars,
                            config.base_seed + static_cast<std::uint64_t>(j) + 1);

  result.termination = Termination::kIterationsExhausted;
  for (int iter = 1; iter <= base.max_iterations; ++iter) {
    if (wall() > base.time_budget) {
      result.termination = Termination::kBudgetExhausted;
      break;
    }

    const std::vector<Sample> snapshot = pool.snapshot();
    std::vector<Contribution> contributions(config.workers);

    auto worker_body = [&](int j) {
      Contribution& out = contributions[j];
      const Architecture& arch =
          config.architectures[j % config.architectures.size()];

      bool need_fallback = false;
      std::vector<double> x_star;
      try {
        TrainConfig tc = base.train_config;
        tc.weight_init_seed =
            mix_seed(config.base_seed + static_cast<std::uint64_t>(j),
                     static_cast<std::uint64_t>(iter));
        ReluNetwork net = train(snapshot, arch, tc);
        Milp milp = nn_to_milp(net, problem, {base.big_m_mode});
        if (base.objective_threshold) {
          auto& row = milp.add_row(
              problem.sense == Sense::kMaximize ? RowRel::kGe : RowRel::kLe,
              *base.objective_threshold - milp.objective_constant,
              "objective_threshold");
          row.terms = milp.objective;
        }
        MilpParams mp;
        mp.time_limit = base.milp_time_limit;
        mp.gap_tol = base.gap_tol;
        MilpSolution sol = solve_milp(milp, mp);
        if (sol.has_incumbent()) {
          x_star.resize(problem.x_vars.size());
          for (std::size_t i = 0; i < problem.x_vars.size(); ++i) {
            const auto& v = problem.x_vars[i];
            double value = sol.assignment[milp.handles.at(v.name)];
            if (v.kind != VarKind::kContinuous) value = std::round(value);
            x_star[i] = std::min(std::max(value, v.lower), v.upper);
          }
        } else {
          need_fallback = true;
        }
      } catch (const TooFewSamplesError&) {
        need_fallback = true;
      }

      if (!need_fallback) {
        EvalResult res = evaluate_candidate(problem.blackbox, x_star,
                                            base.eval_timeout,
                                            problem.y_vars.size());
        out.samples.push_back({x_star, res});
        if (res.ok()) {
          out.candidate = out.samples.size() - 1;
          out.events.push_back(TraceEvent::kMilpSolved);
          return;
        }
        out.events.push_back(TraceEvent::kEvalFailed);
        need_fallback = true;  // n_invalid bookkeeping: one random sample
      }

      for (int attempt = 0; attempt < 10 && need_fallback; ++attempt) {
        std::vector<double> x = generators[j].draw();
        EvalResult res = evaluate_candidate(problem.blackbox, x,
                                            base.eval_timeout,
                                            problem.y_vars.size());
        out.samples.push_back({x, res});
        out.events.push_back(res.ok()
                                 ? TraceEvent::kMilpInfeasibleRandomFallback
                                 : TraceEvent::kEvalFailed);
        if (res.ok()) need_fallback = false;
      }
    };

    std::vector<std::thread> threads;
    threads.reserve(config.workers);
    for (int j = 0; j < config.workers; ++j)
      threads.emplace_back(worker_body, j);
    for (auto& t : threads) t.join();

    // Barrier: merge in worker order so every run with the same seed sees
    // the same pool.
    bool threshold_met = false;
    for (int j = 0; j < config.workers; ++j) {
      Contribution& c = contributions[j];
      for (std::size_t k = 0; k < c.samples.size(); ++k) {
        ++evals;
        const Sample& s = c.samples[k];
        pool.append(s);
        bool accepted = false;
        if (c.candidate && *c.candidate == k && s.result.ok()) {
          const Assignment assignment =
              make_assignment(problem, s.x, s.result.y);
          if (check_constraints(problem, assignment).satisfied) {
            const double phi = eval_linear(problem.objective, assignment);
            const bool better =
                !result.best || (problem.sense == Sense::kMaximize
                                     ? phi > result.best->objective
                                     : phi < result.best->objective);
            if (better) result.best = BestSolution{s.x, s.result.y, phi};
            if (base.objective_threshold) {
              const double t = *base.objective_threshold;
              threshold_met |= problem.sense == Sense::kMaximize
                                   ? result.best->objective >= t
                                   : result.best->objective <= t;
              accepted = threshold_met;
            }
          }
        }
        record(iter, accepted ? TraceEvent::kAccepted : c.events[k], j);
      }
    }

    if (threshold_met) {
      result.termination = Termination::kThresholdMet;
      break;
    }
  }

  if (result.termination == Termination::kIterationsExhausted &&
      wall() > base.time_budget)
    result.termination = Termination::kBudgetExhausted;
  result.samples = pool.snapshot();
  result.evaluations = evals;
  return result;
}

}  // namespace cnma
