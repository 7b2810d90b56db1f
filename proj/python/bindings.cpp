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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cnma/benchmarks.hpp"
#include "cnma/encoding.hpp"
#include "cnma/engine.hpp"
#include "cnma/lp_format.hpp"
#include "cnma/parallel.hpp"

namespace py = pybind11;
using namespace cnma;

namespace {

py::dict result_to_dict(const RunResult& r) {
  py::dict d;
  if (r.best) {
    py::dict best;
    best["x"] = r.best->x;
    best["y"] = r.best->y;
    best["objective"] = r.best->objective;
    d["best"] = best;
  } else {
    d["best"] = py::none();
  }
  d["termination"] = to_string(r.termination);
  d["evaluations"] = r.evaluations;
  py::list rows;
  for (const auto& row : r.trace.rows) {
    py::dict t;
    t["iteration"] = row.iteration;
    t["wall_seconds"] = row.wall_seconds;
    t["cumulative_evaluations"] = row.cumulative_evaluations;
    t["best_objective"] = row.best_objective
                              ? py::object(py::float_(*row.best_objective))
                              : py::object(py::none());
    t["event"] = to_string(row.event);
    t["worker_id"] = row.worker_id;
    rows.append(t);
  }
  d["trace"] = rows;
  return d;
}

void apply_engine_kwargs(EngineConfig& cfg, int n_initial_samples,
                         int max_iterations, std::optional<double> threshold,
                         const std::vector<int>& architecture, int epochs,
                         double learning_rate, double milp_time_limit,
                         std::uint64_t seed) {
  cfg.n_initial_samples = n_initial_samples;
  cfg.max_iterations = max_iterations;
  cfg.objective_threshold = threshold;
  if (!architecture.empty()) cfg.architecture = Architecture{architecture};
  cfg.train_config.epochs = epochs;
  cfg.train_config.learning_rate = learning_rate;
  cfg.milp_time_limit = milp_time_limit;
  cfg.seed = seed;
  cfg.train_config.weight_init_seed = seed;
}

}  // namespace

PYBIND11_MODULE(_cnma, m) {
  m.doc() = "Constrained blackbox optimization via neural-network surrogates";

  m.def("benchmark_names", [] {
    std::vector<std::string> names;
    for (const auto& spec : benchmark_registry())
      if (spec.available) names.push_back(spec.name);
    return names;
  });

  m.def("evaluate_benchmark",
        [](const std::string& name, const std::vector<double>& x) {
          Problem p = make_benchmark(name);
          return p.blackbox(x);
        },
        py::arg("name"), py::arg("x"));

  m.def("optimize",
        [](const std::string& benchmark, int n_initial_samples,
           int max_iterations, std::optional<double> objective_threshold,
           const std::vector<int>& architecture, int epochs,
           double learning_rate, double milp_time_limit, std::uint64_t seed) {
          Problem p = make_benchmark(benchmark);
          EngineConfig cfg;
          apply_engine_kwargs(cfg, n_initial_samples, max_iterations,
                              objective_threshold, architecture, epochs,
                              learning_rate, milp_time_limit, seed);
          return result_to_dict(cnma_optimize(p, cfg));
        },
        py::arg("benchmark"), py::arg("n_initial_samples") = 2,
        py::arg("max_iterations") = 100,
        py::arg("objective_threshold") = py::none(),
        py::arg("architecture") = std::vector<int>{},
        py::arg("epochs") = 3000, py::arg("learning_rate") = 2e-2,
        py::arg("milp_time_limit") = 10.0, py::arg("seed") = 0);

  m.def("optimize_parallel",
        [](const std::string& benchmark, int workers, int n_initial_samples,
           int max_iterations, std::optional<double> objective_threshold,
           int epochs, double learning_rate, double milp_time_limit,
           std::uint64_t seed) {
          Problem p = make_benchmark(benchmark);
          ParallelConfig cfg;
          cfg.workers = workers;
          apply_engine_kwargs(cfg.base, n_initial_samples, max_iterations,
                              objective_threshold, {}, epochs, learning_rate,
                              milp_time_limit, seed);
          cfg.base_seed = seed;
          return result_to_dict(parallel_cnma(p, cfg));
        },
        py::arg("benchmark"), py::arg("workers") = 5,
        py::arg("n_initial_samples") = 2, py::arg("max_iterations") = 100,
        py::arg("objective_threshold") = py::none(), py::arg("epochs") = 3000,
        py::arg("learning_rate") = 2e-2, py::arg("milp_time_limit") = 10.0,
        py::arg("seed") = 0);

  m.def("random_search",
        [](const std::string& benchmark, long eval_budget, std::uint64_t seed) {
          Problem p = make_benchmark(benchmark);
          return result_to_dict(random_search(p, eval_budget, seed));
        },
        py::arg("benchmark"), py::arg("eval_budget"), py::arg("seed") = 0);

  m.def("train_surrogate",
        [](const std::vector<std::vector<double>>& xs,
           const std::vector<std::vector<double>>& ys,
           const std::vector<int>& architecture, int epochs,
           double learning_rate, std::uint64_t seed) {
          if (xs.size() != ys.size())
            throw std::invalid_argument("xs and ys must have equal length");
          std::vector<Sample> samples;
          for (std::size_t i = 0; i < xs.size(); ++i)
            samples.push_back({xs[i], EvalResult::success(ys[i])});
          TrainConfig tc;
          tc.epochs = epochs;
          tc.learning_rate = learning_rate;
          tc.weight_init_seed = seed;
          ReluNetwork net = train(samples, Architecture{architecture}, tc);
          return net.to_json();
        },
        py::arg("xs"), py::arg("ys"), py::arg("architecture"),
        py::arg("epochs") = 3000, py::arg("learning_rate") = 2e-2,
        py::arg("seed") = 0);

  m.def("surrogate_forward",
        [](const std::string& network_json, const std::vector<double>& x) {
          return forward(ReluNetwork::from_json(network_json), x);
        },
        py::arg("network_json"), py::arg("x"));

  m.def("surrogate_to_lp",
        [](const std::string& network_json, const std::string& benchmark) {
          Problem p = make_benchmark(benchmark);
          Milp milp = nn_to_milp(ReluNetwork::from_json(network_json), p);
          return export_lp_format(milp);
        },
        py::arg("network_json"), py::arg("benchmark"));
}
