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

#include "cnma/benchmarks.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cnma/sampling.hpp"

namespace cnma {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double rastrigin(const std::vector<double>& x) {
  double total = 0.0;
  for (double v : x) {
    if (v < -5.12 || v > 5.12)
      throw std::domain_error("rastrigin: input outside [-5.12, 5.12]");
    total += 10.0 + v * v - 10.0 * std::cos(2.0 * kPi * v);
  }
  return total;
}

double polak3(const std::vector<double>& x) {
  if (x.size() != 11) throw std::domain_error("polak3: expects 11 inputs");
  for (double v : x)
    if (v < -1.0 || v > 1.0)
      throw std::domain_error("polak3: input outside [-1, 1]");
  double worst = -kInf;
  for (int i = 0; i < 10; ++i) {
    double f = 0.0;
    for (int j = 1; j <= 11; ++j) {
      const double arg = x[j - 1] - std::sin(static_cast<double>(i + 2 * j));
      f += (1.0 / static_cast<double>(j)) * std::exp(arg * arg);
    }
    worst = std::max(worst, f);
  }
  return worst;
}

std::pair<double, double> toy_constrained(double x1, double x2) {
  const double v1 =
      0.5 * std::sin(2.0 * kPi * (x1 * x1 - 2.0 * x2)) + x1 + 2.0 * x2 - 1.5;
  const double v2 = -(x1 * x1) - (x2 * x2) + 1.5;
  return {v1, v2};
}

EvalResult failing_blackbox(const std::vector<double>& x) {
  if (x[0] >= 0.4 && x[0] <= 0.6) return EvalResult::failure();
  double total = 0.0;
  for (double v : x) total += std::sin(3.0 * kPi * v) * v;
  return EvalResult::success({total});
}

const std::vector<std::vector<int>>& placement_signatures() {
  static const std::vector<std::vector<int>> signatures = [] {
    std::vector<std::vector<int>> m(40, std::vector<int>(40, 0));
    std::mt19937_64 rng(0xC0FFEEULL);
    // Sparse coverage keeps the pair-ambiguity objective nontrivial at the
    // 12-sensor budget; dense signatures would let almost any selection
    // distinguish every pair.
    std::bernoulli_distribution bit(0.08);
    for (auto& row : m)
      for (auto& v : row) v = bit(rng) ? 1 : 0;
    return m;
  }();
  return signatures;
}

double synthetic_placement(const std::vector<double>& x) {
  if (x.size() != 40)
    throw std::domain_error("synthetic_placement: expects 40 inputs");
  const auto& sig = placement_signatures();
  long ambiguous = 0, total = 0;
  for (int a = 0; a < 40; ++a) {
    for (int b = a + 1; b < 40; ++b) {
      ++total;
      bool distinguished = false;
      for (int s = 0; s < 40 && !distinguished; ++s)
        if (x[s] > 0.5 && sig[s][a] != sig[s][b]) distinguished = true;
      if (!distinguished) ++ambiguous;
    }
  }
  return static_cast<double>(ambiguous) / static_cast<double>(total);
}

namespace {

std::vector<VariableSpec> box_vars(const std::string& prefix, int n, double lo,
                                   double hi) {
  std::vector<VariableSpec> vars;
  for (int i = 0; i < n; ++i)
    vars.push_back({n == 1 ? prefix : prefix + std::to_string(i + 1),
                    VarKind::kContinuous, lo, hi});
  return vars;
}

Problem rastrigin_problem(int dim) {
  Problem p;
  p.x_vars = box_vars("x", dim, -5.12, 5.12);
  p.y_vars = {{"y", VarKind::kContinuous, -kInf, kInf}};
  p.objective = LinearExpr::variable("y");
  p.sense = Sense::kMaximize;
  p.blackbox = [](const std::vector<double>& x) {
    return std::vector<double>{rastrigin(x)};
  };
  return p;
}

Problem toy_problem() {
  Problem p;
  p.x_vars = box_vars("x", 2, 0.0, 1.0);
  p.y_vars = {{"v1", VarKind::kContinuous, -kInf, kInf},
              {"v2", VarKind::kContinuous, -kInf, kInf}};
  p.objective = LinearExpr::variable("x1") + LinearExpr::variable("x2");
  p.sense = Sense::kMinimize;
  p.constraints = {
      {LinearExpr::variable("v1"), ConstraintOp::kGe, LinearExpr(0.0), "v1_nonneg"},
      {LinearExpr::variable("v2"), ConstraintOp::kGe, LinearExpr(0.0), "v2_nonneg"}};
  p.blackbox = [](const std::vector<double>& x) {
    auto [v1, v2] = toy_constrained(x[0], x[1]);
    return std::vector<double>{v1, v2};
  };
  return p;
}

Problem polak3_problem() {
  Problem p;
  p.x_vars = box_vars("x", 11, -1.0, 1.0);
  p.y_vars = {{"y", VarKind::kContinuous, -kInf, kInf}};
  p.objective = LinearExpr::variable("y");
  p.sense = Sense::kMinimize;
  p.blackbox = [](const std::vector<double>& x) {
    return std::vector<double>{polak3(x)};
  };
  return p;
}

Problem failing_problem() {
  Problem p;
  p.x_vars = box_vars("x", 2, 0.0, 1.0);
  p.y_vars = {{"y", VarKind::kContinuous, -kInf, kInf}};
  p.objective = LinearExpr::variable("y");
  p.sense = Sense::kMaximize;
  p.blackbox = [](const std::vector<double>& x) {
    EvalResult r = failing_blackbox(x);
    if (!r.ok())
      return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
    return r.y;
  };
  return p;
}

Problem placement_problem() {
  Problem p;
  for (int i = 0; i < 40; ++i)
    p.x_vars.push_back({"s" + std::to_string(i + 1), VarKind::kBinary, 0.0, 1.0});
  p.y_vars = {{"ambiguity", VarKind::kContinuous, -kInf, kInf}};
  p.objective = LinearExpr::variable("ambiguity");
  p.sense = Sense::kMinimize;
  LinearExpr total;
  for (const auto& v : p.x_vars) total.add(1.0, v.name);
  p.constraints = {{total, ConstraintOp::kLe, LinearExpr(12.0), "sensor_budget"}};
  p.blackbox = [](const std::vector<double>& x) {
    return std::vector<double>{synthetic_placement(x)};
  };
  return p;
}

BenchmarkSpec stub(const std::string& name, const std::string& description) {
  BenchmarkSpec spec;
  spec.name = name;
  spec.description = description;
  spec.available = false;
  spec.factory = [name]() -> Problem { throw ExternalSimulatorError(name); };
  return spec;
}

std::vector<BenchmarkSpec> build_registry() {
  std::vector<BenchmarkSpec> specs;

  BenchmarkSpec r1;
  r1.name = "rastrigin1d";
  r1.description = "maximize 1-D Rastrigin over [-5.12, 5.12]";
  r1.known_best = 40.353;
  r1.known_best_provenance = "analytic maximum at x = +/-4.522";
  r1.default_initial_samples = 2;
  r1.factory = [] { return rastrigin_problem(1); };
  specs.push_back(r1);

  BenchmarkSpec r2;
  r2.name = "rastrigin2d";
  r2.description = "maximize 2-D Rastrigin over [-5.12, 5.12]^2";
  r2.known_best = 80.706;
  r2.known_best_provenance = "twice the 1-D maximum, attained per coordinate";
  r2.default_initial_samples = 5;
  r2.factory = [] { return rastrigin_problem(2); };
  specs.push_back(r2);

  BenchmarkSpec toy;
  toy.name = "toy_constrained";
  toy.description =
      "minimize x1 + x2 subject to two blackbox constraint outputs";
  toy.known_best = 0.599;
  toy.known_best_provenance = "best known value of the source benchmark";
  toy.default_initial_samples = 10;
  toy.factory = toy_problem;
  specs.push_back(toy);

  BenchmarkSpec pk;
  pk.name = "polak3";
  pk.description = "minimax of ten transcendental sums over [-1, 1]^11";
  pk.known_best = 5.93;
  pk.known_best_provenance = "best known minimum of the source benchmark";
  pk.default_initial_samples = 20;
  pk.factory = polak3_problem;
  specs.push_back(pk);

  BenchmarkSpec fb;
  fb.name = "failing2d";
  fb.description =
      "maximize a smooth multimodal score whose blackbox fails on a band";
  fb.default_initial_samples = 10;
  fb.factory = failing_problem;
  specs.push_back(fb);

  BenchmarkSpec pl;
  pl.name = "placement40";
  pl.description =
      "minimize sensor-placement ambiguity, 40 binary sensors, budget 12";
  pl.default_initial_samples = 40;
  pl.factory = placement_problem;
  specs.push_back(pl);

  specs.push_back(stub("boat", "wave-energy boat (needs xfoil)"));
  specs.push_back(stub("lunar_lander", "lander codesign (needs OpenAI Gym)"));
  specs.push_back(stub("hexapod", "gait repair (needs hexapod simulator)"));
  specs.push_back(stub("acrobot", "acrobot design (needs OpenAI Gym)"));
  specs.push_back(stub("bus118_placement", "grid sensors (needs OpenDSS)"));
  specs.push_back(stub("rover", "path planning (obstacle map unavailable)"));
  return specs;
}

}  // namespace

const std::vector<BenchmarkSpec>& benchmark_registry() {
  static const std::vector<BenchmarkSpec> registry = build_registry();
  return registry;
}

const BenchmarkSpec* find_benchmark(const std::string& name) {
  for (const auto& spec : benchmark_registry())
    if (spec.name == name) return &spec;
  return nullptr;
}

Problem make_benchmark(const std::string& name) {
  const BenchmarkSpec* spec = find_benchmark(name);
  if (!spec) throw std::invalid_argument("unknown benchmark: " + name);
  return spec->factory();
}

RunResult random_search(const Problem& problem, long eval_budget,
                        std::uint64_t seed) {
  if (eval_budget < 1)
    throw std::invalid_argument("random_search: eval_budget must be >= 1");
  RunResult result;
  const auto t0 = std::chrono::steady_clock::now();
  SampleGenerator generator(problem.x_vars, seed);
  for (long i = 0; i < eval_budget; ++i) {
    std::vector<double> x = generator.draw();
    EvalResult res = evaluate_candidate(problem.blackbox, x, kInf,
                                        problem.y_vars.size());
    ++result.evaluations;
    result.samples.push_back({x, res});
    TraceEvent event = TraceEvent::kEvalFailed;
    if (res.ok()) {
      event = TraceEvent::kInitialSample;
      const Assignment assignment = make_assignment(problem, x, res.y);
      if (check_constraints(problem, assignment).satisfied) {
        const double phi = eval_linear(problem.objective, assignment);
        const bool better =
            !result.best || (problem.sense == Sense::kMaximize
                                 ? phi > result.best->objective
                                 : phi < result.best->objective);
        if (better) result.best = BestSolution{x, res.y, phi};
      }
    }
    TraceRow row;
    row.iteration = static_cast<int>(i + 1);
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    row.cumulative_evaluations = result.evaluations;
    if (result.best) row.best_objective = result.best->objective;
    row.event = event;
    result.trace.rows.push_back(row);
  }
  result.termination = Termination::kBudgetExhausted;
  return result;
}

}  // namespace cnma
