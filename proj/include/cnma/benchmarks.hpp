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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cnma/engine.hpp"
#include "cnma/problem.hpp"

namespace cnma {

/// Rastrigin, maximized over [-5.12, 5.12]^n: per coordinate
/// 10 + x^2 - 10*cos(2*pi*x), summed. Throws std::domain_error outside the
/// box.
double rastrigin(const std::vector<double>& x);

/// Minimax benchmark over [-1, 1]^11: the maximum of ten transcendental
/// sums f_i(x) = sum_{j=1..11} (1/j) * exp((x_j - sin(i + 2j))^2), i=0..9.
double polak3(const std::vector<double>& x);

/// The two blackbox constraint values of the toy problem: minimize x1 + x2
/// subject to v1 >= 0 and v2 >= 0 over [0, 1]^2. The constrained minimum is
/// 0.5998 at roughly (0.1954, 0.4044).
std::pair<double, double> toy_constrained(double x1, double x2);

/// Smooth multimodal score over [0, 1]^d with a synthetic dead band: fails
/// whenever x[0] lies in [0.4, 0.6], otherwise sum of sin(3*pi*x_i)*x_i.
EvalResult failing_blackbox(const std::vector<double>& x);

/// Sensor-placement ambiguity score in [0, 1] for a 40-bit selection over a
/// fixed seeded coverage matrix: the fraction of failure-mode pairs no
/// selected sensor distinguishes.
double synthetic_placement(const std::vector<double>& x);

/// The fixed 40x40 signature matrix behind synthetic_placement; exposed so
/// tests can count pairs independently.
const std::vector<std::vector<int>>& placement_signatures();

class ExternalSimulatorError : public std::runtime_error {
 public:
  explicit ExternalSimulatorError(const std::string& name)
      : std::runtime_error("benchmark " + name +
                           ": external simulator required") {}
};

struct BenchmarkSpec {
  std::string name;
  std::string description;
  std::optional<double> known_best;
  std::string known_best_provenance;
  int default_initial_samples = 2;
  bool available = true;  // false for external-simulator stubs
  std::function<Problem()> factory;
};

const std::vector<BenchmarkSpec>& benchmark_registry();
const BenchmarkSpec* find_benchmark(const std::string& name);

/// Builds the named benchmark problem; throws ExternalSimulatorError for
/// stubs and std::invalid_argument for unknown names.
Problem make_benchmark(const std::string& name);

/// Uniform-sampling baseline: draws eval_budget points, evaluates, and keeps
/// the best feasible by the problem objective.
RunResult random_search(const Problem& problem, long eval_budget,
                        std::uint64_t seed);

}  // namespace cnma
