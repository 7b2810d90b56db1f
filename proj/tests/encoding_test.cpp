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
#include <random>

#include "cnma/branch_and_bound.hpp"
#include "cnma/encoding.hpp"
#include "cnma/network.hpp"
#include "cnma/problem.hpp"

using namespace cnma;

namespace {

ReluNetwork random_net(std::mt19937_64& rng, int inputs,
                       const std::vector<int>& hidden) {
  std::uniform_real_distribution<double> w(-1.5, 1.5);
  ReluNetwork net;
  int prev = inputs;
  std::vector<int> widths = hidden;
  widths.push_back(1);
  for (int width : widths) {
    DenseLayer layer;
    layer.weights = Eigen::MatrixXd(width, prev);
    layer.biases = Eigen::VectorXd(width);
    for (int r = 0; r < width; ++r) {
      for (int c = 0; c < prev; ++c) layer.weights(r, c) = w(rng);
      layer.biases(r) = w(rng);
    }
    net.layers.push_back(layer);
    prev = width;
  }
  net.input_scaler = AffineScaler::identity(inputs);
  net.output_scaler = AffineScaler::identity(1);
  net.architecture = {hidden};
  return net;
}

Problem box_problem(int inputs) {
  Problem p;
  for (int j = 0; j < inputs; ++j)
    p.x_vars.push_back(
        {"x" + std::to_string(j), VarKind::kContinuous, -1.0, 1.0});
  p.y_vars = {{"y", VarKind::kContinuous, -1e4, 1e4}};
  p.objective = LinearExpr::variable("y");
  p.sense = Sense::kMaximize;
  p.blackbox = [](const std::vector<double>& x) {
    return std::vector<double>{0.0};
  };
  return p;
}

// Solves the MILP with the x variables clamped to `x` and returns the value
// the encoding assigns to the output variable.
double milp_output_at(const Milp& milp, const Problem& problem,
                      const std::vector<double>& x) {
  Milp clamped = milp;
  for (std::size_t j = 0; j < problem.x_vars.size(); ++j) {
    int idx = clamped.handles.at(problem.x_vars[j].name);
    clamped.vars[idx].lower = x[j];
    clamped.vars[idx].upper = x[j];
  }
  MilpSolution sol = solve_milp(clamped);
  REQUIRE(sol.has_incumbent());
  return sol.assignment[clamped.handles.at(problem.y_vars[0].name)];
}

}  // namespace

TEST_CASE("interval bounds enclose sampled pre-activations") {
  std::mt19937_64 rng(5);
  ReluNetwork net = random_net(rng, 2, {4, 3});
  std::vector<std::pair<double, double>> box{{-1.0, 1.0}, {-1.0, 1.0}};
  auto bounds = compute_bounds(net, box);
  REQUIRE(bounds.size() == net.layers.size());
  REQUIRE(bounds[0].size() == 4);
  REQUIRE(bounds[1].size() == 3);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    Eigen::VectorXd v(2);
    v << u(rng), u(rng);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      Eigen::VectorXd pre =
          net.layers[l].weights * v + net.layers[l].biases;
      for (int i = 0; i < pre.size(); ++i) {
        CHECK(pre(i) >= bounds[l][i].lo - 1e-9);
        CHECK(pre(i) <= bounds[l][i].hi + 1e-9);
      }
      v = pre.cwiseMax(0.0);
    }
  }
}

TEST_CASE("bounds account for the input scaler") {
  ReluNetwork net;
  DenseLayer l;
  l.weights = Eigen::MatrixXd(1, 1);
  l.weights << 1.0;
  l.biases = Eigen::VectorXd(1);
  l.biases << 0.0;
  net.layers = {l};
  net.input_scaler.shift = {10.0};
  net.input_scaler.scale = {2.0};
  net.output_scaler = AffineScaler::identity(1);
  auto bounds = compute_bounds(net, {{8.0, 14.0}});
  CHECK(bounds[0][0].lo == doctest::Approx(-1.0));
  CHECK(bounds[0][0].hi == doctest::Approx(2.0));
}

TEST_CASE("relu rows force the max semantics") {
  // pre = x - 0.5 over x in [0, 1]; out must equal max(pre, 0).
  Milp m;
  int x = m.add_var("x", VarKind::kContinuous, 0.0, 1.0);
  int out = m.add_var("out", VarKind::kContinuous, 0.0, 10.0);
  int d = m.add_var("d", VarKind::kBinary, 0.0, 1.0);
  NeuronBounds nb{-0.5, 0.5};
  relu_to_milp(m, {{x, 1.0}}, -0.5, out, d, 1.0, nb);
  m.objective = {{out, 1.0}};

  for (double xv : {0.0, 0.2, 0.5, 0.7, 1.0}) {
    Milp clamped = m;
    clamped.vars[x].lower = xv;
    clamped.vars[x].upper = xv;
    // Maximizing out: the upper rows must still cap it at max(pre, 0).
    clamped.sense = Sense::kMaximize;
    MilpSolution hi = solve_milp(clamped);
    REQUIRE(hi.has_incumbent());
    CHECK(hi.assignment[out] ==
          doctest::Approx(std::max(xv - 0.5, 0.0)).epsilon(1e-6));
    // Minimizing out: the lower rows must hold it up to the same value.
    clamped.sense = Sense::kMinimize;
    MilpSolution lo = solve_milp(clamped);
    REQUIRE(lo.has_incumbent());
    CHECK(lo.assignment[out] ==
          doctest::Approx(std::max(xv - 0.5, 0.0)).epsilon(1e-6));
  }
}

TEST_CASE("undersized big-M is rejected") {
  Milp m;
  int x = m.add_var("x", VarKind::kContinuous, 0.0, 1.0);
  int out = m.add_var("out", VarKind::kContinuous, 0.0, 10.0);
  int d = m.add_var("d", VarKind::kBinary, 0.0, 1.0);
  NeuronBounds nb{-3.0, 3.0};
  CHECK_THROWS(relu_to_milp(m, {{x, 1.0}}, 0.0, out, d, 1.0, nb));
}

TEST_CASE("encoded network reproduces forward at fixed inputs") {
  std::mt19937_64 rng(17);
  Problem p = box_problem(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 8; ++t) {
    ReluNetwork net = random_net(rng, 2, {5, 3});
    Milp milp = nn_to_milp(net, p);
    for (int k = 0; k < 3; ++k) {
      std::vector<double> x{u(rng), u(rng)};
      double want = forward(net, x)[0];
      double got = milp_output_at(milp, p, x);
      CHECK(got == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("fixed big-M mode also reproduces forward") {
  std::mt19937_64 rng(23);
  Problem p = box_problem(1);
  ReluNetwork net = random_net(rng, 1, {4});
  EncodingOptions opt;
  opt.big_m_mode = BigMMode::kFixed;
  Milp milp = nn_to_milp(net, p, opt);
  for (double xv : {-0.8, -0.1, 0.0, 0.6}) {
    CHECK(milp_output_at(milp, p, {xv}) ==
          doctest::Approx(forward(net, {xv})[0]).epsilon(1e-5));
  }
}

TEST_CASE("encoding carries problem structure") {
  std::mt19937_64 rng(3);
  Problem p = box_problem(2);
  Constraint c;
  c.lhs = LinearExpr::variable("x0") + LinearExpr::variable("x1");
  c.op = ConstraintOp::kLe;
  c.rhs = LinearExpr(0.5);
  c.label = "sum_cap";
  p.constraints.push_back(c);

  ReluNetwork net = random_net(rng, 2, {3});
  Milp milp = nn_to_milp(net, p);
  CHECK(milp.sense == Sense::kMaximize);
  CHECK(milp.handles.count("x0") == 1);
  CHECK(milp.handles.count("x1") == 1);
  CHECK(milp.handles.count("y") == 1);
  CHECK(milp.integer_count() == 3);  // one indicator per hidden neuron

  // The added constraint must bind the solution.
  MilpSolution sol = solve_milp(milp);
  REQUIRE(sol.has_incumbent());
  double x0 = sol.assignment[milp.handles.at("x0")];
  double x1 = sol.assignment[milp.handles.at("x1")];
  CHECK(x0 + x1 <= 0.5 + 1e-6);

  // The objective reported by the solver is the y value, as declared.
  CHECK(sol.objective ==
        doctest::Approx(sol.assignment[milp.handles.at("y")]).epsilon(1e-9));
}

TEST_CASE("solved encoding respects variable bounds everywhere") {
  std::mt19937_64 rng(41);
  Problem p = box_problem(2);
  ReluNetwork net = random_net(rng, 2, {6});
  Milp milp = nn_to_milp(net, p);
  MilpSolution sol = solve_milp(milp);
  REQUIRE(sol.has_incumbent());
  for (std::size_t j = 0; j < milp.vars.size(); ++j) {
    CHECK(sol.assignment[j] >= milp.vars[j].lower - 1e-6);
    CHECK(sol.assignment[j] <= milp.vars[j].upper + 1e-6);
  }
  // The unconstrained argmax of the surrogate agrees with a dense grid scan.
  double best_grid = -1e18;
  for (int a = 0; a <= 60; ++a) {
    for (int b = 0; b <= 60; ++b) {
      double v = forward(net, {-1.0 + a / 30.0, -1.0 + b / 30.0})[0];
      best_grid = std::max(best_grid, v);
    }
  }
  CHECK(sol.objective >= best_grid - 1e-5);
}

TEST_CASE("trained surrogate round trip through the encoding") {
  std::vector<Sample> samples;
  for (int i = 0; i <= 20; ++i) {
    double x = -1.0 + i / 10.0;
    samples.push_back({{x}, EvalResult::success({1.0 - x * x})});
  }
  TrainConfig cfg;
  cfg.epochs = 400;
  ReluNetwork net = train(samples, {{8}}, cfg);
  Problem p = box_problem(1);
  Milp milp = nn_to_milp(net, p);
  for (double xv : {-0.9, -0.4, 0.25, 0.95}) {
    CHECK(milp_output_at(milp, p, {xv}) ==
          doctest::Approx(forward(net, {xv})[0]).epsilon(1e-5));
  }
}
