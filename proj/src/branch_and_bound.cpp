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

#include "cnma/branch_and_bound.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

namespace cnma {
namespace {

struct Node {
  std::vector<double> lower, upper;
  double bound;  // parent LP objective, in the problem's sense
  long seq;
};

struct NodeOrder {
  Sense sense;
  // Best bound first; FIFO among equals keeps the search deterministic.
  bool operator()(const std::shared_ptr<Node>& a,
                  const std::shared_ptr<Node>& b) const {
    const double va = a->bound, vb = b->bound;
    if (va != vb) return sense == Sense::kMaximize ? va < vb : va > vb;
    return a->seq > b->seq;
  }
};

double fractional_part(double v) { return v - std::floor(v); }

}  // namespace

MilpSolution solve_milp(const Milp& milp, const MilpParams& params) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  MilpSolution result;
  const bool maximize = milp.sense == Sense::kMaximize;
  const double worst = maximize ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

  std::vector<int> int_vars;
  for (std::size_t j = 0; j < milp.vars.size(); ++j)
    if (milp.vars[j].kind != VarKind::kContinuous)
      int_vars.push_back(static_cast<int>(j));

  double incumbent_obj = worst;
  std::vector<double> incumbent;
  double best_bound = worst;

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>,
                      NodeOrder>
      open(NodeOrder{milp.sense});
  long seq = 0;

  auto root = std::make_shared<Node>();
  root->lower.resize(milp.vars.size());
  root->upper.resize(milp.vars.size());
  for (std::size_t j = 0; j < milp.vars.size(); ++j) {
    root->lower[j] = milp.vars[j].lower;
    root->upper[j] = milp.vars[j].upper;
  }
  root->bound = maximize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  root->seq = seq++;
  open.push(root);

  bool timed_out = false;
  // Depth-first plunge: the preferred child is processed next while its
  // sibling is held back; a dead end (infeasible or pruned child) continues
  // the dive through the sibling instead of abandoning the whole dive.
  std::shared_ptr<Node> plunge, plunge_alt;

  while (plunge || !open.empty()) {
    if (elapsed() > params.time_limit) {
      timed_out = true;
      break;
    }
    std::shared_ptr<Node> node;
    bool diving = false;
    if (plunge) {
      node = std::move(plunge);
      plunge.reset();
      diving = true;
    } else {
      node = open.top();
      open.pop();
    }
    auto dead_end = [&] {
      if (diving && plunge_alt) {
        plunge = std::move(plunge_alt);
        plunge_alt.reset();
      }
    };
    // Prune against the incumbent before paying for the LP.
    if (std::abs(incumbent_obj) != std::numeric_limits<double>::infinity()) {
      const double gap_slack =
          params.gap_tol * std::max(1.0, std::abs(incumbent_obj));
      if (!better(node->bound, maximize ? incumbent_obj + gap_slack
                                        : incumbent_obj - gap_slack)) {
        dead_end();
        continue;
      }
    }

    LpSolution lp = solve_lp(milp, node->lower, node->upper, params.lp);
    ++result.nodes_explored;
    if (lp.status != LpStatus::kOptimal) {
      dead_end();
      continue;
    }

    const double node_bound = lp.objective;
    if (std::isfinite(incumbent_obj)) {
      const double gap_slack =
          params.gap_tol * std::max(1.0, std::abs(incumbent_obj));
      if (!better(node_bound, maximize ? incumbent_obj + gap_slack
                                       : incumbent_obj - gap_slack)) {
        dead_end();
        continue;
      }
    }

    // Most-fractional branching variable.
    int branch_var = -1;
    double branch_score = -1.0;
    for (int j : int_vars) {
      const double v = lp.assignment[j];
      const double f = fractional_part(v);
      const double dist = std::min(f, 1.0 - f);
      if (dist > params.integrality_tol && dist > branch_score) {
        branch_score = dist;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      // Integral: round and accept as incumbent.
      std::vector<double> x = lp.assignment;
      for (int j : int_vars) x[j] = std::round(x[j]);
      const double obj = milp.objective_value(x);
      if (incumbent.empty() || better(obj, incumbent_obj)) {
        incumbent_obj = obj;
        incumbent = std::move(x);
      }
      if (plunge_alt) {
        open.push(std::move(plunge_alt));
        plunge_alt.reset();
      }
      continue;
    }

    const double v = lp.assignment[branch_var];
    auto down = std::make_shared<Node>(*node);
    down->upper[branch_var] = std::floor(v);
    down->bound = node_bound;
    down->seq = seq++;
    auto up = std::make_shared<Node>(*node);
    up->lower[branch_var] = std::ceil(v);
    up->bound = node_bound;
    up->seq = seq++;

    // Dive toward the incumbent's value at this variable; with no incumbent,
    // toward the nearest integer. The sibling is held back so a dead-end
    // child hands the dive over to it.
    if (plunge_alt) {
      open.push(std::move(plunge_alt));
      plunge_alt.reset();
    }
    double target = incumbent.empty() ? v : incumbent[branch_var];
    const bool dive_down = target <= std::floor(v) + 0.5;
    plunge = dive_down ? down : up;
    plunge_alt = dive_down ? up : down;
  }

  // Remaining-bound bookkeeping for the gap report.
  best_bound = incumbent.empty() ? worst : incumbent_obj;
  if (plunge)
    best_bound = better(plunge->bound, best_bound) ? plunge->bound : best_bound;
  if (plunge_alt)
    best_bound =
        better(plunge_alt->bound, best_bound) ? plunge_alt->bound : best_bound;
  while (!open.empty()) {
    if (better(open.top()->bound, best_bound)) best_bound = open.top()->bound;
    open.pop();
  }

  if (!incumbent.empty()) {
    result.assignment = std::move(incumbent);
    result.objective = incumbent_obj;
    result.bound = std::isfinite(best_bound) ? best_bound : incumbent_obj;
    result.status = timed_out ? MilpStatus::kFeasible : MilpStatus::kOptimal;
  } else {
    result.status = timed_out ? MilpStatus::kTimeout : MilpStatus::kInfeasible;
    result.bound = best_bound;
  }
  return result;
}

}  // namespace cnma
