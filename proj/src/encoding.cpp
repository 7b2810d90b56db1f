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

#include "cnma/encoding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cnma {

std::vector<std::vector<NeuronBounds>> compute_bounds(
    const ReluNetwork& network,
    const std::vector<std::pair<double, double>>& input_box) {
  if (static_cast<int>(input_box.size()) != network.input_arity())
    throw std::invalid_argument("compute_bounds: box arity mismatch");

  // Scaled input intervals; scale > 0 preserves endpoint order.
  std::vector<NeuronBounds> in(input_box.size());
  for (std::size_t i = 0; i < input_box.size(); ++i) {
    in[i].lo = (input_box[i].first - network.input_scaler.shift[i]) /
               network.input_scaler.scale[i];
    in[i].hi = (input_box[i].second - network.input_scaler.shift[i]) /
               network.input_scaler.scale[i];
  }

  std::vector<std::vector<NeuronBounds>> bounds;
  for (std::size_t l = 0; l < network.layers.size(); ++l) {
    const auto& layer = network.layers[l];
    std::vector<NeuronBounds> pre(layer.weights.rows());
    for (Eigen::Index k = 0; k < layer.weights.rows(); ++k) {
      double lo = layer.biases(k), hi = layer.biases(k);
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) {
        const double w = layer.weights(k, j);
        if (w >= 0.0) {
          lo += w * in[j].lo;
          hi += w * in[j].hi;
        } else {
          lo += w * in[j].hi;
          hi += w * in[j].lo;
        }
      }
      pre[k] = {lo, hi};
    }
    bounds.push_back(pre);
    if (l + 1 < network.layers.size()) {
      in.resize(pre.size());
      for (std::size_t k = 0; k < pre.size(); ++k)
        in[k] = {std::max(pre[k].lo, 0.0), std::max(pre[k].hi, 0.0)};
    }
  }
  return bounds;
}

void relu_to_milp(Milp& milp, const std::vector<MilpRow::Term>& pre_terms,
                  double pre_constant, int out_var, int indicator_var,
                  double big_m, const NeuronBounds& pre_bounds) {
  const double required = std::max(std::abs(pre_bounds.lo),
                                   std::abs(pre_bounds.hi));
  if (big_m < required - 1e-9)
    throw std::invalid_argument("relu_to_milp: M=" + std::to_string(big_m) +
                                " below required bound " +
                                std::to_string(required));
  if (milp.vars[indicator_var].kind != VarKind::kBinary)
    throw std::invalid_argument("relu_to_milp: indicator must be binary");

  // out >= 0
  auto& r1 = milp.add_row(RowRel::kGe, 0.0);
  r1.terms.push_back({out_var, 1.0});
  // out >= pre  ->  out - pre_terms >= pre_constant
  auto& r2 = milp.add_row(RowRel::kGe, pre_constant);
  r2.terms.push_back({out_var, 1.0});
  for (const auto& t : pre_terms) r2.terms.push_back({t.var, -t.coeff});
  // out <= pre + M*d  ->  out - pre_terms - M*d <= pre_constant
  auto& r3 = milp.add_row(RowRel::kLe, pre_constant);
  r3.terms.push_back({out_var, 1.0});
  for (const auto& t : pre_terms) r3.terms.push_back({t.var, -t.coeff});
  r3.terms.push_back({indicator_var, -big_m});
  // out <= M*(1-d)  ->  out + M*d <= M
  auto& r4 = milp.add_row(RowRel::kLe, big_m);
  r4.terms.push_back({out_var, 1.0});
  r4.terms.push_back({indicator_var, big_m});
}

namespace {

std::vector<MilpRow::Term> translate(const LinearExpr& expr, const Milp& milp,
                                     double* constant) {
  std::vector<MilpRow::Term> terms;
  *constant = expr.constant;
  for (const auto& t : expr.terms) {
    auto it = milp.handles.find(t.var);
    if (it == milp.handles.end()) throw MissingVariableError(t.var);
    terms.push_back({it->second, t.coeff});
  }
  return terms;
}

}  // namespace

Milp nn_to_milp(const ReluNetwork& network, const Problem& problem,
                const EncodingOptions& options) {
  if (static_cast<int>(problem.x_vars.size()) != network.input_arity() ||
      static_cast<int>(problem.y_vars.size()) != network.output_arity())
    throw std::invalid_argument("nn_to_milp: network/problem arity mismatch");

  std::vector<std::pair<double, double>> box;
  for (const auto& v : problem.x_vars) {
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper))
      throw std::invalid_argument("nn_to_milp: variable " + v.name +
                                  " needs finite bounds");
    box.emplace_back(v.lower, v.upper);
  }
  const auto bounds = compute_bounds(network, box);

  Milp milp;
  milp.sense = problem.sense;

  // Problem inputs with their declared kinds, plus the scaled copies the
  // network actually consumes: x - scale*xs = shift.
  std::vector<int> prev_layer;  // vars feeding the next layer
  for (std::size_t i = 0; i < problem.x_vars.size(); ++i) {
    const auto& v = problem.x_vars[i];
    const int xi = milp.add_var(v.name, v.kind, v.lower, v.upper);
    milp.handles[v.name] = xi;
    const double sc = network.input_scaler.scale[i];
    const double sh = network.input_scaler.shift[i];
    const int xs = milp.add_var("nn_xs" + std::to_string(i),
                                VarKind::kContinuous, (v.lower - sh) / sc,
                                (v.upper - sh) / sc);
    auto& row = milp.add_row(RowRel::kEq, sh);
    row.terms.push_back({xi, 1.0});
    row.terms.push_back({xs, -sc});
    prev_layer.push_back(xs);
  }

  const std::size_t n_layers = network.layers.size();
  for (std::size_t l = 0; l + 1 < n_layers; ++l) {
    const auto& layer = network.layers[l];
    std::vector<int> outputs;
    for (Eigen::Index k = 0; k < layer.weights.rows(); ++k) {
      const NeuronBounds& nb = bounds[l][k];
      const double big_m = (options.big_m_mode == BigMMode::kFixed)
                               ? kFixedBigM
                               : std::max({std::abs(nb.lo), std::abs(nb.hi),
                                           1e-6});
      const std::string tag = std::to_string(l) + "_" + std::to_string(k);
      const int h = milp.add_var("nn_h" + tag, VarKind::kContinuous, 0.0,
                                 std::max(nb.hi, 0.0));
      // A stably-active (or stably-dead) neuron pins its indicator.
      double d_lo = 0.0, d_hi = 1.0;
      if (nb.lo > 0.0) d_hi = 0.0;
      if (nb.hi < 0.0) d_lo = 1.0;
      const int d = milp.add_var("nn_d" + tag, VarKind::kBinary, 0.0, 1.0);
      milp.vars[d].lower = d_lo;
      milp.vars[d].upper = d_hi;

      std::vector<MilpRow::Term> pre;
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
        pre.push_back({prev_layer[j], layer.weights(k, j)});
      relu_to_milp(milp, pre, layer.biases(k), h, d, big_m, nb);
      outputs.push_back(h);
    }
    prev_layer = std::move(outputs);
  }

  // Output layer: identity activation, then the inverse output scaler as an
  // exact affine row: y - scale*z = shift.
  const auto& last = network.layers.back();
  for (Eigen::Index k = 0; k < last.weights.rows(); ++k) {
    const NeuronBounds& nb = bounds[n_layers - 1][k];
    const int z = milp.add_var("nn_z" + std::to_string(k),
                               VarKind::kContinuous, nb.lo, nb.hi);
    auto& row = milp.add_row(RowRel::kEq, last.biases(k));
    row.terms.push_back({z, 1.0});
    for (Eigen::Index j = 0; j < last.weights.cols(); ++j)
      row.terms.push_back({prev_layer[j], -last.weights(k, j)});

    const auto& yv = problem.y_vars[k];
    const double sc = network.output_scaler.scale[k];
    const double sh = network.output_scaler.shift[k];
    double y_lo = nb.lo * sc + sh, y_hi = nb.hi * sc + sh;
    if (std::isfinite(yv.lower)) y_lo = std::max(y_lo, yv.lower);
    if (std::isfinite(yv.upper)) y_hi = std::min(y_hi, yv.upper);
    const int y = milp.add_var(yv.name, VarKind::kContinuous, y_lo, y_hi);
    milp.handles[yv.name] = y;
    auto& srow = milp.add_row(RowRel::kEq, sh);
    srow.terms.push_back({y, 1.0});
    srow.terms.push_back({z, -sc});
  }

  // User constraints P, absolute-value forms rewritten first.
  for (const auto& c : problem.constraints) {
    for (const Constraint& piece : c.rewritten()) {
      double cl = 0.0, cr = 0.0;
      auto lhs = translate(piece.lhs, milp, &cl);
      auto rhs = translate(piece.rhs, milp, &cr);
      RowRel rel = piece.op == ConstraintOp::kLe   ? RowRel::kLe
                   : piece.op == ConstraintOp::kGe ? RowRel::kGe
                                                   : RowRel::kEq;
      auto& row = milp.add_row(rel, cr - cl, piece.label);
      row.terms = lhs;
      for (const auto& t : rhs) row.terms.push_back({t.var, -t.coeff});
    }
  }

  double oc = 0.0;
  milp.objective = translate(problem.objective, milp, &oc);
  milp.objective_constant = oc;
  return milp;
}

}  // namespace cnma
