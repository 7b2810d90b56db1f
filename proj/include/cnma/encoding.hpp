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

#include <vector>

#include "cnma/milp.hpp"
#include "cnma/network.hpp"
#include "cnma/problem.hpp"

namespace cnma {

struct NeuronBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Pre-activation intervals per layer, propagated from the raw input box by
/// sign-aware interval arithmetic. The input scaler is applied first; hidden
/// intervals are clamped at zero post-ReLU before feeding the next layer.
std::vector<std::vector<NeuronBounds>> compute_bounds(
    const ReluNetwork& network,
    const std::vector<std::pair<double, double>>& input_box);

enum class BigMMode { kInterval, kFixed };

constexpr double kFixedBigM = 1e5;

/// Appends the four big-M rows encoding out = max(pre, 0) with binary
/// indicator d: out >= 0, out >= pre, out <= pre + M*d, out <= M*(1-d).
/// `pre` is a linear row body (terms + constant). Throws when M is smaller
/// than the pre-activation bound requires.
void relu_to_milp(Milp& milp, const std::vector<MilpRow::Term>& pre_terms,
                  double pre_constant, int out_var, int indicator_var,
                  double big_m, const NeuronBounds& pre_bounds);

struct EncodingOptions {
  BigMMode big_m_mode = BigMMode::kInterval;
};

/// Builds the MILP: problem x-variables with their declared kinds/bounds,
/// exact affine rows for both scalers, big-M rows per hidden neuron, the
/// identity-activation output layer, the rewritten constraints of P, and the
/// problem objective. All variables get finite interval-derived bounds.
Milp nn_to_milp(const ReluNetwork& network, const Problem& problem,
                const EncodingOptions& options = {});

}  // namespace cnma
