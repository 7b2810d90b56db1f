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

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cnma/problem.hpp"

namespace cnma {

/// Hidden-layer widths; the output layer is implied by the data.
struct Architecture {
  std::vector<int> hidden_layers;

  bool operator==(const Architecture&) const = default;

  bool valid() const {
    if (hidden_layers.empty() || hidden_layers.size() > 4) return false;
    for (int w : hidden_layers)
      if (w < 1) return false;
    return true;
  }
};

/// Per-coordinate affine map: normalized = (raw - shift) / scale, scale > 0.
struct AffineScaler {
  std::vector<double> shift;
  std::vector<double> scale;

  std::vector<double> normalize(const std::vector<double>& raw) const;
  std::vector<double> denormalize(const std::vector<double>& normed) const;

  static AffineScaler identity(std::size_t dim);
};

struct DenseLayer {
  Eigen::MatrixXd weights;  // rows = outputs, cols = inputs
  Eigen::VectorXd biases;
};

/// Fully-connected ReLU regression network. ReLU follows every layer except
/// the last; the scalers map raw problem units to the network's internal
/// normalized space and back.
struct ReluNetwork {
  std::vector<DenseLayer> layers;
  AffineScaler input_scaler;
  AffineScaler output_scaler;
  Architecture architecture;

  int input_arity() const {
    return layers.empty() ? 0 : static_cast<int>(layers.front().weights.cols());
  }
  int output_arity() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
  }

  std::string to_json() const;
  static ReluNetwork from_json(const std::string& text);
};

struct TrainConfig {
  int epochs = 3000;
  double learning_rate = 2e-2;
  int batch_size = 256;
  std::uint64_t weight_init_seed = 0;
  double l2_penalty = 1e-5;
};

class TooFewSamplesError : public std::runtime_error {
 public:
  explicit TooFewSamplesError(std::size_t n)
      : std::runtime_error("need at least 2 ok samples, got " +
                           std::to_string(n)) {}
};

/// Zero-mean unit-variance scalers over the ok samples; a constant
/// coordinate keeps scale 1 so the map stays invertible.
std::pair<AffineScaler, AffineScaler> fit_scalers(
    const std::vector<Sample>& samples);

/// Trains by mini-batch Adam and returns the weight snapshot with the lowest
/// full-training-set MSE seen during the run (the initial weights count as a
/// checkpoint). Failed samples are dropped.
ReluNetwork train(const std::vector<Sample>& samples,
                  const Architecture& architecture, const TrainConfig& config);

std::vector<double> forward(const ReluNetwork& network,
                            const std::vector<double>& x);

/// Training-set MSE of the network, averaged over samples and outputs.
double training_mse(const ReluNetwork& network,
                    const std::vector<Sample>& samples);

}  // namespace cnma
