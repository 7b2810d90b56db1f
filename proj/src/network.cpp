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

#include "cnma/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

namespace cnma {

std::vector<double> AffineScaler::normalize(
    const std::vector<double>& raw) const {
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = (raw[i] - shift[i]) / scale[i];
  return out;
}

std::vector<double> AffineScaler::denormalize(
    const std::vector<double>& normed) const {
  std::vector<double> out(normed.size());
  for (std::size_t i = 0; i < normed.size(); ++i)
    out[i] = normed[i] * scale[i] + shift[i];
  return out;
}

AffineScaler AffineScaler::identity(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

namespace {

std::vector<const Sample*> ok_samples(const std::vector<Sample>& samples) {
  std::vector<const Sample*> out;
  for (const auto& s : samples)
    if (s.result.ok()) out.push_back(&s);
  return out;
}

AffineScaler fit_columns(const std::vector<std::vector<double>>& rows) {
  const std::size_t dim = rows.front().size();
  const double n = static_cast<double>(rows.size());
  AffineScaler s{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
  for (std::size_t j = 0; j < dim; ++j) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[j];
    mean /= n;
    double var = 0.0;
    for (const auto& r : rows) var += (r[j] - mean) * (r[j] - mean);
    var /= n;
    s.shift[j] = mean;
    s.scale[j] = (var > 1e-24) ? std::sqrt(var) : 1.0;
  }
  return s;
}

}  // namespace

std::pair<AffineScaler, AffineScaler> fit_scalers(
    const std::vector<Sample>& samples) {
  auto ok = ok_samples(samples);
  if (ok.size() < 2) throw TooFewSamplesError(ok.size());
  std::vector<std::vector<double>> xs, ys;
  for (const auto* s : ok) {
    xs.push_back(s->x);
    ys.push_back(s->result.y);
  }
  return {fit_columns(xs), fit_columns(ys)};
}

std::vector<double> forward(const ReluNetwork& network,
                            const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != network.input_arity())
    throw std::invalid_argument("forward: input arity mismatch");
  std::vector<double> normed = network.input_scaler.normalize(x);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(
      normed.data(), static_cast<Eigen::Index>(normed.size()));
  for (std::size_t l = 0; l < network.layers.size(); ++l) {
    v = network.layers[l].weights * v + network.layers[l].biases;
    if (l + 1 < network.layers.size()) v = v.cwiseMax(0.0);
  }
  std::vector<double> out(v.data(), v.data() + v.size());
  return network.output_scaler.denormalize(out);
}

double training_mse(const ReluNetwork& network,
                    const std::vector<Sample>& samples) {
  auto ok = ok_samples(samples);
  double se = 0.0;
  std::size_t count = 0;
  for (const auto* s : ok) {
    std::vector<double> pred_raw = forward(network, s->x);
    std::vector<double> pred = network.output_scaler.normalize(pred_raw);
    std::vector<double> target = network.output_scaler.normalize(s->result.y);
    for (std::size_t j = 0; j < pred.size(); ++j) {
      const double e = pred[j] - target[j];
      se += e * e;
      ++count;
    }
  }
  return count ? se / static_cast<double>(count) : 0.0;
}

namespace {

struct AdamState {
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
};

}  // namespace

ReluNetwork train(const std::vector<Sample>& samples,
                  const Architecture& architecture,
                  const TrainConfig& config) {
  auto ok = ok_samples(samples);
  if (ok.size() < 2) throw TooFewSamplesError(ok.size());
  if (!architecture.valid())
    throw std::invalid_argument("invalid architecture");

  ReluNetwork net;
  net.architecture = architecture;
  std::tie(net.input_scaler, net.output_scaler) = fit_scalers(samples);

  const int n = static_cast<int>(ok.size());
  const int in_dim = static_cast<int>(ok.front()->x.size());
  const int out_dim = static_cast<int>(ok.front()->result.y.size());

  Eigen::MatrixXd X(in_dim, n), Y(out_dim, n);
  for (int i = 0; i < n; ++i) {
    auto xn = net.input_scaler.normalize(ok[i]->x);
    auto yn = net.output_scaler.normalize(ok[i]->result.y);
    for (int j = 0; j < in_dim; ++j) X(j, i) = xn[j];
    for (int j = 0; j < out_dim; ++j) Y(j, i) = yn[j];
  }

  std::vector<int> dims;
  dims.push_back(in_dim);
  for (int w : architecture.hidden_layers) dims.push_back(w);
  dims.push_back(out_dim);
  const int n_layers = static_cast<int>(dims.size()) - 1;

  std::mt19937_64 rng(config.weight_init_seed);
  net.layers.resize(n_layers);
  for (int l = 0; l < n_layers; ++l) {
    const int fan_in = dims[l], fan_out = dims[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    net.layers[l].weights = Eigen::MatrixXd::Zero(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) net.layers[l].weights(r, c) = dist(rng);
    net.layers[l].biases = Eigen::VectorXd::Zero(fan_out);
  }

  auto full_mse = [&](const std::vector<DenseLayer>& layers) {
    Eigen::MatrixXd act = X;
    for (int l = 0; l < n_layers; ++l) {
      act = (layers[l].weights * act).colwise() + layers[l].biases;
      if (l + 1 < n_layers) act = act.cwiseMax(0.0);
    }
    return (act - Y).squaredNorm() / static_cast<double>(n * out_dim);
  };

  std::vector<DenseLayer> best = net.layers;
  double best_mse = full_mse(net.layers);

  AdamState adam;
  adam.mW.resize(n_layers);
  adam.vW.resize(n_layers);
  adam.mb.resize(n_layers);
  adam.vb.resize(n_layers);
  for (int l = 0; l < n_layers; ++l) {
    adam.mW[l] = Eigen::MatrixXd::Zero(dims[l + 1], dims[l]);
    adam.vW[l] = Eigen::MatrixXd::Zero(dims[l + 1], dims[l]);
    adam.mb[l] = Eigen::VectorXd::Zero(dims[l + 1]);
    adam.vb[l] = Eigen::VectorXd::Zero(dims[l + 1]);
  }
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long step = 0;

  const int batch = std::max(1, std::min(config.batch_size, n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<Eigen::MatrixXd> pre(n_layers), post(n_layers);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < n; start += batch) {
      const int bs = std::min(batch, n - start);
      Eigen::MatrixXd xb(in_dim, bs), yb(out_dim, bs);
      for (int k = 0; k < bs; ++k) {
        xb.col(k) = X.col(order[start + k]);
        yb.col(k) = Y.col(order[start + k]);
      }

      Eigen::MatrixXd act = xb;
      for (int l = 0; l < n_layers; ++l) {
        pre[l] = (net.layers[l].weights * act).colwise() + net.layers[l].biases;
        post[l] = (l + 1 < n_layers) ? pre[l].cwiseMax(0.0).eval() : pre[l];
        act = post[l];
      }

      // dL/dpre for the output layer; MSE averaged over batch and outputs.
      Eigen::MatrixXd delta =
          2.0 * (act - yb) / static_cast<double>(bs * out_dim);
      ++step;
      const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (int l = n_layers - 1; l >= 0; --l) {
        const Eigen::MatrixXd& input = (l == 0) ? xb : post[l - 1];
        Eigen::MatrixXd gW = delta * input.transpose() +
                             config.l2_penalty * net.layers[l].weights;
        Eigen::VectorXd gb = delta.rowwise().sum();
        if (l > 0) {
          delta = (net.layers[l].weights.transpose() * delta).eval();
          delta = delta.cwiseProduct(
              (pre[l - 1].array() > 0.0).cast<double>().matrix());
        }
        adam.mW[l] = beta1 * adam.mW[l] + (1.0 - beta1) * gW;
        adam.vW[l] = beta2 * adam.vW[l] + (1.0 - beta2) * gW.cwiseProduct(gW);
        adam.mb[l] = beta1 * adam.mb[l] + (1.0 - beta1) * gb;
        adam.vb[l] = beta2 * adam.vb[l] + (1.0 - beta2) * gb.cwiseProduct(gb);
        net.layers[l].weights -=
            config.learning_rate *
            (adam.mW[l] / bc1)
                .cwiseQuotient(((adam.vW[l] / bc2).cwiseSqrt().array() + eps)
                                   .matrix());
        net.layers[l].biases -=
            config.learning_rate *
            (adam.mb[l] / bc1)
                .cwiseQuotient(((adam.vb[l] / bc2).cwiseSqrt().array() + eps)
                                   .matrix());
      }
    }

    const double mse = full_mse(net.layers);
    if (mse < best_mse) {
      best_mse = mse;
      best = net.layers;
    }
  }

  net.layers = std::move(best);
  return net;
}

namespace {

nlohmann::json scaler_to_json(const AffineScaler& s) {
  return {{"shift", s.shift}, {"scale", s.scale}};
}

AffineScaler scaler_from_json(const nlohmann::json& j) {
  AffineScaler s;
  s.shift = j.at("shift").get<std::vector<double>>();
  s.scale = j.at("scale").get<std::vector<double>>();
  return s;
}

}  // namespace

std::string ReluNetwork::to_json() const {
  nlohmann::json j;
  j["hidden_layers"] = architecture.hidden_layers;
  j["input_scaler"] = scaler_to_json(input_scaler);
  j["output_scaler"] = scaler_to_json(output_scaler);
  j["layers"] = nlohmann::json::array();
  for (const auto& layer : layers) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      std::vector<double> row(layer.weights.cols());
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
        row[c] = layer.weights(r, c);
      rows.push_back(row);
    }
    std::vector<double> biases(layer.biases.data(),
                               layer.biases.data() + layer.biases.size());
    j["layers"].push_back({{"weights", rows}, {"biases", biases}});
  }
  return j.dump(2);
}

ReluNetwork ReluNetwork::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ReluNetwork net;
  net.architecture.hidden_layers =
      j.at("hidden_layers").get<std::vector<int>>();
  net.input_scaler = scaler_from_json(j.at("input_scaler"));
  net.output_scaler = scaler_from_json(j.at("output_scaler"));
  for (const auto& jl : j.at("layers")) {
    DenseLayer layer;
    const auto& rows = jl.at("weights");
    const auto biases = jl.at("biases").get<std::vector<double>>();
    layer.weights.resize(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto row = rows[r].get<std::vector<double>>();
      for (std::size_t c = 0; c < row.size(); ++c)
        layer.weights(static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(c)) = row[c];
    }
    layer.biases = Eigen::Map<const Eigen::VectorXd>(
        biases.data(), static_cast<Eigen::Index>(biases.size()));
    net.layers.push_back(std::move(layer));
  }
  return net;
}

}  // namespace cnma
