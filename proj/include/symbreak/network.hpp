// Copyright 2026 The symbreak Authors
//
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

// Multilayer perceptrons whose linear maps live in solved weight bases.
// Only basis coefficients (and bias coefficients) are trainable, so every
// trained network stays inside its certified constraint subspace.

#ifndef SYMBREAK_NETWORK_HPP_
#define SYMBREAK_NETWORK_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symbreak/solver.hpp"

namespace symbreak::network {

enum class Activation { kIdentity, kRelu, kTanh };

std::string to_string(Activation a);
// Throws ParseError for unknown names.
Activation activation_from_string(const std::string& name);

struct LayerSpec {
  std::shared_ptr<const solver::WeightBasis> basis;
  Eigen::VectorXd coeffs;
  // m x d orthonormal basis of the output space fixed by K (by G for a
  // standard layer); zero columns when the layer has no bias.
  Eigen::MatrixXd bias_basis;
  Eigen::VectorXd bias_coeffs;
  Activation activation = Activation::kIdentity;

  Eigen::Index in_dim() const { return basis->system.n(); }
  Eigen::Index out_dim() const { return basis->system.m(); }
  bool has_bias() const { return bias_basis.cols() > 0; }
  Eigen::MatrixXd weight() const;
  Eigen::VectorXd bias() const;
};

// Zero coefficients; the bias (if requested) is restricted to the K-fixed
// subspace of the output representation.
LayerSpec make_layer(std::shared_ptr<const solver::WeightBasis> basis,
                     Activation activation, bool with_bias = false);

struct Network {
  std::vector<LayerSpec> layers;

  // Throws DimensionError when adjacent dimensions do not chain and
  // GroupMismatchError when layers use different groups.
  void validate() const;
  std::size_t num_parameters() const;
  // Coefficients of every layer (weights, then bias) concatenated.
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& theta);
};

struct Sample {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x);

// Mean over the batch of ||net(x) - y||^2.
double loss(const Network& net, std::span<const Sample> batch);

struct LayerGradient {
  Eigen::VectorXd coeffs;
  Eigen::VectorXd bias;
};

// Exact reverse-mode gradient of loss(). The ReLU derivative at 0 is 0.
std::vector<LayerGradient> gradient(const Network& net,
                                    std::span<const Sample> batch);

// Flattened in the same order as Network::parameters().
Eigen::VectorXd flatten(const std::vector<LayerGradient>& grads);

struct TrainConfig {
  double learning_rate = 0.05;
  std::int64_t steps = 100;
  std::uint64_t seed = 0;
  // When positive, parameters are redrawn as init_scale * N(0, 1) from
  // `seed` before training.
  double init_scale = 0.0;
};

struct TrainResult {
  Network net;
  // Loss before the first step, then after every step (steps + 1 entries).
  std::vector<double> trace;
};

// Plain full-batch gradient descent on a copy of `net`. Throws
// DivergenceError when the loss becomes non-finite.
TrainResult train(Network net, std::span<const Sample> batch,
                  const TrainConfig& cfg);

void initialize(Network& net, std::uint64_t seed, double scale);

// forward(net, x + sigma * z) with z ~ N(0, I) drawn from `seed`.
Eigen::VectorXd noise_inject_forward(const Network& net,
                                     const Eigen::VectorXd& x, double sigma,
                                     std::uint64_t seed);

}  // namespace symbreak::network

#endif  // SYMBREAK_NETWORK_HPP_
