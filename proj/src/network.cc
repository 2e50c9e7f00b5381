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

#include "symbreak/network.hpp"

#include <cmath>
#include <random>

#include "symbreak/errors.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::network {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
  }
  return "identity";
}

Activation activation_from_string(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  throw ParseError("unknown activation '" + name + "'");
}

namespace {

Eigen::VectorXd activate(Activation a, const Eigen::VectorXd& z) {
  switch (a) {
    case Activation::kIdentity:
      return z;
    case Activation::kRelu:
      return z.cwiseMax(0.0);
    case Activation::kTanh:
      return z.array().tanh().matrix();
  }
  return z;
}

// d activation / dz, evaluated from the pre-activation z.
Eigen::VectorXd derivative(Activation a, const Eigen::VectorXd& z) {
  switch (a) {
    case Activation::kIdentity:
      return Eigen::VectorXd::Ones(z.size());
    case Activation::kRelu:
      return (z.array() > 0.0).cast<double>().matrix();
    case Activation::kTanh:
      return (1.0 - z.array().tanh().square()).matrix();
  }
  return Eigen::VectorXd::Ones(z.size());
}

}  // namespace

Eigen::MatrixXd LayerSpec::weight() const {
  return solver::assemble_weight(*basis,
                                 std::span(coeffs.data(), coeffs.size()));
}

Eigen::VectorXd LayerSpec::bias() const {
  if (!has_bias()) return Eigen::VectorXd::Zero(out_dim());
  return bias_basis * bias_coeffs;
}

LayerSpec make_layer(std::shared_ptr<const solver::WeightBasis> basis,
                     Activation activation, bool with_bias) {
  LayerSpec layer;
  layer.coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->rank()));
  layer.activation = activation;
  const auto& sys = basis->system;
  if (with_bias) {
    const groups::Subgroup k = sys.subgroup_k ? *sys.subgroup_k
                                              : groups::whole_group(sys.rep_out->group());
    layer.bias_basis = symmetry::fixed_subspace(*sys.rep_out, k).basis;
  } else {
    layer.bias_basis = Eigen::MatrixXd::Zero(sys.m(), 0);
  }
  layer.bias_coeffs = Eigen::VectorXd::Zero(layer.bias_basis.cols());
  layer.basis = std::move(basis);
  return layer;
}

void Network::validate() const {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (static_cast<std::size_t>(l.coeffs.size()) != l.basis->rank()) {
      throw DimensionError("layer " + std::to_string(i) +
                           ": coefficient count does not match basis rank");
    }
    if (l.bias_coeffs.size() != l.bias_basis.cols()) {
      throw DimensionError("layer " + std::to_string(i) +
                           ": bias coefficient count mismatch");
    }
    if (i == 0) continue;
    const auto& prev = layers[i - 1];
    if (prev.out_dim() != l.in_dim()) {
      throw DimensionError("layer " + std::to_string(i) +
                           ": input dimension does not match previous output");
    }
    if (prev.basis->system.rep_out->group() != l.basis->system.rep_in->group()) {
      throw GroupMismatchError("layers use different groups");
    }
  }
}

std::size_t Network::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += static_cast<std::size_t>(l.coeffs.size() + l.bias_coeffs.size());
  }
  return n;
}

Eigen::VectorXd Network::parameters() const {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(num_parameters()));
  Eigen::Index off = 0;
  for (const auto& l : layers) {
    theta.segment(off, l.coeffs.size()) = l.coeffs;
    off += l.coeffs.size();
    theta.segment(off, l.bias_coeffs.size()) = l.bias_coeffs;
    off += l.bias_coeffs.size();
  }
  return theta;
}

void Network::set_parameters(const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != num_parameters()) {
    throw DimensionError("parameter vector has the wrong length");
  }
  Eigen::Index off = 0;
  for (auto& l : layers) {
    l.coeffs = theta.segment(off, l.coeffs.size());
    off += l.coeffs.size();
    l.bias_coeffs = theta.segment(off, l.bias_coeffs.size());
    off += l.bias_coeffs.size();
  }
}

Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x) {
  Eigen::VectorXd a = x;
  for (const auto& l : net.layers) {
    if (a.size() != l.in_dim()) {
      throw DimensionError("forward: input of size " + std::to_string(a.size()) +
                           " for a layer expecting " +
                           std::to_string(l.in_dim()));
    }
    a = activate(l.activation, l.weight() * a + l.bias());
  }
  return a;
}

double loss(const Network& net, std::span<const Sample> batch) {
  if (batch.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : batch) total += (forward(net, s.x) - s.y).squaredNorm();
  return total / static_cast<double>(batch.size());
}

std::vector<LayerGradient> gradient(const Network& net,
                                    std::span<const Sample> batch) {
  std::vector<LayerGradient> grads(net.layers.size());
  std::vector<Eigen::MatrixXd> weights;
  weights.reserve(net.layers.size());
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    grads[i].coeffs = Eigen::VectorXd::Zero(l.coeffs.size());
    grads[i].bias = Eigen::VectorXd::Zero(l.bias_coeffs.size());
    weights.push_back(l.weight());
  }
  if (batch.empty()) return grads;
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  // Batch elements are summed in order so results are bit-reproducible.
  std::vector<Eigen::VectorXd> inputs(net.layers.size());
  std::vector<Eigen::VectorXd> pre(net.layers.size());
  for (const auto& s : batch) {
    Eigen::VectorXd a = s.x;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
      const auto& l = net.layers[i];
      inputs[i] = a;
      pre[i] = weights[i] * a + l.bias();
      a = activate(l.activation, pre[i]);
    }
    Eigen::VectorXd delta = 2.0 * inv_n * (a - s.y);
    for (std::size_t i = net.layers.size(); i-- > 0;) {
      const auto& l = net.layers[i];
      const Eigen::VectorXd dz =
          delta.cwiseProduct(derivative(l.activation, pre[i]));
      // dL/dc_j = <B_j, dz a^T>_F = dz^T B_j a.
      for (std::size_t j = 0; j < l.basis->rank(); ++j) {
        grads[i].coeffs(static_cast<Eigen::Index>(j)) +=
            dz.dot(l.basis->matrices[j] * inputs[i]);
      }
      if (l.has_bias()) grads[i].bias += l.bias_basis.transpose() * dz;
      delta = weights[i].transpose() * dz;
    }
  }
  return grads;
}

Eigen::VectorXd flatten(const std::vector<LayerGradient>& grads) {
  Eigen::Index n = 0;
  for (const auto& g : grads) n += g.coeffs.size() + g.bias.size();
  Eigen::VectorXd out(n);
  Eigen::Index off = 0;
  for (const auto& g : grads) {
    out.segment(off, g.coeffs.size()) = g.coeffs;
    off += g.coeffs.size();
    out.segment(off, g.bias.size()) = g.bias;
    off += g.bias.size();
  }
  return out;
}

void initialize(Network& net, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd theta(static_cast<Eigen::Index>(net.num_parameters()));
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = scale * normal(rng);
  net.set_parameters(theta);
}

TrainResult train(Network net, std::span<const Sample> batch,
                  const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) {
    throw ValidationError("learning rate must be positive");
  }
  if (cfg.steps < 0) throw ValidationError("steps must be non-negative");
  net.validate();
  if (cfg.init_scale > 0.0) initialize(net, cfg.seed, cfg.init_scale);

  TrainResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  result.trace.push_back(loss(net, batch));
  for (std::int64_t step = 0; step < cfg.steps; ++step) {
    const Eigen::VectorXd g = flatten(gradient(net, batch));
    net.set_parameters(net.parameters() - cfg.learning_rate * g);
    const double l = loss(net, batch);
    if (!std::isfinite(l)) {
      throw DivergenceError("loss became non-finite at step " +
                            std::to_string(step + 1));
    }
    result.trace.push_back(l);
  }
  result.net = std::move(net);
  return result;
}

Eigen::VectorXd noise_inject_forward(const Network& net,
                                     const Eigen::VectorXd& x, double sigma,
                                     std::uint64_t seed) {
  if (sigma < 0.0) throw ValidationError("sigma must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd noisy = x;
  for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy(i) += sigma * normal(rng);
  return forward(net, noisy);
}

}  // namespace symbreak::network
