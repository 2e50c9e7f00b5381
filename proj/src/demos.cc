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

#include "symbreak/demos.hpp"

#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "symbreak/errors.hpp"
#include "symbreak/network.hpp"
#include "symbreak/solver.hpp"
#include "symbreak/symmetry.hpp"
#include "symbreak/verify.hpp"

namespace symbreak::demos {

namespace {

using groups::GroupSpec;
using network::Activation;
using network::Network;
using network::Sample;
using reps::RepPtr;
using BasisPtr = std::shared_ptr<const solver::WeightBasis>;

constexpr double kLearningRate = 0.05;
constexpr std::int64_t kSteps = 2000;
constexpr double kInitScale = 0.1;

BasisPtr standard(const RepPtr& in, const RepPtr& out) {
  return std::make_shared<const solver::WeightBasis>(
      solver::solve_basis(solver::build_standard(in, out)));
}

BasisPtr relaxed(const RepPtr& in, const RepPtr& out, const groups::Subgroup& k) {
  return std::make_shared<const solver::WeightBasis>(
      solver::solve_basis(solver::build_relaxed(in, out, k)));
}

Network single_layer(BasisPtr b, Activation act = Activation::kIdentity,
                     bool bias = false) {
  Network net;
  net.layers.push_back(network::make_layer(std::move(b), act, bias));
  return net;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(std::initializer_list<double> cells) {
  std::string row;
  for (double c : cells) {
    if (!row.empty()) row += ',';
    row += fmt(c);
  }
  return row + "\n";
}

network::TrainConfig train_config(std::uint64_t seed,
                                  std::int64_t steps = kSteps,
                                  double init = kInitScale) {
  network::TrainConfig cfg;
  cfg.learning_rate = kLearningRate;
  cfg.steps = steps;
  cfg.seed = seed;
  cfg.init_scale = init;
  return cfg;
}

// Fit the all-ones input to a target with a standard and a relaxed
// (K = G) single-layer net.
struct Contrast {
  network::TrainResult standard, relaxed;
};

Contrast fit_contrast(const RepPtr& in, const RepPtr& out,
                      const Eigen::VectorXd& target, std::uint64_t seed) {
  const Sample s{Eigen::VectorXd::Ones(in->dim()), target};
  const std::vector<Sample> batch{s};
  Contrast c{network::train(single_layer(standard(in, out)), batch, train_config(seed)),
             network::train(single_layer(relaxed(in, out, groups::whole_group(in->group()))),
                            batch, train_config(seed + 1))};
  return c;
}

std::string loss_traces(const Contrast& c) {
  std::string csv = "step,standard_loss,relaxed_loss\n";
  for (std::size_t i = 0; i < c.standard.trace.size(); ++i) {
    csv += csv_row({double(i), c.standard.trace[i], c.relaxed.trace[i]});
  }
  return csv;
}

DemoOutput square_break(std::uint64_t seed) {
  const auto d4 = groups::construct_group(GroupSpec::dihedral(4));
  const auto perm = reps::permutation_rep(d4);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  y(0) = 1.0;
  const auto fix = symmetry::fixed_subspace(*perm, groups::whole_group(d4));
  const double bound = (y - fix.projector * y).squaredNorm();

  const auto c = fit_contrast(perm, perm, y, seed);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
  const Eigen::VectorXd out_std = network::forward(c.standard.net, x);
  const Eigen::VectorXd out_rel = network::forward(c.relaxed.net, x);
  DemoOutput o;
  o.summary = {
      {"demo", "square-break"},
      {"seed", seed},
      {"input", to_std(x)},
      {"target", to_std(y)},
      {"steps", kSteps},
      {"learning_rate", kLearningRate},
      {"analytic_bound", bound},
      {"standard",
       {{"final_loss", c.standard.trace.back()},
        {"output", to_std(out_std)},
        {"rank", c.standard.net.layers[0].basis->rank()},
        {"output_stabilizer_order", symmetry::stabilizer(*perm, out_std).order()}}},
      {"relaxed",
       {{"final_loss", c.relaxed.trace.back()},
        {"output", to_std(out_rel)},
        {"rank", c.relaxed.net.layers[0].basis->rank()},
        {"output_stabilizer_order", symmetry::stabilizer(*perm, out_rel).order()}}}};
  o.trace_csv = loss_traces(c);
  return o;
}

std::size_t distinct_embeddings(const Eigen::VectorXd& out, Eigen::Index nodes,
                                nlohmann::json& listing) {
  std::set<std::string> keys;
  listing = nlohmann::json::array();
  for (Eigen::Index i = 0; i < nodes; ++i) {
    const Eigen::Vector2d e(out(i), out(nodes + i));
    listing.push_back({e(0), e(1)});
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", e(0) + 0.0, e(1) + 0.0);
    keys.insert(buf);
  }
  return keys.size();
}

DemoOutput graph_nodes(std::uint64_t seed) {
  // Automorphisms of the 4-cycle act on the nodes as D4 on the square.
  const auto d4 = groups::construct_group(GroupSpec::dihedral(4));
  const auto perm = reps::permutation_rep(d4);
  const std::array<RepPtr, 2> two{perm, perm};
  const auto out_rep = reps::direct_sum(two);
  Eigen::VectorXd y(8);
  y << 1, 0, -1, 0, 0, 1, 0, -1;

  const auto c = fit_contrast(perm, out_rep, y, seed);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
  const Eigen::VectorXd out_std = network::forward(c.standard.net, x);
  const Eigen::VectorXd out_rel = network::forward(c.relaxed.net, x);
  nlohmann::json emb_std, emb_rel;
  const auto n_std = distinct_embeddings(out_std, 4, emb_std);
  const auto n_rel = distinct_embeddings(out_rel, 4, emb_rel);

  const std::vector<Eigen::VectorXd> inputs{x};
  const auto fn_std = [&](const Eigen::VectorXd& v) {
    return network::forward(c.standard.net, v);
  };
  const auto fn_rel = [&](const Eigen::VectorXd& v) {
    return network::forward(c.relaxed.net, v);
  };
  const auto fix = symmetry::fixed_subspace(*out_rep, groups::whole_group(d4));

  DemoOutput o;
  o.summary = {
      {"demo", "graph-nodes"},
      {"seed", seed},
      {"graph", "4-cycle"},
      {"target_embeddings", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}},
      {"standard_loss_bound", (y - fix.projector * y).squaredNorm()},
      {"standard",
       {{"final_loss", c.standard.trace.back()},
        {"embeddings", emb_std},
        {"distinct_embeddings", n_std},
        {"curie_passed", verify::check_curie(fn_std, *perm, *out_rep, inputs).passed}}},
      {"relaxed",
       {{"final_loss", c.relaxed.trace.back()},
        {"embeddings", emb_rel},
        {"distinct_embeddings", n_rel},
        {"curie_passed", verify::check_curie(fn_rel, *perm, *out_rep, inputs).passed},
        {"relaxed_passed",
         verify::check_relaxed(fn_rel, *perm, *out_rep, inputs).passed}}}};
  o.trace_csv = loss_traces(c);
  return o;
}

DemoOutput noise_baseline(std::uint64_t seed) {
  const auto d4 = groups::construct_group(GroupSpec::dihedral(4));
  const auto perm = reps::permutation_rep(d4);
  const auto whole = groups::whole_group(d4);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  y(0) = 1.0;
  const std::vector<double> sigmas{0.0, 0.01, 0.03, 0.1, 0.3, 1.0};
  constexpr int kTrainCopies = 32;
  constexpr int kEvalDraws = 200;
  constexpr std::int64_t kNoiseSteps = 500;

  // The relaxed layer needs no noise: K = G_x leaves W unconstrained.
  const std::vector<Sample> clean{{x, y}};
  const auto rel = network::train(single_layer(relaxed(perm, perm, whole)), clean,
                                  train_config(seed + 1));
  const double relaxed_loss = rel.trace.back();

  const auto b = standard(perm, perm);
  std::string csv = "sigma,violation,lipschitz_bound,task_loss,relaxed_loss\n";
  nlohmann::json rows = nlohmann::json::array();
  bool bound_holds = true;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    const double sigma = sigmas[si];
    std::vector<Sample> batch;
    for (int i = 0; i < kTrainCopies; ++i) {
      Eigen::VectorXd z(4);
      for (Eigen::Index j = 0; j < 4; ++j) z(j) = normal(rng);
      batch.push_back({x + sigma * z, y});
    }
    Network net;
    net.layers.push_back(network::make_layer(b, Activation::kTanh, true));
    net.layers.push_back(network::make_layer(b, Activation::kIdentity, false));
    const auto trained =
        network::train(std::move(net), batch, train_config(seed + 10 + si, kNoiseSteps, 0.5));
    const auto fn = [&](const Eigen::VectorXd& v) {
      return network::forward(trained.net, v);
    };
    verify::LipschitzOptions lo;
    lo.seed = seed + 20 + si;
    const double k = verify::check_lipschitz(fn, *perm, *perm, lo).config["k"].get<double>();

    double violation = 0.0, bound = 0.0, task = 0.0;
    for (int d = 0; d < kEvalDraws; ++d) {
      const std::uint64_t draw = seed * 1000003ULL + si * 1000 + d;
      const Eigen::VectorXd out = network::noise_inject_forward(trained.net, x, sigma, draw);
      // Reproduce the perturbed input to evaluate the Lipschitz bound.
      std::mt19937_64 r(draw);
      std::normal_distribution<double> nd(0.0, 1.0);
      Eigen::VectorXd xi(4);
      for (Eigen::Index j = 0; j < 4; ++j) xi(j) = x(j) + sigma * nd(r);
      double v_max = 0.0, b_max = 0.0;
      for (auto g : whole.members()) {
        const double lhs = (perm->matrix(g) * out - out).norm();
        const double rhs = k * (perm->matrix(g) * xi - xi).norm();
        v_max = std::max(v_max, lhs);
        b_max = std::max(b_max, rhs);
        if (lhs > rhs + verify::kRelationalTol * std::max(1.0, out.norm())) {
          bound_holds = false;
        }
      }
      violation += v_max;
      bound += b_max;
      task += (out - y).squaredNorm();
    }
    violation /= kEvalDraws;
    bound /= kEvalDraws;
    task /= kEvalDraws;
    csv += csv_row({sigma, violation, bound, task, relaxed_loss});
    rows.push_back({{"sigma", sigma},
                    {"violation", violation},
                    {"lipschitz_bound", bound},
                    {"task_loss", task},
                    {"k", k}});
  }
  DemoOutput o;
  o.summary = {{"demo", "noise-baseline"},
               {"seed", seed},
               {"eval_draws", kEvalDraws},
               {"relaxed_loss", relaxed_loss},
               {"bound_holds", bound_holds},
               {"sweep", rows}};
  o.trace_csv = csv;
  return o;
}

DemoOutput relu_collapse(std::uint64_t seed) {
  const auto d4 = groups::construct_group(GroupSpec::dihedral(4));
  const auto perm = reps::permutation_rep(d4);
  const auto b = standard(perm, perm);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeffs(b->rank());
  for (auto& c : coeffs) c = normal(rng);
  const Eigen::MatrixXd w = solver::assemble_weight(*b, coeffs);

  constexpr int kSamples = 1000;
  std::string csv = "sample,order_input,order_preactivation,order_activation\n";
  int enlarged = 0;
  nlohmann::json example;
  std::map<std::size_t, int> after_hist;
  for (int i = 0; i < kSamples; ++i) {
    Eigen::VectorXd x(4);
    for (Eigen::Index j = 0; j < 4; ++j) x(j) = normal(rng);
    const Eigen::VectorXd z = w * x;
    const Eigen::VectorXd a = z.cwiseMax(0.0);
    const auto sx = symmetry::stabilizer(*perm, x);
    const auto sz = symmetry::stabilizer(*perm, z);
    const auto sa = symmetry::stabilizer(*perm, a);
    if (sa.order() > sz.order()) {
      ++enlarged;
      if (example.is_null()) {
        example = {{"input", to_std(x)},
                   {"preactivation", to_std(z)},
                   {"activation", to_std(a)},
                   {"stabilizer", sa.members()}};
      }
    }
    ++after_hist[sa.order()];
    csv += csv_row({double(i), double(sx.order()), double(sz.order()),
                    double(sa.order())});
  }
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [order, count] : after_hist) hist[std::to_string(order)] = count;
  DemoOutput o;
  o.summary = {{"demo", "relu-collapse"},
               {"seed", seed},
               {"samples", kSamples},
               {"enlarged", enlarged},
               {"fraction_enlarged", double(enlarged) / kSamples},
               {"activation_stabilizer_orders", hist},
               {"example", example}};
  o.trace_csv = csv;
  return o;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"square-break", "graph-nodes",
                                              "noise-baseline", "relu-collapse"};
  return names;
}

DemoOutput run_demo(const std::string& name, std::uint64_t seed) {
  if (name == "square-break") return square_break(seed);
  if (name == "graph-nodes") return graph_nodes(seed);
  if (name == "noise-baseline") return noise_baseline(seed);
  if (name == "relu-collapse") return relu_collapse(seed);
  throw ValidationError("unknown demo '" + name + "'");
}

}  // namespace symbreak::demos
