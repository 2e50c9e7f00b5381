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

#include "symbreak/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "symbreak/network.hpp"
#include "symbreak/solver.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::suite {

namespace {

using groups::GroupSpec;
using groups::Subgroup;
using reps::RepPtr;
using verify::SuiteEntry;
using verify::VectorMap;
using BasisPtr = std::shared_ptr<const solver::WeightBasis>;

BasisPtr standard(const RepPtr& in, const RepPtr& out) {
  return std::make_shared<const solver::WeightBasis>(
      solver::solve_basis(solver::build_standard(in, out)));
}

BasisPtr relaxed(const RepPtr& in, const RepPtr& out, const Subgroup& k) {
  return std::make_shared<const solver::WeightBasis>(
      solver::solve_basis(solver::build_relaxed(in, out, k)));
}

Eigen::MatrixXd random_weight(const solver::WeightBasis& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(b.rank());
  for (auto& v : c) v = normal(rng);
  return solver::assemble_weight(b, c);
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd w(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) w(i, j) = normal(rng);
  }
  return w;
}

Eigen::VectorXd gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

VectorMap linear(Eigen::MatrixXd w) {
  return [w = std::move(w)](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return w * x;
  };
}

VectorMap tanh_linear(Eigen::MatrixXd w) {
  return [w = std::move(w)](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return (w * x).array().tanh().matrix();
  };
}

VectorMap relu_linear(Eigen::MatrixXd w) {
  return [w = std::move(w)](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return (w * x).cwiseMax(0.0);
  };
}

Eigen::VectorXd vec_of(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// A scalar report: violation v against tolerance tol, one trial.
CheckReport scalar_report(std::string note, double v, double tol,
                          nlohmann::json config) {
  CheckReport r("", tol);
  r.config = std::move(config);
  r.observe(v, Witness{std::move(note), {}, {}, v});
  return r.finalize();
}

struct Named {
  std::string tag;
  groups::GroupPtr group;
  RepPtr perm;
};

std::vector<Named> named(const Fixtures& f) {
  return {{"z2", f.z2, f.perm2}, {"s3", f.s3, f.perm3}, {"d4", f.d4, f.perm4}};
}

// Inputs covering every orbit type plus the all-ones fixed point.
std::vector<Eigen::VectorXd> typed_inputs(const RepPtr& rep, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  out.push_back(Eigen::VectorXd::Ones(rep->dim()));
  std::uint64_t s = seed;
  for (const auto& cls : groups::subgroup_classes(rep->group())) {
    for (auto& x : solver::sample_orbit_type(*rep, cls, 4, ++s)) out.push_back(x);
  }
  return out;
}

void add_basis_entries(std::vector<SuiteEntry>& s, const Fixtures& f) {
  s.push_back({"basis_s3_standard_rank", true, [f] {
                 const auto b = standard(f.perm3, f.perm3);
                 return scalar_report("rank differs from 2",
                                      std::abs(double(b->rank()) - 2.0), 0.0,
                                      {{"rank", b->rank()}});
               }});
  s.push_back({"basis_z2_standard_rank", true, [f] {
                 const auto b = standard(f.perm2, f.perm2);
                 return scalar_report("rank differs from 2",
                                      std::abs(double(b->rank()) - 2.0), 0.0,
                                      {{"rank", b->rank()}});
               }});
  for (const auto& n : named(f)) {
    s.push_back({"basis_" + n.tag + "_trivial_k_matches_standard", true, [n] {
                   const auto a = standard(n.perm, n.perm);
                   const auto b = relaxed(n.perm, n.perm,
                                          groups::trivial_subgroup(n.group));
                   const double d =
                       (solver::span_projector(*a) - solver::span_projector(*b)).norm();
                   return scalar_report("projector distance", d, 1e-8,
                                        {{"rank_standard", a->rank()},
                                         {"rank_relaxed", b->rank()}});
                 }});
    s.push_back({"basis_" + n.tag + "_whole_k_full_rank", true, [n] {
                   const auto b = relaxed(n.perm, n.perm, groups::whole_group(n.group));
                   const double mn = double(n.perm->dim() * n.perm->dim());
                   return scalar_report("rank differs from mn",
                                        std::abs(double(b->rank()) - mn), 0.0,
                                        {{"rank", b->rank()},
                                         {"blocks", b->system.blocks.size()}});
                 }});
  }
}

void add_theorem4_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                          const SuiteOptions& o) {
  for (const auto& n : named(f)) {
    if (n.tag == "z2") continue;
    const auto classes = groups::subgroup_classes(n.group);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      const auto cls = classes[ci];
      const std::string name = "theorem4_" + n.tag + "_class" + std::to_string(ci) +
                               "_order" + std::to_string(cls.front().order());
      s.push_back({name, true, [n, cls, o, ci] {
                     const auto b = relaxed(n.perm, n.perm, cls.front());
                     return solver::verify_theorem4(*b, cls, o.theorem4_inputs,
                                                    o.seed + 101 * (ci + 1));
                   }});
    }
    // The first order-2 class has X_H strictly larger than X_G, so the
    // fixture is not vacuous.
    auto it = std::find_if(classes.begin(), classes.end(),
                           [](const auto& c) { return c.front().order() == 2; });
    const auto cls = *it;
    s.push_back({"theorem4_" + n.tag + "_random_matrix", false, [n, cls, o] {
                   const auto b = relaxed(n.perm, n.perm, cls.front());
                   Eigen::MatrixXd w =
                       gaussian_matrix(n.perm->dim(), n.perm->dim(), o.seed + 7);
                   Eigen::Map<Eigen::VectorXd> v(w.data(), w.size());
                   const Eigen::VectorXd inside = solver::span_projector(*b) * v;
                   v -= inside;
                   return solver::verify_linear_relaxed(w, n.perm, n.perm, cls,
                                                        o.theorem4_inputs, o.seed + 11);
                 }});
  }
}

void add_curie_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                       const SuiteOptions& o) {
  for (const auto& n : named(f)) {
    s.push_back({"curie_" + n.tag + "_standard_layer", true, [n, o] {
                   const auto b = standard(n.perm, n.perm);
                   const auto inputs = typed_inputs(n.perm, o.seed + 21);
                   return verify::check_curie(linear(random_weight(*b, o.seed + 22)),
                                              *n.perm, *n.perm, inputs, o.tol);
                 }});
  }
  s.push_back({"curie_s3_standard_tanh_net", true, [f, o] {
                 const auto b = standard(f.perm3, f.perm3);
                 const auto l1 = tanh_linear(random_weight(*b, o.seed + 23));
                 const auto l2 = linear(random_weight(*b, o.seed + 24));
                 const VectorMap net = [l1, l2](const Eigen::VectorXd& x) {
                   return l2(l1(x));
                 };
                 return verify::check_curie(net, *f.perm3, *f.perm3,
                                            typed_inputs(f.perm3, o.seed + 25), o.tol);
               }});
  // K = G_x = D4 at the all-ones input: every W is allowed, and a generic
  // one breaks the symmetry.
  s.push_back({"curie_d4_relaxed_break", false, [f, o] {
                 const auto b = relaxed(f.perm4, f.perm4, groups::whole_group(f.d4));
                 const std::vector<Eigen::VectorXd> inputs{Eigen::VectorXd::Ones(4)};
                 return verify::check_curie(linear(random_weight(*b, o.seed + 26)),
                                            *f.perm4, *f.perm4, inputs, o.tol);
               }});
}

void add_lipschitz_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                           const SuiteOptions& o) {
  verify::LipschitzOptions lo;
  lo.k_samples = o.lipschitz_samples;
  lo.test_samples = o.lipschitz_samples;
  lo.seed = o.seed + 31;
  lo.tol = o.tol;
  for (const auto& n : named(f)) {
    s.push_back({"lipschitz_" + n.tag + "_standard_layer", true, [n, o, lo] {
                   const auto b = standard(n.perm, n.perm);
                   return verify::check_lipschitz(linear(random_weight(*b, o.seed + 32)),
                                                  *n.perm, *n.perm, lo);
                 }});
  }
  s.push_back({"lipschitz_d4_standard_tanh_net", true, [f, o, lo] {
                 const auto b = standard(f.perm4, f.perm4);
                 const auto l1 = tanh_linear(random_weight(*b, o.seed + 33));
                 const auto l2 = linear(random_weight(*b, o.seed + 34));
                 const VectorMap net = [l1, l2](const Eigen::VectorXd& x) {
                   return l2(l1(x));
                 };
                 return verify::check_lipschitz(net, *f.perm4, *f.perm4, lo);
               }});
  s.push_back({"lipschitz_s3_sweep_to_diagonal", true, [f, o, lo] {
                 const auto b = standard(f.perm3, f.perm3);
                 const auto fn = linear(random_weight(*b, o.seed + 35));
                 const auto est = verify::check_lipschitz(fn, *f.perm3, *f.perm3, lo);
                 std::mt19937_64 rng(o.seed + 36);
                 const Eigen::VectorXd x0 = gaussian_vector(3, rng);
                 const Eigen::VectorXd diag = Eigen::VectorXd::Constant(3, x0.mean());
                 return verify::lipschitz_sweep(fn, *f.perm3, *f.perm3, x0, diag,
                                                est.config["k"].get<double>(), 50,
                                                o.tol);
               }});
  s.push_back({"lipschitz_d4_random_matrix", false, [f, o, lo] {
                 return verify::check_lipschitz(linear(gaussian_matrix(4, 4, o.seed + 37)),
                                                *f.perm4, *f.perm4, lo);
               }});
}

void add_measure_zero_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                              const SuiteOptions& o) {
  // Independent streams per group: a shared stream would make one near-tie
  // in it count against every group.
  std::uint64_t stream = 0;
  for (const auto& n : named(f)) {
    const std::uint64_t seed = o.seed + 4100 + 97 * ++stream;
    s.push_back({"measure_zero_" + n.tag + "_gaussian", true, [n, o, seed] {
                   const double frac = symmetry::stabilizer_fraction(
                       *n.perm, o.measure_zero_samples, seed);
                   auto r = scalar_report("symmetric Gaussian samples", frac, 0.0,
                                          {{"samples", o.measure_zero_samples},
                                           {"seed", seed},
                                           {"fraction", frac}});
                   r.trials = o.measure_zero_samples;
                   return r;
                 }});
  }
  s.push_back({"measure_zero_d4_adversarial", true, [f, o] {
                 const std::int64_t samples = std::min<std::int64_t>(o.measure_zero_samples, 1000);
                 const double frac = symmetry::stabilizer_fraction(
                     *f.perm4, samples, o.seed + 42,
                     symmetry::Sampling::kProjectedAdversarial);
                 auto r = scalar_report("projected samples not all symmetric",
                                        std::abs(1.0 - frac), 0.0,
                                        {{"samples", samples}, {"fraction", frac}});
                 r.trials = samples;
                 return r;
               }});
}

// Disjoint union of coset actions of random subgroups, at most max_size
// points.
verify::DiscreteAction random_action(const groups::GroupPtr& g,
                                     std::size_t max_size, std::mt19937_64& rng) {
  const auto classes = groups::subgroup_classes(g);
  std::vector<verify::DiscreteAction> parts;
  std::size_t size = 0;
  const int want = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < want; ++i) {
    const auto& cls = classes[rng() % classes.size()];
    const auto& h = cls[rng() % cls.size()];
    const std::size_t add = g->order() / h.order();
    if (size + add > max_size) continue;
    parts.push_back(verify::coset_action(h));
    size += add;
  }
  if (parts.empty()) parts.push_back(verify::coset_action(groups::whole_group(g)));
  return verify::disjoint_union(parts);
}

CheckReport argmax_random_tables(int tables, std::uint64_t seed) {
  CheckReport report("", verify::kProbabilityTol);
  const std::array<groups::GroupPtr, 3> gs{
      groups::construct_group(GroupSpec::cyclic(2)),
      groups::construct_group(GroupSpec::cyclic(4)),
      groups::construct_group(GroupSpec::symmetric(3))};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::int64_t selector_inputs = 0, outside = 0;
  for (int t = 0; t < tables; ++t) {
    const auto& g = gs[static_cast<std::size_t>(t) % gs.size()];
    const auto ax = random_action(g, 12, rng);
    const auto ay = random_action(g, 12, rng);
    Eigen::MatrixXd q(static_cast<Eigen::Index>(ax.size()),
                      static_cast<Eigen::Index>(ay.size()));
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      for (Eigen::Index j = 0; j < q.cols(); ++j) {
        double v = unif(rng);
        // Coarse values on odd tables make ties across orbits likely.
        if (t % 2) v = std::round(v * 3.0) + 1.0;
        q(i, j) = v;
      }
      q.row(i) /= q.row(i).sum();
    }
    const auto p = verify::symmetrize_table(q, ax, ay);
    const auto res = verify::argmax_oracle(p, ax, ay);
    report.observe(res.report.max_violation,
                   Witness{"table " + std::to_string(t) + " failed", {}, {}, 0});
    report.observe(res.lemma1_holds && res.lemma2_holds ? 0.0 : 1.0,
                   Witness{"lemma check failed on table " + std::to_string(t),
                           {}, {}, 0});
    for (const auto& sel : res.selector) selector_inputs += sel ? 1 : 0;
    outside += static_cast<std::int64_t>(res.outside_hypothesis.size());
  }
  report.config = {{"tables", tables},
                   {"seed", seed},
                   {"selector_inputs", selector_inputs},
                   {"outside_hypothesis", outside}};
  return report.finalize();
}

void add_argmax_entries(std::vector<SuiteEntry>& s, const SuiteOptions& o) {
  s.push_back({"argmax_z2_two_points", true, [] {
                 const auto g = groups::construct_group(GroupSpec::cyclic(2));
                 const verify::DiscreteAction a{g, {{0, 1}, {1, 0}}};
                 Eigen::MatrixXd p(2, 2);
                 p << 0.7, 0.3, 0.3, 0.7;
                 return verify::argmax_oracle(p, a, a).report;
               }});
  s.push_back({"argmax_random_tables", true,
               [o] { return argmax_random_tables(o.argmax_tables, o.seed + 51); }});
}

void add_composition_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                             const SuiteOptions& o) {
  const auto symmetric_pairs = [] {
    std::vector<Eigen::VectorXd> v;
    for (double c : {1.0, -0.5, 2.0, 0.25}) v.push_back(vec_of({c, c}));
    return v;
  };
  s.push_back({"composition_z2_relaxed_stack", true, [f, o, symmetric_pairs] {
                 const auto b1 = relaxed(f.perm2, f.perm2, groups::whole_group(f.z2));
                 const auto b2 = relaxed(f.perm2, f.perm2, groups::trivial_subgroup(f.z2));
                 return verify::check_composition(
                     linear(random_weight(*b1, o.seed + 61)),
                     linear(random_weight(*b2, o.seed + 62)), *f.perm2, *f.perm2,
                     *f.perm2, symmetric_pairs(), o.tol);
               }});
  s.push_back({"composition_d4_relaxed_then_standard", true, [f, o] {
                 const auto k = symmetry::stabilizer(*f.perm4, vec_of({1, 1, 0, 0}));
                 const auto cls = groups::conjugacy_class_of_subgroup(k);
                 const auto b1 = relaxed(f.perm4, f.perm4, k);
                 const auto b2 = standard(f.perm4, f.perm4);
                 const auto inputs = solver::sample_orbit_type(*f.perm4, cls, 40, o.seed + 63);
                 return verify::check_composition(
                     tanh_linear(random_weight(*b1, o.seed + 64)),
                     linear(random_weight(*b2, o.seed + 65)), *f.perm4, *f.perm4,
                     *f.perm4, inputs, o.tol);
               }});
  s.push_back({"composition_s3_standard_stack", true, [f, o] {
                 const auto b = standard(f.perm3, f.perm3);
                 return verify::check_composition(
                     relu_linear(random_weight(*b, o.seed + 66)),
                     linear(random_weight(*b, o.seed + 67)), *f.perm3, *f.perm3,
                     *f.perm3, typed_inputs(f.perm3, o.seed + 68), o.tol);
               }});
  s.push_back({"composition_z2_random_second", false, [f, o, symmetric_pairs] {
                 const auto b1 = relaxed(f.perm2, f.perm2, groups::whole_group(f.z2));
                 return verify::check_composition(
                     linear(random_weight(*b1, o.seed + 61)),
                     linear(gaussian_matrix(2, 2, o.seed + 69)), *f.perm2, *f.perm2,
                     *f.perm2, symmetric_pairs(), o.tol);
               }});
}

void add_orbit_entries(std::vector<SuiteEntry>& s, const Fixtures& f,
                       const SuiteOptions& o) {
  s.push_back({"orbit_d4_relaxed_layer", true, [f, o] {
                 const Eigen::VectorXd x = vec_of({1, 1, 0, 0});
                 const auto b = relaxed(f.perm4, f.perm4, symmetry::stabilizer(*f.perm4, x));
                 return verify::check_orbit_consistency(
                     linear(random_weight(*b, o.seed + 71)), *f.perm4, *f.perm4, x, o.tol);
               }});
  s.push_back({"orbit_d4_seed_extension", true, [f, o] {
                 const Eigen::VectorXd x = vec_of({1, 1, 0, 0});
                 std::mt19937_64 rng(o.seed + 72);
                 const auto fn = verify::orbit_extension(f.perm4, f.perm4, x,
                                                         gaussian_vector(4, rng));
                 return verify::check_orbit_consistency(fn, *f.perm4, *f.perm4, x, o.tol);
               }});
  s.push_back({"orbit_s3_seed_extension", true, [f, o] {
                 const Eigen::VectorXd x = vec_of({2, -1, 0.5});
                 std::mt19937_64 rng(o.seed + 73);
                 const auto fn = verify::orbit_extension(f.perm3, f.perm3, x,
                                                         gaussian_vector(3, rng));
                 return verify::check_orbit_consistency(fn, *f.perm3, *f.perm3, x, o.tol);
               }});
  s.push_back({"orbit_s3_fixed_point", true, [f, o] {
                 const auto b = standard(f.perm3, f.perm3);
                 return verify::check_orbit_consistency(
                     linear(random_weight(*b, o.seed + 74)), *f.perm3, *f.perm3,
                     Eigen::VectorXd::Ones(3), o.tol);
               }});
}

}  // namespace

Fixtures make_fixtures() {
  Fixtures f;
  f.z2 = groups::construct_group(GroupSpec::cyclic(2));
  f.s3 = groups::construct_group(GroupSpec::symmetric(3));
  f.d4 = groups::construct_group(GroupSpec::dihedral(4));
  f.perm2 = reps::permutation_rep(f.z2);
  f.perm3 = reps::permutation_rep(f.s3);
  f.perm4 = reps::permutation_rep(f.d4);
  return f;
}

CheckReport gradient_check(int configs, std::uint64_t seed) {
  CheckReport report("gradient_check", 1e-5);
  const Fixtures f = make_fixtures();
  const auto fixtures = named(f);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double h = 1e-6;
  for (int c = 0; c < configs; ++c) {
    const auto& fx = fixtures[static_cast<std::size_t>(c) % fixtures.size()];
    const std::array<RepPtr, 2> two{fx.perm, fx.perm};
    const std::array<RepPtr, 2> chain_reps{fx.perm, reps::direct_sum(two)};
    const auto classes = groups::subgroup_classes(fx.group);
    network::Network net;
    const int depth = 1 + static_cast<int>(rng() % 3);
    RepPtr in = fx.perm;
    for (int l = 0; l < depth; ++l) {
      const RepPtr out = l + 1 == depth ? fx.perm : chain_reps[rng() % 2];
      BasisPtr b;
      if (rng() % 2) {
        b = standard(in, out);
      } else {
        const auto& cls = classes[rng() % classes.size()];
        b = relaxed(in, out, cls[rng() % cls.size()]);
      }
      const auto act = static_cast<network::Activation>(rng() % 3);
      net.layers.push_back(network::make_layer(b, act, rng() % 2 == 0));
      in = out;
    }
    network::initialize(net, rng(), 0.7);
    std::vector<network::Sample> batch;
    for (int i = 0; i < 3; ++i) {
      batch.push_back({gaussian_vector(fx.perm->dim(), rng),
                       gaussian_vector(fx.perm->dim(), rng)});
    }
    const Eigen::VectorXd g = network::flatten(network::gradient(net, batch));
    const Eigen::VectorXd theta = net.parameters();
    Eigen::VectorXd fd(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      Eigen::VectorXd t = theta;
      t(i) += h;
      net.set_parameters(t);
      const double up = network::loss(net, batch);
      t(i) -= 2 * h;
      net.set_parameters(t);
      const double down = network::loss(net, batch);
      fd(i) = (up - down) / (2 * h);
    }
    net.set_parameters(theta);
    const double denom = std::max(g.norm(), fd.norm());
    const double err = denom > 1e-12 ? (g - fd).norm() / denom : denom;
    report.observe(err, Witness{"gradient mismatch in configuration " +
                                    std::to_string(c),
                                {}, {}, err});
  }
  report.config = {{"configurations", configs}, {"seed", seed}, {"h", h}};
  return report.finalize();
}

std::vector<SuiteEntry> default_suite(const SuiteOptions& o) {
  const Fixtures f = make_fixtures();
  std::vector<SuiteEntry> s;
  add_basis_entries(s, f);
  add_theorem4_entries(s, f, o);
  add_curie_entries(s, f, o);
  add_lipschitz_entries(s, f, o);
  add_measure_zero_entries(s, f, o);
  add_argmax_entries(s, o);
  s.push_back({"gradient_finite_difference", true,
               [o] { return gradient_check(o.gradient_configs, o.seed + 81); }});
  add_composition_entries(s, f, o);
  add_orbit_entries(s, f, o);
  return s;
}

}  // namespace symbreak::suite
