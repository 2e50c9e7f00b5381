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

#include "symbreak/verify.hpp"

#include <gtest/gtest.h>

#include <random>

#include "symbreak/errors.hpp"
#include "symbreak/solver.hpp"
#include "symbreak/suite.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::verify {
namespace {

using groups::GroupSpec;
using groups::construct_group;

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

Eigen::MatrixXd random_in(const solver::WeightBasis& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(b.rank());
  for (auto& x : c) x = normal(rng);
  return solver::assemble_weight(b, c);
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd w(m, n);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);
  return w;
}

VectorMap linear(Eigen::MatrixXd w) {
  return [w = std::move(w)](const Eigen::VectorXd& x) -> Eigen::VectorXd { return w * x; };
}

const VectorMap kIdentity = [](const Eigen::VectorXd& x) { return x; };

struct Fx {
  groups::GroupPtr z2 = construct_group(GroupSpec::cyclic(2));
  groups::GroupPtr s3 = construct_group(GroupSpec::symmetric(3));
  groups::GroupPtr d4 = construct_group(GroupSpec::dihedral(4));
  reps::RepPtr p2 = reps::permutation_rep(z2);
  reps::RepPtr p3 = reps::permutation_rep(s3);
  reps::RepPtr p4 = reps::permutation_rep(d4);
  solver::WeightBasis std4 = solver::solve_basis(solver::build_standard(p4, p4));
  solver::WeightBasis std3 = solver::solve_basis(solver::build_standard(p3, p3));
};

std::vector<Eigen::VectorXd> mixed_inputs(const reps::Representation& rep) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> xs{Eigen::VectorXd::Ones(rep.dim()),
                                  Eigen::VectorXd::Zero(rep.dim())};
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd x(rep.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
    xs.push_back(x);
  }
  Eigen::VectorXd pair = Eigen::VectorXd::Zero(rep.dim());
  pair.head(2).setOnes();
  xs.push_back(pair);
  return xs;
}

TEST(CheckCurie, IdentityPasses) {
  Fx f;
  const auto xs = mixed_inputs(*f.p4);
  const auto r = check_curie(kIdentity, *f.p4, *f.p4, xs);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(CheckCurie, StandardLayerMapsFixedPointToFixedPoint) {
  Fx f;
  const Eigen::MatrixXd w = random_in(f.std4, 1);
  const Eigen::VectorXd y = w * Eigen::VectorXd::Constant(4, 2.5);
  EXPECT_EQ(symmetry::stabilizer(*f.p4, y).order(), 8u);
  EXPECT_TRUE(check_curie(linear(w), *f.p4, *f.p4, mixed_inputs(*f.p4)).passed);
}

TEST(CheckCurie, RelaxedLayerBreaksSymmetry) {
  Fx f;
  const auto b = solver::solve_basis(
      solver::build_relaxed(f.p4, f.p4, groups::whole_group(f.d4)));
  const std::vector<Eigen::VectorXd> xs{Eigen::VectorXd::Ones(4)};
  const auto fn = linear(random_in(b, 2));
  const auto r = check_curie(fn, *f.p4, *f.p4, xs);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witnesses.empty());
  EXPECT_LT(symmetry::stabilizer(*f.p4, fn(xs[0])).order(), 8u);
}

TEST(CheckLipschitz, EquivariantLayerPasses) {
  Fx f;
  LipschitzOptions o;
  o.k_samples = o.test_samples = 200;
  o.seed = 3;
  const Eigen::MatrixXd w = random_in(f.std3, 3);
  const auto r = check_lipschitz(linear(w), *f.p3, *f.p3, o);
  EXPECT_TRUE(r.passed);
  // The estimate never exceeds margin * spectral norm for a linear map.
  const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(w).singularValues()(0);
  EXPECT_LE(r.config["k"].get<double>(), 1.1 * sigma * (1 + 1e-12));
  EXPECT_GT(r.trials, 0);
}

TEST(CheckLipschitz, RandomMatrixFails) {
  Fx f;
  LipschitzOptions o;
  o.k_samples = o.test_samples = 200;
  const auto r = check_lipschitz(linear(gaussian_matrix(4, 4, 4)), *f.p4, *f.p4, o);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(LipschitzSweep, BothSidesVanishAtTheDiagonal) {
  Fx f;
  const auto fn = linear(random_in(f.std3, 5));
  LipschitzOptions o;
  o.seed = 5;
  const double k = check_lipschitz(fn, *f.p3, *f.p3, o).config["k"].get<double>();
  const Eigen::VectorXd x0 = v({0.9, -1.3, 0.2});
  const auto r = lipschitz_sweep(fn, *f.p3, *f.p3, x0, Eigen::VectorXd::Constant(3, 0.4), k, 40);
  ASSERT_TRUE(r.passed);
  const auto lhs = r.config["lhs"].get<std::vector<double>>();
  const auto rhs = r.config["rhs"].get<std::vector<double>>();
  ASSERT_EQ(lhs.size(), 41u);
  EXPECT_GT(rhs.front(), 0.1);
  EXPECT_LE(lhs.back(), 1e-12);
  EXPECT_LE(rhs.back(), 1e-12);
  for (std::size_t i = 1; i < rhs.size(); ++i) EXPECT_LE(rhs[i], rhs[i - 1] + 1e-12);
}

TEST(CheckRelaxed, StandardMapUsesWitnessG1) {
  Fx f;
  const auto xs = mixed_inputs(*f.p4);
  const auto fn = linear(random_in(f.std4, 6));
  EXPECT_TRUE(check_relaxed(fn, *f.p4, *f.p4, xs).passed);
  // Any g2 in g1 G_x is a valid witness; ties are broken by index.
  const auto& g = *f.d4;
  for (const auto& t : relaxed_trials(fn, *f.p4, *f.p4, xs)) {
    EXPECT_TRUE(symmetry::stabilizer(*f.p4, xs[t.input]).contains(g.mult(g.inv(t.g1), t.g2)));
    EXPECT_LE(t.violation, kRelationalTol);
  }
}

TEST(CheckRelaxed, RelaxedLayerNeedsOtherWitnesses) {
  Fx f;
  const auto c4 = groups::subgroup_generate(f.d4, std::vector{*f.d4->index_of({1, 2, 3, 0})});
  const auto b = solver::solve_basis(solver::build_relaxed(f.p4, f.p4, c4));
  const auto fn = linear(random_in(b, 7));
  const std::vector<Eigen::VectorXd> xs{Eigen::VectorXd::Constant(4, 1.5)};
  EXPECT_TRUE(check_relaxed(fn, *f.p4, *f.p4, xs).passed);
  bool moved = false;
  for (const auto& t : relaxed_trials(fn, *f.p4, *f.p4, xs)) moved = moved || t.g2 != t.g1;
  EXPECT_TRUE(moved);
}

TEST(CheckRelaxed, RandomMapFails) {
  Fx f;
  const auto r = check_relaxed(linear(gaussian_matrix(4, 4, 8)), *f.p4, *f.p4,
                               mixed_inputs(*f.p4));
  EXPECT_FALSE(r.passed);
}

// On inputs with trivial stabilizer the relaxed check is the equivariance
// check.
TEST(CheckRelaxed, RegularInputsReduceToEquivariance) {
  Fx f;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::MatrixXd w = s % 2 ? gaussian_matrix(4, 4, s) : random_in(f.std4, s);
    Eigen::VectorXd x(4);
    for (Eigen::Index i = 0; i < 4; ++i) x(i) = normal(rng);
    ASSERT_TRUE(symmetry::stabilizer(*f.p4, x).is_trivial());
    double equiv = 0.0;
    for (groups::ElementIndex g = 0; g < 8; ++g) {
      equiv = std::max(equiv, (w * f.p4->matrix(g) * x - f.p4->matrix(g) * w * x).norm());
    }
    const std::vector<Eigen::VectorXd> xs{x};
    const auto r = check_relaxed(linear(w), *f.p4, *f.p4, xs);
    EXPECT_EQ(r.passed, equiv <= kRelationalTol * std::max(1.0, (w * x).norm()));
  }
}

TEST(CheckComposition, IdentityPasses) {
  Fx f;
  const auto xs = mixed_inputs(*f.p3);
  const auto r = check_composition(kIdentity, kIdentity, *f.p3, *f.p3, *f.p3, xs);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.config["witness_coset_verified"].get<std::int64_t>(), r.trials);
}

TEST(CheckComposition, StackedRelaxedZ2Layers) {
  Fx f;
  const auto b1 = solver::solve_basis(
      solver::build_relaxed(f.p2, f.p2, groups::whole_group(f.z2)));
  const auto b2 = solver::solve_basis(
      solver::build_relaxed(f.p2, f.p2, groups::trivial_subgroup(f.z2)));
  const std::vector<Eigen::VectorXd> xs{v({1, 1}), v({-2, -2}), v({0.5, 0.5})};
  const auto r = check_composition(linear(random_in(b1, 10)), linear(random_in(b2, 11)),
                                   *f.p2, *f.p2, *f.p2, xs);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.skipped);
}

TEST(CheckComposition, NonRelaxedSecondMapIsSkipped) {
  Fx f;
  const auto b1 = solver::solve_basis(
      solver::build_relaxed(f.p2, f.p2, groups::whole_group(f.z2)));
  const std::vector<Eigen::VectorXd> xs{v({1, 1}), v({-2, -2})};
  const auto r = check_composition(linear(random_in(b1, 10)),
                                   linear(gaussian_matrix(2, 2, 12)), *f.p2, *f.p2, *f.p2, xs);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.skipped);
}

// The two preconditions do not make the composite relaxed when the first
// map enlarges stabilizers: x -> 0 is relaxed, and so is 0 -> z on its only
// input, yet x -> z fails at any x with trivial stabilizer.
TEST(CheckComposition, StabilizerEnlargementGap) {
  Fx f;
  const VectorMap to_zero = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(Eigen::VectorXd::Zero(x.size()));
  };
  const Eigen::VectorXd z = v({1, 2, 3, 4});
  const VectorMap to_z = [z](const Eigen::VectorXd&) { return z; };
  const std::vector<Eigen::VectorXd> xs{v({0.3, -1.1, 2.0, 0.6})};
  const auto r = check_composition(to_zero, to_z, *f.p4, *f.p4, *f.p4, xs);
  EXPECT_FALSE(r.skipped);
  EXPECT_FALSE(r.passed);
}

TEST(CheckOrbitConsistency, FixedPointOrbit) {
  Fx f;
  const auto r = check_orbit_consistency(linear(random_in(f.std3, 13)), *f.p3, *f.p3,
                                         Eigen::VectorXd::Ones(3));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.config["orbit_size"].get<std::size_t>(), 1u);
}

TEST(CheckOrbitConsistency, D4RelaxedLayer) {
  Fx f;
  const Eigen::VectorXd x = v({1, 1, 0, 0});
  const auto b = solver::solve_basis(
      solver::build_relaxed(f.p4, f.p4, symmetry::stabilizer(*f.p4, x)));
  const auto r = check_orbit_consistency(linear(random_in(b, 14)), *f.p4, *f.p4, x);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.config["premise_held"].get<bool>());
  EXPECT_EQ(r.config["orbit_size"].get<std::size_t>(), 4u);
  EXPECT_EQ(r.trials, 4 * 8);
}

TEST(CheckOrbitConsistency, MapBuiltFromTheSeedAlone) {
  Fx f;
  const Eigen::VectorXd x = v({1, 1, 0, 0});
  const auto fn = orbit_extension(f.p4, f.p4, x, v({0.2, -0.7, 1.3, 0.9}));
  const auto r = check_orbit_consistency(fn, *f.p4, *f.p4, x);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.config["premise_held"].get<bool>());
  EXPECT_THROW(fn(v({5, 0, 0, 0})), ValidationError);
  EXPECT_THROW(orbit_extension(f.p4, f.p4, x, v({1, 2})), DimensionError);
}

TEST(CheckOrbitConsistency, FalsePremiseIsVacuous) {
  Fx f;
  const auto r = check_orbit_consistency(linear(gaussian_matrix(4, 4, 15)), *f.p4, *f.p4,
                                         v({0.3, -1.1, 2.0, 0.6}));
  EXPECT_FALSE(r.config["premise_held"].get<bool>());
  EXPECT_TRUE(r.passed);
}

TEST(DiscreteAction, Validation) {
  Fx f;
  EXPECT_NO_THROW(coset_action(groups::trivial_subgroup(f.s3)).validate());
  const DiscreteAction bad{f.z2, {{0, 1}, {0, 1}, {1, 0}}};
  EXPECT_THROW(bad.validate(), ValidationError);
  const DiscreteAction broken{f.z2, {{1, 0}, {1, 0}}};
  EXPECT_THROW(broken.validate(), ValidationError);
  const auto a = coset_action(groups::whole_group(f.s3));
  const auto b = coset_action(groups::trivial_subgroup(f.s3));
  const std::vector<DiscreteAction> parts{a, b};
  const auto u = disjoint_union(parts);
  EXPECT_EQ(u.size(), 7u);
  EXPECT_NO_THROW(u.validate());
}

TEST(ArgmaxOracle, TwoPointExample) {
  Fx f;
  const DiscreteAction a{f.z2, {{0, 1}, {1, 0}}};
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.3, 0.7;
  const auto r = argmax_oracle(p, a, a);
  EXPECT_TRUE(r.report.passed);
  EXPECT_EQ(r.selector[0], 0u);
  EXPECT_EQ(r.selector[1], 1u);
  EXPECT_TRUE(r.lemma1_holds && r.lemma2_holds);
}

TEST(ArgmaxOracle, FixedPointInput) {
  Fx f;
  // X = {0, 1, xhat}, with xhat fixed by the swap.
  const DiscreteAction ax{f.z2, {{0, 1, 2}, {1, 0, 2}}};
  const DiscreteAction ay{f.z2, {{0, 1}, {1, 0}}};
  Eigen::MatrixXd p(3, 2);
  p << 0.7, 0.3, 0.3, 0.7, 0.5, 0.5;
  const auto r = argmax_oracle(p, ax, ay);
  EXPECT_TRUE(r.report.passed);
  EXPECT_EQ(r.argmax_sets[2], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.selector[2], 0u);
  EXPECT_TRUE(r.outside_hypothesis.empty());
}

TEST(ArgmaxOracle, UniformTable) {
  Fx f;
  const auto ax = coset_action(groups::trivial_subgroup(f.s3));
  const auto ay = coset_action(groups::subgroup_generate(f.s3, std::vector<groups::ElementIndex>{1}));
  const Eigen::MatrixXd p = Eigen::MatrixXd::Constant(6, 3, 1.0 / 3.0);
  const auto r = argmax_oracle(p, ax, ay);
  EXPECT_TRUE(r.report.passed);
  // Regular inputs see the whole Y as three G_x-orbits, outside the
  // unique-orbit hypothesis.
  EXPECT_EQ(r.outside_hypothesis.size(), 6u);
}

TEST(ArgmaxOracle, Errors) {
  Fx f;
  const DiscreteAction a{f.z2, {{0, 1}, {1, 0}}};
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.4, 0.6;
  EXPECT_THROW(argmax_oracle(p, a, a), ValidationError);
  EXPECT_THROW(argmax_oracle(Eigen::MatrixXd::Constant(2, 3, 0.3), a, a), DimensionError);
  const auto big = coset_action(groups::trivial_subgroup(
      construct_group(GroupSpec::symmetric(5))));
  EXPECT_THROW(argmax_oracle(Eigen::MatrixXd::Zero(120, 120), big, big), SizeError);
}

TEST(ArgmaxOracle, RandomSymmetricTables) {
  const groups::GroupPtr gs[] = {construct_group(GroupSpec::cyclic(2)),
                                 construct_group(GroupSpec::cyclic(4)),
                                 construct_group(GroupSpec::symmetric(3))};
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> unif;
  for (int t = 0; t < 30; ++t) {
    const auto& g = gs[t % 3];
    const auto classes = groups::subgroup_classes(g);
    const auto ax = coset_action(classes[rng() % classes.size()].front());
    const auto ay = coset_action(classes[rng() % classes.size()].front());
    Eigen::MatrixXd q(static_cast<Eigen::Index>(ax.size()), static_cast<Eigen::Index>(ay.size()));
    for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = unif(rng);
    for (Eigen::Index i = 0; i < q.rows(); ++i) q.row(i) /= q.row(i).sum();
    const auto p = symmetrize_table(q, ax, ay);
    EXPECT_LE((p.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
    const auto r = argmax_oracle(p, ax, ay);
    EXPECT_TRUE(r.lemma1_holds);
    EXPECT_TRUE(r.lemma2_holds);
    EXPECT_TRUE(r.report.passed);
    EXPECT_EQ(r.report.max_violation, 0.0);
  }
}

TEST(RunAll, EmptySuite) {
  const auto r = run_all({});
  EXPECT_TRUE(r.reports.empty());
  EXPECT_TRUE(r.all_expected);
}

TEST(RunAll, MislabeledExpectationFailsAggregate) {
  Fx f;
  const std::vector<Eigen::VectorXd> xs{Eigen::VectorXd::Ones(4)};
  const auto b = solver::solve_basis(
      solver::build_relaxed(f.p4, f.p4, groups::whole_group(f.d4)));
  const Eigen::MatrixXd w = random_in(b, 17);
  auto make = [&](bool expect) {
    return std::vector<SuiteEntry>{
        {"curie_break", expect, [&] { return check_curie(linear(w), *f.p4, *f.p4, xs); }}};
  };
  EXPECT_TRUE(run_all(make(false)).all_expected);
  const auto bad = run_all(make(true));
  EXPECT_FALSE(bad.all_expected);
  const auto j = to_json(bad);
  EXPECT_FALSE(j["all_expected"].get<bool>());
  EXPECT_EQ(j["reports"][0]["name"], "curie_break");
  EXPECT_TRUE(j["reports"][0]["expect_pass"].get<bool>());
}

TEST(DefaultSuite, MeetsEveryExpectation) {
  suite::SuiteOptions o;
  o.measure_zero_samples = 20000;
  o.theorem4_inputs = 50;
  o.lipschitz_samples = 200;
  o.gradient_configs = 10;
  const auto r = run_all(suite::default_suite(o));
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    EXPECT_EQ(r.reports[i].passed, r.expected[i]) << r.reports[i].name;
  }
  EXPECT_TRUE(r.all_expected);
}

TEST(CheckReport, PassedIffWithinTolerance) {
  CheckReport r("x", 1e-3);
  r.observe(5e-4, Witness{"small", {}, {}, 0});
  EXPECT_TRUE(CheckReport(r).finalize().passed);
  EXPECT_TRUE(r.witnesses.empty());
  r.observe(std::numeric_limits<double>::quiet_NaN(), Witness{"nan", {1.0}, {2}, 0});
  r.finalize();
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(std::isfinite(r.max_violation));
  EXPECT_EQ(r.witnesses.size(), 1u);

  CheckReport s("s", 1.0);
  s.skip("not applicable");
  s.finalize();
  EXPECT_FALSE(s.passed);
  EXPECT_FALSE(s.witnesses.empty());
}

TEST(CheckReport, JsonRoundTrip) {
  CheckReport r("round", 1e-7);
  r.config = {{"seed", 3}};
  r.observe(0.5, Witness{"w", {1.0, 2.0}, {1, 2}, 0.5});
  r.finalize();
  const auto j = to_json(r);
  const auto back = report_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(j["config"]["tolerance"].get<double>(), 1e-7);
}

}  // namespace
}  // namespace symbreak::verify
