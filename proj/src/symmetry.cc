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

#include "symbreak/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "symbreak/errors.hpp"
#include "symbreak/linalg.hpp"

namespace symbreak::symmetry {

using groups::ElementIndex;

namespace {

bool fixes(const Representation& rep, ElementIndex g, const Eigen::VectorXd& x,
           double scale_tol) {
  return (rep.matrix(g) * x - x).norm() <= scale_tol;
}

void check_dim(const Representation& rep, const Eigen::VectorXd& x) {
  if (x.size() != rep.dim()) {
    throw DimensionError("vector dimension " + std::to_string(x.size()) +
                         " does not match representation dimension " +
                         std::to_string(rep.dim()));
  }
}

}  // namespace

Subgroup stabilizer(const Representation& rep, const Eigen::VectorXd& x,
                    double tol) {
  check_dim(rep, x);
  const auto& G = *rep.group();
  const double scaled = tol * std::max(1.0, x.norm());
  std::vector<ElementIndex> members;
  std::vector<bool> in(G.order(), false);
  for (ElementIndex g = 0; g < G.order(); ++g) {
    if (fixes(rep, g, x, scaled)) {
      members.push_back(g);
      in[g] = true;
    }
  }
  for (auto a : members) {
    for (auto b : members) {
      if (!in[G.mult(a, b)]) {
        throw ToleranceError(
            "near-stabilizer is not closed under multiplication; the input "
            "is numerically ambiguous at tolerance " +
            std::to_string(tol));
      }
    }
  }
  return Subgroup(rep.group(), std::move(members));
}

std::vector<Eigen::VectorXd> orbit(const Representation& rep,
                                   const Eigen::VectorXd& x, double tol) {
  const Subgroup stab = stabilizer(rep, x, tol);
  const auto cosets = groups::left_cosets(stab);
  std::vector<Eigen::VectorXd> out;
  out.reserve(cosets.representatives.size());
  for (auto g : cosets.representatives) out.push_back(rep.matrix(g) * x);
  return out;
}

std::string orbit_key(const Eigen::VectorXd& v) {
  std::string key;
  char buf[48];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double r = std::round(v(i) * 1e12) / 1e12;
    if (r == 0.0) r = 0.0;  // folds -0
    std::snprintf(buf, sizeof(buf), "%.12f;", r);
    key += buf;
  }
  return key;
}

SymmetryProfile profile(const Representation& rep, const Eigen::VectorXd& x,
                        double tol) {
  Subgroup stab = stabilizer(rep, x, tol);
  auto type = groups::conjugacy_class_of_subgroup(stab);
  return SymmetryProfile{x, orbit(rep, x, tol), std::move(stab),
                         std::move(type)};
}

FixedSubspace fixed_subspace(const Representation& rep, const Subgroup& sub) {
  if (sub.parent() != rep.group()) {
    throw GroupMismatchError("subgroup does not belong to the representation's group");
  }
  const Eigen::Index n = rep.dim();
  const auto& gens = sub.generators();
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(gens.size()) * n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) =
        rep.matrix(gens[i]) - id;
  }
  auto ns = linalg::null_space(stacked, n, kFixedSubspaceRelTol);
  FixedSubspace out{sub, std::move(ns.basis), {}};
  out.projector = out.basis * out.basis.transpose();
  return out;
}

bool membership_in_type(const Representation& rep, const Eigen::VectorXd& x,
                        std::span<const Subgroup> type, double tol) {
  const Subgroup stab = stabilizer(rep, x, tol);
  return std::any_of(type.begin(), type.end(), [&](const Subgroup& k) {
    return k.is_subgroup_of(stab);
  });
}

double stabilizer_fraction(const Representation& rep, std::int64_t num_samples,
                           std::uint64_t seed, Sampling sampling) {
  if (num_samples < 1) throw ValidationError("num_samples must be >= 1");
  if (!reps::is_faithful(rep)) {
    throw FaithfulnessError(
        "stabilizer_fraction requires a faithful representation");
  }
  const auto& G = *rep.group();
  Eigen::MatrixXd projector;
  if (sampling == Sampling::kProjectedAdversarial) {
    projector = fixed_subspace(rep, groups::whole_group(rep.group())).projector;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(rep.dim());
  std::int64_t symmetric = 0;
  for (std::int64_t s = 0; s < num_samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
    if (sampling == Sampling::kProjectedAdversarial) x = projector * x;
    const double scaled = kStabilizerTol * std::max(1.0, x.norm());
    for (ElementIndex g = 1; g < G.order(); ++g) {
      if (fixes(rep, g, x, scaled)) {
        ++symmetric;
        break;
      }
    }
  }
  return static_cast<double>(symmetric) / static_cast<double>(num_samples);
}

}  // namespace symbreak::symmetry
