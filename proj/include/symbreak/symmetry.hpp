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

// Orbits, stabilizers, orbit types and fixed-point subspaces of linear
// actions.

#ifndef SYMBREAK_SYMMETRY_HPP_
#define SYMBREAK_SYMMETRY_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symbreak/groups.hpp"
#include "symbreak/reps.hpp"

namespace symbreak::symmetry {

using groups::Subgroup;
using reps::Representation;

// g fixes x when ||rho(g) x - x|| <= tol * max(1, ||x||).
inline constexpr double kStabilizerTol = 1e-9;
inline constexpr double kFixedSubspaceRelTol = 1e-10;

// Throws ToleranceError when the near-fixing set is not closed under
// multiplication; the input then sits numerically between orbit types.
Subgroup stabilizer(const Representation& rep, const Eigen::VectorXd& x,
                    double tol = kStabilizerTol);

// The distinct images rho(g) x, one per left coset of the stabilizer (its
// smallest element), so |orbit| * |G_x| = |G| holds by construction. x is
// always first.
std::vector<Eigen::VectorXd> orbit(const Representation& rep,
                                   const Eigen::VectorXd& x,
                                   double tol = kStabilizerTol);

// Canonical key of a vector: coordinates rounded to 12 decimal digits.
// Used to index discrete orbits.
std::string orbit_key(const Eigen::VectorXd& v);

struct SymmetryProfile {
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> orbit;
  Subgroup stabilizer;
  // Conjugacy class of the stabilizer: the orbit type.
  std::vector<Subgroup> orbit_type;
};

SymmetryProfile profile(const Representation& rep, const Eigen::VectorXd& x,
                        double tol = kStabilizerTol);

struct FixedSubspace {
  Subgroup subgroup;
  // n x d, orthonormal columns spanning X_H.
  Eigen::MatrixXd basis;
  // basis * basis^T.
  Eigen::MatrixXd projector;

  Eigen::Index dim() const { return basis.cols(); }
};

// X_H from the null space of [rho(h_1) - I; ...; rho(h_k) - I] over the
// generators h_i of `sub`.
FixedSubspace fixed_subspace(const Representation& rep, const Subgroup& sub);

// True iff G_x contains some member of `type`, i.e. x lies in X_[H].
bool membership_in_type(const Representation& rep, const Eigen::VectorXd& x,
                        std::span<const Subgroup> type,
                        double tol = kStabilizerTol);

enum class Sampling {
  kGaussian,
  // Gaussian samples projected onto the G-fixed subspace; every sample is
  // symmetric, so the fraction is 1.
  kProjectedAdversarial,
};

// Fraction of standard-Gaussian samples with a non-trivial stabilizer.
// Throws FaithfulnessError for a non-faithful representation.
double stabilizer_fraction(const Representation& rep, std::int64_t num_samples,
                           std::uint64_t seed,
                           Sampling sampling = Sampling::kGaussian);

}  // namespace symbreak::symmetry

#endif  // SYMBREAK_SYMMETRY_HPP_
