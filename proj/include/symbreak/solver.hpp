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

// Linear constraints on vec(W) whose solutions are equivariant (standard
// mode) or relaxed-equivariant on X_[K] (relaxed mode) weight matrices, and
// their null-space bases.
//
// Each constraint block encodes
//
//   (W - rho_out(g)^T W rho_in(g)) P = 0
//
// as [(P^T kron I_m) - ((rho_in(g) P)^T kron rho_out(g)^T)] vec(W) = 0 with
// column-major vec. Standard mode uses one block per generator of G with
// P = I. Relaxed mode uses one block per non-identity left coset of K, with
// g the coset's smallest element and P the projector onto X_K. Relaxed
// constraints are not closed under products, so every coset is enumerated.

#ifndef SYMBREAK_SOLVER_HPP_
#define SYMBREAK_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symbreak/groups.hpp"
#include "symbreak/report.hpp"
#include "symbreak/reps.hpp"

namespace symbreak::solver {

using groups::ElementIndex;
using groups::Subgroup;
using reps::RepPtr;

enum class Mode { kStandard, kRelaxed };

std::string to_string(Mode mode);

inline constexpr double kNullRelTol = 1e-10;
inline constexpr double kResidualTol = 1e-8;
// Singular values within this band (relative to sigma_max) make the rank
// decision untrustworthy.
inline constexpr double kUnstableLow = 1e-12;
inline constexpr double kUnstableHigh = 1e-8;

struct ConstraintBlock {
  ElementIndex representative = 0;
  // n x n projector applied on the right (identity in standard mode).
  Eigen::MatrixXd projector;
};

struct ConstraintSystem {
  RepPtr rep_in;   // rho, dim n
  RepPtr rep_out;  // rho', dim m
  Mode mode = Mode::kStandard;
  std::optional<Subgroup> subgroup_k;
  // (blocks * m * n) x (m * n).
  Eigen::MatrixXd rows;
  std::vector<ConstraintBlock> blocks;

  Eigen::Index m() const { return rep_out->dim(); }
  Eigen::Index n() const { return rep_in->dim(); }

  // ||(W - rho'(g)^T W rho(g)) P||_F for block i, evaluated directly.
  double block_residual(const Eigen::MatrixXd& w, std::size_t i) const;
  // Max over blocks; 0 for an empty system.
  double residual(const Eigen::MatrixXd& w) const;
};

// Throws GroupMismatchError when the representations' groups differ.
ConstraintSystem build_standard(RepPtr rep_in, RepPtr rep_out);
ConstraintSystem build_relaxed(RepPtr rep_in, RepPtr rep_out,
                               const Subgroup& k);

struct WeightBasis {
  // m x n matrices, orthonormal in the Frobenius inner product.
  std::vector<Eigen::MatrixXd> matrices;
  ConstraintSystem system;
  double null_threshold = 0.0;
  double sigma_max = 0.0;
  Eigen::VectorXd singular_values;

  std::size_t rank() const { return matrices.size(); }
  // False when a singular value falls in the unstable band around the
  // null-space threshold.
  bool rank_is_stable() const;
  // Max constraint residual over all basis matrices.
  double max_residual() const;
};

WeightBasis solve_basis(const ConstraintSystem& system);

// Orthogonal projector (mn x mn) onto span{vec(B_i)}.
Eigen::MatrixXd span_projector(const WeightBasis& basis);

// sum_i coeffs[i] * B_i. Throws DimensionError on a length mismatch.
Eigen::MatrixXd assemble_weight(const WeightBasis& basis,
                                std::span<const double> coeffs);

// Checks the relaxed-equivariance condition for x -> W x on inputs drawn
// from X_[H]: x = P_{X_K'} z for z standard Gaussian and K' cycling over
// `type`, then moved by a random group element. Every g1 is checked, with an
// exhaustive search for g2 in g1 G_x. Each input uses fresh random
// coefficients.
CheckReport verify_theorem4(const WeightBasis& basis,
                            std::span<const Subgroup> type,
                            std::int64_t num_inputs, std::uint64_t seed);

// Same check for one fixed matrix; used for expected-failure fixtures.
CheckReport verify_linear_relaxed(const Eigen::MatrixXd& w,
                                  const RepPtr& rep_in, const RepPtr& rep_out,
                                  std::span<const Subgroup> type,
                                  std::int64_t num_inputs, std::uint64_t seed);

// Inputs sampled from X_[H] as described for verify_theorem4.
std::vector<Eigen::VectorXd> sample_orbit_type(const reps::Representation& rep,
                                               std::span<const Subgroup> type,
                                               std::int64_t num_inputs,
                                               std::uint64_t seed);

}  // namespace symbreak::solver

#endif  // SYMBREAK_SOLVER_HPP_
