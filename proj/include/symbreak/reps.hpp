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

// Real orthogonal representations rho: G -> GL(R^n) and the linear actions
// g.x = rho(g) x they induce.

#ifndef SYMBREAK_REPS_HPP_
#define SYMBREAK_REPS_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symbreak/groups.hpp"

namespace symbreak::reps {

using groups::ElementIndex;
using groups::GroupPtr;

enum class RepKind { kPermutation, kRegular, kDirectSum, kCustom };

std::string to_string(RepKind kind);

inline constexpr double kHomomorphismTol = 1e-10;
inline constexpr double kOrthogonalityTol = 1e-10;
inline constexpr double kIdentityTol = 1e-12;
// Cap on |G| for the regular representation.
inline constexpr std::size_t kMaxRegularOrder = 256;

class Representation;
using RepPtr = std::shared_ptr<const Representation>;

class Representation {
 public:
  // Validates the homomorphism law (exhaustively for |G| <= 48, on a fixed
  // pseudo-random sample of pairs above that), rho(e) = I and
  // orthogonality. Non-orthogonal tables are rejected with ValidationError.
  static RepPtr create(GroupPtr group, RepKind kind,
                       std::vector<Eigen::MatrixXd> matrices);

  const GroupPtr& group() const { return group_; }
  Eigen::Index dim() const { return dim_; }
  RepKind kind() const { return kind_; }
  bool is_orthogonal() const { return orthogonal_; }
  const Eigen::MatrixXd& matrix(ElementIndex g) const { return matrices_[g]; }
  const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }

 private:
  Representation() = default;

  GroupPtr group_;
  RepKind kind_ = RepKind::kCustom;
  Eigen::Index dim_ = 0;
  bool orthogonal_ = false;
  std::vector<Eigen::MatrixXd> matrices_;
};

// rho(g) e_i = e_{perm(g)[i]}.
RepPtr permutation_rep(const GroupPtr& group);

// Left multiplication on the element basis: rho(g) e_h = e_{gh}.
// Throws SizeError for |G| > kMaxRegularOrder.
RepPtr regular_rep(const GroupPtr& group);

// Block diagonal sum. Throws GroupMismatchError unless all reps share the
// same group object.
RepPtr direct_sum(std::span<const RepPtr> reps);

// Permutation matrices of an arbitrary action of the group on
// {0..size-1}; images[g] is the permutation for element g.
RepPtr action_rep(const GroupPtr& group,
                  const std::vector<groups::Perm>& images);

RepPtr custom_rep(const GroupPtr& group, std::vector<Eigen::MatrixXd> matrices);

bool is_faithful(const Representation& rep);

Eigen::VectorXd act(const Representation& rep, ElementIndex g,
                    const Eigen::VectorXd& x);

}  // namespace symbreak::reps

#endif  // SYMBREAK_REPS_HPP_
