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

#include "symbreak/reps.hpp"

#include <random>

#include "symbreak/errors.hpp"

namespace symbreak::reps {

namespace {

constexpr std::size_t kExhaustiveCheckOrder = 48;
constexpr int kSampledPairs = 4096;

Eigen::MatrixXd perm_matrix(const groups::Perm& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(p[i], i) = 1.0;
  return m;
}

void check_pair(const Representation& rep, ElementIndex a, ElementIndex b) {
  const auto& G = *rep.group();
  const double err =
      (rep.matrix(G.mult(a, b)) - rep.matrix(a) * rep.matrix(b)).norm();
  if (err > kHomomorphismTol) {
    throw ValidationError("representation is not a homomorphism at (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
  }
}

}  // namespace

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::kPermutation:
      return "permutation";
    case RepKind::kRegular:
      return "regular";
    case RepKind::kDirectSum:
      return "direct_sum";
    case RepKind::kCustom:
      return "custom";
  }
  return "custom";
}

RepPtr Representation::create(GroupPtr group, RepKind kind,
                              std::vector<Eigen::MatrixXd> matrices) {
  if (!group) throw ValidationError("representation without a group");
  if (matrices.size() != group->order()) {
    throw ValidationError("representation needs one matrix per element");
  }
  const Eigen::Index n = matrices.front().rows();
  for (const auto& m : matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError("representation matrices must be square n x n");
    }
    if (!m.allFinite()) throw ValidationError("non-finite matrix entry");
  }

  auto rep = std::shared_ptr<Representation>(new Representation());
  rep->group_ = std::move(group);
  rep->kind_ = kind;
  rep->dim_ = n;
  rep->matrices_ = std::move(matrices);

  const auto& G = *rep->group_;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const bool exact_identity =
      kind == RepKind::kPermutation || kind == RepKind::kRegular;
  const double id_err = (rep->matrices_[0] - id).norm();
  if (exact_identity ? id_err != 0.0 : id_err > kIdentityTol) {
    throw ValidationError("rho(e) is not the identity");
  }

  if (G.order() <= kExhaustiveCheckOrder) {
    for (ElementIndex a = 0; a < G.order(); ++a) {
      for (ElementIndex b = 0; b < G.order(); ++b) check_pair(*rep, a, b);
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<ElementIndex> pick(
        0, static_cast<ElementIndex>(G.order() - 1));
    for (int i = 0; i < kSampledPairs; ++i) {
      const ElementIndex a = pick(rng);
      const ElementIndex b = pick(rng);
      check_pair(*rep, a, b);
    }
  }

  for (const auto& m : rep->matrices_) {
    if ((m.transpose() * m - id).norm() > kOrthogonalityTol) {
      throw ValidationError(
          "representation is not orthogonal; only orthogonal "
          "representations are supported");
    }
  }
  rep->orthogonal_ = true;
  return rep;
}

RepPtr permutation_rep(const GroupPtr& group) {
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(group->order());
  for (const auto& e : group->elements()) mats.push_back(perm_matrix(e.perm()));
  return Representation::create(group, RepKind::kPermutation, std::move(mats));
}

RepPtr regular_rep(const GroupPtr& group) {
  if (group->order() > kMaxRegularOrder) {
    throw SizeError("regular representation is capped at |G| <= " +
                    std::to_string(kMaxRegularOrder));
  }
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(group->order());
  for (ElementIndex g = 0; g < group->order(); ++g) {
    groups::Perm p(group->order());
    for (ElementIndex h = 0; h < group->order(); ++h) p[h] = group->mult(g, h);
    mats.push_back(perm_matrix(p));
  }
  return Representation::create(group, RepKind::kRegular, std::move(mats));
}

RepPtr direct_sum(std::span<const RepPtr> reps) {
  if (reps.empty()) throw ValidationError("direct sum of no representations");
  if (reps.size() == 1) return reps.front();
  const GroupPtr& group = reps.front()->group();
  Eigen::Index dim = 0;
  for (const auto& r : reps) {
    if (r->group() != group) {
      throw GroupMismatchError("direct sum over different groups");
    }
    dim += r->dim();
  }
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(group->order());
  for (ElementIndex g = 0; g < group->order(); ++g) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::Index off = 0;
    for (const auto& r : reps) {
      m.block(off, off, r->dim(), r->dim()) = r->matrix(g);
      off += r->dim();
    }
    mats.push_back(std::move(m));
  }
  return Representation::create(group, RepKind::kDirectSum, std::move(mats));
}

RepPtr action_rep(const GroupPtr& group,
                  const std::vector<groups::Perm>& images) {
  if (images.size() != group->order()) {
    throw ValidationError("action needs one permutation per element");
  }
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(images.size());
  for (const auto& p : images) {
    groups::GroupElement checked(p);
    mats.push_back(perm_matrix(checked.perm()));
  }
  return Representation::create(group, RepKind::kCustom, std::move(mats));
}

RepPtr custom_rep(const GroupPtr& group,
                  std::vector<Eigen::MatrixXd> matrices) {
  return Representation::create(group, RepKind::kCustom, std::move(matrices));
}

bool is_faithful(const Representation& rep) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rep.dim(), rep.dim());
  for (ElementIndex g = 1; g < rep.group()->order(); ++g) {
    if ((rep.matrix(g) - id).norm() <= kHomomorphismTol) return false;
  }
  return true;
}

Eigen::VectorXd act(const Representation& rep, ElementIndex g,
                    const Eigen::VectorXd& x) {
  if (x.size() != rep.dim()) {
    throw DimensionError("vector of size " + std::to_string(x.size()) +
                         " acted on by a representation of dim " +
                         std::to_string(rep.dim()));
  }
  if (g >= rep.group()->order()) {
    throw ValidationError("group element index out of range");
  }
  return rep.matrix(g) * x;
}

}  // namespace symbreak::reps
