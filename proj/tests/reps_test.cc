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

#include <gtest/gtest.h>

#include <array>
#include <random>

#include "symbreak/errors.hpp"

namespace symbreak::reps {
namespace {

using groups::GroupSpec;
using groups::construct_group;

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

std::vector<GroupPtr> groups_under_test() {
  return {construct_group(GroupSpec::cyclic(1)), construct_group(GroupSpec::cyclic(3)),
          construct_group(GroupSpec::dihedral(4)), construct_group(GroupSpec::symmetric(3)),
          construct_group(GroupSpec::symmetric(4)),
          construct_group(GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::dihedral(3)))};
}

TEST(PermutationRep, Examples) {
  const auto trivial = permutation_rep(construct_group(GroupSpec::cyclic(1)));
  EXPECT_EQ(trivial->dim(), 1);
  EXPECT_EQ(trivial->matrix(0), Eigen::MatrixXd::Identity(1, 1));

  const auto z2 = permutation_rep(construct_group(GroupSpec::cyclic(2)));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(z2->matrix(1), swap);
  EXPECT_EQ(act(*z2, 1, v({1, 2})), v({2, 1}));
  EXPECT_EQ(z2->kind(), RepKind::kPermutation);
  EXPECT_TRUE(z2->is_orthogonal());
}

TEST(PermutationRep, D4QuarterTurnShiftsCorners) {
  const auto g = construct_group(GroupSpec::dihedral(4));
  const auto rep = permutation_rep(g);
  const auto r = g->index_of({1, 2, 3, 0});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(act(*rep, *r, v({1, 2, 3, 4})), v({4, 1, 2, 3}));
  EXPECT_EQ(act(*rep, 0, v({1, 2, 3, 4})), v({1, 2, 3, 4}));
}

TEST(RegularRep, Examples) {
  const auto trivial = regular_rep(construct_group(GroupSpec::cyclic(1)));
  EXPECT_EQ(trivial->matrix(0), Eigen::MatrixXd::Identity(1, 1));
  const auto z2 = regular_rep(construct_group(GroupSpec::cyclic(2)));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(z2->matrix(1), swap);
  const auto g3 = construct_group(GroupSpec::cyclic(3));
  const auto z3 = regular_rep(g3);
  for (ElementIndex g = 0; g < 3; ++g) {
    for (ElementIndex h = 0; h < 3; ++h) {
      EXPECT_EQ(z3->matrix(g) * Eigen::VectorXd::Unit(3, h),
                Eigen::VectorXd::Unit(3, g3->mult(g, h)));
    }
  }
  EXPECT_TRUE(is_faithful(*regular_rep(construct_group(GroupSpec::symmetric(3)))));
}

TEST(RegularRep, SizeCap) {
  EXPECT_THROW(regular_rep(construct_group(GroupSpec::symmetric(6))), SizeError);
  EXPECT_NO_THROW(regular_rep(construct_group(GroupSpec::symmetric(5))));
}

TEST(DirectSum, Examples) {
  const auto g = construct_group(GroupSpec::cyclic(2));
  const auto p = permutation_rep(g);
  const std::array<RepPtr, 1> one{p};
  EXPECT_EQ(direct_sum(one)->matrices(), p->matrices());
  const std::array<RepPtr, 2> two{p, p};
  const auto pp = direct_sum(two);
  EXPECT_EQ(pp->dim(), 4);
  EXPECT_EQ(pp->matrix(1).topLeftCorner(2, 2), p->matrix(1));
  EXPECT_EQ(pp->matrix(1).bottomRightCorner(2, 2), p->matrix(1));
  EXPECT_TRUE(pp->matrix(1).topRightCorner(2, 2).isZero());

  const auto s3 = construct_group(GroupSpec::symmetric(3));
  const std::array<RepPtr, 2> mixed{permutation_rep(s3), regular_rep(s3)};
  const auto sum = direct_sum(mixed);
  EXPECT_EQ(sum->dim(), 9);
  EXPECT_EQ(sum->kind(), RepKind::kDirectSum);
}

TEST(DirectSum, GroupMismatch) {
  const std::array<RepPtr, 2> bad{permutation_rep(construct_group(GroupSpec::cyclic(2))),
                                  permutation_rep(construct_group(GroupSpec::cyclic(2)))};
  EXPECT_THROW(direct_sum(bad), GroupMismatchError);
}

TEST(CustomRep, TrivialRepIsNotFaithful) {
  const auto g = construct_group(GroupSpec::cyclic(2));
  const auto rep = custom_rep(g, {Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Identity(1, 1)});
  EXPECT_FALSE(is_faithful(*rep));
  EXPECT_TRUE(is_faithful(*permutation_rep(g)));
}

TEST(CustomRep, SignRepIsValid) {
  const auto g = construct_group(GroupSpec::cyclic(2));
  EXPECT_NO_THROW(custom_rep(g, {Eigen::MatrixXd::Identity(1, 1), -Eigen::MatrixXd::Identity(1, 1)}));
}

TEST(CustomRep, RejectsInvalidTables) {
  const auto g = construct_group(GroupSpec::cyclic(2));
  const Eigen::MatrixXd i1 = Eigen::MatrixXd::Identity(1, 1);
  // Not a homomorphism: rho(s)^2 != I.
  EXPECT_THROW(custom_rep(g, {i1, 2 * i1}), ValidationError);
  // rho(e) != I.
  EXPECT_THROW(custom_rep(g, {-i1, -i1}), ValidationError);
  // Wrong count, then mixed sizes.
  EXPECT_THROW(custom_rep(g, {i1}), ValidationError);
  EXPECT_THROW(custom_rep(g, {i1, Eigen::MatrixXd::Identity(2, 2)}), DimensionError);
  // A homomorphism that is not orthogonal.
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 0, -1;
  ASSERT_TRUE((a * a).isIdentity());
  EXPECT_THROW(custom_rep(g, {Eigen::MatrixXd::Identity(2, 2), a}), ValidationError);
  Eigen::MatrixXd nan = i1;
  nan(0, 0) = std::nan("");
  EXPECT_THROW(custom_rep(g, {i1, nan}), ValidationError);
}

TEST(Act, DimensionMismatch) {
  const auto rep = permutation_rep(construct_group(GroupSpec::symmetric(3)));
  EXPECT_THROW(act(*rep, 1, v({1, 2})), DimensionError);
}

TEST(Representation, HomomorphismAndNormProperty) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (const auto& g : groups_under_test()) {
    std::vector<RepPtr> reps{permutation_rep(g), regular_rep(g)};
    const std::array<RepPtr, 2> pair{reps[0], reps[1]};
    reps.push_back(direct_sum(pair));
    for (const auto& rep : reps) {
      EXPECT_TRUE(is_faithful(*rep));
      EXPECT_EQ(rep->matrix(0), Eigen::MatrixXd::Identity(rep->dim(), rep->dim()));
      Eigen::VectorXd x(rep->dim());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
      for (ElementIndex a = 0; a < g->order(); ++a) {
        EXPECT_NEAR(act(*rep, a, x).norm(), x.norm(), 1e-10);
        for (ElementIndex b = 0; b < g->order(); ++b) {
          EXPECT_LE((act(*rep, a, act(*rep, b, x)) - act(*rep, g->mult(a, b), x)).norm(),
                    1e-10);
        }
      }
    }
  }
}

}  // namespace
}  // namespace symbreak::reps
