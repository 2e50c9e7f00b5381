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

#include "symbreak/groups.hpp"

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "symbreak/errors.hpp"

namespace symbreak::groups {
namespace {

std::vector<GroupSpec> all_specs() {
  return {GroupSpec::cyclic(1),    GroupSpec::cyclic(2),    GroupSpec::cyclic(5),
          GroupSpec::dihedral(2),  GroupSpec::dihedral(3),  GroupSpec::dihedral(4),
          GroupSpec::dihedral(6),  GroupSpec::symmetric(1), GroupSpec::symmetric(3),
          GroupSpec::symmetric(4),
          GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::symmetric(3))};
}

ElementIndex find(const FiniteGroup& g, const Perm& p) {
  auto i = g.index_of(p);
  EXPECT_TRUE(i.has_value());
  return i.value_or(0);
}

TEST(GroupElement, RejectsNonBijection) {
  EXPECT_THROW(GroupElement(Perm{0, 0, 1}), ValidationError);
  EXPECT_THROW(GroupElement(Perm{0, 3}), ValidationError);
}

TEST(GroupElement, ProductAppliesRightFactorFirst) {
  const GroupElement a(Perm{1, 2, 0}), b(Perm{1, 0, 2});
  EXPECT_EQ((a * b).perm(), oracle::compose(a.perm(), b.perm()));
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(ConstructGroup, TrivialCyclic) {
  const auto g = construct_group(GroupSpec::cyclic(1));
  EXPECT_EQ(g->order(), 1u);
  EXPECT_TRUE(g->element(0).is_identity());
  EXPECT_TRUE(g->generators().empty());
}

TEST(ConstructGroup, S3MatchesBruteForce) {
  const auto g = construct_group(GroupSpec::symmetric(3));
  ASSERT_EQ(g->order(), 6u);
  EXPECT_EQ(g->degree(), 3u);
  const auto perms = oracle::all_perms(3);
  for (std::size_t i = 0; i < perms.size(); ++i) EXPECT_EQ(g->element(i).perm(), perms[i]);
  std::set<Perm> gens;
  for (auto i : g->generators()) gens.insert(g->element(i).perm());
  EXPECT_EQ(gens, (std::set<Perm>{{1, 0, 2}, {1, 2, 0}}));
}

TEST(ConstructGroup, D4IsTheSquareSymmetryGroup) {
  const auto g = construct_group(GroupSpec::dihedral(4));
  EXPECT_EQ(g->order(), 8u);
  EXPECT_EQ(g->degree(), 4u);
  // Brute force: permutations of the corners preserving the edge set of
  // the 4-cycle.
  std::set<Perm> expected;
  for (const auto& p : oracle::all_perms(4)) {
    bool ok = true;
    for (unsigned i = 0; i < 4; ++i) {
      const unsigned a = p[i], b = p[(i + 1) % 4];
      ok = ok && ((a + 1) % 4 == b || (b + 1) % 4 == a);
    }
    if (ok) expected.insert(p);
  }
  std::set<Perm> got;
  for (const auto& e : g->elements()) got.insert(e.perm());
  EXPECT_EQ(got, expected);
}

TEST(ConstructGroup, OrdersAndDegrees) {
  EXPECT_EQ(construct_group(GroupSpec::cyclic(5))->order(), 5u);
  EXPECT_EQ(construct_group(GroupSpec::dihedral(3))->order(), 6u);
  EXPECT_EQ(construct_group(GroupSpec::dihedral(6))->order(), 12u);
  EXPECT_EQ(construct_group(GroupSpec::symmetric(4))->order(), 24u);
  EXPECT_EQ(construct_group(GroupSpec::symmetric(7))->order(), 5040u);
  const auto klein = construct_group(GroupSpec::dihedral(2));
  EXPECT_EQ(klein->order(), 4u);
  for (ElementIndex i = 0; i < 4; ++i) EXPECT_EQ(klein->mult(i, i), 0u);
  const auto prod = construct_group(
      GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::symmetric(3)));
  EXPECT_EQ(prod->order(), 12u);
  EXPECT_EQ(prod->degree(), 5u);
}

TEST(ConstructGroup, RejectsBadParameters) {
  EXPECT_THROW(construct_group(GroupSpec::cyclic(0)), ValidationError);
  EXPECT_THROW(construct_group(GroupSpec::dihedral(1)), ValidationError);
  EXPECT_THROW(construct_group(GroupSpec::symmetric(0)), ValidationError);
  EXPECT_THROW(construct_group(GroupSpec::symmetric(8)), SizeError);
  EXPECT_THROW(construct_group(GroupSpec::product(GroupSpec::symmetric(7),
                                                  GroupSpec::cyclic(2))),
               SizeError);
}

TEST(ConstructGroup, FromGeneratorsCapsOrder) {
  Perm cycle(8), swap(8);
  for (unsigned i = 0; i < 8; ++i) {
    cycle[i] = (i + 1) % 8;
    swap[i] = i;
  }
  std::swap(swap[0], swap[1]);
  EXPECT_THROW(FiniteGroup::from_generators("S8", 8, {cycle, swap}), SizeError);
}

TEST(FiniteGroup, TablesAreConsistent) {
  for (const auto& spec : all_specs()) {
    const auto g = construct_group(spec);
    const auto n = g->order();
    EXPECT_TRUE(g->element(0).is_identity());
    for (ElementIndex a = 0; a < n; ++a) {
      EXPECT_EQ(g->mult(a, g->inv(a)), 0u);
      if (a > 0) {
        EXPECT_LT(g->element(a - 1), g->element(a));
      }
      for (ElementIndex b = 0; b < n; ++b) {
        EXPECT_EQ(g->element(g->mult(a, b)), g->element(a) * g->element(b));
        EXPECT_EQ(g->inv(g->mult(a, b)), g->mult(g->inv(b), g->inv(a)));
      }
    }
    if (n <= 48) {
      for (ElementIndex a = 0; a < n; ++a)
        for (ElementIndex b = 0; b < n; ++b)
          for (ElementIndex c = 0; c < n; ++c)
            ASSERT_EQ(g->mult(g->mult(a, b), c), g->mult(a, g->mult(b, c)));
    }
  }
}

TEST(FiniteGroup, ConstructionIsDeterministic) {
  for (const auto& spec : all_specs()) {
    const auto a = construct_group(spec), b = construct_group(spec);
    EXPECT_EQ(a->elements(), b->elements());
    EXPECT_EQ(a->generators(), b->generators());
  }
}

TEST(FiniteGroup, IndexOf) {
  const auto g = construct_group(GroupSpec::dihedral(4));
  EXPECT_EQ(g->index_of({0, 1, 2, 3}), 0u);
  EXPECT_FALSE(g->index_of({1, 0, 2, 3}).has_value());
}

TEST(SubgroupGenerate, Examples) {
  const auto s3 = construct_group(GroupSpec::symmetric(3));
  EXPECT_EQ(subgroup_generate(s3, {}).order(), 1u);
  const ElementIndex t = find(*s3, {1, 0, 2});
  EXPECT_EQ(subgroup_generate(s3, std::vector{t}).order(), 2u);
  const auto d4 = construct_group(GroupSpec::dihedral(4));
  const ElementIndex r = find(*d4, {1, 2, 3, 0});
  const auto c4 = subgroup_generate(d4, std::vector{r});
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_EQ(c4.generators(), std::vector{r});
}

TEST(Subgroup, RejectsNonSubgroups) {
  const auto s3 = construct_group(GroupSpec::symmetric(3));
  EXPECT_THROW(Subgroup(s3, {1}), ValidationError);
  EXPECT_THROW(Subgroup(s3, {0, 1, 2}), ValidationError);
  EXPECT_NO_THROW(Subgroup(s3, {0, 1}));
}

TEST(LeftCosets, Examples) {
  const auto s3 = construct_group(GroupSpec::symmetric(3));
  const auto whole = left_cosets(whole_group(s3));
  ASSERT_EQ(whole.cosets.size(), 1u);
  EXPECT_EQ(whole.representatives, std::vector<ElementIndex>{0});

  const auto t = subgroup_generate(s3, std::vector{find(*s3, {1, 0, 2})});
  const auto cs = left_cosets(t);
  EXPECT_EQ(cs.cosets.size(), 3u);
  for (const auto& c : cs.cosets) EXPECT_EQ(c.size(), 2u);

  const auto d4 = construct_group(GroupSpec::dihedral(4));
  const auto c4 = subgroup_generate(d4, std::vector{find(*d4, {1, 2, 3, 0})});
  const auto dc = left_cosets(c4);
  EXPECT_EQ(dc.cosets.size(), 2u);
  for (const auto& c : dc.cosets) EXPECT_EQ(c.size(), 4u);
}

// Partition, smallest representatives and membership, for every subgroup of
// every small test group.
TEST(LeftCosets, PartitionProperty) {
  for (const auto& spec : all_specs()) {
    const auto g = construct_group(spec);
    if (g->order() > 12) continue;
    for (const auto& members : oracle::all_subgroups(*g)) {
      const Subgroup h(g, members);
      const auto cd = left_cosets(h);
      ASSERT_EQ(cd.cosets.size() * h.order(), g->order());
      EXPECT_EQ(cd.representatives[0], 0u);
      EXPECT_EQ(cd.cosets[0], h.members());
      std::set<ElementIndex> seen;
      for (std::size_t i = 0; i < cd.cosets.size(); ++i) {
        EXPECT_EQ(cd.representatives[i], cd.cosets[i].front());
        for (auto c : cd.cosets[i]) {
          EXPECT_TRUE(seen.insert(c).second);
          EXPECT_TRUE(h.contains(g->mult(g->inv(cd.representatives[i]), c)));
        }
      }
      EXPECT_EQ(seen.size(), g->order());
    }
  }
}

TEST(ConjugacyClass, Examples) {
  const auto s3 = construct_group(GroupSpec::symmetric(3));
  EXPECT_EQ(conjugacy_class_of_subgroup(trivial_subgroup(s3)).size(), 1u);
  const auto t = subgroup_generate(s3, std::vector{find(*s3, {1, 0, 2})});
  const auto cls = conjugacy_class_of_subgroup(t);
  EXPECT_EQ(cls.size(), 3u);
  EXPECT_EQ(cls.front(), t);
  for (const auto& c : cls) EXPECT_EQ(c.order(), 2u);

  const auto d4 = construct_group(GroupSpec::dihedral(4));
  const auto c4 = subgroup_generate(d4, std::vector{find(*d4, {1, 2, 3, 0})});
  EXPECT_EQ(conjugacy_class_of_subgroup(c4).size(), 1u);
}

TEST(ConjugacyClass, ConjugatesHaveEqualOrder) {
  for (const auto& spec : all_specs()) {
    const auto g = construct_group(spec);
    if (g->order() > 12) continue;
    for (const auto& members : oracle::all_subgroups(*g)) {
      const Subgroup h(g, members);
      for (const auto& c : conjugacy_class_of_subgroup(h)) EXPECT_EQ(c.order(), h.order());
    }
  }
}

// subgroup_classes against subset enumeration plus brute-force conjugation.
TEST(SubgroupClasses, MatchesBruteForce) {
  struct Want {
    GroupSpec spec;
    std::size_t subgroups, classes;
  };
  for (const auto& w : {Want{GroupSpec::symmetric(3), 6, 4},
                        Want{GroupSpec::dihedral(4), 10, 8},
                        Want{GroupSpec::cyclic(4), 3, 3},
                        Want{GroupSpec::dihedral(2), 5, 5}}) {
    const auto g = construct_group(w.spec);
    const auto brute = oracle::all_subgroups(*g);
    EXPECT_EQ(brute.size(), w.subgroups);
    const auto classes = subgroup_classes(g);
    EXPECT_EQ(classes.size(), w.classes);
    std::set<std::vector<ElementIndex>> got;
    for (const auto& cls : classes) {
      for (const auto& s : cls) got.insert(s.members());
      // Brute-force class of the first member.
      std::set<std::vector<ElementIndex>> conj;
      for (ElementIndex x = 0; x < g->order(); ++x) {
        std::vector<ElementIndex> m;
        for (auto h : cls.front().members()) m.push_back(g->mult(g->mult(x, h), g->inv(x)));
        std::sort(m.begin(), m.end());
        conj.insert(m);
      }
      EXPECT_EQ(conj.size(), cls.size());
    }
    EXPECT_EQ(got, brute);
  }
}

TEST(SubgroupClasses, RejectsLargeGroups) {
  EXPECT_THROW(subgroup_classes(construct_group(GroupSpec::symmetric(6))), SizeError);
}

}  // namespace
}  // namespace symbreak::groups
