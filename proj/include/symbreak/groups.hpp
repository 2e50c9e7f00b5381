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

// Exact finite-group arithmetic. Every group is stored as a faithful
// permutation group: elements are permutations of {0, ..., degree-1}, sorted
// lexicographically, so the identity is always element 0 and element order
// is reproducible across runs.

#ifndef SYMBREAK_GROUPS_HPP_
#define SYMBREAK_GROUPS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symbreak::groups {

using ElementIndex = std::uint32_t;
using Perm = std::vector<std::uint32_t>;

// Largest group order any constructor accepts (|S7|).
inline constexpr std::size_t kMaxOrder = 5040;

// A permutation p of {0..d-1}; p[i] is the image of point i. The product
// a*b is the composition "apply b, then a": (a*b)[i] = a[b[i]].
class GroupElement {
 public:
  // Throws ValidationError unless `perm` is a bijection on {0..d-1}.
  explicit GroupElement(Perm perm);

  static GroupElement identity(std::size_t degree);

  const Perm& perm() const { return perm_; }
  std::size_t degree() const { return perm_.size(); }
  bool is_identity() const;

  GroupElement operator*(const GroupElement& rhs) const;
  GroupElement inverse() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.perm_ <=> b.perm_;
  }

 private:
  Perm perm_;
};

std::string to_string(const GroupElement& g);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // Closes `generators` under composition. Throws SizeError once the
  // closure exceeds kMaxOrder elements.
  static GroupPtr from_generators(std::string name, std::size_t degree,
                                  const std::vector<Perm>& generators);

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }

  const GroupElement& element(ElementIndex i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  // Non-identity generators, as element indices in ascending order.
  const std::vector<ElementIndex>& generators() const { return generators_; }

  ElementIndex mult(ElementIndex a, ElementIndex b) const {
    return mult_table_[static_cast<std::size_t>(a) * order() + b];
  }
  ElementIndex inv(ElementIndex a) const { return inv_table_[a]; }
  static constexpr ElementIndex identity() { return 0; }

  std::optional<ElementIndex> index_of(const Perm& perm) const;

 private:
  FiniteGroup() = default;

  std::string name_;
  std::size_t degree_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<ElementIndex> generators_;
  std::vector<std::uint16_t> mult_table_;
  std::vector<ElementIndex> inv_table_;
};

// Descriptor for the concrete groups the toolkit builds.
struct GroupSpec {
  enum class Kind { kCyclic, kDihedral, kSymmetric, kProduct };

  Kind kind = Kind::kCyclic;
  int n = 1;
  // Exactly two factors when kind == kProduct.
  std::vector<GroupSpec> factors;

  static GroupSpec cyclic(int n) { return {Kind::kCyclic, n, {}}; }
  static GroupSpec dihedral(int n) { return {Kind::kDihedral, n, {}}; }
  static GroupSpec symmetric(int n) { return {Kind::kSymmetric, n, {}}; }
  static GroupSpec product(GroupSpec a, GroupSpec b) {
    return {Kind::kProduct, 0, {std::move(a), std::move(b)}};
  }
};

// Builds cyclic (Cn on n points), dihedral (Dn on the n corners of a
// regular polygon, order 2n), symmetric (Sn) and direct products acting on
// disjoint blocks. D2 has no faithful action on 2 points and is realised as
// the Klein four-group on 4 points.
//
// Throws ValidationError on bad parameters and SizeError above kMaxOrder.
GroupPtr construct_group(const GroupSpec& spec);

class Subgroup {
 public:
  // Throws ValidationError unless `members` is closed under the parent's
  // multiplication and contains the identity.
  Subgroup(GroupPtr parent, std::vector<ElementIndex> members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<ElementIndex>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(ElementIndex g) const;
  bool is_subgroup_of(const Subgroup& other) const;
  bool is_trivial() const { return members_.size() == 1; }

  // A generating set, chosen greedily from the members in ascending order
  // (or the generators the subgroup was built from). Never contains e.
  const std::vector<ElementIndex>& generators() const { return generators_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  friend Subgroup subgroup_generate(const GroupPtr&,
                                    std::span<const ElementIndex>);

  GroupPtr parent_;
  std::vector<ElementIndex> members_;
  std::vector<ElementIndex> generators_;
};

// Breadth-first closure of `gens`. Empty gens yields {e}.
Subgroup subgroup_generate(const GroupPtr& group,
                           std::span<const ElementIndex> gens);
Subgroup trivial_subgroup(const GroupPtr& group);
Subgroup whole_group(const GroupPtr& group);

// g H g^-1.
Subgroup conjugate(const Subgroup& sub, ElementIndex g);

struct CosetDecomposition {
  Subgroup subgroup;
  // cosets[i] is representatives[i] * H, sorted ascending.
  std::vector<std::vector<ElementIndex>> cosets;
  std::vector<ElementIndex> representatives;
};

// Left cosets gH. Each representative is the smallest index (equivalently
// the lexicographically smallest permutation) in its coset; the identity
// coset comes first.
CosetDecomposition left_cosets(const Subgroup& sub);

// {g H g^-1 : g in G}, deduplicated, in order of first appearance when g
// runs over the elements in index order (so `sub` itself is first).
std::vector<Subgroup> conjugacy_class_of_subgroup(const Subgroup& sub);

inline constexpr std::size_t kMaxSubgroupLatticeOrder = 128;

// Every subgroup, found as joins of cyclic subgroups, grouped into
// conjugacy classes. Classes are ordered by subgroup order, then by the
// smallest member list; members of a class follow
// conjugacy_class_of_subgroup. Throws SizeError above
// kMaxSubgroupLatticeOrder.
std::vector<std::vector<Subgroup>> subgroup_classes(const GroupPtr& group);

}  // namespace symbreak::groups

#endif  // SYMBREAK_GROUPS_HPP_
