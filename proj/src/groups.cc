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

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "symbreak/errors.hpp"

namespace symbreak::groups {

static_assert(kMaxOrder <= std::numeric_limits<std::uint16_t>::max());

GroupElement::GroupElement(Perm perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) {
      throw ValidationError("not a permutation: " + to_string(*this));
    }
    seen[p] = true;
  }
}

GroupElement GroupElement::identity(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  return GroupElement(std::move(p));
}

bool GroupElement::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (perm_[i] != i) return false;
  }
  return true;
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  if (rhs.degree() != degree()) {
    throw ValidationError("degree mismatch in permutation product");
  }
  Perm out(perm_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = perm_[rhs.perm_[i]];
  return GroupElement(std::move(out));
}

GroupElement GroupElement::inverse() const {
  Perm out(perm_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[perm_[i]] = i;
  return GroupElement(std::move(out));
}

std::string to_string(const GroupElement& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.perm().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.perm()[i]);
  }
  return s + "]";
}

namespace {

Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[b[i]];
  return out;
}

// Locates elements by their images on a base: a set of points whose images
// determine a group element uniquely. Lookups cost O(|base|) instead of
// O(degree), which keeps the multiplication table cheap for high-degree
// cyclic groups.
class ElementLocator {
 public:
  ElementLocator(std::size_t degree, const std::vector<GroupElement>& elems)
      : degree_(degree) {
    std::set<std::vector<std::uint32_t>> distinct;
    for (std::uint32_t point = 0;
         point < degree && distinct.size() < elems.size(); ++point) {
      std::set<std::vector<std::uint32_t>> trial;
      for (const auto& e : elems) trial.insert(images(e.perm(), point));
      if (trial.size() > distinct.size() || base_.empty()) {
        base_.push_back(point);
        distinct = std::move(trial);
      }
    }
    // Radix packing fits when degree^|base| < 2^63.
    long double capacity = 1;
    for (std::size_t i = 0; i < base_.size(); ++i) capacity *= degree_;
    packed_ = capacity < 9.2e18L;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      std::vector<std::uint32_t> img;
      img.reserve(base_.size());
      for (auto b : base_) img.push_back(elems[i].perm()[b]);
      insert(img, static_cast<ElementIndex>(i));
    }
  }

  const std::vector<std::uint32_t>& base() const { return base_; }

  std::optional<ElementIndex> find(
      const std::vector<std::uint32_t>& base_images) const {
    if (packed_) {
      auto it = packed_index_.find(pack(base_images));
      if (it == packed_index_.end()) return std::nullopt;
      return it->second;
    }
    auto it = index_.find(base_images);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::uint32_t> images(const Perm& p, std::uint32_t extra) const {
    std::vector<std::uint32_t> img;
    for (auto b : base_) img.push_back(p[b]);
    img.push_back(p[extra]);
    return img;
  }

  std::uint64_t pack(const std::vector<std::uint32_t>& img) const {
    std::uint64_t key = 0;
    for (auto v : img) key = key * degree_ + v;
    return key;
  }

  void insert(const std::vector<std::uint32_t>& img, ElementIndex i) {
    if (packed_) {
      packed_index_.emplace(pack(img), i);
    } else {
      index_.emplace(img, i);
    }
  }

  std::size_t degree_;
  std::vector<std::uint32_t> base_;
  bool packed_ = true;
  std::unordered_map<std::uint64_t, ElementIndex> packed_index_;
  std::map<std::vector<std::uint32_t>, ElementIndex> index_;
};

}  // namespace

GroupPtr FiniteGroup::from_generators(std::string name, std::size_t degree,
                                      const std::vector<Perm>& generators) {
  if (degree == 0) throw ValidationError("group degree must be positive");
  std::vector<GroupElement> gens;
  for (const auto& g : generators) {
    if (g.size() != degree) {
      throw ValidationError("generator degree does not match group degree");
    }
    gens.emplace_back(g);
  }

  std::set<Perm> seen;
  std::deque<Perm> frontier;
  Perm id = GroupElement::identity(degree).perm();
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Perm p = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      Perm q = compose(p, s.perm());
      if (seen.insert(q).second) {
        if (seen.size() > kMaxOrder) {
          throw SizeError("group " + name + " exceeds the order cap of " +
                          std::to_string(kMaxOrder));
        }
        frontier.push_back(std::move(q));
      }
    }
  }

  auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  group->name_ = std::move(name);
  group->degree_ = degree;
  group->elements_.reserve(seen.size());
  for (const auto& p : seen) group->elements_.emplace_back(p);

  const std::size_t n = group->elements_.size();
  ElementLocator locator(degree, group->elements_);
  const auto& base = locator.base();

  group->mult_table_.resize(n * n);
  std::vector<std::uint32_t> img(base.size());
  for (std::size_t a = 0; a < n; ++a) {
    const Perm& pa = group->elements_[a].perm();
    for (std::size_t b = 0; b < n; ++b) {
      const Perm& pb = group->elements_[b].perm();
      for (std::size_t k = 0; k < base.size(); ++k) img[k] = pa[pb[base[k]]];
      auto idx = locator.find(img);
      if (!idx) throw ValidationError("multiplication table is not closed");
      group->mult_table_[a * n + b] = static_cast<std::uint16_t>(*idx);
    }
  }
  group->inv_table_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Perm inv = group->elements_[a].inverse().perm();
    for (std::size_t k = 0; k < base.size(); ++k) img[k] = inv[base[k]];
    group->inv_table_[a] = *locator.find(img);
  }

  std::set<ElementIndex> gen_idx;
  for (const auto& s : gens) {
    if (s.is_identity()) continue;
    for (std::size_t k = 0; k < base.size(); ++k) img[k] = s.perm()[base[k]];
    gen_idx.insert(*locator.find(img));
  }
  group->generators_.assign(gen_idx.begin(), gen_idx.end());
  return group;
}

std::optional<ElementIndex> FiniteGroup::index_of(const Perm& perm) const {
  if (perm.size() != degree_) return std::nullopt;
  auto it = std::lower_bound(
      elements_.begin(), elements_.end(), perm,
      [](const GroupElement& e, const Perm& p) { return e.perm() < p; });
  if (it == elements_.end() || it->perm() != perm) return std::nullopt;
  return static_cast<ElementIndex>(it - elements_.begin());
}

namespace {

Perm cycle_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

std::size_t factorial_capped(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::size_t>(i);
    if (f > kMaxOrder) return kMaxOrder + 1;
  }
  return f;
}

}  // namespace

GroupPtr construct_group(const GroupSpec& spec) {
  using Kind = GroupSpec::Kind;
  switch (spec.kind) {
    case Kind::kCyclic: {
      if (spec.n < 1) throw ValidationError("cyclic group needs n >= 1");
      if (static_cast<std::size_t>(spec.n) > kMaxOrder) {
        throw SizeError("cyclic group order exceeds the cap");
      }
      const auto n = static_cast<std::size_t>(spec.n);
      return FiniteGroup::from_generators("C" + std::to_string(n), n,
                                          {cycle_perm(n)});
    }
    case Kind::kDihedral: {
      if (spec.n < 2) throw ValidationError("dihedral group needs n >= 2");
      if (2 * static_cast<std::size_t>(spec.n) > kMaxOrder) {
        throw SizeError("dihedral group order exceeds the cap");
      }
      if (spec.n == 2) {
        return FiniteGroup::from_generators("D2", 4,
                                            {{1, 0, 3, 2}, {2, 3, 0, 1}});
      }
      const auto n = static_cast<std::size_t>(spec.n);
      Perm reflection(n);
      for (std::size_t i = 0; i < n; ++i) reflection[i] = (n - i) % n;
      return FiniteGroup::from_generators("D" + std::to_string(n), n,
                                          {cycle_perm(n), reflection});
    }
    case Kind::kSymmetric: {
      if (spec.n < 1) throw ValidationError("symmetric group needs n >= 1");
      if (factorial_capped(spec.n) > kMaxOrder) {
        throw SizeError("symmetric group S" + std::to_string(spec.n) +
                        " exceeds the order cap");
      }
      const auto n = static_cast<std::size_t>(spec.n);
      std::vector<Perm> gens;
      if (n >= 2) {
        Perm swap = GroupElement::identity(n).perm();
        std::swap(swap[0], swap[1]);
        gens.push_back(swap);
        if (n >= 3) gens.push_back(cycle_perm(n));
      }
      return FiniteGroup::from_generators("S" + std::to_string(n), n, gens);
    }
    case Kind::kProduct: {
      if (spec.factors.size() != 2) {
        throw ValidationError("product group needs exactly two factors");
      }
      GroupPtr a = construct_group(spec.factors[0]);
      GroupPtr b = construct_group(spec.factors[1]);
      if (a->order() * b->order() > kMaxOrder) {
        throw SizeError("product group order exceeds the cap");
      }
      const std::size_t da = a->degree();
      const std::size_t db = b->degree();
      std::vector<Perm> gens;
      for (auto gi : a->generators()) {
        Perm p = a->element(gi).perm();
        for (std::size_t i = 0; i < db; ++i) p.push_back(da + i);
        gens.push_back(std::move(p));
      }
      for (auto gi : b->generators()) {
        Perm p = GroupElement::identity(da).perm();
        for (auto v : b->element(gi).perm()) p.push_back(da + v);
        gens.push_back(std::move(p));
      }
      return FiniteGroup::from_generators(a->name() + "x" + b->name(),
                                          da + db, gens);
    }
  }
  throw ValidationError("unknown group kind");
}

namespace {

std::vector<ElementIndex> closure(const FiniteGroup& g,
                                  std::span<const ElementIndex> gens) {
  std::vector<bool> in(g.order(), false);
  std::deque<ElementIndex> frontier{FiniteGroup::identity()};
  in[FiniteGroup::identity()] = true;
  while (!frontier.empty()) {
    ElementIndex a = frontier.front();
    frontier.pop_front();
    for (auto s : gens) {
      ElementIndex c = g.mult(a, s);
      if (!in[c]) {
        in[c] = true;
        frontier.push_back(c);
      }
    }
  }
  std::vector<ElementIndex> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(static_cast<ElementIndex>(i));
  }
  return out;
}

std::vector<ElementIndex> greedy_generators(
    const FiniteGroup& g, const std::vector<ElementIndex>& members) {
  std::vector<ElementIndex> gens;
  std::vector<ElementIndex> covered{FiniteGroup::identity()};
  for (auto m : members) {
    if (std::binary_search(covered.begin(), covered.end(), m)) continue;
    gens.push_back(m);
    covered = closure(g, gens);
    if (covered.size() == members.size()) break;
  }
  return gens;
}

}  // namespace

Subgroup::Subgroup(GroupPtr parent, std::vector<ElementIndex> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw ValidationError("subgroup without parent group");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (members_.empty() || members_.front() != FiniteGroup::identity()) {
    throw ValidationError("subgroup must contain the identity");
  }
  if (members_.back() >= parent_->order()) {
    throw ValidationError("subgroup member index out of range");
  }
  std::vector<bool> in(parent_->order(), false);
  for (auto m : members_) in[m] = true;
  for (auto a : members_) {
    for (auto b : members_) {
      if (!in[parent_->mult(a, b)]) {
        throw ValidationError("subgroup members are not closed");
      }
    }
  }
  generators_ = greedy_generators(*parent_, members_);
}

bool Subgroup::contains(ElementIndex g) const {
  return std::binary_search(members_.begin(), members_.end(), g);
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (parent_ != other.parent_) return false;
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

Subgroup subgroup_generate(const GroupPtr& group,
                           std::span<const ElementIndex> gens) {
  for (auto g : gens) {
    if (g >= group->order()) {
      throw ValidationError("generator index out of range");
    }
  }
  Subgroup sub(group, closure(*group, gens));
  std::vector<ElementIndex> kept;
  for (auto g : gens) {
    if (g != FiniteGroup::identity() &&
        std::find(kept.begin(), kept.end(), g) == kept.end()) {
      kept.push_back(g);
    }
  }
  sub.generators_ = std::move(kept);
  return sub;
}

Subgroup trivial_subgroup(const GroupPtr& group) {
  return Subgroup(group, {FiniteGroup::identity()});
}

Subgroup whole_group(const GroupPtr& group) {
  std::vector<ElementIndex> all(group->order());
  std::iota(all.begin(), all.end(), 0u);
  return Subgroup(group, std::move(all));
}

Subgroup conjugate(const Subgroup& sub, ElementIndex g) {
  const auto& G = *sub.parent();
  std::vector<ElementIndex> members;
  members.reserve(sub.order());
  for (auto h : sub.members()) members.push_back(G.mult(G.mult(g, h), G.inv(g)));
  return Subgroup(sub.parent(), std::move(members));
}

CosetDecomposition left_cosets(const Subgroup& sub) {
  const auto& G = *sub.parent();
  CosetDecomposition out{sub, {}, {}};
  std::vector<bool> assigned(G.order(), false);
  for (ElementIndex g = 0; g < G.order(); ++g) {
    if (assigned[g]) continue;
    std::vector<ElementIndex> coset;
    coset.reserve(sub.order());
    for (auto h : sub.members()) {
      ElementIndex c = G.mult(g, h);
      assigned[c] = true;
      coset.push_back(c);
    }
    std::sort(coset.begin(), coset.end());
    out.representatives.push_back(g);
    out.cosets.push_back(std::move(coset));
  }
  return out;
}

std::vector<Subgroup> conjugacy_class_of_subgroup(const Subgroup& sub) {
  std::vector<Subgroup> out;
  std::set<std::vector<ElementIndex>> seen;
  for (ElementIndex g = 0; g < sub.parent()->order(); ++g) {
    Subgroup c = conjugate(sub, g);
    if (seen.insert(c.members()).second) out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<Subgroup>> subgroup_classes(const GroupPtr& group) {
  if (group->order() > kMaxSubgroupLatticeOrder) {
    throw SizeError("subgroup lattice enumeration is limited to order " +
                    std::to_string(kMaxSubgroupLatticeOrder));
  }
  std::map<std::vector<ElementIndex>, Subgroup> found;
  for (ElementIndex g = 0; g < group->order(); ++g) {
    const std::vector<ElementIndex> gen{g};
    Subgroup s = subgroup_generate(group, g == 0 ? std::span<const ElementIndex>{}
                                                 : std::span<const ElementIndex>(gen));
    found.emplace(s.members(), std::move(s));
  }
  // Close under pairwise joins until nothing new appears.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Subgroup> current;
    for (const auto& [k, s] : found) current.push_back(s);
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<ElementIndex> gens = current[i].generators();
        gens.insert(gens.end(), current[j].generators().begin(),
                    current[j].generators().end());
        Subgroup s = subgroup_generate(group, gens);
        if (!found.contains(s.members())) {
          found.emplace(s.members(), std::move(s));
          grew = true;
        }
      }
    }
  }
  std::vector<Subgroup> all;
  for (const auto& [k, s] : found) all.push_back(s);
  std::stable_sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() < b.order();
  });
  std::vector<std::vector<Subgroup>> classes;
  std::set<std::vector<ElementIndex>> placed;
  for (const auto& s : all) {
    if (placed.contains(s.members())) continue;
    auto cls = conjugacy_class_of_subgroup(s);
    for (const auto& c : cls) placed.insert(c.members());
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace symbreak::groups
