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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "symbreak/errors.hpp"
#include "symbreak/symmetry.hpp"

namespace symbreak::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

double scale(const Eigen::VectorXd& v) { return std::max(1.0, v.norm()); }

Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace

CheckReport check_curie(const VectorMap& fn, const Representation& rep_in,
                        const Representation& rep_out,
                        std::span<const Eigen::VectorXd> inputs, double tol) {
  CheckReport report("curie", tol);
  report.config = {{"inputs", inputs.size()}};
  for (const auto& x : inputs) {
    std::optional<groups::Subgroup> stab;
    try {
      stab = symmetry::stabilizer(rep_in, x);
    } catch (const ToleranceError&) {
      report.observe(kInf, Witness{"ambiguous stabilizer", to_std(x), {}, 0});
      continue;
    }
    const Eigen::VectorXd y = fn(x);
    double worst = 0.0;
    ElementIndex worst_g = 0;
    for (auto g : stab->members()) {
      const double v = (rep_out.matrix(g) * y - y).norm() / scale(y);
      if (v > worst) {
        worst = v;
        worst_g = g;
      }
    }
    report.observe(worst, Witness{"g in G_x does not fix fn(x)", to_std(x),
                                  {worst_g}, 0});
  }
  return report.finalize();
}

CheckReport check_lipschitz(const VectorMap& fn, const Representation& rep_in,
                            const Representation& rep_out,
                            const LipschitzOptions& options) {
  CheckReport report("lipschitz", options.tol);
  std::mt19937_64 rng(options.seed);
  double ratio = 0.0;
  for (std::int64_t i = 0; i < options.k_samples; ++i) {
    const Eigen::VectorXd u = gaussian(rng, rep_in.dim());
    const Eigen::VectorXd v = gaussian(rng, rep_in.dim());
    const double d = (u - v).norm();
    if (d > 0) ratio = std::max(ratio, (fn(u) - fn(v)).norm() / d);
  }
  const double k = options.margin * ratio;
  const auto& G = *rep_in.group();
  for (std::int64_t i = 0; i < options.test_samples; ++i) {
    const Eigen::VectorXd x = gaussian(rng, rep_in.dim());
    const Eigen::VectorXd y = fn(x);
    double worst = 0.0;
    ElementIndex worst_g = 0;
    for (ElementIndex g = 0; g < G.order(); ++g) {
      const double lhs = (rep_out.matrix(g) * y - y).norm();
      const double rhs = k * (rep_in.matrix(g) * x - x).norm();
      const double v = std::max(0.0, lhs - rhs) / scale(y);
      if (v > worst) {
        worst = v;
        worst_g = g;
      }
    }
    report.observe(worst, Witness{"||g.fn(x) - fn(x)|| > k ||g.x - x||",
                                  to_std(x), {worst_g}, 0});
  }
  report.config = {{"seed", options.seed},
                   {"k_samples", options.k_samples},
                   {"test_samples", options.test_samples},
                   {"margin", options.margin},
                   {"k", k}};
  return report.finalize();
}

CheckReport lipschitz_sweep(const VectorMap& fn, const Representation& rep_in,
                            const Representation& rep_out,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& target, double k, int steps,
                            double tol) {
  CheckReport report("lipschitz_sweep", tol);
  std::vector<double> lhs_trace;
  std::vector<double> rhs_trace;
  const auto& G = *rep_in.group();
  for (int s = 0; s <= steps; ++s) {
    const double t = steps == 0 ? 1.0 : static_cast<double>(s) / steps;
    const Eigen::VectorXd x = x0 + t * (target - x0);
    const Eigen::VectorXd y = fn(x);
    double lhs_max = 0.0;
    double rhs_max = 0.0;
    double worst = 0.0;
    for (ElementIndex g = 0; g < G.order(); ++g) {
      const double lhs = (rep_out.matrix(g) * y - y).norm();
      const double rhs = k * (rep_in.matrix(g) * x - x).norm();
      lhs_max = std::max(lhs_max, lhs);
      rhs_max = std::max(rhs_max, rhs);
      worst = std::max(worst, std::max(0.0, lhs - rhs) / scale(y));
    }
    lhs_trace.push_back(lhs_max);
    rhs_trace.push_back(rhs_max);
    report.observe(worst, Witness{"inequality violated along sweep",
                                  to_std(x), {}, 0});
  }
  report.config = {{"k", k}, {"steps", steps}, {"lhs", lhs_trace},
                   {"rhs", rhs_trace}};
  return report.finalize();
}

std::vector<RelaxedTrial> relaxed_trials(
    const VectorMap& fn, const Representation& rep_in,
    const Representation& rep_out, std::span<const Eigen::VectorXd> inputs) {
  const auto& G = *rep_in.group();
  std::vector<RelaxedTrial> out;
  out.reserve(inputs.size() * G.order());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& x = inputs[i];
    std::optional<groups::Subgroup> stab;
    try {
      stab = symmetry::stabilizer(rep_in, x);
    } catch (const ToleranceError&) {
      for (ElementIndex g1 = 0; g1 < G.order(); ++g1) {
        out.push_back({i, g1, g1, kInf, false});
      }
      continue;
    }
    const Eigen::VectorXd y = fn(x);
    const double denom = scale(y);
    for (ElementIndex g1 = 0; g1 < G.order(); ++g1) {
      const Eigen::VectorXd lhs = fn(rep_in.matrix(g1) * x);
      RelaxedTrial best{i, g1, g1, kInf, true};
      for (auto h : stab->members()) {
        const ElementIndex g2 = G.mult(g1, h);
        const double v = (lhs - rep_out.matrix(g2) * y).norm() / denom;
        if (v < best.violation) {
          best.violation = v;
          best.g2 = g2;
        }
      }
      out.push_back(best);
    }
  }
  return out;
}

CheckReport check_relaxed(const VectorMap& fn, const Representation& rep_in,
                          const Representation& rep_out,
                          std::span<const Eigen::VectorXd> inputs, double tol) {
  CheckReport report("relaxed", tol);
  report.config = {{"inputs", inputs.size()}};
  for (const auto& t : relaxed_trials(fn, rep_in, rep_out, inputs)) {
    report.observe(t.violation,
                   Witness{t.stabilizer_ok ? "no g2 in g1 G_x matches"
                                           : "ambiguous stabilizer",
                           to_std(inputs[t.input]), {t.g1, t.g2}, 0});
  }
  return report.finalize();
}

CheckReport check_composition(const VectorMap& fn1, const VectorMap& fn2,
                              const Representation& rep_x,
                              const Representation& rep_y,
                              const Representation& rep_z,
                              std::span<const Eigen::VectorXd> inputs,
                              double tol) {
  CheckReport report("composition", tol);
  report.config = {{"inputs", inputs.size()}};
  const CheckReport pre1 = check_relaxed(fn1, rep_x, rep_y, inputs, tol);
  std::vector<Eigen::VectorXd> mid;
  mid.reserve(inputs.size());
  for (const auto& x : inputs) mid.push_back(fn1(x));
  const CheckReport pre2 = check_relaxed(fn2, rep_y, rep_z, mid, tol);
  if (!pre1.passed || !pre2.passed) {
    report.skip(!pre1.passed ? "precondition: first map is not relaxed-equivariant"
                             : "precondition: second map is not relaxed-equivariant "
                               "on the first map's outputs");
    report.config["precondition_violation"] =
        std::max(pre1.max_violation, pre2.max_violation);
    return report.finalize();
  }

  const auto& G = *rep_x.group();
  const VectorMap composed = [&](const Eigen::VectorXd& x) {
    return fn2(fn1(x));
  };
  std::int64_t verified = 0;
  for (const auto& t : relaxed_trials(composed, rep_x, rep_z, inputs)) {
    double v = t.violation;
    if (t.stabilizer_ok) {
      const auto stab = symmetry::stabilizer(rep_x, inputs[t.input]);
      if (stab.contains(G.mult(G.inv(t.g1), t.g2))) {
        ++verified;
      } else {
        v = kInf;
      }
    }
    report.observe(v, Witness{"composite witness not in g1 G_x",
                              to_std(inputs[t.input]), {t.g1, t.g2}, 0});
  }
  report.config["witness_coset_verified"] = verified;
  return report.finalize();
}

CheckReport check_orbit_consistency(const VectorMap& fn,
                                    const Representation& rep_in,
                                    const Representation& rep_out,
                                    const Eigen::VectorXd& seed_x, double tol) {
  CheckReport report("orbit_consistency", tol);
  const auto points = symmetry::orbit(rep_in, seed_x);
  double premise = 0.0;
  for (const auto& t :
       relaxed_trials(fn, rep_in, rep_out, std::span(&seed_x, 1))) {
    premise = std::max(premise, t.violation);
  }
  const bool premise_held = premise <= tol;
  for (const auto& t : relaxed_trials(fn, rep_in, rep_out, points)) {
    report.observe(premise_held ? t.violation : 0.0,
                   Witness{"relaxed condition fails at an orbit point",
                           to_std(points[t.input]), {t.g1, t.g2}, 0});
  }
  report.config = {{"premise_held", premise_held},
                   {"premise_violation", premise},
                   {"orbit_size", points.size()},
                   {"group_order", rep_in.group()->order()}};
  return report.finalize();
}

VectorMap orbit_extension(const reps::RepPtr& rep_in,
                          const reps::RepPtr& rep_out,
                          const Eigen::VectorXd& seed_x,
                          const Eigen::VectorXd& seed_value) {
  if (seed_value.size() != rep_out->dim()) {
    throw DimensionError("seed value has the wrong dimension");
  }
  std::map<std::string, Eigen::VectorXd> table;
  for (ElementIndex g = 0; g < rep_in->group()->order(); ++g) {
    const auto key = symmetry::orbit_key(rep_in->matrix(g) * seed_x);
    table.try_emplace(key, rep_out->matrix(g) * seed_value);
  }
  return [table = std::move(table)](const Eigen::VectorXd& y) {
    auto it = table.find(symmetry::orbit_key(y));
    if (it == table.end()) {
      throw ValidationError("point is outside the orbit of the seed");
    }
    return it->second;
  };
}

void DiscreteAction::validate() const {
  if (!group) throw ValidationError("action without a group");
  if (images.size() != group->order()) {
    throw ValidationError("action needs one permutation per element");
  }
  const std::size_t n = size();
  for (const auto& p : images) {
    if (p.size() != n) throw ValidationError("action permutations differ in size");
    groups::GroupElement checked(p);
  }
  for (ElementIndex a = 0; a < group->order(); ++a) {
    for (ElementIndex b = 0; b < group->order(); ++b) {
      const auto& ab = images[group->mult(a, b)];
      for (std::size_t i = 0; i < n; ++i) {
        if (ab[i] != images[a][images[b][i]]) {
          throw ValidationError("action is not a homomorphism");
        }
      }
    }
  }
}

DiscreteAction coset_action(const groups::Subgroup& sub) {
  const auto& G = *sub.parent();
  const auto cosets = groups::left_cosets(sub);
  std::vector<std::uint32_t> coset_of(G.order());
  for (std::size_t i = 0; i < cosets.cosets.size(); ++i) {
    for (auto c : cosets.cosets[i]) coset_of[c] = static_cast<std::uint32_t>(i);
  }
  DiscreteAction out{sub.parent(), {}};
  for (ElementIndex g = 0; g < G.order(); ++g) {
    groups::Perm p(cosets.representatives.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = coset_of[G.mult(g, cosets.representatives[i])];
    }
    out.images.push_back(std::move(p));
  }
  return out;
}

DiscreteAction disjoint_union(std::span<const DiscreteAction> parts) {
  if (parts.empty()) throw ValidationError("disjoint union of no actions");
  DiscreteAction out{parts.front().group, {}};
  out.images.resize(out.group->order());
  std::uint32_t offset = 0;
  for (const auto& part : parts) {
    if (part.group != out.group) {
      throw GroupMismatchError("disjoint union over different groups");
    }
    for (ElementIndex g = 0; g < out.group->order(); ++g) {
      for (auto v : part.images[g]) out.images[g].push_back(offset + v);
    }
    offset += static_cast<std::uint32_t>(part.size());
  }
  return out;
}

Eigen::MatrixXd symmetrize_table(const Eigen::MatrixXd& q,
                                 const DiscreteAction& action_x,
                                 const DiscreteAction& action_y) {
  const auto& G = *action_x.group;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    for (Eigen::Index y = 0; y < q.cols(); ++y) {
      double acc = 0.0;
      for (ElementIndex g = 0; g < G.order(); ++g) {
        acc += q(action_x.images[g][x], action_y.images[g][y]);
      }
      p(x, y) = acc / static_cast<double>(G.order());
    }
  }
  return p;
}

namespace {

std::vector<std::size_t> image_set(const groups::Perm& perm,
                                   const std::vector<std::size_t>& set) {
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (auto y : set) out.push_back(perm[y]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ArgmaxResult argmax_oracle(const Eigen::MatrixXd& p,
                           const DiscreteAction& action_x,
                           const DiscreteAction& action_y) {
  constexpr std::size_t kMaxSet = 64;
  action_x.validate();
  action_y.validate();
  if (action_x.group != action_y.group) {
    throw GroupMismatchError("actions on X and Y use different groups");
  }
  const std::size_t nx = action_x.size();
  const std::size_t ny = action_y.size();
  if (nx > kMaxSet || ny > kMaxSet) {
    throw SizeError("argmax oracle is limited to |X|, |Y| <= 64");
  }
  if (static_cast<std::size_t>(p.rows()) != nx ||
      static_cast<std::size_t>(p.cols()) != ny) {
    throw DimensionError("probability table shape does not match the actions");
  }
  const auto& G = *action_x.group;
  for (ElementIndex g = 0; g < G.order(); ++g) {
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        const double diff =
            std::abs(p(x, y) - p(action_x.images[g][x], action_y.images[g][y]));
        if (diff > kProbabilityTol) {
          throw ValidationError("probability table is not G-invariant");
        }
      }
    }
  }

  ArgmaxResult result;
  result.report = CheckReport("argmax_oracle", kProbabilityTol);
  result.argmax_sets.resize(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    const double best = p.row(static_cast<Eigen::Index>(x)).maxCoeff();
    for (std::size_t y = 0; y < ny; ++y) {
      if (p(x, y) >= best - kProbabilityTol) result.argmax_sets[x].push_back(y);
    }
  }

  std::vector<std::vector<ElementIndex>> stab(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    for (ElementIndex g = 0; g < G.order(); ++g) {
      if (action_x.images[g][x] == x) stab[x].push_back(g);
    }
  }

  result.selector.resize(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    const auto& a = result.argmax_sets[x];
    const std::vector<double> xs{static_cast<double>(x)};
    // Each argmax set is a union of G_x-orbits.
    for (auto h : stab[x]) {
      const bool ok = image_set(action_y.images[h], a) == a;
      result.lemma1_holds = result.lemma1_holds && ok;
      result.report.observe(ok ? 0.0 : 1.0,
                            Witness{"argmax set not closed under G_x", xs, {h}, 0});
    }
    // argmax(g.x) = g.argmax(x).
    for (ElementIndex g = 0; g < G.order(); ++g) {
      const auto& moved = result.argmax_sets[action_x.images[g][x]];
      const bool ok = image_set(action_y.images[g], a) == moved;
      result.lemma2_holds = result.lemma2_holds && ok;
      result.report.observe(ok ? 0.0 : 1.0,
                            Witness{"argmax(g.x) != g.argmax(x)", xs, {g}, 0});
    }
    std::set<std::size_t> orbit_of_min;
    for (auto h : stab[x]) orbit_of_min.insert(action_y.images[h][a.front()]);
    if (orbit_of_min.size() == a.size()) {
      result.selector[x] = a.front();
    } else {
      result.outside_hypothesis.push_back(x);
    }
  }

  // The selector as a map between one-hot encodings, checked for relaxed
  // equivariance on every input inside the unique-orbit hypothesis.
  const auto rep_x = reps::action_rep(action_x.group, action_x.images);
  const auto rep_y = reps::action_rep(action_y.group, action_y.images);
  std::vector<Eigen::VectorXd> inputs;
  for (std::size_t x = 0; x < nx; ++x) {
    if (result.selector[x]) {
      inputs.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(nx),
                                             static_cast<Eigen::Index>(x)));
    }
  }
  const auto& selector = result.selector;
  const VectorMap phi = [&selector, ny](const Eigen::VectorXd& v) {
    Eigen::Index x = 0;
    v.maxCoeff(&x);
    const auto y = selector[static_cast<std::size_t>(x)];
    if (!y) return Eigen::VectorXd(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ny)));
    return Eigen::VectorXd(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(ny),
                                                 static_cast<Eigen::Index>(*y)));
  };
  for (const auto& t : relaxed_trials(phi, *rep_x, *rep_y, inputs)) {
    Eigen::Index x = 0;
    inputs[t.input].maxCoeff(&x);
    result.report.observe(
        t.violation,
        Witness{"selector violates relaxed equivariance",
                {static_cast<double>(x)}, {t.g1, t.g2}, 0});
  }

  result.report.config = {{"X", nx},
                          {"Y", ny},
                          {"outside_hypothesis", result.outside_hypothesis},
                          {"lemma1", result.lemma1_holds},
                          {"lemma2", result.lemma2_holds}};
  result.report.finalize();
  return result;
}

SuiteResult run_all(std::span<const SuiteEntry> suite) {
  SuiteResult result;
  for (const auto& entry : suite) {
    CheckReport r = entry.run();
    r.name = entry.name;
    result.all_expected = result.all_expected && (r.passed == entry.expect_pass);
    result.reports.push_back(std::move(r));
    result.expected.push_back(entry.expect_pass);
  }
  return result;
}

nlohmann::json to_json(const SuiteResult& result) {
  nlohmann::json reports = nlohmann::json::array();
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    auto j = symbreak::to_json(result.reports[i]);
    j["expect_pass"] = static_cast<bool>(result.expected[i]);
    reports.push_back(std::move(j));
  }
  return {{"all_expected", result.all_expected}, {"reports", std::move(reports)}};
}

}  // namespace symbreak::verify
