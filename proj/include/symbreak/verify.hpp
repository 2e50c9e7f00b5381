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

// Mechanical checkers for the symmetry properties of maps between spaces
// carrying group actions. Every checker returns a CheckReport; none throws
// on a failed property.

#ifndef SYMBREAK_VERIFY_HPP_
#define SYMBREAK_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symbreak/groups.hpp"
#include "symbreak/report.hpp"
#include "symbreak/reps.hpp"

namespace symbreak::verify {

using groups::ElementIndex;
using groups::GroupPtr;
using reps::Representation;

using VectorMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Relational checks compare residuals against tol * max(1, ||.||).
inline constexpr double kRelationalTol = 1e-7;
inline constexpr double kProbabilityTol = 1e-12;

// Every g in G_x must fix fn(x): G_fn(x) >= G_x.
CheckReport check_curie(const VectorMap& fn, const Representation& rep_in,
                        const Representation& rep_out,
                        std::span<const Eigen::VectorXd> inputs,
                        double tol = kRelationalTol);

struct LipschitzOptions {
  std::int64_t k_samples = 1000;
  std::int64_t test_samples = 1000;
  double margin = 1.1;
  std::uint64_t seed = 0;
  double tol = kRelationalTol;
};

// Estimates k as margin * max ||fn(u) - fn(v)|| / ||u - v|| over Gaussian
// pairs, then checks ||g.fn(x) - fn(x)|| <= k ||g.x - x|| for every g on
// Gaussian x. The estimate is echoed in config["k"].
CheckReport check_lipschitz(const VectorMap& fn, const Representation& rep_in,
                            const Representation& rep_out,
                            const LipschitzOptions& options);

// Checks the same inequality along x(t) = x0 + t (target - x0), t in [0, 1],
// for a fixed k. Per-step sides are kept in config["lhs"] / config["rhs"].
CheckReport lipschitz_sweep(const VectorMap& fn, const Representation& rep_in,
                            const Representation& rep_out,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& target, double k, int steps,
                            double tol = kRelationalTol);

// Outcome of the relaxed-equivariance test for one (x, g1): the best
// g2 in g1 G_x and its scaled residual.
struct RelaxedTrial {
  std::size_t input = 0;
  ElementIndex g1 = 0;
  ElementIndex g2 = 0;
  double violation = 0.0;
  // False when the stabilizer of the input was numerically ambiguous.
  bool stabilizer_ok = true;
};

std::vector<RelaxedTrial> relaxed_trials(const VectorMap& fn,
                                         const Representation& rep_in,
                                         const Representation& rep_out,
                                         std::span<const Eigen::VectorXd> inputs);

// For each (g1, x): exists g2 in g1 G_x with fn(g1.x) = g2.fn(x)?
CheckReport check_relaxed(const VectorMap& fn, const Representation& rep_in,
                          const Representation& rep_out,
                          std::span<const Eigen::VectorXd> inputs,
                          double tol = kRelationalTol);

// Requires fn1 relaxed on `inputs` and fn2 relaxed on fn1(inputs); otherwise
// the report is skipped. Then checks fn2 o fn1 and confirms each witness
// lies in g1 G_x.
CheckReport check_composition(const VectorMap& fn1, const VectorMap& fn2,
                              const Representation& rep_x,
                              const Representation& rep_y,
                              const Representation& rep_z,
                              std::span<const Eigen::VectorXd> inputs,
                              double tol = kRelationalTol);

// If the relaxed condition holds at `seed_x` for every g1, it must hold at
// every point of the orbit of seed_x. config["premise_held"] records
// whether the premise was satisfied; a false premise passes vacuously.
CheckReport check_orbit_consistency(const VectorMap& fn,
                                    const Representation& rep_in,
                                    const Representation& rep_out,
                                    const Eigen::VectorXd& seed_x,
                                    double tol = kRelationalTol);

// The map on the orbit of seed_x determined by its value at the seed:
// y = g.seed_x -> rho_out(g) seed_value, with g the smallest element sending
// seed_x to y. Throws ValidationError outside the orbit.
VectorMap orbit_extension(const reps::RepPtr& rep_in,
                          const reps::RepPtr& rep_out,
                          const Eigen::VectorXd& seed_x,
                          const Eigen::VectorXd& seed_value);

// An action of a finite group on {0..size-1}.
struct DiscreteAction {
  GroupPtr group;
  // images[g][i] = g . i
  std::vector<groups::Perm> images;

  std::size_t size() const { return images.empty() ? 0 : images[0].size(); }
  // Throws ValidationError unless images[gh] = images[g] o images[h].
  void validate() const;
};

// Action on the left cosets G/H (point i is the coset with representative
// left_cosets(H).representatives[i]).
DiscreteAction coset_action(const groups::Subgroup& sub);
DiscreteAction disjoint_union(std::span<const DiscreteAction> parts);

struct ArgmaxResult {
  CheckReport report;
  // selector[x] = smallest element of argmax_y p(y|x), where that set is a
  // single G_x-orbit; empty otherwise.
  std::vector<std::optional<std::size_t>> selector;
  std::vector<std::vector<std::size_t>> argmax_sets;
  bool lemma1_holds = true;
  bool lemma2_holds = true;
  // Inputs whose argmax set splits into several G_x-orbits.
  std::vector<std::size_t> outside_hypothesis;
};

// p is |X| x |Y| with p(x, y) = p(y | x). Throws ValidationError unless
// p(g.y | g.x) = p(y | x) within kProbabilityTol for every g, x, y.
ArgmaxResult argmax_oracle(const Eigen::MatrixXd& p,
                           const DiscreteAction& action_x,
                           const DiscreteAction& action_y);

// Group average (1/|G|) sum_g q(g.y | g.x) of a row-stochastic table.
Eigen::MatrixXd symmetrize_table(const Eigen::MatrixXd& q,
                                 const DiscreteAction& action_x,
                                 const DiscreteAction& action_y);

struct SuiteEntry {
  std::string name;
  bool expect_pass = true;
  std::function<CheckReport()> run;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::vector<bool> expected;
  // Every report matched its expectation.
  bool all_expected = true;
};

SuiteResult run_all(std::span<const SuiteEntry> suite);
nlohmann::json to_json(const SuiteResult& result);

}  // namespace symbreak::verify

#endif  // SYMBREAK_VERIFY_HPP_
