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

#include "symbreak/solver.hpp"

#include <random>

#include "symbreak/errors.hpp"
#include "symbreak/linalg.hpp"
#include "symbreak/symmetry.hpp"
#include "symbreak/verify.hpp"

namespace symbreak::solver {

std::string to_string(Mode mode) {
  return mode == Mode::kStandard ? "standard" : "relaxed";
}

namespace {

void require_same_group(const RepPtr& a, const RepPtr& b) {
  if (!a || !b) throw ValidationError("null representation");
  if (a->group() != b->group()) {
    throw GroupMismatchError("input and output representations use different groups");
  }
}

Eigen::MatrixXd block_rows(const reps::Representation& in,
                           const reps::Representation& out, ElementIndex g,
                           const Eigen::MatrixXd& p) {
  const Eigen::Index m = out.dim();
  const Eigen::MatrixXd id_m = Eigen::MatrixXd::Identity(m, m);
  return linalg::kron(p.transpose(), id_m) -
         linalg::kron((in.matrix(g) * p).transpose(),
                      out.matrix(g).transpose());
}

void assemble(ConstraintSystem& sys) {
  const Eigen::Index mn = sys.m() * sys.n();
  sys.rows.resize(static_cast<Eigen::Index>(sys.blocks.size()) * mn, mn);
  for (std::size_t i = 0; i < sys.blocks.size(); ++i) {
    sys.rows.middleRows(static_cast<Eigen::Index>(i) * mn, mn) =
        block_rows(*sys.rep_in, *sys.rep_out, sys.blocks[i].representative,
                   sys.blocks[i].projector);
  }
}

}  // namespace

double ConstraintSystem::block_residual(const Eigen::MatrixXd& w,
                                        std::size_t i) const {
  if (w.rows() != m() || w.cols() != n()) {
    throw DimensionError("weight matrix has the wrong shape");
  }
  const auto& b = blocks.at(i);
  const Eigen::MatrixXd diff =
      w - rep_out->matrix(b.representative).transpose() * w *
              rep_in->matrix(b.representative);
  return (diff * b.projector).norm();
}

double ConstraintSystem::residual(const Eigen::MatrixXd& w) const {
  double r = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    r = std::max(r, block_residual(w, i));
  }
  return r;
}

ConstraintSystem build_standard(RepPtr rep_in, RepPtr rep_out) {
  require_same_group(rep_in, rep_out);
  ConstraintSystem sys;
  sys.mode = Mode::kStandard;
  const Eigen::Index n = rep_in->dim();
  for (auto g : rep_in->group()->generators()) {
    sys.blocks.push_back({g, Eigen::MatrixXd::Identity(n, n)});
  }
  sys.rep_in = std::move(rep_in);
  sys.rep_out = std::move(rep_out);
  assemble(sys);
  return sys;
}

ConstraintSystem build_relaxed(RepPtr rep_in, RepPtr rep_out,
                               const Subgroup& k) {
  require_same_group(rep_in, rep_out);
  if (k.parent() != rep_in->group()) {
    throw GroupMismatchError("K is not a subgroup of the representations' group");
  }
  ConstraintSystem sys;
  sys.mode = Mode::kRelaxed;
  sys.subgroup_k = k;
  const Eigen::MatrixXd p = symmetry::fixed_subspace(*rep_in, k).projector;
  const auto cosets = groups::left_cosets(k);
  // The identity coset (index 0) is represented by e and imposes nothing.
  for (std::size_t i = 1; i < cosets.representatives.size(); ++i) {
    sys.blocks.push_back({cosets.representatives[i], p});
  }
  sys.rep_in = std::move(rep_in);
  sys.rep_out = std::move(rep_out);
  assemble(sys);
  return sys;
}

bool WeightBasis::rank_is_stable() const {
  if (sigma_max == 0.0) return true;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    const double rel = singular_values(i) / sigma_max;
    if (rel > kUnstableLow && rel < kUnstableHigh) return false;
  }
  return true;
}

double WeightBasis::max_residual() const {
  double r = 0.0;
  for (const auto& b : matrices) r = std::max(r, system.residual(b));
  return r;
}

WeightBasis solve_basis(const ConstraintSystem& system) {
  const Eigen::Index m = system.m();
  const Eigen::Index n = system.n();
  auto ns = linalg::null_space(system.rows, m * n, kNullRelTol);
  WeightBasis out;
  out.system = system;
  out.null_threshold = ns.threshold;
  out.sigma_max = ns.sigma_max;
  out.singular_values = ns.singular_values;
  out.matrices.reserve(static_cast<std::size_t>(ns.basis.cols()));
  for (Eigen::Index j = 0; j < ns.basis.cols(); ++j) {
    out.matrices.push_back(linalg::unvec(ns.basis.col(j), m, n));
  }
  return out;
}

Eigen::MatrixXd span_projector(const WeightBasis& basis) {
  const Eigen::Index mn = basis.system.m() * basis.system.n();
  Eigen::MatrixXd v(mn, static_cast<Eigen::Index>(basis.rank()));
  for (std::size_t j = 0; j < basis.rank(); ++j) {
    v.col(static_cast<Eigen::Index>(j)) = linalg::vec(basis.matrices[j]);
  }
  return v * v.transpose();
}

Eigen::MatrixXd assemble_weight(const WeightBasis& basis,
                                std::span<const double> coeffs) {
  if (coeffs.size() != basis.rank()) {
    throw DimensionError("expected " + std::to_string(basis.rank()) +
                         " coefficients, got " + std::to_string(coeffs.size()));
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(basis.system.m(), basis.system.n());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    w += coeffs[i] * basis.matrices[i];
  }
  return w;
}

std::vector<Eigen::VectorXd> sample_orbit_type(const reps::Representation& rep,
                                               std::span<const Subgroup> type,
                                               std::int64_t num_inputs,
                                               std::uint64_t seed) {
  if (type.empty()) throw ValidationError("empty conjugacy class");
  std::vector<Eigen::MatrixXd> projectors;
  for (const auto& k : type) {
    projectors.push_back(symmetry::fixed_subspace(rep, k).projector);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<ElementIndex> pick(
      0, static_cast<ElementIndex>(rep.group()->order() - 1));
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(num_inputs));
  Eigen::VectorXd z(rep.dim());
  for (std::int64_t i = 0; i < num_inputs; ++i) {
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = normal(rng);
    const auto& p = projectors[static_cast<std::size_t>(i) % projectors.size()];
    const ElementIndex g = pick(rng);
    out.push_back(rep.matrix(g) * (p * z));
  }
  return out;
}

namespace {

void fold_trials(CheckReport& report, std::span<const Eigen::VectorXd> inputs,
                 const std::vector<verify::RelaxedTrial>& trials) {
  for (const auto& t : trials) {
    const auto& x = inputs[t.input];
    report.observe(t.violation,
                   Witness{t.stabilizer_ok ? "no g2 in g1 G_x matches"
                                           : "ambiguous stabilizer",
                           std::vector<double>(x.data(), x.data() + x.size()),
                           {t.g1, t.g2},
                           0.0});
  }
}

nlohmann::json type_echo(std::span<const Subgroup> type) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& k : type) j.push_back(k.members());
  return j;
}

}  // namespace

CheckReport verify_theorem4(const WeightBasis& basis,
                            std::span<const Subgroup> type,
                            std::int64_t num_inputs, std::uint64_t seed) {
  CheckReport report("theorem4", verify::kRelationalTol);
  report.config = {{"seed", seed},
                   {"num_inputs", num_inputs},
                   {"mode", to_string(basis.system.mode)},
                   {"rank", basis.rank()},
                   {"orbit_type", type_echo(type)}};
  const auto& in = *basis.system.rep_in;
  const auto& out = *basis.system.rep_out;
  const auto inputs = sample_orbit_type(in, type, num_inputs, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeffs(basis.rank());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (auto& c : coeffs) c = normal(rng);
    const Eigen::MatrixXd w = assemble_weight(basis, coeffs);
    const verify::VectorMap fn = [&w](const Eigen::VectorXd& x) {
      Eigen::VectorXd y = w * x;
      return y;
    };
    auto trials = verify::relaxed_trials(fn, in, out, std::span(&inputs[i], 1));
    for (auto& t : trials) t.input = i;
    fold_trials(report, inputs, trials);
  }
  return report.finalize();
}

CheckReport verify_linear_relaxed(const Eigen::MatrixXd& w,
                                  const RepPtr& rep_in, const RepPtr& rep_out,
                                  std::span<const Subgroup> type,
                                  std::int64_t num_inputs, std::uint64_t seed) {
  require_same_group(rep_in, rep_out);
  CheckReport report("relaxed_linear", verify::kRelationalTol);
  report.config = {{"seed", seed},
                   {"num_inputs", num_inputs},
                   {"orbit_type", type_echo(type)}};
  const auto inputs = sample_orbit_type(*rep_in, type, num_inputs, seed);
  const verify::VectorMap fn = [&w](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = w * x;
    return y;
  };
  fold_trials(report, inputs, verify::relaxed_trials(fn, *rep_in, *rep_out, inputs));
  return report.finalize();
}

}  // namespace symbreak::solver
