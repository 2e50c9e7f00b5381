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

#include "symbreak/linalg.hpp"

#include "symbreak/errors.hpp"

namespace symbreak::linalg {

NullSpace null_space(const Eigen::MatrixXd& a, Eigen::Index cols,
                     double rel_tol) {
  NullSpace out;
  if (a.rows() > 0 && a.cols() != cols) {
    throw DimensionError("null_space: column count mismatch");
  }
  if (a.rows() == 0 || cols == 0) {
    out.basis = Eigen::MatrixXd::Identity(cols, cols);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() ? out.singular_values(0) : 0.0;
  if (out.sigma_max == 0.0) {
    out.basis = Eigen::MatrixXd::Identity(cols, cols);
    return out;
  }
  out.threshold = rel_tol * out.sigma_max;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) >= out.threshold) ++rank;
  }
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::VectorXd vec(const Eigen::MatrixXd& w) {
  return Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Eigen::Index rows,
                      Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

}  // namespace symbreak::linalg
