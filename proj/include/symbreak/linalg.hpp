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

// Dense linear-algebra helpers shared by the symmetry and solver modules.

#ifndef SYMBREAK_LINALG_HPP_
#define SYMBREAK_LINALG_HPP_

#include <Eigen/Dense>

namespace symbreak::linalg {

struct NullSpace {
  // Orthonormal columns spanning {v : A v = 0}.
  Eigen::MatrixXd basis;
  Eigen::Index rank = 0;
  double sigma_max = 0.0;
  // Singular values below this count as zero (rel_tol * sigma_max).
  double threshold = 0.0;
  // All min(rows, cols) singular values, descending.
  Eigen::VectorXd singular_values;
};

// Null space of `a` (an r x cols matrix, r may be 0) via a full SVD.
// A matrix with no rows, or with sigma_max == 0, has the canonical basis
// (identity columns) as its null space.
NullSpace null_space(const Eigen::MatrixXd& a, Eigen::Index cols,
                     double rel_tol);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Column-major vectorisation: vec(W)[i + rows * j] = W(i, j), so that
// vec(A W B) = (B^T kron A) vec(W).
Eigen::VectorXd vec(const Eigen::MatrixXd& w);
Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Eigen::Index rows,
                      Eigen::Index cols);

}  // namespace symbreak::linalg

#endif  // SYMBREAK_LINALG_HPP_
