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

// File formats: matrices as CSV (row-major, 17 significant digits), weight
// bases and network checkpoints as a JSON manifest next to CSV payloads,
// and custom representations as CSV matrix tables.

#ifndef SYMBREAK_IO_HPP_
#define SYMBREAK_IO_HPP_

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "symbreak/network.hpp"
#include "symbreak/reps.hpp"
#include "symbreak/solver.hpp"

namespace symbreak::io {

namespace fs = std::filesystem;

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& m);
// Throws ParseError on ragged rows or non-numeric cells.
Eigen::MatrixXd read_matrix_csv(const fs::path& path);

// Writes the text to `path`, creating parent directories.
void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

// Custom representation table. One block per group element:
//
//   element,<index>
//   <row 0 of rho(g), comma separated>
//   ...
//
// Every element index must appear exactly once. The matrices are validated
// as a representation on load.
reps::RepPtr read_representation_csv(const fs::path& path,
                                     const groups::GroupPtr& group);
void write_representation_csv(const fs::path& path,
                              const reps::Representation& rep);

// dir/manifest.json plus dir/basis_<i>.csv, one per basis matrix.
nlohmann::json basis_manifest(const solver::WeightBasis& basis);
void export_basis(const solver::WeightBasis& basis, const fs::path& dir);

// Rebuilds the constraint system from the manifest (mode and K
// generators) over the given representations and reads the matrices back.
// Throws ParseError on malformed files or a manifest that disagrees with
// the representations.
solver::WeightBasis load_basis(const fs::path& dir, const reps::RepPtr& rep_in,
                               const reps::RepPtr& rep_out);

// dir/checkpoint.json (dims, mode, K, activation per layer) and, per layer,
// dir/layer_<i>/ with the exported basis and coeffs.csv / bias.csv
// coefficient vectors.
void save_checkpoint(const network::Network& net, const fs::path& dir);
// rep_chain[i] -> rep_chain[i + 1] is layer i.
network::Network load_checkpoint(const fs::path& dir,
                                 const std::vector<reps::RepPtr>& rep_chain);

}  // namespace symbreak::io

#endif  // SYMBREAK_IO_HPP_
