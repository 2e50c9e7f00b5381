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

// Command-line front end. The run configuration is a YAML file:
//
//   group: {kind: dihedral, n: 4}        # cyclic | dihedral | symmetric
//                                        # | product (factors: [..., ...])
//   seed: 0
//   tolerance: 1.0e-7
//   output: out                          # relative to the config file
//   representations:
//     perm: {type: permutation}
//     reg: {type: regular}
//     two: {type: direct_sum, of: [perm, perm]}
//     mine: {type: custom, file: rho.csv}
//   layers:
//     - {in: perm, out: perm, mode: relaxed, K: [[1, 2, 3, 0]],
//        activation: relu}
//   check:
//     fixtures: default                  # default | layers | all
//     basis_dir: out                     # reload solved bases from here
//     measure_zero_samples: 100000
//   demo: square-break
//
// Exit codes: 0 success, 1 a check missed its expectation, 2 configuration
// error, 3 numerical failure.

#ifndef SYMBREAK_CLI_HPP_
#define SYMBREAK_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symbreak/groups.hpp"
#include "symbreak/network.hpp"
#include "symbreak/reps.hpp"
#include "symbreak/solver.hpp"

namespace symbreak::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RepConfig {
  std::string type;  // permutation | regular | direct_sum | custom
  std::vector<std::string> of;
  fs::path file;
};

struct LayerConfig {
  std::string in;
  std::string out;
  solver::Mode mode = solver::Mode::kStandard;
  std::vector<groups::Perm> k_generators;
  network::Activation activation = network::Activation::kRelu;
};

struct CheckConfig {
  std::string fixtures = "default";
  std::optional<fs::path> basis_dir;
  std::int64_t measure_zero_samples = 100000;
};

struct RunConfig {
  groups::GroupSpec group = groups::GroupSpec::dihedral(4);
  std::uint64_t seed = 0;
  double tolerance = 1e-7;
  fs::path output = "out";
  std::map<std::string, RepConfig> representations;
  std::vector<LayerConfig> layers;
  CheckConfig check;
  std::optional<std::string> demo;
};

// Relative paths resolve against base_dir. Throws ParseError.
RunConfig parse_config(const std::string& yaml, const fs::path& base_dir);
RunConfig load_config(const fs::path& path);

// Group, named representations and per-layer subgroups built from a config.
struct Built {
  groups::GroupPtr group;
  std::map<std::string, reps::RepPtr> reps;
  std::vector<solver::ConstraintSystem> systems;
};

// Throws ParseError when a name is undefined, a K generator is not in the
// group, or adjacent layer dimensions do not chain.
Built build(const RunConfig& config);

// Entry point used by main(); never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symbreak::cli

#endif  // SYMBREAK_CLI_HPP_
