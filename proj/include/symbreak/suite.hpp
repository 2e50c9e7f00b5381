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

// The registered check suite: fixtures over Z2 (swap), S3 and D4 acting by
// permutations, each paired with the expectation it must meet.

#ifndef SYMBREAK_SUITE_HPP_
#define SYMBREAK_SUITE_HPP_

#include <cstdint>
#include <vector>

#include "symbreak/groups.hpp"
#include "symbreak/reps.hpp"
#include "symbreak/verify.hpp"

namespace symbreak::suite {

struct SuiteOptions {
  std::uint64_t seed = 0;
  double tol = verify::kRelationalTol;
  std::int64_t measure_zero_samples = 100000;
  std::int64_t theorem4_inputs = 200;
  std::int64_t lipschitz_samples = 1000;
  int argmax_tables = 24;
  int gradient_configs = 50;
};

struct Fixtures {
  groups::GroupPtr z2, s3, d4;
  reps::RepPtr perm2, perm3, perm4;
};

Fixtures make_fixtures();

// Entry names are prefixed by family: basis_, theorem4_, curie_,
// lipschitz_, measure_zero_, argmax_, gradient_, composition_, orbit_.
std::vector<verify::SuiteEntry> default_suite(const SuiteOptions& options);

// Max relative error between reverse-mode and central-difference gradients
// (h = 1e-6) over `configs` random networks.
CheckReport gradient_check(int configs, std::uint64_t seed);

}  // namespace symbreak::suite

#endif  // SYMBREAK_SUITE_HPP_
