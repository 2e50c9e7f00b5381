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

// Toy scenarios contrasting equivariant and relaxed-equivariant layers.

#ifndef SYMBREAK_DEMOS_HPP_
#define SYMBREAK_DEMOS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace symbreak::demos {

struct DemoOutput {
  nlohmann::json summary;
  // Header line plus one row per step / sample / sweep point.
  std::string trace_csv;
};

// square-break, graph-nodes, noise-baseline, relu-collapse.
const std::vector<std::string>& demo_names();

// Throws ValidationError for an unknown name.
DemoOutput run_demo(const std::string& name, std::uint64_t seed);

}  // namespace symbreak::demos

#endif  // SYMBREAK_DEMOS_HPP_
