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

#ifndef SYMBREAK_REPORT_HPP_
#define SYMBREAK_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace symbreak {

// Evidence for one observed violation (or one notable trial).
struct Witness {
  std::string note;
  std::vector<double> input;
  std::vector<std::uint32_t> elements;
  double residual = 0.0;
};

// Structured pass/fail evidence of one mechanical check. `passed` holds
// exactly when the check was not skipped and max_violation <= tolerance.
struct CheckReport {
  static constexpr std::size_t kMaxWitnesses = 32;

  std::string name;
  bool passed = false;
  bool skipped = false;
  std::int64_t trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  nlohmann::json config = nlohmann::json::object();

  CheckReport() = default;
  CheckReport(std::string name, double tolerance)
      : name(std::move(name)), tolerance(tolerance) {}

  // Counts a trial; keeps the witness when the violation exceeds the
  // tolerance.
  void observe(double violation, Witness witness);
  // Marks the report skipped with a reason witness.
  void skip(std::string reason);
  // Fixes `passed`. Call once all trials are in.
  CheckReport& finalize();
};

nlohmann::json to_json(const CheckReport& report);
CheckReport report_from_json(const nlohmann::json& j);

}  // namespace symbreak

#endif  // SYMBREAK_REPORT_HPP_
