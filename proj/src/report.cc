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

#include "symbreak/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symbreak {

void CheckReport::observe(double violation, Witness witness) {
  ++trials;
  if (!std::isfinite(violation)) violation = std::numeric_limits<double>::max();
  max_violation = std::max(max_violation, violation);
  if (violation > tolerance && witnesses.size() < kMaxWitnesses) {
    witness.residual = violation;
    witnesses.push_back(std::move(witness));
  }
}

void CheckReport::skip(std::string reason) {
  skipped = true;
  witnesses.push_back(Witness{std::move(reason), {}, {}, 0.0});
}

CheckReport& CheckReport::finalize() {
  passed = !skipped && max_violation <= tolerance;
  if (!passed && witnesses.empty()) {
    witnesses.push_back(Witness{"violation above tolerance", {}, {},
                                max_violation});
  }
  return *this;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& wit : r.witnesses) {
    w.push_back({{"note", wit.note},
                 {"input", wit.input},
                 {"elements", wit.elements},
                 {"residual", wit.residual}});
  }
  nlohmann::json config = r.config;
  config["tolerance"] = r.tolerance;
  return {{"name", r.name},         {"passed", r.passed},
          {"skipped", r.skipped},   {"trials", r.trials},
          {"max_violation", r.max_violation},
          {"witnesses", std::move(w)}, {"config", std::move(config)}};
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.skipped = j.value("skipped", false);
  r.trials = j.at("trials").get<std::int64_t>();
  r.max_violation = j.at("max_violation").get<double>();
  r.config = j.at("config");
  r.tolerance = r.config.value("tolerance", 0.0);
  for (const auto& w : j.at("witnesses")) {
    r.witnesses.push_back(Witness{w.at("note").get<std::string>(),
                                  w.at("input").get<std::vector<double>>(),
                                  w.at("elements").get<std::vector<std::uint32_t>>(),
                                  w.at("residual").get<double>()});
  }
  return r;
}

}  // namespace symbreak
