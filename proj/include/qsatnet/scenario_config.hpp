// Copyright 2026 The qsatnet Authors
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

// JSON scenario files. Sections: stations, fibers, constellation, channel,
// commodities, simulation. Unknown keys are errors, so a misspelt field
// cannot silently fall back to its default.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "qsatnet/scenario.hpp"

namespace qsatnet::scenario {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative station files resolve against `base_dir`.
ScenarioConfig parse_config(const std::string& json_text,
                            const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

std::vector<StationSpec> load_stations(const std::filesystem::path& path);

// Round trip of the effective configuration, for run outputs.
std::string config_to_json(const ScenarioConfig& config);

}  // namespace qsatnet::scenario
