// Copyright 2026 The heraldsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Report assembly and output files.

#ifndef HERALDSIM_TOOLS_REPORT_HPP
#define HERALDSIM_TOOLS_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace heraldsim::cli {

/// Primary report plus auxiliary artifacts (file name -> contents).
struct CommandOutput {
    json report;
    std::vector<std::pair<std::string, std::string>> artifacts;
};

std::string sha256_hex(const std::string& data);

/// Replaces non-finite numbers by the strings "inf", "-inf", "nan".
json sanitize(const json& j);

/// Adds command, schema_version, artifact_version, config_sha256 and seed.
void stamp(json& report, const std::string& command, const ExperimentConfig& cfg);

/// Sorted keys, two-space indent, trailing newline.
std::string render(const json& report);

/// Writes <command>.json, artifacts, and <command>.meta.json (timestamp,
/// config path) into `dir`, creating it if needed.
void write_outputs(const std::string& dir, const std::string& command, const CommandOutput& out,
                   const std::string& config_path);

}  // namespace heraldsim::cli

#endif  // HERALDSIM_TOOLS_REPORT_HPP
