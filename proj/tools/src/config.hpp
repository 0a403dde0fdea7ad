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


// Experiment configuration: schema, line-anchored validation errors.

#ifndef HERALDSIM_TOOLS_CONFIG_HPP
#define HERALDSIM_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "heraldsim/evolution.hpp"
#include "heraldsim/heralding.hpp"
#include "heraldsim/interferometer.hpp"

namespace heraldsim::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Schema violation; `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string& msg, int line) : std::runtime_error(msg), line_(line) {}
    int line() const { return line_; }

   private:
    int line_;
};

enum class SourceKind { Ideal, Reported, Uniform, Gram };

struct SourceConfig {
    SourceKind kind = SourceKind::Ideal;
    std::vector<double> visibilities;  // V_1j for reported
    std::vector<double> sigmas;
    double visibility = 1.0;           // uniform pairwise visibility
    Matrix gram;
    double g2 = 0.0;
    bool correct_g2 = false;
    int max_extra = 1;
};

struct CountsConfig {
    double expected_total = 0.0;
    double duration_hours = 0.0;
};

struct AnalyzeConfig {
    std::optional<CountsConfig> counts;
    std::vector<double> visibility_sweep;
    double fidelity_threshold = 0.0;
};

struct ExperimentConfig {
    std::string source_text;   // raw file contents (hashed)
    std::uint64_t seed = 0;
    CircuitSpec circuit;
    bool preset_circuit = false;
    OccupationVector input;
    std::optional<HeraldRule> rule;
    SourceConfig sources;
    std::vector<double> loss;  // per-mode transmissions; empty = lossless
    DetectorModel detector;
    int top_k = 200;
    AnalyzeConfig analyze;
    // optimize
    std::size_t budget = 5000;
    int restarts = 1;
    double noise = 0.0;
    bool random_start = false;
    double w_fidelity = 1.0;
    double w_probability = 1.0;
    // characterize
    std::vector<int> char_inputs;
    std::vector<int> char_outputs;
    EvolutionLimits limits;
};

/// Parses and validates; `base_dir` resolves relative circuit file paths.
/// Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir);

}  // namespace heraldsim::cli

#endif  // HERALDSIM_TOOLS_CONFIG_HPP
