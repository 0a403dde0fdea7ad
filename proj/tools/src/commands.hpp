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


// Command implementations: each maps a validated config to a report.

#ifndef HERALDSIM_TOOLS_COMMANDS_HPP
#define HERALDSIM_TOOLS_COMMANDS_HPP

#include "config.hpp"
#include "report.hpp"

namespace heraldsim::cli {

CommandOutput run_simulate(const ExperimentConfig& cfg);
CommandOutput run_analyze(const ExperimentConfig& cfg);
CommandOutput run_optimize(const ExperimentConfig& cfg);
CommandOutput run_characterize(const ExperimentConfig& cfg);

}  // namespace heraldsim::cli

#endif  // HERALDSIM_TOOLS_COMMANDS_HPP
