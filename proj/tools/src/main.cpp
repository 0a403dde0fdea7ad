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


// heraldsim command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "heraldsim/error.hpp"
#include "heraldsim/version.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kCapacity = 3, kDegenerate = 4 };

struct Invocation {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void add_common(CLI::App* cmd, Invocation& inv) {
    cmd->add_option("--config", inv.config, "Experiment config (JSON)")->required();
    cmd->add_option("--seed", inv.seed, "Override the config seed");
    cmd->add_option("--out", inv.out, "Output directory (default: print the report)");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace heraldsim;
    using namespace heraldsim::cli;

    CLI::App app{"heraldsim: heralded multiphoton linear-optics simulator"};
    app.set_version_flag("--version", std::string("heraldsim ") + kVersion);
    app.require_subcommand(1);
    Invocation inv;
    auto* simulate = app.add_subcommand("simulate", "Output distribution and herald probabilities");
    auto* analyze = app.add_subcommand("analyze", "Heralded-state witness: population, coherence, fidelity");
    auto* opt = app.add_subcommand("optimize", "Search transmissions for heralded GHZ generation");
    auto* characterize = app.add_subcommand("characterize", "Amplitude and phase tables of the circuit");
    for (auto* c : {simulate, analyze, opt, characterize}) add_common(c, inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        std::ifstream in(inv.config, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read config file '" << inv.config << "'\n";
            return kConfig;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string base = std::filesystem::absolute(inv.config).parent_path().string();
        ExperimentConfig cfg = parse_config(ss.str(), base);
        if (inv.seed) cfg.seed = *inv.seed;

        CommandOutput result;
        if (command == "simulate") result = run_simulate(cfg);
        else if (command == "analyze") result = run_analyze(cfg);
        else if (command == "optimize") result = run_optimize(cfg);
        else result = run_characterize(cfg);

        if (inv.out.empty()) {
            std::cout << render(result.report);
        } else {
            write_outputs(inv.out, command, result, inv.config);
        }
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << inv.config << ":" << e.line() << ": config error: " << e.what() << '\n';
        return kConfig;
    } catch (const ArgumentError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << '\n';
        return kCapacity;
    } catch (const DegenerateInputError& e) {
        std::cerr << "degenerate input: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
