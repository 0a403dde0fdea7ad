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

// Parameter search on a fixed mesh: maximize heralded GHZ fidelity while
// keeping each pattern's success probability at the target.

#ifndef HERALDSIM_SEARCH_HPP
#define HERALDSIM_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heraldsim/heralding.hpp"
#include "heraldsim/interferometer.hpp"

namespace heraldsim {

enum class ParamKind { Transmission, Phase, MziInternal, MziExternal };

std::string_view to_string(ParamKind kind);

struct FreeParameter {
    std::size_t element = 0;  // index into topology.elements
    ParamKind kind = ParamKind::Transmission;
    double lower = 0.0;
    double upper = 1.0;
};

struct SearchProblem {
    CircuitSpec topology;
    OccupationVector input;
    HeraldRule rule;  // ancillas, patterns and register; corrections unused
    std::vector<FreeParameter> free;
    double w_fidelity = 1.0;
    double w_probability = 1.0;
    double target_probability = 1.0 / 108.0;

    /// Every beam-splitter transmission free in [0, 1].
    static SearchProblem transmissions_of(const CircuitSpec& topology, const OccupationVector& input,
                                          const HeraldRule& rule);

    void validate() const;
    std::vector<double> initial_params() const;
    /// Throws ArgumentError on out-of-bounds values.
    CircuitSpec apply(const std::vector<double>& params) const;
};

struct PatternScore {
    double probability = 0.0;
    /// (|a_0..0| + |a_1..1|)^2 / (2p): fidelity maximized over local Z and
    /// global phases; 0 when p = 0.
    double fidelity = 0.0;
};

struct Evaluation {
    double objective = 0.0;
    std::vector<PatternScore> per_pattern;
    double min_fidelity = 0.0;
    double min_probability = 0.0;
};

/// Mean over patterns of w_f (1 - F) + w_p max(0, target - p).
Evaluation evaluate(const std::vector<double>& params, const SearchProblem& problem);
double objective(const std::vector<double>& params, const SearchProblem& problem);

struct SearchOptions {
    std::size_t budget = 5000;     // objective evaluations per restart
    int restarts = 1;
    std::uint64_t seed = 0;
    /// Start point (natural units); defaults to the topology's values.
    std::optional<std::vector<double>> start;
    /// Uniform perturbation of total width `noise` around the start.
    double noise = 0.0;
    /// Ignore the start and draw each restart uniformly within bounds
    /// (transmissions in [0.05, 0.95], phases in [0, 2 pi)).
    bool random_start = false;
    double initial_step = 0.1;     // simplex edge in the search space
    double tolerance = 1e-12;      // stop once the objective is this small
};

struct TraceEntry {
    std::size_t evaluation = 0;  // global evaluation counter
    int restart = 0;
    double objective = 0.0;      // value at the improving point
    double best = 0.0;           // best-so-far over the whole run
};

struct RestartSummary {
    int index = 0;
    std::uint64_t seed = 0;
    std::vector<double> start;
    std::vector<double> best_params;
    double best_objective = 0.0;
    double min_fidelity = 0.0;
    double min_probability = 0.0;
    std::size_t evaluations = 0;
    std::size_t improving_steps = 0;
    int simplex_resets = 0;
    bool converged = false;
};

struct SearchResult {
    std::vector<double> best_params;
    double best_objective = 0.0;
    double heralded_fidelity = 0.0;        // min over patterns
    double per_pattern_probability = 0.0;  // min over patterns
    int best_restart = 0;
    std::size_t evaluations = 0;
    std::size_t improving_steps = 0;
    std::string status;  // "converged", "budget exhausted", "no search performed"
    std::vector<TraceEntry> trace;
    std::vector<RestartSummary> restarts;
};

/// Multi-start Nelder-Mead with simplex reset on stagnation. Transmissions
/// are searched through T = 1 / (1 + exp(-u)). Restarts run in index order
/// with seeds derive_seed(seed, index); the best result is chosen by
/// (objective, restart index). A zero budget returns the start point.
SearchResult optimize(const SearchProblem& problem, const SearchOptions& options);

}  // namespace heraldsim

#endif  // HERALDSIM_SEARCH_HPP
