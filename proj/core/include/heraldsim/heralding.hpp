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

// Detector models, heralding rules, loss, and the heralded signal state.

#ifndef HERALDSIM_HERALDING_HPP
#define HERALDSIM_HERALDING_HPP

#include <optional>
#include <string>
#include <vector>

#include "heraldsim/evolution.hpp"
#include "heraldsim/fock.hpp"
#include "heraldsim/interferometer.hpp"

namespace heraldsim {

enum class DetectorKind { IdealPnr, PseudoPnr, Threshold };

std::string_view to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(std::string_view name);

/// Response of the ancilla detectors. A detector with efficiency eta sees
/// each photon with probability eta, then reports the saturated count; with
/// dark-count probability d it reports one extra (saturated) count:
///   P(r | m seen) = (1 - d) [r = sat(m)] + d [r = sat(m + 1)].
struct DetectorModel {
    DetectorKind kind = DetectorKind::IdealPnr;
    int max_resolvable = 2;           // pseudo-PNR saturation
    std::vector<double> efficiency;   // per ancilla detector; empty means 1
    double dark_count = 0.0;

    static DetectorModel ideal() { return {}; }
    static DetectorModel pseudo_pnr(int max_resolvable = 2);
    static DetectorModel threshold();

    int saturate(int n) const;
    double efficiency_at(std::size_t detector) const;
    /// P(readout r | n photons arrive) at the given detector.
    double response(std::size_t detector, int readout, int n) const;
    void validate(std::size_t n_detectors) const;
};

struct HeraldRule {
    std::vector<int> ancilla_modes{7, 8, 9, 10};  // 1-based
    std::vector<OccupationVector> patterns{{1, 1, 1, 0}, {1, 1, 0, 1}};
    /// Per pattern, one Z phase per qubit applied as exp(i phi n_b) on the
    /// rail-b mode. Empty means no correction.
    std::vector<std::vector<double>> corrections;
    DualRailRegister qubits = DualRailRegister::standard();

    /// Every ancilla pattern with at most n photons, canonical order.
    static std::vector<OccupationVector> all_patterns(std::size_t n_ancillas, int n_photons);

    void validate(int n_modes, int n_photons) const;
    /// Non-ancilla modes, 1-based ascending.
    std::vector<int> signal_modes(int n_modes) const;
    /// The qubit register re-indexed onto the signal modes.
    DualRailRegister signal_register(int n_modes) const;
    /// Phase per qubit for pattern p (zeros when absent).
    std::vector<double> correction(std::size_t p) const;
};

struct PatternOutcome {
    OccupationVector pattern;
    double probability = 0.0;
    /// Normalized, corrected state on the signal modes; empty when the
    /// pattern never fires.
    std::optional<DensityOperator> state;
    /// Weight of the dual-rail register subspace within `state`.
    double dual_rail_weight = 0.0;
    /// <GHZ| rho |GHZ> within the renormalized register subspace.
    double subspace_ghz_fidelity = 0.0;
};

struct HeraldOutcome {
    std::vector<PatternOutcome> per_pattern;
    double total_probability = 0.0;
};

/// Pure state with a probability weight.
struct WeightedState {
    double weight = 0.0;
    PureState state;
};

/// Mixture of pure components, typically one per lost-photon pattern.
struct SectorMixture {
    std::vector<WeightedState> components;
    double total_weight() const;
};

/// Each mode i passes through a splitter of transmission eta_i into an
/// unobserved mode that is traced out. Components are grouped by the
/// lost-photon pattern.
SectorMixture apply_loss(const PureState& state, const std::vector<double>& transmissions);

HeraldOutcome herald(const PureState& state, const HeraldRule& rule, const DetectorModel& det = {});
HeraldOutcome herald(const SectorMixture& state, const HeraldRule& rule, const DetectorModel& det = {});

/// Partially distinguishable sources through `u`, with optional per-mode
/// transmissions (loss before detection). The heralded signal state is exact
/// on the dual-rail subspace; coherences are kept between configurations
/// with equal per-qubit photon counts and no bunching on a signal mode,
/// all other off-diagonal terms are dropped.
HeraldOutcome herald(const Matrix& u, const SourceModel& src, const HeraldRule& rule, const DetectorModel& det = {},
                     const std::vector<double>& transmissions = {}, const EvolutionLimits& limits = {});

struct HeraldingEfficiency {
    std::optional<double> value;  // empty: no herald events
    double herald_probability = 0.0;
    double success_probability = 0.0;
    std::string status;           // "ok" or "no herald events"
};

/// P(signal in the register subspace with subspace GHZ fidelity >=
/// threshold | an accepted pattern fired).
HeraldingEfficiency heralding_efficiency(const SourceModel& src, const CircuitSpec& circuit, const HeraldRule& rule,
                                         const DetectorModel& det, const std::vector<double>& transmissions = {},
                                         double fidelity_threshold = 0.0, const EvolutionLimits& limits = {});

}  // namespace heraldsim

#endif  // HERALDSIM_HERALDING_HPP
