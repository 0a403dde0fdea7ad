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

// GHZ witness: population P, coherence C, fidelity F = (P + C)/2, Poisson
// count emulation, and single-photon circuit characterization.
//
// Qubit-space matrices are indexed by the logical bitstring read with
// qubit 1 as the most significant bit (index = x1*4 + x2*2 + x3 for three
// qubits).

#ifndef HERALDSIM_ANALYSIS_HPP
#define HERALDSIM_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "heraldsim/fock.hpp"

namespace heraldsim {

/// State restricted to the register subspace and renormalized there.
struct SubspaceState {
    Matrix rho;           // 2^k x 2^k
    double weight = 0.0;  // trace of the unrenormalized restriction
};

/// Throws DegenerateInputError when the subspace carries no weight.
SubspaceState dual_rail_subspace(const DensityOperator& rho,
                                 const DualRailRegister& reg = DualRailRegister::standard());

double population(const Matrix& rho_q);
/// Tr(rho M_theta^{(x)N}) with M_theta = cos(theta) X + sin(theta) Y.
double expectation_M(const Matrix& rho_q, double theta);
/// (1/3) sum_k (-1)^k <M_{k pi/3}^{(x)3}>, generalized to N qubits as
/// (1/N) sum_{k<N} (-1)^k <M_{k pi/N}^{(x)N}>.
double coherence(const Matrix& rho_q);

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
};

struct SettingExpectation {
    double theta = 0.0;
    Estimate value;
};

struct AnalysisResult {
    Estimate population;
    Estimate coherence;
    Estimate fidelity;
    std::vector<SettingExpectation> expectations;
    double subspace_weight = 1.0;
    bool entangled = false;   // F > 0.5, strict
    double z_score = 0.0;     // (F - 0.5) / sigma_F; +-inf when sigma_F = 0
};

/// Exact witness quantities of a qubit-space state (zero uncertainties).
AnalysisResult fidelity_pc(const Matrix& rho_q);
/// Projects onto the register subspace first and records its weight.
AnalysisResult fidelity_pc(const DensityOperator& rho, const DualRailRegister& reg = DualRailRegister::standard());

enum class BasisKind { Computational, Equatorial };

struct MeasurementSetting {
    BasisKind kind = BasisKind::Computational;
    double theta = 0.0;  // in [0, 2 pi)

    static MeasurementSetting computational();
    static MeasurementSetting equatorial(double theta);
    std::string label() const;
    bool same_as(const MeasurementSetting& other, double tol = 1e-9) const;
};

/// Outcome probabilities over the 2^k bitstrings. In an equatorial basis,
/// bit 0 is the "+" projector (|0> + e^{i theta}|1>)/sqrt(2).
std::vector<double> outcome_probabilities(const Matrix& rho_q, const MeasurementSetting& setting);

struct CountRecord {
    MeasurementSetting setting;
    std::vector<std::uint64_t> counts;  // index = bitstring, qubit 1 = MSB
    double duration_hours = 0.0;
    std::uint64_t total() const;
};

/// Independent Poisson counts with means expected_total * p_i, drawn from a
/// mt19937_64 seeded with `seed` in outcome order.
CountRecord simulate_counts(const std::vector<double>& probabilities, double expected_total, std::uint64_t seed,
                            const MeasurementSetting& setting = MeasurementSetting::computational());

/// First-order Poisson error propagation:
///   P = A/N,               sigma_P^2 = A B / N^3
///   E = (N+ - N-)/N,       sigma_E^2 = 4 N+ N- / N^3
///   C = (E_0 - E_pi/3 + E_2pi/3)/3, sigma_C = sqrt(sum sigma_E^2)/3
///   F = (P + C)/2,         sigma_F = sqrt(sigma_P^2 + sigma_C^2)/2
/// Records sharing a setting are pooled. Needs the computational basis and
/// theta in {0, pi/3, 2 pi/3}.
AnalysisResult estimate_from_counts(const std::vector<CountRecord>& records);

/// The settings estimate_from_counts needs, for k qubits.
std::vector<MeasurementSetting> witness_settings(std::size_t n_qubits = 3);

/// Stream seed k derived from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

struct Characterization {
    std::vector<int> inputs;   // 1-based
    std::vector<int> outputs;  // 1-based
    Eigen::MatrixXd amplitude; // [input][output], rows sum to 1
    Eigen::MatrixXd phase;     // [input][output], radians in (-pi, pi]
};

/// Row-normalized |U(o, i)|^2 over the observed outputs, and arg U(o, i)
/// with the input/output phase gauge fixed on a spanning tree of nonzero
/// entries grown from the first row, then the first column. Values are
/// rounded to 1e-12 so a rebuilt matrix re-gauges to identical tables.
Characterization characterize_circuit(const Matrix& u, const std::vector<int>& inputs, const std::vector<int>& outputs);

/// Matrix with entry (o, i) = sqrt(amplitude) e^{i phase}.
Matrix rebuild_from_characterization(const Characterization& c);

}  // namespace heraldsim

#endif  // HERALDSIM_ANALYSIS_HPP
