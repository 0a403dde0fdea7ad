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

// Optical circuits as ordered element lists, and their mode unitaries.
//
// Conventions: a photon entering mode j leaves in mode i with amplitude
// U(i, j). Elements listed later act later, so they multiply on the left.
// Mode indices in Element and CircuitSpec are 1-based.

#ifndef HERALDSIM_INTERFEROMETER_HPP
#define HERALDSIM_INTERFEROMETER_HPP

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "heraldsim/fock.hpp"

namespace heraldsim {

enum class ElementKind { BeamSplitter, PhaseShifter, Mzi };

std::string_view to_string(ElementKind kind);

/// Phase reduced to [0, 2*pi).
double canonical_phase(double phi);

struct Element {
    ElementKind kind = ElementKind::BeamSplitter;
    int mode_a = 1;
    int mode_b = 2;            // unused for phase shifters
    double transmission = 0.5; // beam splitter only
    double phase = 0.0;        // phase shifter phase, or MZI internal phase
    double external = 0.0;     // MZI external phase

    /// [[sqrt(T), i sqrt(1-T)], [i sqrt(1-T), sqrt(T)]] on (a, b).
    static Element beam_splitter(int a, int b, double transmission);
    /// exp(i phi) on mode a.
    static Element phase_shifter(int a, double phi);
    /// P_a(external) BS(1/2) P_a(internal) BS(1/2) on (a, b).
    static Element mzi(int a, int b, double internal, double external);

    /// Throws ArgumentError on a bad mode or parameter.
    void validate(int n_modes) const;

    /// The 2x2 block acting on (mode_a, mode_b). For a phase shifter the
    /// block is diag(exp(i phi), 1) on (mode_a, mode_a).
    Eigen::Matrix2cd block() const;

    /// Equality with phases compared mod 2*pi.
    bool same_as(const Element& other) const;
};

struct CircuitSpec {
    int n_modes = 0;
    std::vector<Element> elements;
    std::string label;

    void validate() const;
    std::size_t count(ElementKind kind) const;
};

struct CompiledUnitary {
    Matrix matrix;
    int n_modes() const { return static_cast<int>(matrix.rows()); }
};

/// Product of the element unitaries, later elements on the left.
CompiledUnitary compile(const CircuitSpec& spec);

/// Left-multiplies `u` in place by one element.
void apply_element(const Element& e, Matrix& u);

struct UnitarityReport {
    double deviation = 0.0;  // max |U^dagger U - I|
    bool pass = false;       // deviation < tolerance
};

inline constexpr double kUnitarityTolerance = 1e-10;

UnitarityReport validate_unitary(const Matrix& u, double tolerance = kUnitarityTolerance);

/// Per-qubit measurement setting. `theta` selects the equatorial basis
/// (|0> +- e^{i theta}|1>)/sqrt(2); `phi` is the MZI internal (mixing) phase:
/// pi/2 gives the equatorial measurement, pi passes the rails straight
/// through (computational basis).
struct QubitMeasurement {
    double theta = 0.0;
    double phi = 1.5707963267948966;

    static QubitMeasurement equatorial(double theta);
    static QubitMeasurement computational();
};

/// Appends, for each register pair (a, b), a phase shifter of -theta on b
/// followed by an MZI(internal = phi, external = 0) on (a, b). With the
/// equatorial setting a photon in state (|0> + e^{i theta}|1>)/sqrt(2)
/// leaves in rail a ("+", bit 0); the orthogonal state leaves in rail b.
CircuitSpec append_measurement(const CircuitSpec& spec, const std::vector<QubitMeasurement>& settings,
                               const DualRailRegister& reg = DualRailRegister::standard());

/// Appends exp(i phases[q]) on the rail-b mode of each qubit.
CircuitSpec append_z_phases(const CircuitSpec& spec, const std::vector<double>& phases,
                            const DualRailRegister& reg = DualRailRegister::standard());

/// Appends `second` after `first` (same mode count).
CircuitSpec concatenate(const CircuitSpec& first, const CircuitSpec& second);

/// Circuit file: {"n_modes", "elements": [{"kind", "modes", "param"}], "label"}.
/// Beam splitters carry param = T, phase shifters param = phi, MZIs
/// param = [internal, external]. Doubles are written in shortest round-trip
/// form, so parse -> serialize -> parse is exact.
std::string circuit_to_json(const CircuitSpec& spec, int indent = 2);
CircuitSpec circuit_from_json(std::string_view text);

/// The shipped 10-mode GHZ circuit (loaded from embedded data).
CircuitSpec ghz_preset();

}  // namespace heraldsim

#endif  // HERALDSIM_INTERFEROMETER_HPP
