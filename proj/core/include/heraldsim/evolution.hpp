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

// Multiphoton evolution through a mode unitary.
//
// A creation operator on input mode j maps to sum_i U(i, j) a_i^dagger, so
// the amplitude <t|U|s> is Per(U[t, s]) / sqrt(s! t!) with rows repeated per
// output occupation and columns per input occupation.

#ifndef HERALDSIM_EVOLUTION_HPP
#define HERALDSIM_EVOLUTION_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "heraldsim/fock.hpp"
#include "heraldsim/permanent.hpp"

namespace heraldsim {

struct EvolutionLimits {
    std::size_t max_basis = kDefaultBasisCap;
    int max_permanent = kDefaultPermanentCap;
    /// Photon-number cap for the pairing sum over S_n.
    int max_pairing_photons = 10;
    /// Cap on internal-label assignments expanded by the label-sector route.
    std::size_t max_label_assignments = 1'000'000;
};

/// 0-based mode index of each photon, ascending, repeated per occupation.
std::vector<int> photon_rows(const OccupationVector& occ);

Complex transition_amplitude(const Matrix& u, const OccupationVector& s, const OccupationVector& t,
                             int cap = kDefaultPermanentCap);

/// Output state over every n-photon occupation of the unitary's modes.
PureState evolve_pure(const Matrix& u, const OccupationVector& input, const EvolutionLimits& limits = {});

struct SourcePhoton {
    int mode = 1;     // 1-based input mode
    Vector internal;  // unit vector over an orthonormal internal basis
};

/// Input photons with internal states, plus optional multiphoton
/// contamination: with probability p2 each photon's source also emits one
/// extra photon into the same mode, carrying a fresh internal label that is
/// orthogonal to every other photon.
class SourceModel {
   public:
    SourceModel() = default;
    /// Pads internal vectors to a common dimension. Throws ArgumentError on
    /// non-unit internal states, bad modes or p2 outside [0, 1).
    explicit SourceModel(std::vector<SourcePhoton> photons, double p2 = 0.0, int max_extra = 1);

    /// One photon per occupied slot, all sharing one internal state.
    static SourceModel indistinguishable(const OccupationVector& input);

    /// Photon k has internal state sqrt(v_k) xi_0 + sqrt(1 - v_k) xi_k, so
    /// pairwise HOM visibility is v_i v_j. `modes` are 1-based.
    static SourceModel from_visibility_factors(const std::vector<int>& modes, const std::vector<double>& v);

    /// Internal states realizing a Gram matrix S (S_ij = <psi_i|psi_j>).
    /// Throws ArgumentError unless S is Hermitian PSD with unit diagonal.
    static SourceModel from_gram(const std::vector<int>& modes, const Matrix& gram);

    const std::vector<SourcePhoton>& photons() const { return photons_; }
    std::size_t n_photons() const { return photons_.size(); }
    std::size_t internal_dim() const;
    double contamination() const { return p2_; }
    int max_extra() const { return max_extra_; }

    SourceModel with_contamination(double p2, int max_extra = 1) const;

    Matrix gram() const;
    /// 0-based input mode of each photon, in photon order.
    std::vector<int> modes0() const;
    OccupationVector occupation(int n_modes) const;

    /// Contamination-free source configurations with their probabilities.
    /// Configurations with more than max_extra extra photons are dropped and
    /// the remaining weights renormalized.
    std::vector<std::pair<double, SourceModel>> contamination_terms() const;

   private:
    std::vector<SourcePhoton> photons_;
    double p2_ = 0.0;
    int max_extra_ = 1;
};

struct OutputDistribution {
    /// Ascending photon number, then canonical (descending) order.
    std::vector<OccupationVector> outcomes;
    std::vector<double> probabilities;
    /// Present only for a single fully coherent input.
    std::optional<Vector> amplitudes;

    double probability(const OccupationVector& occ) const;
    double total() const;
};

/// Label-sector route: expand photons over the internal basis, evolve each
/// label configuration (photons with different labels do not interfere) and
/// sum mode-space probabilities. Includes the contamination mixture.
OutputDistribution evolve_distinguishable(const Matrix& u, const SourceModel& src,
                                          const EvolutionLimits& limits = {});

/// Pairing-sum route for mode-space matrix elements after tracing internal
/// states:
///
///   rho(x, x') = 1/(N sqrt(x! x'!)) sum_sigma prod_k S(sigma(k), k)
///                Per(A o conj(B)[:, sigma])
///
/// with A = U[x rows, input cols], B = U[x' rows, input cols], and N the
/// input-state norm. Row slots of x and x' are matched position by position,
/// so callers list rows in a consistent slot order. Pairings with zero
/// weight are skipped; an all-ones Gram matrix uses Per(A) conj(Per(B)).
class PairingEngine {
   public:
    /// `modes0`: 0-based input mode per photon. Throws CapacityError above
    /// limits.max_pairing_photons photons.
    PairingEngine(Matrix u, std::vector<int> modes0, const Matrix& gram, const EvolutionLimits& limits = {});

    std::size_t n_photons() const { return modes0_.size(); }
    std::size_t n_pairings() const { return coherent_ ? 1 : pairings_.size(); }
    bool coherent() const { return coherent_; }

    /// rows / rows_prime: 0-based output mode per slot. `multiplicity` is
    /// sqrt(x! x'!).
    Complex element(const std::vector<int>& rows, const std::vector<int>& rows_prime, double multiplicity) const;
    double probability(const OccupationVector& x) const;

   private:
    Matrix u_;
    std::vector<int> modes0_;
    bool coherent_ = false;
    std::vector<std::pair<std::vector<int>, Complex>> pairings_;
    double norm_ = 1.0;
    int cap_ = kDefaultPermanentCap;
};

/// g2(0) of a source with contamination probability p2: 2 p2 / (1 + p2)^2.
double g2_from_contamination(double p2);
/// Inverse of g2_from_contamination on [0, 1): the smaller root.
double contamination_from_g2(double g2);
/// g2 measured by simulating a Hanbury Brown-Twiss split of one source.
double simulated_hbt_g2(double p2);
/// HOM visibility 1 - C(V)/C(0) of two contaminated sources on a 50:50
/// splitter, with coincidences on threshold detectors.
double simulated_hom_visibility(double visibility, double p2);

struct VisibilityCalibration {
    std::vector<double> reported;   // V_1j, j = 2..n
    std::vector<double> intrinsic;  // after optional g2 correction
    double reference = 0.0;         // inverse-variance mean of intrinsic, = v_1^2
    std::vector<double> factors;    // v_1..v_n
    bool g2_corrected = false;
    double p2 = 0.0;
};

/// Completes photon-1-referenced visibilities V_1j to per-photon factors
/// with V_ij = v_i v_j. V_1j only fixes the products v_1 v_j; v_1 is taken
/// as sqrt of the inverse-variance-weighted mean of V_1j (photon 1 treated as
/// typical of the ensemble) and v_j = V_1j / v_1. With `correct_for_g2`,
/// each V_1j is first replaced by the contamination-free visibility whose
/// simulated HOM visibility at the g2-implied p2 equals the reported value.
VisibilityCalibration calibrate_visibilities(const std::vector<double>& reported,
                                             const std::vector<double>& sigmas, double g2 = 0.0,
                                             bool correct_for_g2 = false);

}  // namespace heraldsim

#endif  // HERALDSIM_EVOLUTION_HPP
