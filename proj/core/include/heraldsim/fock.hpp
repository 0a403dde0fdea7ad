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

// Fock-basis bookkeeping: occupation vectors, fixed-photon-number bases,
// pure and mixed state containers, and the dual-rail qubit mapping.

#ifndef HERALDSIM_FOCK_HPP
#define HERALDSIM_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace heraldsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultBasisCap = 10'000'000;

/// Photon count per optical mode. Ordering is plain lexicographic on the
/// count tuple; the canonical basis order used everywhere is the reverse
/// (lexicographically descending), see `enumerate_basis`.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> counts);
    OccupationVector(std::initializer_list<int> counts);

    std::size_t n_modes() const { return counts_.size(); }
    int total_photons() const { return total_; }
    int operator[](std::size_t mode) const { return counts_[mode]; }
    const std::vector<int>& counts() const { return counts_; }

    /// Product of the factorials of the counts.
    double factorial_product() const;

    /// Sub-vector over the given 0-based modes, in the given order.
    OccupationVector restrict_to(const std::vector<int>& modes) const;

    /// Written as a ket, e.g. "|1011010110>".
    std::string to_string() const;

    bool operator==(const OccupationVector& other) const { return counts_ == other.counts_; }
    std::strong_ordering operator<=>(const OccupationVector& other) const {
        return counts_ <=> other.counts_;
    }

   private:
    std::vector<int> counts_;
    int total_ = 0;
};

struct OccupationHash {
    std::size_t operator()(const OccupationVector& occ) const noexcept;
};

/// C(n+m-1, n), or SIZE_MAX if it does not fit.
std::size_t basis_size(int n_photons, int n_modes);

/// All n-photon occupations of m modes in canonical (descending
/// lexicographic) order. Throws CapacityError above `cap` states.
std::vector<OccupationVector> enumerate_basis(int n_photons, int n_modes,
                                              std::size_t cap = kDefaultBasisCap);

/// An immutable ordered list of distinct occupation vectors over a common
/// mode count, with index lookup. Shared between states.
class FockBasis {
   public:
    static std::shared_ptr<const FockBasis> make(std::vector<OccupationVector> states);
    static std::shared_ptr<const FockBasis> sector(int n_photons, int n_modes,
                                                   std::size_t cap = kDefaultBasisCap);

    std::size_t size() const { return states_.size(); }
    std::size_t n_modes() const { return n_modes_; }
    const OccupationVector& operator[](std::size_t i) const { return states_[i]; }
    const std::vector<OccupationVector>& states() const { return states_; }
    std::optional<std::size_t> find(const OccupationVector& occ) const;

    /// Photon number shared by all states, if any.
    std::optional<int> photon_number() const;

   private:
    FockBasis() = default;
    std::vector<OccupationVector> states_;
    std::unordered_map<OccupationVector, std::size_t, OccupationHash> index_;
    std::size_t n_modes_ = 0;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Normalized pure state over a fixed-photon-number basis.
class PureState {
   public:
    /// Normalizes `amplitudes`. Throws ArgumentError on size mismatch or
    /// mixed photon numbers, DegenerateInputError on a zero vector.
    PureState(BasisPtr basis, Vector amplitudes);

    const FockBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(const OccupationVector& occ) const;
    int n_photons() const { return n_photons_; }
    std::size_t n_modes() const { return basis_->n_modes(); }

   private:
    BasisPtr basis_;
    Vector amplitudes_;
    int n_photons_ = 0;
};

struct DensityCheck {
    double hermiticity_error = 0.0;  // max |rho - rho^dagger|
    double trace = 0.0;
    double min_eigenvalue = 0.0;
    bool ok(double tol = 1e-9, bool expect_unit_trace = true) const;
};

/// Hermitian operator on an ordered Fock basis. The basis may mix photon
/// numbers (e.g. after loss), but all states share one mode count.
class DensityOperator {
   public:
    /// Throws ArgumentError if the matrix is not square, does not match the
    /// basis, or is not Hermitian within 1e-9. The stored matrix is
    /// symmetrized.
    DensityOperator(BasisPtr basis, Matrix matrix);

    static DensityOperator from_pure(const PureState& psi);

    const FockBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const Matrix& matrix() const { return matrix_; }
    Complex element(const OccupationVector& row, const OccupationVector& col) const;
    double trace() const;
    DensityOperator normalized() const;
    DensityCheck check() const;

   private:
    BasisPtr basis_;
    Matrix matrix_;
};

/// Dual-rail qubit register. Qubit k lives on the mode pair (a_k, b_k):
/// logical 0 is a photon in a_k, logical 1 a photon in b_k.
class DualRailRegister {
   public:
    /// Pairs given with 1-based mode indices.
    static DualRailRegister from_one_based(const std::vector<std::pair<int, int>>& pairs);
    /// ((1,2),(3,4),(5,6)).
    static DualRailRegister standard(int n_qubits = 3);

    std::size_t n_qubits() const { return pairs_.size(); }
    /// 0-based pairs.
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    /// Largest 0-based mode used, plus one.
    int mode_span() const;

    /// Bitstring (qubit 1 first) if every pair holds exactly one photon.
    std::optional<std::string> decode(const OccupationVector& occ) const;
    OccupationVector encode(std::string_view bits, int n_modes) const;
    /// Photon count per pair.
    std::vector<int> pair_counts(const OccupationVector& occ) const;

   private:
    std::vector<std::pair<int, int>> pairs_;
};

/// <target| rho |target>. Target states are looked up in rho's basis by
/// occupation; a target component missing from rho's basis is an error.
double fidelity(const DensityOperator& rho, const PureState& target);

/// (|0...0> + |1...1>)/sqrt(2) on the register, as a Fock state.
PureState ghz_state(const DualRailRegister& reg, int n_modes);

}  // namespace heraldsim

#endif  // HERALDSIM_FOCK_HPP
