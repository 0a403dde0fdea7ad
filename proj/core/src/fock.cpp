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

#include "heraldsim/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "heraldsim/error.hpp"

namespace heraldsim {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) throw ArgumentError("occupation counts must be non-negative");
        total_ += c;
    }
}

OccupationVector::OccupationVector(std::initializer_list<int> counts)
    : OccupationVector(std::vector<int>(counts)) {}

double OccupationVector::factorial_product() const {
    double out = 1.0;
    for (int c : counts_) {
        for (int k = 2; k <= c; ++k) out *= k;
    }
    return out;
}

OccupationVector OccupationVector::restrict_to(const std::vector<int>& modes) const {
    std::vector<int> sub;
    sub.reserve(modes.size());
    for (int m : modes) {
        if (m < 0 || static_cast<std::size_t>(m) >= counts_.size()) {
            throw ArgumentError("mode index out of range");
        }
        sub.push_back(counts_[m]);
    }
    return OccupationVector(std::move(sub));
}

std::string OccupationVector::to_string() const {
    std::string s = "|";
    bool wide = std::any_of(counts_.begin(), counts_.end(), [](int c) { return c > 9; });
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (wide && i > 0) s += ',';
        s += std::to_string(counts_[i]);
    }
    s += '>';
    return s;
}

std::size_t OccupationHash::operator()(const OccupationVector& occ) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int c : occ.counts()) {
        h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t basis_size(int n_photons, int n_modes) {
    if (n_photons < 0 || n_modes < 1) throw ArgumentError("need n_photons >= 0 and n_modes >= 1");
    // C(n+m-1, k) with k = min(n, m-1), multiplicative form stays integral.
    const unsigned long long top = static_cast<unsigned long long>(n_photons) + n_modes - 1;
    unsigned long long k = std::min<unsigned long long>(n_photons, n_modes - 1);
    unsigned long long result = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        const unsigned long long num = top - k + i;
        if (result > std::numeric_limits<unsigned long long>::max() / num) {
            return std::numeric_limits<std::size_t>::max();
        }
        result = result * num / i;
    }
    return static_cast<std::size_t>(result);
}

namespace {

void fill_descending(int remaining, std::size_t mode, std::vector<int>& current,
                     std::vector<OccupationVector>& out) {
    if (mode + 1 == current.size()) {
        current[mode] = remaining;
        out.emplace_back(current);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        current[mode] = c;
        fill_descending(remaining - c, mode + 1, current, out);
    }
    current[mode] = 0;
}

}  // namespace

std::vector<OccupationVector> enumerate_basis(int n_photons, int n_modes, std::size_t cap) {
    const std::size_t size = basis_size(n_photons, n_modes);
    if (size > cap) {
        throw CapacityError("basis of " + std::to_string(n_photons) + " photons in " +
                            std::to_string(n_modes) + " modes exceeds cap " + std::to_string(cap));
    }
    std::vector<OccupationVector> out;
    out.reserve(size);
    std::vector<int> current(static_cast<std::size_t>(n_modes), 0);
    fill_descending(n_photons, 0, current, out);
    return out;
}

std::shared_ptr<const FockBasis> FockBasis::make(std::vector<OccupationVector> states) {
    auto basis = std::shared_ptr<FockBasis>(new FockBasis());
    basis->n_modes_ = states.empty() ? 0 : states.front().n_modes();
    basis->index_.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].n_modes() != basis->n_modes_) {
            throw ArgumentError("basis states must share one mode count");
        }
        if (!basis->index_.emplace(states[i], i).second) {
            throw ArgumentError("duplicate basis state " + states[i].to_string());
        }
    }
    basis->states_ = std::move(states);
    return basis;
}

std::shared_ptr<const FockBasis> FockBasis::sector(int n_photons, int n_modes, std::size_t cap) {
    return make(enumerate_basis(n_photons, n_modes, cap));
}

std::optional<std::size_t> FockBasis::find(const OccupationVector& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FockBasis::photon_number() const {
    if (states_.empty()) return std::nullopt;
    const int n = states_.front().total_photons();
    for (const auto& s : states_) {
        if (s.total_photons() != n) return std::nullopt;
    }
    return n;
}

PureState::PureState(BasisPtr basis, Vector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_ || static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
        throw ArgumentError("amplitude vector does not match basis size");
    }
    auto n = basis_->photon_number();
    if (!n) throw ArgumentError("pure state basis must have a single photon number");
    n_photons_ = *n;
    const double norm = amplitudes_.norm();
    if (norm == 0.0) throw DegenerateInputError("cannot normalize a zero state");
    amplitudes_ /= norm;
}

Complex PureState::amplitude(const OccupationVector& occ) const {
    auto i = basis_->find(occ);
    return i ? amplitudes_[static_cast<Eigen::Index>(*i)] : Complex{};
}

bool DensityCheck::ok(double tol, bool expect_unit_trace) const {
    if (hermiticity_error > tol) return false;
    if (expect_unit_trace && std::abs(trace - 1.0) > tol) return false;
    return min_eigenvalue >= -tol;
}

DensityOperator::DensityOperator(BasisPtr basis, Matrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    if (!basis_ || matrix_.rows() != matrix_.cols() ||
        static_cast<std::size_t>(matrix_.rows()) != basis_->size()) {
        throw ArgumentError("density matrix does not match basis size");
    }
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (matrix_.size() > 0 && herm > 1e-9) {
        throw ArgumentError("density matrix is not Hermitian");
    }
    Matrix sym = (matrix_ + matrix_.adjoint()) * 0.5;
    matrix_ = std::move(sym);
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const Vector& a = psi.amplitudes();
    return DensityOperator(psi.basis_ptr(), a * a.adjoint());
}

Complex DensityOperator::element(const OccupationVector& row, const OccupationVector& col) const {
    auto i = basis_->find(row);
    auto j = basis_->find(col);
    if (!i || !j) return Complex{};
    return matrix_(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

DensityOperator DensityOperator::normalized() const {
    const double t = trace();
    if (!(t > 0.0)) throw DegenerateInputError("density operator has zero trace");
    return DensityOperator(basis_, matrix_ / t);
}

DensityCheck DensityOperator::check() const {
    DensityCheck c;
    if (matrix_.size() == 0) return c;
    c.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    c.trace = trace();
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

DualRailRegister DualRailRegister::from_one_based(const std::vector<std::pair<int, int>>& pairs) {
    DualRailRegister reg;
    std::set<int> seen;
    for (auto [a, b] : pairs) {
        if (a < 1 || b < 1) throw ArgumentError("dual-rail modes are 1-based and positive");
        if (a == b) throw ArgumentError("dual-rail pair needs two distinct modes");
        if (!seen.insert(a).second || !seen.insert(b).second) {
            throw ArgumentError("dual-rail pairs must be disjoint");
        }
        reg.pairs_.emplace_back(a - 1, b - 1);
    }
    return reg;
}

DualRailRegister DualRailRegister::standard(int n_qubits) {
    std::vector<std::pair<int, int>> pairs;
    for (int q = 0; q < n_qubits; ++q) pairs.emplace_back(2 * q + 1, 2 * q + 2);
    return from_one_based(pairs);
}

int DualRailRegister::mode_span() const {
    int span = 0;
    for (auto [a, b] : pairs_) span = std::max({span, a + 1, b + 1});
    return span;
}

std::optional<std::string> DualRailRegister::decode(const OccupationVector& occ) const {
    if (static_cast<std::size_t>(mode_span()) > occ.n_modes()) {
        throw ArgumentError("register mode out of range for occupation " + occ.to_string());
    }
    std::string bits;
    bits.reserve(pairs_.size());
    for (auto [a, b] : pairs_) {
        if (occ[a] == 1 && occ[b] == 0) {
            bits += '0';
        } else if (occ[a] == 0 && occ[b] == 1) {
            bits += '1';
        } else {
            return std::nullopt;
        }
    }
    return bits;
}

OccupationVector DualRailRegister::encode(std::string_view bits, int n_modes) const {
    if (bits.size() != pairs_.size()) throw ArgumentError("bitstring length != qubit count");
    if (mode_span() > n_modes) throw ArgumentError("register does not fit in mode count");
    std::vector<int> counts(static_cast<std::size_t>(n_modes), 0);
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '0') {
            counts[pairs_[q].first] = 1;
        } else if (bits[q] == '1') {
            counts[pairs_[q].second] = 1;
        } else {
            throw ArgumentError("bitstring must contain only 0 and 1");
        }
    }
    return OccupationVector(std::move(counts));
}

std::vector<int> DualRailRegister::pair_counts(const OccupationVector& occ) const {
    std::vector<int> out;
    out.reserve(pairs_.size());
    for (auto [a, b] : pairs_) out.push_back(occ[a] + occ[b]);
    return out;
}

double fidelity(const DensityOperator& rho, const PureState& target) {
    if (rho.basis().n_modes() != target.n_modes()) {
        throw ArgumentError("fidelity: mode count mismatch");
    }
    const FockBasis& tb = target.basis();
    std::vector<std::pair<Eigen::Index, Complex>> support;
    for (std::size_t i = 0; i < tb.size(); ++i) {
        const Complex a = target.amplitudes()[static_cast<Eigen::Index>(i)];
        if (a == Complex{}) continue;
        auto j = rho.basis().find(tb[i]);
        if (!j) throw ArgumentError("fidelity: target state " + tb[i].to_string() + " not in rho basis");
        support.emplace_back(static_cast<Eigen::Index>(*j), a);
    }
    Complex f{};
    for (auto [r, ar] : support) {
        for (auto [c, ac] : support) f += std::conj(ar) * rho.matrix()(r, c) * ac;
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

PureState ghz_state(const DualRailRegister& reg, int n_modes) {
    const std::string zeros(reg.n_qubits(), '0');
    const std::string ones(reg.n_qubits(), '1');
    auto basis = FockBasis::make({reg.encode(zeros, n_modes), reg.encode(ones, n_modes)});
    Vector amps(2);
    amps << 1.0, 1.0;
    return PureState(basis, amps);
}

}  // namespace heraldsim
