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


// Reference implementations used only by the tests. They share no code
// with the library kernels: second-quantized creation-operator algebra,
// first-quantized wavefunctions and exhaustive enumeration.

#ifndef HERALDSIM_TESTS_ORACLES_HPP
#define HERALDSIM_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Occ = std::vector<int>;
using FockMap = std::map<Occ, Complex>;

inline Matrix random_complex(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline Matrix random_unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_complex(n, rng));
    return qr.householderQ() * Matrix::Identity(n, n);
}

// Every occupation of n photons in m modes, placing photons mode by mode.
inline void place(int left, std::size_t mode, Occ& c, std::vector<Occ>& out) {
    if (mode + 1 == c.size()) {
        c[mode] = left;
        out.push_back(c);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        c[mode] = k;
        place(left - k, mode + 1, c, out);
    }
}

inline std::vector<Occ> all_occupations(int n, int m) {
    std::vector<Occ> out;
    Occ c(static_cast<std::size_t>(m), 0);
    place(n, 0, c, out);
    return out;
}

inline double fact(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// a^dagger_j |x> = sqrt(x_j + 1) |x + e_j>.
inline FockMap create(const FockMap& s, int mode) {
    FockMap out;
    for (const auto& [occ, a] : s) {
        Occ t = occ;
        ++t[static_cast<std::size_t>(mode)];
        out[t] += a * std::sqrt(static_cast<double>(t[static_cast<std::size_t>(mode)]));
    }
    return out;
}

// U|s> by expanding prod_j (a_j^dagger)^{s_j} / sqrt(s_j!) with
// a_j^dagger -> sum_i U(i, j) a_i^dagger.
inline FockMap evolve_by_creation(const Matrix& u, const Occ& s) {
    const int m = static_cast<int>(u.rows());
    FockMap state{{Occ(static_cast<std::size_t>(m), 0), 1.0}};
    double norm = 1.0;
    for (int j = 0; j < m; ++j) {
        for (int c = 0; c < s[static_cast<std::size_t>(j)]; ++c) {
            FockMap next;
            for (int i = 0; i < m; ++i) {
                if (u(i, j) == Complex{}) continue;
                for (const auto& [occ, a] : create(state, i)) next[occ] += u(i, j) * a;
            }
            state = std::move(next);
        }
        norm *= fact(s[static_cast<std::size_t>(j)]);
    }
    for (auto& [occ, a] : state) a /= std::sqrt(norm);
    return state;
}

// Mode-occupation probabilities of photons with internal states through u,
// from the symmetrized first-quantized wavefunction
//   Psi(k, l) ~ sum_sigma prod_p U(k_p, mode_sigma(p)) psi_sigma(p)(l_p).
inline std::map<Occ, double> first_quantized_probabilities(const Matrix& u, const std::vector<int>& modes0,
                                                           const std::vector<Eigen::VectorXcd>& internal) {
    const int n = static_cast<int>(modes0.size());
    const int m = static_cast<int>(u.rows());
    const int d = static_cast<int>(internal.front().size());
    const int single = m * d;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::map<Occ, double> prob;
    double total = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Complex psi{};
        for (const auto& sg : perms) {
            Complex term = 1.0;
            for (int p = 0; p < n; ++p) {
                const int k = idx[static_cast<std::size_t>(p)] / d;
                const int l = idx[static_cast<std::size_t>(p)] % d;
                const int src = sg[static_cast<std::size_t>(p)];
                term *= u(k, modes0[static_cast<std::size_t>(src)]) * internal[static_cast<std::size_t>(src)](l);
            }
            psi += term;
        }
        const double w = std::norm(psi);
        Occ x(static_cast<std::size_t>(m), 0);
        for (int p = 0; p < n; ++p) ++x[static_cast<std::size_t>(idx[static_cast<std::size_t>(p)] / d)];
        prob[x] += w;
        total += w;
        int k = 0;
        while (k < n && idx[static_cast<std::size_t>(k)] == single - 1) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
        ++idx[static_cast<std::size_t>(k)];
    }
    for (auto& [x, p] : prob) p /= total;
    return prob;
}

// 2^k x 2^k GHZ-family density matrix (|0..0> + e^{i phi}|1..1>)/sqrt(2).
inline Matrix ghz_rho(int k, double phi = 0.0) {
    const int dim = 1 << k;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(dim - 1) = std::polar(1.0 / std::sqrt(2.0), phi);
    return v * v.adjoint();
}

// Pauli-string expectation by explicit Kronecker products.
inline Matrix kron_power(const Eigen::Matrix2cd& a, int k) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < k; ++q) {
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * a;
        out = next;
    }
    return out;
}

inline Eigen::Matrix2cd m_theta(double theta) {
    Eigen::Matrix2cd m;
    m << 0.0, std::polar(1.0, -theta), std::polar(1.0, theta), 0.0;
    return m;
}

}  // namespace oracle

#endif  // HERALDSIM_TESTS_ORACLES_HPP
