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

#include "heraldsim/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "heraldsim/error.hpp"

namespace heraldsim {

namespace {

void check_modes(const Matrix& u, const OccupationVector& occ, const char* who) {
    if (u.rows() != u.cols()) throw ArgumentError(std::string(who) + ": unitary must be square");
    if (occ.n_modes() != static_cast<std::size_t>(u.rows())) {
        throw ArgumentError(std::string(who) + ": occupation has " + std::to_string(occ.n_modes()) +
                            " modes, unitary has " + std::to_string(u.rows()));
    }
}

// Sub-matrix U[rows, cols] with repetition.
Matrix gather(const Matrix& u, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < cols.size(); ++k) m(i, k) = u(rows[i], cols[k]);
    }
    return m;
}

// Unnormalized amplitudes <t|U|s> over the sector basis.
Vector raw_amplitudes(const Matrix& u, const OccupationVector& s, const FockBasis& basis, int cap) {
    const std::vector<int> cols = photon_rows(s);
    const double s_fact = s.factorial_product();
    Vector amps(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const OccupationVector& t = basis[i];
        amps[static_cast<Eigen::Index>(i)] =
            permanent(gather(u, photon_rows(t), cols), cap) / std::sqrt(s_fact * t.factorial_product());
    }
    return amps;
}

OccupationVector add(const OccupationVector& a, const OccupationVector& b) {
    std::vector<int> c = a.counts();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return OccupationVector(std::move(c));
}

// Ascending photon number, then descending lexicographic.
bool output_order(const OccupationVector& a, const OccupationVector& b) {
    if (a.total_photons() != b.total_photons()) return a.total_photons() < b.total_photons();
    return b < a;
}

// Norm of prod_k a^dagger_{m_k}(psi_k)|0>: product over input modes of the
// permanent of the Gram block of the photons sharing that mode.
double input_norm(const std::vector<int>& modes0, const Matrix& gram) {
    std::map<int, std::vector<int>> by_mode;
    for (std::size_t k = 0; k < modes0.size(); ++k) by_mode[modes0[k]].push_back(static_cast<int>(k));
    double norm = 1.0;
    for (const auto& [mode, idx] : by_mode) {
        if (idx.size() == 1) continue;
        norm *= permanent(gather(gram, idx, idx)).real();
    }
    return norm;
}

}  // namespace

std::vector<int> photon_rows(const OccupationVector& occ) {
    std::vector<int> rows;
    rows.reserve(static_cast<std::size_t>(occ.total_photons()));
    for (std::size_t m = 0; m < occ.n_modes(); ++m) {
        for (int c = 0; c < occ[m]; ++c) rows.push_back(static_cast<int>(m));
    }
    return rows;
}

Complex transition_amplitude(const Matrix& u, const OccupationVector& s, const OccupationVector& t, int cap) {
    check_modes(u, s, "transition_amplitude");
    check_modes(u, t, "transition_amplitude");
    if (s.total_photons() != t.total_photons()) {
        throw ArgumentError("transition_amplitude: photon numbers differ (" + std::to_string(s.total_photons()) +
                            " vs " + std::to_string(t.total_photons()) + ")");
    }
    const Matrix m = gather(u, photon_rows(t), photon_rows(s));
    return permanent(m, cap) / std::sqrt(s.factorial_product() * t.factorial_product());
}

PureState evolve_pure(const Matrix& u, const OccupationVector& input, const EvolutionLimits& limits) {
    check_modes(u, input, "evolve_pure");
    if (input.total_photons() > limits.max_permanent) {
        throw CapacityError("evolve_pure: " + std::to_string(input.total_photons()) +
                            " photons exceed permanent cap " + std::to_string(limits.max_permanent));
    }
    auto basis = FockBasis::sector(input.total_photons(), static_cast<int>(u.rows()), limits.max_basis);
    Vector amps = raw_amplitudes(u, input, *basis, limits.max_permanent);
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw ArgumentError("evolve_pure: output norm " + std::to_string(norm2) + " (matrix not unitary?)");
    }
    return PureState(std::move(basis), std::move(amps));
}

SourceModel::SourceModel(std::vector<SourcePhoton> photons, double p2, int max_extra)
    : photons_(std::move(photons)), p2_(p2), max_extra_(max_extra) {
    if (!(p2 >= 0.0 && p2 < 1.0)) throw ArgumentError("contamination probability must lie in [0, 1)");
    if (max_extra < 0) throw ArgumentError("max_extra must be non-negative");
    Eigen::Index dim = 1;
    for (const auto& p : photons_) {
        if (p.mode < 1) throw ArgumentError("source modes are 1-based");
        dim = std::max(dim, p.internal.size());
    }
    for (auto& p : photons_) {
        if (p.internal.size() == 0) throw ArgumentError("internal state must be non-empty");
        if (std::abs(p.internal.norm() - 1.0) > 1e-9) throw ArgumentError("internal states must be unit vectors");
        if (p.internal.size() < dim) {
            Vector padded = Vector::Zero(dim);
            padded.head(p.internal.size()) = p.internal;
            p.internal = std::move(padded);
        }
    }
}

SourceModel SourceModel::indistinguishable(const OccupationVector& input) {
    std::vector<SourcePhoton> photons;
    Vector xi0 = Vector::Zero(1);
    xi0[0] = 1.0;
    for (int row : photon_rows(input)) photons.push_back({row + 1, xi0});
    return SourceModel(std::move(photons));
}

SourceModel SourceModel::from_visibility_factors(const std::vector<int>& modes, const std::vector<double>& v) {
    if (modes.size() != v.size()) throw ArgumentError("one visibility factor per photon");
    const Eigen::Index dim = static_cast<Eigen::Index>(modes.size()) + 1;
    std::vector<SourcePhoton> photons;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        if (!(v[k] >= 0.0 && v[k] <= 1.0)) throw ArgumentError("visibility factors must lie in [0, 1]");
        Vector psi = Vector::Zero(dim);
        psi[0] = std::sqrt(v[k]);
        psi[static_cast<Eigen::Index>(k) + 1] = std::sqrt(1.0 - v[k]);
        photons.push_back({modes[k], std::move(psi)});
    }
    return SourceModel(std::move(photons));
}

SourceModel SourceModel::from_gram(const std::vector<int>& modes, const Matrix& gram) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    if (gram.rows() != n || gram.cols() != n) throw ArgumentError("Gram matrix must be n x n");
    if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw ArgumentError("Gram matrix is not Hermitian");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(gram(i, i) - 1.0) > 1e-9) throw ArgumentError("Gram matrix needs a unit diagonal");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) * 0.5);
    if (es.eigenvalues().minCoeff() < -1e-9) throw ArgumentError("Gram matrix is not positive semidefinite");
    // Columns of sqrt(D) V^dagger have Gram matrix V D V^dagger.
    const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix x = d.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<SourcePhoton> photons;
    for (Eigen::Index k = 0; k < n; ++k) {
        Vector psi = x.col(k);
        psi /= psi.norm();
        photons.push_back({modes[static_cast<std::size_t>(k)], std::move(psi)});
    }
    return SourceModel(std::move(photons));
}

std::size_t SourceModel::internal_dim() const {
    return photons_.empty() ? 0 : static_cast<std::size_t>(photons_.front().internal.size());
}

SourceModel SourceModel::with_contamination(double p2, int max_extra) const {
    return SourceModel(photons_, p2, max_extra);
}

Matrix SourceModel::gram() const {
    const auto n = static_cast<Eigen::Index>(photons_.size());
    Matrix s(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            s(i, j) = photons_[static_cast<std::size_t>(i)].internal.dot(photons_[static_cast<std::size_t>(j)].internal);
        }
    }
    return s;
}

std::vector<int> SourceModel::modes0() const {
    std::vector<int> m;
    for (const auto& p : photons_) m.push_back(p.mode - 1);
    return m;
}

OccupationVector SourceModel::occupation(int n_modes) const {
    std::vector<int> counts(static_cast<std::size_t>(n_modes), 0);
    for (const auto& p : photons_) {
        if (p.mode > n_modes) throw ArgumentError("source mode outside circuit");
        ++counts[static_cast<std::size_t>(p.mode - 1)];
    }
    return OccupationVector(std::move(counts));
}

std::vector<std::pair<double, SourceModel>> SourceModel::contamination_terms() const {
    if (p2_ == 0.0 || max_extra_ == 0) return {{1.0, SourceModel(photons_)}};
    const int n = static_cast<int>(photons_.size());
    const int k_max = std::min(max_extra_, n);
    const auto dim = static_cast<Eigen::Index>(internal_dim());
    std::vector<std::pair<double, SourceModel>> terms;
    double kept = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        const double w = std::pow(p2_, k) * std::pow(1.0 - p2_, n - k);
        // Subsets of size k in lexicographic order.
        std::vector<bool> mask(static_cast<std::size_t>(n), false);
        std::fill(mask.begin(), mask.begin() + k, true);
        do {
            std::vector<SourcePhoton> ph;
            for (const auto& p : photons_) {
                Vector psi = Vector::Zero(dim + k);
                psi.head(dim) = p.internal;
                ph.push_back({p.mode, std::move(psi)});
            }
            int extra = 0;
            for (int s = 0; s < n; ++s) {
                if (!mask[static_cast<std::size_t>(s)]) continue;
                Vector psi = Vector::Zero(dim + k);
                psi[dim + extra] = 1.0;
                ph.push_back({photons_[static_cast<std::size_t>(s)].mode, std::move(psi)});
                ++extra;
            }
            terms.emplace_back(w, SourceModel(std::move(ph)));
            kept += w;
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    for (auto& t : terms) t.first /= kept;
    return terms;
}

double OutputDistribution::probability(const OccupationVector& occ) const {
    auto it = std::lower_bound(outcomes.begin(), outcomes.end(), occ, output_order);
    if (it == outcomes.end() || !(*it == occ)) return 0.0;
    return probabilities[static_cast<std::size_t>(it - outcomes.begin())];
}

double OutputDistribution::total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

namespace {

using ProbMap = std::map<OccupationVector, double>;

// Label-sector expansion of one contamination-free configuration. Adds
// weight * P(x) into `out`.
void accumulate_labels(const Matrix& u, const SourceModel& src, double weight, const EvolutionLimits& limits,
                       ProbMap& out) {
    const int n_modes = static_cast<int>(u.rows());
    const auto& photons = src.photons();
    const std::size_t n = photons.size();
    const auto dim = static_cast<int>(src.internal_dim());

    // Nonzero internal components per photon.
    std::vector<std::vector<std::pair<int, Complex>>> comps(n);
    double n_assign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (int l = 0; l < dim; ++l) {
            const Complex c = photons[k].internal[l];
            if (c != Complex{}) comps[k].emplace_back(l, c);
        }
        n_assign *= static_cast<double>(comps[k].size());
    }
    if (n_assign > static_cast<double>(limits.max_label_assignments)) {
        throw CapacityError("evolve_distinguishable: " + std::to_string(n_assign) + " label assignments exceed cap");
    }

    // Group assignments by label-count vector; members of one group interfere.
    struct Assignment {
        std::vector<int> labels;
        Complex coef;
    };
    std::map<std::vector<int>, std::vector<Assignment>> groups;
    std::vector<std::size_t> digit(n, 0);
    while (true) {
        Assignment a;
        a.coef = 1.0;
        std::vector<int> key(static_cast<std::size_t>(dim), 0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& [l, c] = comps[k][digit[k]];
            a.labels.push_back(l);
            a.coef *= c;
            ++key[static_cast<std::size_t>(l)];
        }
        groups[key].push_back(std::move(a));
        std::size_t k = 0;
        while (k < n && ++digit[k] == comps[k].size()) digit[k++] = 0;
        if (k == n) break;
    }

    const double norm = input_norm(src.modes0(), src.gram());

    // Input occupation of label l under assignment a.
    auto label_input = [&](const Assignment& a, int l) {
        std::vector<int> counts(static_cast<std::size_t>(n_modes), 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (a.labels[k] == l) ++counts[static_cast<std::size_t>(photons[k].mode - 1)];
        }
        return OccupationVector(std::move(counts));
    };

    std::map<OccupationVector, ProbMap> single_cache;
    for (const auto& [key, members] : groups) {
        std::vector<int> used;
        for (int l = 0; l < dim; ++l) {
            if (key[static_cast<std::size_t>(l)] > 0) used.push_back(l);
        }
        if (members.size() == 1) {
            // Product state across labels: convolve per-label distributions.
            const Assignment& a = members.front();
            double w = std::norm(a.coef);
            ProbMap acc{{OccupationVector(std::vector<int>(static_cast<std::size_t>(n_modes), 0)), 1.0}};
            for (int l : used) {
                const OccupationVector s = label_input(a, l);
                w *= s.factorial_product();
                auto it = single_cache.find(s);
                if (it == single_cache.end()) {
                    auto basis = FockBasis::sector(s.total_photons(), n_modes, limits.max_basis);
                    const Vector amps = raw_amplitudes(u, s, *basis, limits.max_permanent);
                    ProbMap dist;
                    for (std::size_t i = 0; i < basis->size(); ++i) {
                        const double p = std::norm(amps[static_cast<Eigen::Index>(i)]);
                        if (p > 0.0) dist.emplace((*basis)[i], p);
                    }
                    it = single_cache.emplace(s, std::move(dist)).first;
                }
                ProbMap next;
                for (const auto& [x, p] : acc) {
                    for (const auto& [y, q] : it->second) next[add(x, y)] += p * q;
                }
                acc = std::move(next);
            }
            for (const auto& [x, p] : acc) out[x] += weight * w * p / norm;
            continue;
        }
        // Coherent group: enumerate label-resolved outputs explicitly.
        std::vector<BasisPtr> bases;
        for (int l : used) {
            bases.push_back(FockBasis::sector(key[static_cast<std::size_t>(l)], n_modes, limits.max_basis));
        }
        // amp[a][j] = sqrt(s!) <y|U|s> per label j of assignment a.
        std::vector<std::vector<Vector>> amps(members.size());
        for (std::size_t ai = 0; ai < members.size(); ++ai) {
            for (std::size_t j = 0; j < used.size(); ++j) {
                const OccupationVector s = label_input(members[ai], used[j]);
                amps[ai].push_back(raw_amplitudes(u, s, *bases[j], limits.max_permanent) *
                                   std::sqrt(s.factorial_product()));
            }
        }
        std::vector<std::size_t> idx(used.size(), 0);
        while (true) {
            Complex amp{};
            for (std::size_t ai = 0; ai < members.size(); ++ai) {
                Complex term = members[ai].coef;
                for (std::size_t j = 0; j < used.size(); ++j) term *= amps[ai][j][static_cast<Eigen::Index>(idx[j])];
                amp += term;
            }
            const double p = std::norm(amp);
            if (p > 0.0) {
                OccupationVector x = (*bases[0])[idx[0]];
                for (std::size_t j = 1; j < used.size(); ++j) x = add(x, (*bases[j])[idx[j]]);
                out[x] += weight * p / norm;
            }
            std::size_t j = 0;
            while (j < used.size() && ++idx[j] == bases[j]->size()) idx[j++] = 0;
            if (j == used.size()) break;
        }
    }
}

bool all_same_internal(const SourceModel& src) {
    const auto& ph = src.photons();
    for (std::size_t k = 1; k < ph.size(); ++k) {
        if (std::abs(std::abs(ph[k].internal.dot(ph[0].internal)) - 1.0) > 1e-15) return false;
    }
    return true;
}

}  // namespace

OutputDistribution evolve_distinguishable(const Matrix& u, const SourceModel& src, const EvolutionLimits& limits) {
    if (u.rows() != u.cols()) throw ArgumentError("evolve_distinguishable: unitary must be square");
    const int n_modes = static_cast<int>(u.rows());
    for (const auto& p : src.photons()) {
        if (p.mode > n_modes) throw ArgumentError("evolve_distinguishable: source mode outside circuit");
    }
    const auto terms = src.contamination_terms();
    OutputDistribution dist;

    if (terms.size() == 1 && all_same_internal(terms.front().second)) {
        const PureState psi = evolve_pure(u, terms.front().second.occupation(n_modes), limits);
        for (std::size_t i = 0; i < psi.basis().size(); ++i) {
            dist.outcomes.push_back(psi.basis()[i]);
            dist.probabilities.push_back(std::norm(psi.amplitudes()[static_cast<Eigen::Index>(i)]));
        }
        dist.amplitudes = psi.amplitudes();
        return dist;
    }

    ProbMap acc;
    for (const auto& [w, term] : terms) accumulate_labels(u, term, w, limits, acc);
    std::vector<std::pair<OccupationVector, double>> items(acc.begin(), acc.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return output_order(a.first, b.first); });
    for (auto& [x, p] : items) {
        dist.outcomes.push_back(x);
        dist.probabilities.push_back(p);
    }
    return dist;
}

PairingEngine::PairingEngine(Matrix u, std::vector<int> modes0, const Matrix& gram, const EvolutionLimits& limits)
    : u_(std::move(u)), modes0_(std::move(modes0)), cap_(limits.max_permanent) {
    const auto n = static_cast<int>(modes0_.size());
    if (gram.rows() != n || gram.cols() != n) throw ArgumentError("PairingEngine: Gram matrix must be n x n");
    if (n > limits.max_permanent) throw CapacityError("PairingEngine: photon number exceeds permanent cap");
    for (int m : modes0_) {
        if (m < 0 || m >= u_.cols()) throw ArgumentError("PairingEngine: input mode out of range");
    }
    norm_ = input_norm(modes0_, gram);
    coherent_ = n == 0 || (gram.array() - Complex(1.0, 0.0)).abs().maxCoeff() < 1e-15;
    if (coherent_) return;
    if (n > limits.max_pairing_photons) {
        throw CapacityError("PairingEngine: " + std::to_string(n) + " distinguishable photons exceed pairing cap " +
                            std::to_string(limits.max_pairing_photons));
    }
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        Complex w{1.0, 0.0};
        for (int k = 0; k < n && w != Complex{}; ++k) w *= gram(sigma[static_cast<std::size_t>(k)], k);
        if (w != Complex{}) pairings_.emplace_back(sigma, w);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

Complex PairingEngine::element(const std::vector<int>& rows, const std::vector<int>& rows_prime,
                               double multiplicity) const {
    const std::size_t n = modes0_.size();
    if (rows.size() != n || rows_prime.size() != n) throw ArgumentError("PairingEngine: slot count != photon number");
    if (n == 0) return 1.0 / norm_;
    const Matrix a = gather(u_, rows, modes0_);
    const Matrix b = gather(u_, rows_prime, modes0_);
    if (coherent_) return permanent(a, cap_) * std::conj(permanent(b, cap_)) / (multiplicity * norm_);
    const auto ni = static_cast<Eigen::Index>(n);
    Matrix c(ni, ni);
    Complex total{};
    for (const auto& [sigma, w] : pairings_) {
        for (Eigen::Index k = 0; k < ni; ++k) {
            const Eigen::Index sk = sigma[static_cast<std::size_t>(k)];
            for (Eigen::Index i = 0; i < ni; ++i) c(i, k) = a(i, k) * std::conj(b(i, sk));
        }
        total += w * permanent(c, cap_);
    }
    return total / (multiplicity * norm_);
}

double PairingEngine::probability(const OccupationVector& x) const {
    if (x.n_modes() != static_cast<std::size_t>(u_.rows())) throw ArgumentError("PairingEngine: mode count mismatch");
    if (static_cast<std::size_t>(x.total_photons()) != modes0_.size()) return 0.0;
    const auto rows = photon_rows(x);
    return element(rows, rows, x.factorial_product()).real();
}

double g2_from_contamination(double p2) {
    if (!(p2 >= 0.0 && p2 < 1.0)) throw ArgumentError("p2 must lie in [0, 1)");
    return 2.0 * p2 / ((1.0 + p2) * (1.0 + p2));
}

double contamination_from_g2(double g2) {
    // g2 = 2 p2 / (1 + p2)^2 reaches 1/2 only at p2 = 1.
    if (!(g2 >= 0.0 && g2 < 0.5)) throw ArgumentError("g2 must lie in [0, 0.5)");
    if (g2 == 0.0) return 0.0;
    // g2 p^2 + (2 g2 - 2) p + g2 = 0, smaller root in stable form.
    const double b = 2.0 - 2.0 * g2;
    const double disc = b * b - 4.0 * g2 * g2;
    return 2.0 * g2 / (b + std::sqrt(disc));
}

namespace {

Matrix balanced_splitter() {
    const double r = std::sqrt(0.5);
    Matrix u(2, 2);
    u << Complex(r, 0), Complex(0, r), Complex(0, r), Complex(r, 0);
    return u;
}

}  // namespace

double simulated_hbt_g2(double p2) {
    Vector xi = Vector::Ones(1);
    SourceModel src({{1, xi}}, p2, 1);
    const OutputDistribution d = evolve_distinguishable(balanced_splitter(), src);
    double na = 0.0, nb = 0.0, nab = 0.0;
    for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
        const double p = d.probabilities[i];
        na += p * d.outcomes[i][0];
        nb += p * d.outcomes[i][1];
        nab += p * d.outcomes[i][0] * d.outcomes[i][1];
    }
    // Normalized to the mean photon number per arm, as in an HBT setup.
    return nab / (na * nb);
}

double simulated_hom_visibility(double visibility, double p2) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) throw ArgumentError("visibility must lie in [0, 1]");
    auto coincidences = [p2](double v) {
        const double f = std::sqrt(v);
        const SourceModel src = SourceModel::from_visibility_factors({1, 2}, {f, f}).with_contamination(p2, 2);
        const OutputDistribution d = evolve_distinguishable(balanced_splitter(), src);
        double c = 0.0;
        for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
            if (d.outcomes[i][0] > 0 && d.outcomes[i][1] > 0) c += d.probabilities[i];
        }
        return c;
    };
    return 1.0 - coincidences(visibility) / coincidences(0.0);
}

VisibilityCalibration calibrate_visibilities(const std::vector<double>& reported, const std::vector<double>& sigmas,
                                             double g2, bool correct_for_g2) {
    if (reported.empty() || reported.size() != sigmas.size()) {
        throw ArgumentError("calibrate_visibilities: need one sigma per reported visibility");
    }
    VisibilityCalibration cal;
    cal.reported = reported;
    cal.g2_corrected = correct_for_g2;
    cal.p2 = contamination_from_g2(g2);
    for (std::size_t j = 0; j < reported.size(); ++j) {
        const double v = reported[j];
        if (!(v > 0.0 && v <= 1.0)) throw ArgumentError("visibilities must lie in (0, 1]");
        if (!(sigmas[j] > 0.0)) throw ArgumentError("visibility uncertainties must be positive");
        if (!correct_for_g2 || cal.p2 == 0.0) {
            cal.intrinsic.push_back(v);
            continue;
        }
        if (simulated_hom_visibility(1.0, cal.p2) < v) {
            throw ArgumentError("calibrate_visibilities: reported visibility " + std::to_string(v) +
                                " is not reachable at g2 = " + std::to_string(g2));
        }
        double lo = v, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (simulated_hom_visibility(mid, cal.p2) < v ? lo : hi) = mid;
        }
        cal.intrinsic.push_back(0.5 * (lo + hi));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < cal.intrinsic.size(); ++j) {
        const double w = 1.0 / (sigmas[j] * sigmas[j]);
        num += w * cal.intrinsic[j];
        den += w;
    }
    cal.reference = num / den;
    const double v1 = std::sqrt(cal.reference);
    cal.factors.push_back(v1);
    for (double v : cal.intrinsic) {
        const double f = v / v1;
        if (f > 1.0 + 1e-12) throw ArgumentError("calibrate_visibilities: inconsistent visibility set");
        cal.factors.push_back(std::min(f, 1.0));
    }
    return cal;
}

}  // namespace heraldsim
