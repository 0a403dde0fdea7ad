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

#include "heraldsim/analysis.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include "heraldsim/error.hpp"
#include "heraldsim/interferometer.hpp"

namespace heraldsim {

namespace {

std::size_t qubit_count(const Matrix& rho_q) {
    const auto d = static_cast<std::size_t>(rho_q.rows());
    if (rho_q.rows() != rho_q.cols() || d < 2 || !std::has_single_bit(d)) {
        throw ArgumentError("qubit-space matrix must be 2^k x 2^k");
    }
    return static_cast<std::size_t>(std::countr_zero(d));
}

double round12(double x) { return std::round(x * 1e12) / 1e12; }

}  // namespace

SubspaceState dual_rail_subspace(const DensityOperator& rho, const DualRailRegister& reg) {
    const std::size_t k = reg.n_qubits();
    if (k == 0) throw ArgumentError("register has no qubits");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << k);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> map;  // (qubit index, basis index)
    for (std::size_t i = 0; i < rho.basis().size(); ++i) {
        if (auto bits = reg.decode(rho.basis()[i])) {
            map.emplace_back(static_cast<Eigen::Index>(std::stoul(*bits, nullptr, 2)), static_cast<Eigen::Index>(i));
        }
    }
    SubspaceState s;
    s.rho = Matrix::Zero(dim, dim);
    for (auto [qa, ia] : map) {
        for (auto [qb, ib] : map) s.rho(qa, qb) = rho.matrix()(ia, ib);
    }
    s.weight = s.rho.trace().real();
    if (!(s.weight > 0.0)) throw DegenerateInputError("state has no weight in the dual-rail subspace");
    s.rho /= s.weight;
    return s;
}

double population(const Matrix& rho_q) {
    qubit_count(rho_q);
    const auto last = rho_q.rows() - 1;
    return (rho_q(0, 0) + rho_q(last, last)).real();
}

double expectation_M(const Matrix& rho_q, double theta) {
    const std::size_t k = qubit_count(rho_q);
    const auto dim = rho_q.rows();
    // M^{(x)N}|x> = exp(i theta (#0 - #1)) |x-bar>.
    Complex total{};
    for (Eigen::Index x = 0; x < dim; ++x) {
        const int ones = std::popcount(static_cast<unsigned long long>(x));
        const int zeros = static_cast<int>(k) - ones;
        total += rho_q(x, dim - 1 - x) * std::polar(1.0, theta * (zeros - ones));
    }
    return total.real();
}

double coherence(const Matrix& rho_q) {
    const std::size_t k = qubit_count(rho_q);
    double c = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double e = expectation_M(rho_q, static_cast<double>(j) * std::numbers::pi / static_cast<double>(k));
        c += (j % 2 == 0) ? e : -e;
    }
    return c / static_cast<double>(k);
}

namespace {

void finish_fidelity(AnalysisResult& r) {
    r.fidelity.value = 0.5 * (r.population.value + r.coherence.value);
    r.fidelity.sigma = 0.5 * std::hypot(r.population.sigma, r.coherence.sigma);
    r.entangled = r.fidelity.value > 0.5;
    const double excess = r.fidelity.value - 0.5;
    if (r.fidelity.sigma > 0.0) {
        r.z_score = excess / r.fidelity.sigma;
    } else if (excess == 0.0) {
        r.z_score = 0.0;
    } else {
        r.z_score = std::copysign(std::numeric_limits<double>::infinity(), excess);
    }
}

}  // namespace

AnalysisResult fidelity_pc(const Matrix& rho_q) {
    const std::size_t k = qubit_count(rho_q);
    AnalysisResult r;
    r.population.value = population(rho_q);
    for (std::size_t j = 0; j < k; ++j) {
        const double theta = static_cast<double>(j) * std::numbers::pi / static_cast<double>(k);
        r.expectations.push_back({theta, {expectation_M(rho_q, theta), 0.0}});
    }
    r.coherence.value = coherence(rho_q);
    finish_fidelity(r);
    return r;
}

AnalysisResult fidelity_pc(const DensityOperator& rho, const DualRailRegister& reg) {
    const SubspaceState s = dual_rail_subspace(rho, reg);
    AnalysisResult r = fidelity_pc(s.rho);
    r.subspace_weight = s.weight;
    return r;
}

MeasurementSetting MeasurementSetting::computational() { return {BasisKind::Computational, 0.0}; }

MeasurementSetting MeasurementSetting::equatorial(double theta) {
    return {BasisKind::Equatorial, canonical_phase(theta)};
}

std::string MeasurementSetting::label() const {
    if (kind == BasisKind::Computational) return "computational";
    char buf[64];
    std::snprintf(buf, sizeof buf, "equatorial(%.12g)", theta);
    return buf;
}

bool MeasurementSetting::same_as(const MeasurementSetting& other, double tol) const {
    if (kind != other.kind) return false;
    if (kind == BasisKind::Computational) return true;
    const double d = std::abs(canonical_phase(theta) - canonical_phase(other.theta));
    return std::min(d, 2.0 * std::numbers::pi - d) < tol;
}

std::vector<double> outcome_probabilities(const Matrix& rho_q, const MeasurementSetting& setting) {
    const std::size_t k = qubit_count(rho_q);
    const auto dim = rho_q.rows();
    std::vector<double> p(static_cast<std::size_t>(dim));
    if (setting.kind == BasisKind::Computational) {
        for (Eigen::Index x = 0; x < dim; ++x) p[static_cast<std::size_t>(x)] = std::max(0.0, rho_q(x, x).real());
        return p;
    }
    // Single-qubit "+" / "-" vectors (|0> +- e^{i theta}|1>)/sqrt(2).
    const double s = std::sqrt(0.5);
    const Complex e = std::polar(1.0, setting.theta);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Vector v = Vector::Ones(dim);
        for (Eigen::Index x = 0; x < dim; ++x) {
            Complex amp{1.0, 0.0};
            for (std::size_t q = 0; q < k; ++q) {
                const int shift = static_cast<int>(k - 1 - q);
                const int bq = static_cast<int>((b >> shift) & 1);
                const int xq = static_cast<int>((x >> shift) & 1);
                amp *= xq == 0 ? Complex(s, 0.0) : (bq == 0 ? s * e : -s * e);
            }
            v[x] = amp;
        }
        p[static_cast<std::size_t>(b)] = std::max(0.0, (v.adjoint() * rho_q * v)(0, 0).real());
    }
    return p;
}

std::uint64_t CountRecord::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

CountRecord simulate_counts(const std::vector<double>& probabilities, double expected_total, std::uint64_t seed,
                            const MeasurementSetting& setting) {
    if (!(expected_total > 0.0)) throw ArgumentError("simulate_counts: expected_total must be positive");
    double sum = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0)) throw ArgumentError("simulate_counts: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ArgumentError("simulate_counts: probabilities must sum to 1");
    std::mt19937_64 rng(seed);
    CountRecord rec;
    rec.setting = setting;
    for (double p : probabilities) {
        const double mean = expected_total * p;
        if (mean <= 0.0) {
            rec.counts.push_back(0);
            continue;
        }
        std::poisson_distribution<std::uint64_t> dist(mean);
        rec.counts.push_back(dist(rng));
    }
    return rec;
}

std::vector<MeasurementSetting> witness_settings(std::size_t n_qubits) {
    std::vector<MeasurementSetting> s{MeasurementSetting::computational()};
    for (std::size_t j = 0; j < n_qubits; ++j) {
        s.push_back(MeasurementSetting::equatorial(static_cast<double>(j) * std::numbers::pi /
                                                   static_cast<double>(n_qubits)));
    }
    return s;
}

AnalysisResult estimate_from_counts(const std::vector<CountRecord>& records) {
    if (records.empty()) throw ArgumentError("estimate_from_counts: no records");
    const std::size_t dim = records.front().counts.size();
    if (dim < 2 || !std::has_single_bit(dim)) throw ArgumentError("estimate_from_counts: need 2^k outcomes");
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(dim));
    for (const auto& r : records) {
        if (r.counts.size() != dim) throw ArgumentError("estimate_from_counts: records differ in outcome count");
    }
    auto pooled = [&](const MeasurementSetting& s) {
        std::vector<double> n(dim, 0.0);
        bool found = false;
        for (const auto& r : records) {
            if (!r.setting.same_as(s)) continue;
            found = true;
            for (std::size_t i = 0; i < dim; ++i) n[i] += static_cast<double>(r.counts[i]);
        }
        if (!found) throw ArgumentError("estimate_from_counts: missing setting " + s.label());
        double total = 0.0;
        for (double c : n) total += c;
        if (!(total > 0.0)) throw DegenerateInputError("estimate_from_counts: zero counts for " + s.label());
        return std::make_pair(n, total);
    };
    const auto settings = witness_settings(k);

    AnalysisResult r;
    {
        const auto [n, total] = pooled(settings[0]);
        const double a = n.front() + n.back();
        const double b = total - a;
        r.population = {a / total, std::sqrt(a * b / (total * total * total))};
    }
    double c = 0.0, var_c = 0.0;
    for (std::size_t j = 1; j < settings.size(); ++j) {
        const auto [n, total] = pooled(settings[j]);
        double plus = 0.0, minus = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            (std::popcount(i) % 2 == 0 ? plus : minus) += n[i];
        }
        const Estimate e{(plus - minus) / total, std::sqrt(4.0 * plus * minus / (total * total * total))};
        r.expectations.push_back({settings[j].theta, e});
        c += (j % 2 == 1) ? e.value : -e.value;
        var_c += e.sigma * e.sigma;
    }
    r.coherence = {c / static_cast<double>(k), std::sqrt(var_c) / static_cast<double>(k)};
    finish_fidelity(r);
    return r;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Characterization characterize_circuit(const Matrix& u, const std::vector<int>& inputs, const std::vector<int>& outputs) {
    for (int m : inputs) {
        if (m < 1 || m > u.cols()) throw ArgumentError("characterize_circuit: input mode out of range");
    }
    for (int m : outputs) {
        if (m < 1 || m > u.rows()) throw ArgumentError("characterize_circuit: output mode out of range");
    }
    const auto ni = static_cast<Eigen::Index>(inputs.size());
    const auto no = static_cast<Eigen::Index>(outputs.size());
    Characterization c{inputs, outputs, Eigen::MatrixXd::Zero(ni, no), Eigen::MatrixXd::Zero(ni, no)};
    Matrix sub(ni, no);
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index o = 0; o < no; ++o) sub(i, o) = u(outputs[static_cast<std::size_t>(o)] - 1, inputs[static_cast<std::size_t>(i)] - 1);
    }
    constexpr double kZero = 1e-12;
    for (Eigen::Index i = 0; i < ni; ++i) {
        double row = sub.row(i).cwiseAbs2().sum();
        if (row <= 0.0) continue;
        // Rows already unit up to rounding are left unscaled, so that a
        // rebuilt table re-characterizes to itself.
        if (std::abs(row - 1.0) <= 1e-9) row = 1.0;
        for (Eigen::Index o = 0; o < no; ++o) c.amplitude(i, o) = round12(std::norm(sub(i, o)) / row);
    }
    // Gauge: phase(i, o) = arg - alpha_i - beta_o, zero on a BFS tree.
    std::vector<double> alpha(static_cast<std::size_t>(ni), 0.0), beta(static_cast<std::size_t>(no), 0.0);
    std::vector<bool> seen_i(static_cast<std::size_t>(ni), false), seen_o(static_cast<std::size_t>(no), false);
    auto nonzero = [&](Eigen::Index i, Eigen::Index o) { return std::abs(sub(i, o)) > kZero; };
    for (Eigen::Index root = 0; root < ni; ++root) {
        if (seen_i[static_cast<std::size_t>(root)]) continue;
        seen_i[static_cast<std::size_t>(root)] = true;
        // Queue entries: (is_input, index).
        std::deque<std::pair<bool, Eigen::Index>> queue{{true, root}};
        while (!queue.empty()) {
            auto [is_input, idx] = queue.front();
            queue.pop_front();
            if (is_input) {
                for (Eigen::Index o = 0; o < no; ++o) {
                    if (seen_o[static_cast<std::size_t>(o)] || !nonzero(idx, o)) continue;
                    seen_o[static_cast<std::size_t>(o)] = true;
                    beta[static_cast<std::size_t>(o)] = std::arg(sub(idx, o)) - alpha[static_cast<std::size_t>(idx)];
                    queue.emplace_back(false, o);
                }
            } else {
                for (Eigen::Index i = 0; i < ni; ++i) {
                    if (seen_i[static_cast<std::size_t>(i)] || !nonzero(i, idx)) continue;
                    seen_i[static_cast<std::size_t>(i)] = true;
                    alpha[static_cast<std::size_t>(i)] = std::arg(sub(i, idx)) - beta[static_cast<std::size_t>(idx)];
                    queue.emplace_back(true, i);
                }
            }
        }
    }
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index o = 0; o < no; ++o) {
            if (!nonzero(i, o)) continue;
            double phi = std::remainder(std::arg(sub(i, o)) - alpha[static_cast<std::size_t>(i)] -
                                            beta[static_cast<std::size_t>(o)],
                                        2.0 * std::numbers::pi);
            phi = round12(phi);
            if (phi <= -round12(std::numbers::pi)) phi = round12(std::numbers::pi);
            c.phase(i, o) = phi == 0.0 ? 0.0 : phi;  // no negative zero
        }
    }
    return c;
}

Matrix rebuild_from_characterization(const Characterization& c) {
    const auto ni = c.amplitude.rows();
    const auto no = c.amplitude.cols();
    Matrix u = Matrix::Zero(no, ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index o = 0; o < no; ++o) u(o, i) = std::polar(std::sqrt(c.amplitude(i, o)), c.phase(i, o));
    }
    return u;
}

}  // namespace heraldsim
