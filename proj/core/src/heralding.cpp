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

#include "heraldsim/heralding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "heraldsim/error.hpp"

namespace heraldsim {

namespace {

// Below this a pattern is treated as never firing (round-off floor).
constexpr double kZeroProbability = 1e-24;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

bool output_order(const OccupationVector& a, const OccupationVector& b) {
    if (a.total_photons() != b.total_photons()) return a.total_photons() < b.total_photons();
    return b < a;
}

std::vector<int> to_zero_based(const std::vector<int>& modes) {
    std::vector<int> out;
    for (int m : modes) out.push_back(m - 1);
    return out;
}

// Accumulates an unnormalized operator over signal occupations that are
// discovered on the fly.
class SignalAccumulator {
   public:
    std::size_t index(const OccupationVector& t) {
        auto [it, inserted] = index_.emplace(t, states_.size());
        if (inserted) states_.push_back(t);
        return it->second;
    }
    void add(std::size_t i, std::size_t j, Complex v) { terms_[{i, j}] += v; }
    void add_rank_one(double w, const std::vector<std::pair<std::size_t, Complex>>& v) {
        for (const auto& [i, a] : v) {
            for (const auto& [j, b] : v) add(i, j, w * a * std::conj(b));
        }
    }
    bool empty() const { return states_.empty(); }

    // Basis in output order plus the matrix in that basis.
    std::pair<BasisPtr, Matrix> build() const {
        std::vector<std::size_t> order(states_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [this](std::size_t a, std::size_t b) { return output_order(states_[a], states_[b]); });
        std::vector<std::size_t> pos(order.size());
        std::vector<OccupationVector> sorted;
        for (std::size_t k = 0; k < order.size(); ++k) {
            pos[order[k]] = k;
            sorted.push_back(states_[order[k]]);
        }
        const auto d = static_cast<Eigen::Index>(states_.size());
        Matrix m = Matrix::Zero(d, d);
        for (const auto& [ij, v] : terms_) {
            m(static_cast<Eigen::Index>(pos[ij.first]), static_cast<Eigen::Index>(pos[ij.second])) += v;
        }
        return {FockBasis::make(std::move(sorted)), std::move(m)};
    }

   private:
    std::map<OccupationVector, std::size_t> index_;
    std::vector<OccupationVector> states_;
    std::map<std::pair<std::size_t, std::size_t>, Complex> terms_;
};

// Ancilla occupations h with nonzero probability of producing readout r,
// with at most n_max photons in total, and that probability.
void ancilla_candidates(const OccupationVector& r, const DetectorModel& det, int n_max, std::size_t j,
                        std::vector<int>& h, double w, std::vector<std::pair<OccupationVector, double>>& out) {
    if (j == r.n_modes()) {
        out.emplace_back(OccupationVector(h), w);
        return;
    }
    const int used = std::accumulate(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(j), 0);
    for (int n = 0; n <= n_max - used; ++n) {
        const double p = det.response(j, r[j], n);
        if (p == 0.0) continue;
        h[j] = n;
        ancilla_candidates(r, det, n_max, j + 1, h, w * p, out);
    }
    h[j] = 0;
}

std::vector<std::pair<OccupationVector, double>> ancilla_candidates(const OccupationVector& r,
                                                                    const DetectorModel& det, int n_max) {
    std::vector<std::pair<OccupationVector, double>> out;
    std::vector<int> h(r.n_modes(), 0);
    ancilla_candidates(r, det, n_max, 0, h, 1.0, out);
    return out;
}

// exp(i sum_q phi_q n_{b_q}) for a signal occupation.
Complex correction_phase(const OccupationVector& t, const DualRailRegister& reg, const std::vector<double>& phases) {
    double phi = 0.0;
    for (std::size_t q = 0; q < phases.size(); ++q) phi += phases[q] * t[static_cast<std::size_t>(reg.pairs()[q].second)];
    return std::polar(1.0, phi);
}

PatternOutcome finish(const OccupationVector& pattern, const SignalAccumulator& acc, const DualRailRegister& sig_reg,
                      const std::vector<double>& phases) {
    PatternOutcome out;
    out.pattern = pattern;
    if (acc.empty()) return out;
    auto [basis, m] = acc.build();
    const double prob = m.trace().real();
    if (!(prob > kZeroProbability)) return out;
    out.probability = prob;
    std::vector<Complex> ph;
    for (const auto& t : basis->states()) ph.push_back(correction_phase(t, sig_reg, phases));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) *= ph[static_cast<std::size_t>(i)] * std::conj(ph[static_cast<std::size_t>(j)]);
        }
    }
    m /= prob;
    DensityOperator rho(basis, std::move(m));

    double weight = 0.0;
    for (std::size_t i = 0; i < basis->size(); ++i) {
        if (sig_reg.decode((*basis)[i])) weight += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    out.dual_rail_weight = weight;
    if (weight > 0.0) {
        const int n_sig = static_cast<int>(basis->n_modes());
        const std::string zeros(sig_reg.n_qubits(), '0');
        const std::string ones(sig_reg.n_qubits(), '1');
        const Complex r00 = rho.element(sig_reg.encode(zeros, n_sig), sig_reg.encode(zeros, n_sig));
        const Complex r11 = rho.element(sig_reg.encode(ones, n_sig), sig_reg.encode(ones, n_sig));
        const Complex r01 = rho.element(sig_reg.encode(zeros, n_sig), sig_reg.encode(ones, n_sig));
        out.subspace_ghz_fidelity = std::clamp((0.5 * (r00 + r11).real() + r01.real()) / weight, 0.0, 1.0);
    }
    out.state = std::move(rho);
    return out;
}

HeraldOutcome herald_components(const std::vector<std::pair<double, const PureState*>>& comps, const HeraldRule& rule,
                                const DetectorModel& det) {
    if (comps.empty()) throw ArgumentError("herald: empty state");
    const int n_modes = static_cast<int>(comps.front().second->n_modes());
    int n_max = 0;
    for (const auto& [w, s] : comps) {
        if (static_cast<int>(s->n_modes()) != n_modes) throw ArgumentError("herald: components differ in mode count");
        n_max = std::max(n_max, s->n_photons());
    }
    rule.validate(n_modes, n_max);
    det.validate(rule.ancilla_modes.size());
    const auto anc0 = to_zero_based(rule.ancilla_modes);
    const auto sig0 = to_zero_based(rule.signal_modes(n_modes));
    const DualRailRegister sig_reg = rule.signal_register(n_modes);

    HeraldOutcome outcome;
    for (std::size_t p = 0; p < rule.patterns.size(); ++p) {
        const OccupationVector& r = rule.patterns[p];
        SignalAccumulator acc;
        for (const auto& [w, s] : comps) {
            std::map<OccupationVector, std::vector<std::pair<std::size_t, Complex>>> by_h;
            std::map<OccupationVector, double> h_weight;
            for (std::size_t i = 0; i < s->basis().size(); ++i) {
                const Complex a = s->amplitudes()[static_cast<Eigen::Index>(i)];
                if (a == Complex{}) continue;
                const OccupationVector h = s->basis()[i].restrict_to(anc0);
                double wh = 1.0;
                for (std::size_t j = 0; j < anc0.size() && wh != 0.0; ++j) wh *= det.response(j, r[j], h[j]);
                if (wh == 0.0) continue;
                h_weight[h] = wh;
                by_h[h].emplace_back(acc.index(s->basis()[i].restrict_to(sig0)), a);
            }
            for (const auto& [h, v] : by_h) acc.add_rank_one(w * h_weight[h], v);
        }
        outcome.per_pattern.push_back(finish(r, acc, sig_reg, rule.correction(p)));
        outcome.total_probability += outcome.per_pattern.back().probability;
    }
    return outcome;
}

}  // namespace

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::IdealPnr:
            return "ideal_pnr";
        case DetectorKind::PseudoPnr:
            return "pseudo_pnr";
        case DetectorKind::Threshold:
            return "threshold";
    }
    return "unknown";
}

DetectorKind detector_kind_from_string(std::string_view name) {
    if (name == "ideal_pnr") return DetectorKind::IdealPnr;
    if (name == "pseudo_pnr") return DetectorKind::PseudoPnr;
    if (name == "threshold") return DetectorKind::Threshold;
    throw ArgumentError("unknown detector kind '" + std::string(name) + "'");
}

DetectorModel DetectorModel::pseudo_pnr(int max_resolvable) {
    DetectorModel d;
    d.kind = DetectorKind::PseudoPnr;
    d.max_resolvable = max_resolvable;
    return d;
}

DetectorModel DetectorModel::threshold() {
    DetectorModel d;
    d.kind = DetectorKind::Threshold;
    return d;
}

int DetectorModel::saturate(int n) const {
    switch (kind) {
        case DetectorKind::IdealPnr:
            return n;
        case DetectorKind::PseudoPnr:
            return std::min(n, max_resolvable);
        case DetectorKind::Threshold:
            return std::min(n, 1);
    }
    return n;
}

double DetectorModel::efficiency_at(std::size_t detector) const {
    if (efficiency.empty()) return 1.0;
    if (efficiency.size() == 1) return efficiency.front();
    return efficiency.at(detector);
}

double DetectorModel::response(std::size_t detector, int readout, int n) const {
    const double eta = efficiency_at(detector);
    double p = 0.0;
    for (int m = 0; m <= n; ++m) {
        const double seen = eta == 1.0 ? (m == n ? 1.0 : 0.0)
                                       : binomial(n, m) * std::pow(eta, m) * std::pow(1.0 - eta, n - m);
        if (seen == 0.0) continue;
        double r = 0.0;
        if (readout == saturate(m)) r += 1.0 - dark_count;
        if (dark_count > 0.0 && readout == saturate(m + 1)) r += dark_count;
        p += seen * r;
    }
    return p;
}

void DetectorModel::validate(std::size_t n_detectors) const {
    if (kind == DetectorKind::PseudoPnr && max_resolvable < 1) throw ArgumentError("pseudo_pnr needs max_resolvable >= 1");
    if (!efficiency.empty() && efficiency.size() != 1 && efficiency.size() != n_detectors) {
        throw ArgumentError("detector efficiency: give one value or one per ancilla mode");
    }
    for (double e : efficiency) {
        if (!(e >= 0.0 && e <= 1.0)) throw ArgumentError("detector efficiency must lie in [0, 1]");
    }
    if (!(dark_count >= 0.0 && dark_count < 1.0)) throw ArgumentError("dark-count probability must lie in [0, 1)");
}

std::vector<OccupationVector> HeraldRule::all_patterns(std::size_t n_ancillas, int n_photons) {
    std::vector<OccupationVector> out;
    for (int n = 0; n <= n_photons; ++n) {
        auto sector = enumerate_basis(n, static_cast<int>(n_ancillas));
        out.insert(out.end(), sector.begin(), sector.end());
    }
    return out;
}

void HeraldRule::validate(int n_modes, int n_photons) const {
    std::set<int> seen;
    for (int m : ancilla_modes) {
        if (m < 1 || m > n_modes) throw ArgumentError("herald: ancilla mode " + std::to_string(m) + " out of range");
        if (!seen.insert(m).second) throw ArgumentError("herald: duplicate ancilla mode");
    }
    std::set<OccupationVector> distinct;
    for (const auto& p : patterns) {
        if (p.n_modes() != ancilla_modes.size()) throw ArgumentError("herald: pattern length != ancilla count");
        if (p.total_photons() > n_photons) {
            throw ArgumentError("herald: pattern " + p.to_string() + " needs more photons than the input has");
        }
        if (!distinct.insert(p).second) throw ArgumentError("herald: duplicate pattern " + p.to_string());
    }
    if (!corrections.empty() && corrections.size() != patterns.size()) {
        throw ArgumentError("herald: one correction per pattern");
    }
    for (const auto& c : corrections) {
        if (c.size() != qubits.n_qubits()) throw ArgumentError("herald: one correction phase per qubit");
    }
    for (auto [a, b] : qubits.pairs()) {
        if (seen.count(a + 1) || seen.count(b + 1)) throw ArgumentError("herald: qubit mode is an ancilla");
        if (b + 1 > n_modes || a + 1 > n_modes) throw ArgumentError("herald: qubit mode out of range");
    }
}

std::vector<int> HeraldRule::signal_modes(int n_modes) const {
    std::set<int> anc(ancilla_modes.begin(), ancilla_modes.end());
    std::vector<int> out;
    for (int m = 1; m <= n_modes; ++m) {
        if (!anc.count(m)) out.push_back(m);
    }
    return out;
}

DualRailRegister HeraldRule::signal_register(int n_modes) const {
    const auto sig = signal_modes(n_modes);
    auto position = [&sig](int mode0) {
        auto it = std::find(sig.begin(), sig.end(), mode0 + 1);
        if (it == sig.end()) throw ArgumentError("herald: qubit mode is not a signal mode");
        return static_cast<int>(it - sig.begin()) + 1;
    };
    std::vector<std::pair<int, int>> pairs;
    for (auto [a, b] : qubits.pairs()) pairs.emplace_back(position(a), position(b));
    return DualRailRegister::from_one_based(pairs);
}

std::vector<double> HeraldRule::correction(std::size_t p) const {
    if (corrections.empty()) return std::vector<double>(qubits.n_qubits(), 0.0);
    return corrections.at(p);
}

double SectorMixture::total_weight() const {
    double w = 0.0;
    for (const auto& c : components) w += c.weight;
    return w;
}

SectorMixture apply_loss(const PureState& state, const std::vector<double>& transmissions) {
    const std::size_t m = state.n_modes();
    if (transmissions.size() != m) throw ArgumentError("apply_loss: one transmission per mode");
    for (double t : transmissions) {
        if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("apply_loss: transmissions must lie in [0, 1]");
    }
    // lost pattern -> (surviving occupation -> amplitude)
    std::map<OccupationVector, std::map<OccupationVector, Complex>> sectors;
    for (std::size_t i = 0; i < state.basis().size(); ++i) {
        const Complex a = state.amplitudes()[static_cast<Eigen::Index>(i)];
        if (a == Complex{}) continue;
        const OccupationVector& x = state.basis()[i];
        std::vector<int> lost(m, 0);
        while (true) {
            double k = 1.0;
            std::vector<int> kept(m);
            for (std::size_t j = 0; j < m; ++j) {
                kept[j] = x[j] - lost[j];
                k *= binomial(x[j], lost[j]) * std::pow(transmissions[j], kept[j]) *
                     std::pow(1.0 - transmissions[j], lost[j]);
            }
            if (k > 0.0) sectors[OccupationVector(lost)][OccupationVector(kept)] += a * std::sqrt(k);
            std::size_t j = 0;
            while (j < m && ++lost[j] > x[j]) lost[j++] = 0;
            if (j == m) break;
        }
    }
    SectorMixture out;
    for (const auto& [lost, amps] : sectors) {
        std::vector<OccupationVector> basis;
        Vector v(static_cast<Eigen::Index>(amps.size()));
        // Canonical (descending) order within the sector.
        Eigen::Index k = 0;
        for (auto it = amps.rbegin(); it != amps.rend(); ++it, ++k) {
            basis.push_back(it->first);
            v[k] = it->second;
        }
        const double w = v.squaredNorm();
        if (w == 0.0) continue;
        out.components.push_back({w, PureState(FockBasis::make(std::move(basis)), std::move(v))});
    }
    return out;
}

HeraldOutcome herald(const PureState& state, const HeraldRule& rule, const DetectorModel& det) {
    return herald_components({{1.0, &state}}, rule, det);
}

HeraldOutcome herald(const SectorMixture& state, const HeraldRule& rule, const DetectorModel& det) {
    std::vector<std::pair<double, const PureState*>> comps;
    for (const auto& c : state.components) comps.emplace_back(c.weight, &c.state);
    return herald_components(comps, rule, det);
}

HeraldOutcome herald(const Matrix& u, const SourceModel& src, const HeraldRule& rule, const DetectorModel& det,
                     const std::vector<double>& transmissions, const EvolutionLimits& limits) {
    if (u.rows() != u.cols()) throw ArgumentError("herald: unitary must be square");
    const int n_modes = static_cast<int>(u.rows());
    rule.validate(n_modes, static_cast<int>(src.n_photons()));
    det.validate(rule.ancilla_modes.size());
    if (!transmissions.empty() && transmissions.size() != static_cast<std::size_t>(n_modes)) {
        throw ArgumentError("herald: one transmission per mode");
    }
    for (double t : transmissions) {
        if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("herald: transmissions must lie in [0, 1]");
    }
    for (const auto& p : src.photons()) {
        if (p.mode > n_modes) throw ArgumentError("herald: source mode outside circuit");
    }

    // Loss: mode i keeps sqrt(eta_i) of its row; each lossy mode gets an
    // extra, unobserved output row.
    std::vector<int> lossy;
    for (int i = 0; i < n_modes && !transmissions.empty(); ++i) {
        if (transmissions[static_cast<std::size_t>(i)] < 1.0) lossy.push_back(i);
    }
    Matrix u_ext(n_modes + static_cast<Eigen::Index>(lossy.size()), n_modes);
    u_ext.topRows(n_modes) = u;
    for (std::size_t k = 0; k < lossy.size(); ++k) {
        const double eta = transmissions[static_cast<std::size_t>(lossy[k])];
        u_ext.row(lossy[k]) *= std::sqrt(eta);
        u_ext.row(n_modes + static_cast<Eigen::Index>(k)) = Complex(0.0, std::sqrt(1.0 - eta)) * u.row(lossy[k]);
    }

    const auto anc0 = to_zero_based(rule.ancilla_modes);
    const auto sig0 = to_zero_based(rule.signal_modes(n_modes));
    const DualRailRegister sig_reg = rule.signal_register(n_modes);
    const int n_sig = static_cast<int>(sig0.size());

    // Slot groups: qubit pairs first, then every other signal mode alone.
    std::vector<int> group_of(static_cast<std::size_t>(n_sig), -1);
    std::vector<std::vector<int>> groups;
    for (auto [a, b] : sig_reg.pairs()) {
        group_of[static_cast<std::size_t>(a)] = group_of[static_cast<std::size_t>(b)] = static_cast<int>(groups.size());
        groups.push_back({std::min(a, b), std::max(a, b)});
    }
    for (int s = 0; s < n_sig; ++s) {
        if (group_of[static_cast<std::size_t>(s)] < 0) {
            group_of[static_cast<std::size_t>(s)] = static_cast<int>(groups.size());
            groups.push_back({s});
        }
    }

    const auto terms = src.contamination_terms();
    std::vector<PairingEngine> engines;
    for (const auto& [w, term] : terms) engines.emplace_back(u_ext, term.modes0(), term.gram(), limits);

    HeraldOutcome outcome;
    for (std::size_t p = 0; p < rule.patterns.size(); ++p) {
        const OccupationVector& r = rule.patterns[p];
        SignalAccumulator acc;
        for (std::size_t c = 0; c < terms.size(); ++c) {
            const double w_c = terms[c].first;
            const PairingEngine& engine = engines[c];
            const int n = static_cast<int>(engine.n_photons());
            for (const auto& [h, w_h] : ancilla_candidates(r, det, n)) {
                const int k = n - h.total_photons();
                std::vector<int> anc_rows;
                for (std::size_t j = 0; j < anc0.size(); ++j) {
                    for (int c2 = 0; c2 < h[j]; ++c2) anc_rows.push_back(anc0[j]);
                }
                const int max_lost = lossy.empty() ? 0 : k;
                for (int nl = 0; nl <= max_lost; ++nl) {
                    const auto lost_states =
                        lossy.empty() ? std::vector<OccupationVector>{OccupationVector(std::vector<int>{})}
                                      : enumerate_basis(nl, static_cast<int>(lossy.size()), limits.max_basis);
                    const auto sig_states = enumerate_basis(k - nl, n_sig, limits.max_basis);
                    for (const auto& lost : lost_states) {
                        std::vector<int> common = anc_rows;
                        for (std::size_t j = 0; j < lost.n_modes(); ++j) {
                            for (int c2 = 0; c2 < lost[j]; ++c2) common.push_back(n_modes + static_cast<int>(j));
                        }
                        const double common_fact = h.factorial_product() * lost.factorial_product();

                        struct Slotted {
                            std::size_t index;
                            std::vector<int> rows;
                            double fact;
                            bool bunched;
                            std::vector<int> key;
                        };
                        std::vector<Slotted> slotted;
                        for (const auto& t : sig_states) {
                            Slotted s;
                            s.index = acc.index(t);
                            s.fact = t.factorial_product();
                            s.bunched = s.fact > 1.0;
                            for (const auto& g : groups) {
                                int cnt = 0;
                                for (int mode : g) {
                                    for (int c2 = 0; c2 < t[static_cast<std::size_t>(mode)]; ++c2) {
                                        s.rows.push_back(sig0[static_cast<std::size_t>(mode)]);
                                    }
                                    cnt += t[static_cast<std::size_t>(mode)];
                                }
                                s.key.push_back(cnt);
                            }
                            s.rows.insert(s.rows.end(), common.begin(), common.end());
                            slotted.push_back(std::move(s));
                        }
                        const double w = w_c * w_h;
                        for (std::size_t i = 0; i < slotted.size(); ++i) {
                            const auto& a = slotted[i];
                            const double diag =
                                engine.element(a.rows, a.rows, a.fact * common_fact).real();
                            acc.add(a.index, a.index, w * diag);
                            if (a.bunched) continue;
                            for (std::size_t j = i + 1; j < slotted.size(); ++j) {
                                const auto& b = slotted[j];
                                if (b.bunched || b.key != a.key) continue;
                                const Complex e = w * engine.element(a.rows, b.rows, common_fact);
                                acc.add(a.index, b.index, e);
                                acc.add(b.index, a.index, std::conj(e));
                            }
                        }
                    }
                }
            }
        }
        outcome.per_pattern.push_back(finish(r, acc, sig_reg, rule.correction(p)));
        outcome.total_probability += outcome.per_pattern.back().probability;
    }
    return outcome;
}

HeraldingEfficiency heralding_efficiency(const SourceModel& src, const CircuitSpec& circuit, const HeraldRule& rule,
                                         const DetectorModel& det, const std::vector<double>& transmissions,
                                         double fidelity_threshold, const EvolutionLimits& limits) {
    const CompiledUnitary u = compile(circuit);
    const HeraldOutcome out = herald(u.matrix, src, rule, det, transmissions, limits);
    HeraldingEfficiency eff;
    eff.herald_probability = out.total_probability;
    for (const auto& p : out.per_pattern) {
        if (p.state && p.dual_rail_weight > 0.0 && p.subspace_ghz_fidelity >= fidelity_threshold) {
            eff.success_probability += p.probability * p.dual_rail_weight;
        }
    }
    if (!(out.total_probability > kZeroProbability)) {
        eff.status = "no herald events";
        return eff;
    }
    eff.value = std::min(1.0, eff.success_probability / eff.herald_probability);
    eff.status = "ok";
    return eff;
}

}  // namespace heraldsim
