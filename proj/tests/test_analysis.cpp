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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heraldsim/analysis.hpp"
#include "heraldsim/error.hpp"
#include "heraldsim/heralding.hpp"
#include "heraldsim/interferometer.hpp"
#include "heraldsim/preset.hpp"
#include "oracles.hpp"

namespace heraldsim {
namespace {

constexpr double kPi = std::numbers::pi;

Matrix random_rho(int dim, std::mt19937_64& rng) {
    const Matrix a = oracle::random_complex(dim, rng);
    const Matrix r = a * a.adjoint();
    return r / r.trace().real();
}

Matrix noisy_ghz(double w) { return w * oracle::ghz_rho(3) + (1.0 - w) * Matrix::Identity(8, 8) / 8.0; }

std::vector<CountRecord> sample(const Matrix& rho, double total, std::uint64_t seed) {
    std::vector<CountRecord> recs;
    std::uint64_t k = 0;
    for (const auto& s : witness_settings(3)) recs.push_back(simulate_counts(outcome_probabilities(rho, s), total, derive_seed(seed, k++), s));
    return recs;
}

TEST(Witness, IdealAndMixed) {
    const Matrix ghz = oracle::ghz_rho(3);
    EXPECT_NEAR(population(ghz), 1.0, 1e-15);
    EXPECT_NEAR(coherence(ghz), 1.0, 1e-12);
    EXPECT_NEAR(expectation_M(ghz, 0.0), 1.0, 1e-12);
    EXPECT_NEAR(expectation_M(ghz, kPi / 3), -1.0, 1e-12);
    EXPECT_NEAR(expectation_M(ghz, kPi / 6), 0.0, 1e-12);
    auto r = fidelity_pc(ghz);
    EXPECT_NEAR(r.fidelity.value, 1.0, 1e-12);
    EXPECT_TRUE(r.entangled);

    const Matrix mixed = Matrix::Identity(8, 8) / 8.0;
    EXPECT_NEAR(population(mixed), 0.25, 1e-15);
    r = fidelity_pc(mixed);
    EXPECT_NEAR(r.fidelity.value, 0.125, 1e-15);
    EXPECT_FALSE(r.entangled);

    Matrix p000 = Matrix::Zero(8, 8);
    p000(0, 0) = 1.0;
    EXPECT_NEAR(coherence(p000), 0.0, 1e-15);

    Matrix dephased = Matrix::Zero(8, 8);
    dephased(0, 0) = dephased(7, 7) = 0.5;
    r = fidelity_pc(dephased);
    EXPECT_EQ(r.fidelity.value, 0.5);
    EXPECT_FALSE(r.entangled);
}

TEST(Witness, ExpectationMatchesKroneckerOracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix rho = random_rho(8, rng);
        for (int k = 0; k < 12; ++k) {
            const double th = 2 * kPi * k / 12;
            const double ref = (rho * oracle::kron_power(oracle::m_theta(th), 3)).trace().real();
            EXPECT_NEAR(expectation_M(rho, th), ref, 1e-12);
        }
        EXPECT_NEAR(coherence(rho), 2.0 * rho(0, 7).real(), 1e-12);
        // F equals <GHZ|rho|GHZ> on the subspace.
        EXPECT_NEAR(fidelity_pc(rho).fidelity.value, (rho * oracle::ghz_rho(3)).trace().real(), 1e-12);
    }
}

TEST(Witness, PhaseRotatedFamily) {
    for (double phi : {0.0, 0.4, -1.2}) {
        const Matrix rho = oracle::ghz_rho(3, phi);
        for (int k = 0; k < 12; ++k) {
            const double th = 2 * kPi * k / 12;
            EXPECT_NEAR(expectation_M(rho, th), std::cos(3 * th - phi), 1e-12);
        }
    }
}

TEST(Witness, SubspaceProjection) {
    const auto reg = DualRailRegister::standard();
    const PureState ghz = ghz_state(reg, 6);
    const auto r = fidelity_pc(DensityOperator::from_pure(ghz));
    EXPECT_NEAR(r.subspace_weight, 1.0, 1e-15);
    EXPECT_NEAR(r.fidelity.value, 1.0, 1e-12);

    const auto b = FockBasis::make({{2, 0, 1, 0, 0, 0}, {1, 0, 1, 0, 1, 0}});
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.75;
    m(1, 1) = 0.25;
    const auto s = dual_rail_subspace(DensityOperator(b, m), reg);
    EXPECT_NEAR(s.weight, 0.25, 1e-15);
    EXPECT_NEAR(s.rho(0, 0).real(), 1.0, 1e-15);

    Matrix only_bad = Matrix::Zero(2, 2);
    only_bad(0, 0) = 1.0;
    EXPECT_THROW(dual_rail_subspace(DensityOperator(b, only_bad), reg), DegenerateInputError);
}

TEST(Measurement, ProbabilitiesMatchProjectorOracle) {
    std::mt19937_64 rng(12);
    const Matrix rho = random_rho(8, rng);
    for (double th : {0.0, kPi / 3, 2 * kPi / 3, 1.0}) {
        const auto p = outcome_probabilities(rho, MeasurementSetting::equatorial(th));
        const double s = std::sqrt(0.5);
        for (int b = 0; b < 8; ++b) {
            Matrix v = Matrix::Ones(1, 1);
            for (int q = 2; q >= 0; --q) {
                Eigen::Vector2cd e(s, ((b >> q) & 1 ? -1.0 : 1.0) * std::polar(s, th));
                Matrix next(v.rows() * 2, 1);
                for (int i = 0; i < v.rows(); ++i) next.block(2 * i, 0, 2, 1) = v(i, 0) * e;
                v = next;
            }
            EXPECT_NEAR(p[static_cast<std::size_t>(b)], (v.adjoint() * rho * v)(0, 0).real(), 1e-12);
        }
    }
}

// The optical measurement stage realizes the same projectors.
TEST(Measurement, OpticalStageMatchesAlgebra) {
    const auto& p = ghz_preset_bundle();
    const PureState psi = evolve_pure(compile(p.circuit).matrix, p.input);
    const auto heralded = herald(psi, p.rule);
    const Matrix rho_q = dual_rail_subspace(*heralded.per_pattern[0].state).rho;
    const auto reg = DualRailRegister::standard();
    for (double th : {0.0, kPi / 3}) {
        CircuitSpec full = append_z_phases(p.circuit, p.rule.correction(0));
        full = append_measurement(full, std::vector<QubitMeasurement>(3, QubitMeasurement::equatorial(th)));
        const PureState out = evolve_pure(compile(full).matrix, p.input);
        HeraldRule r = p.rule;
        r.corrections.clear();
        const auto meas = herald(out, r);
        const auto& st = *meas.per_pattern[0].state;
        const auto probs = outcome_probabilities(rho_q, MeasurementSetting::equatorial(th));
        for (int b = 0; b < 8; ++b) {
            std::string bits;
            for (int q = 2; q >= 0; --q) bits.push_back((b >> q) & 1 ? '1' : '0');
            const auto occ = reg.encode(bits, 6);
            EXPECT_NEAR(st.element(occ, occ).real(), probs[static_cast<std::size_t>(b)], 1e-10);
        }
    }
}

TEST(Counts, Simulation) {
    std::vector<double> delta(8, 0.0);
    delta[0] = 1.0;
    const auto rec = simulate_counts(delta, 100, 9);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(rec.counts[i], 0u);
    EXPECT_GT(rec.counts[0], 0u);

    const auto uni = simulate_counts(std::vector<double>(8, 0.125), 1e6, 2024);
    for (auto c : uni.counts) EXPECT_LT(std::abs(static_cast<double>(c) - 125000.0), 5 * std::sqrt(125000.0));

    const auto ghz = simulate_counts(outcome_probabilities(oracle::ghz_rho(3), MeasurementSetting::computational()), 100, 1);
    EXPECT_EQ(ghz.counts[0] + ghz.counts[7], ghz.total());

    const auto again = simulate_counts(std::vector<double>(8, 0.125), 1e6, 2024);
    EXPECT_EQ(again.counts, uni.counts);
    EXPECT_THROW(simulate_counts({1.5, -0.5}, 10, 1), ArgumentError);
    EXPECT_THROW(simulate_counts({0.5, 0.5}, 0, 1), ArgumentError);
}

TEST(Counts, EstimatorCases) {
    auto ideal = estimate_from_counts(sample(oracle::ghz_rho(3), 1e6, 77));
    EXPECT_LT(std::abs(ideal.fidelity.value - 1.0), 3 * ideal.fidelity.sigma + 1e-12);

    // All 000 in Z, flat in the equatorial bases.
    std::vector<CountRecord> recs;
    recs.push_back({MeasurementSetting::computational(), {1000, 0, 0, 0, 0, 0, 0, 0}, 1.0});
    for (double th : {0.0, kPi / 3, 2 * kPi / 3}) recs.push_back({MeasurementSetting::equatorial(th), std::vector<std::uint64_t>(8, 125), 1.0});
    const auto r = estimate_from_counts(recs);
    EXPECT_EQ(r.population.value, 1.0);
    EXPECT_NEAR(r.coherence.value, 0.0, 1e-15);
    EXPECT_NEAR(r.fidelity.value, 0.5, 1e-15);
    EXPECT_GT(r.fidelity.sigma, 0.0);

    recs.pop_back();
    EXPECT_THROW(estimate_from_counts(recs), ArgumentError);
    recs.push_back({MeasurementSetting::equatorial(2 * kPi / 3), std::vector<std::uint64_t>(8, 0), 1.0});
    EXPECT_THROW(estimate_from_counts(recs), DegenerateInputError);
}

TEST(Counts, SmallSampleErrorMagnitude) {
    // Tens of events per setting give sigma_F of a few percent.
    const auto r = estimate_from_counts(sample(noisy_ghz(0.2), 60, 5));
    EXPECT_GT(r.fidelity.sigma, 0.01);
    EXPECT_LT(r.fidelity.sigma, 0.1);
}

TEST(Counts, PropagatedSigmaFormulas) {
    std::vector<CountRecord> recs;
    recs.push_back({MeasurementSetting::computational(), {40, 1, 2, 3, 1, 2, 1, 50}, 1.0});
    recs.push_back({MeasurementSetting::equatorial(0.0), {20, 5, 5, 20, 5, 20, 20, 5}, 1.0});
    recs.push_back({MeasurementSetting::equatorial(kPi / 3), {5, 20, 20, 5, 20, 5, 5, 20}, 1.0});
    recs.push_back({MeasurementSetting::equatorial(2 * kPi / 3), {20, 5, 5, 20, 5, 20, 20, 5}, 1.0});
    const auto r = estimate_from_counts(recs);
    const double n = 100.0, a = 90.0;
    EXPECT_NEAR(r.population.value, 0.9, 1e-15);
    EXPECT_NEAR(r.population.sigma, std::sqrt(a * (n - a) / (n * n * n)), 1e-15);
    // Even parity: +, odd parity: -.
    const double np = 80.0, nm = 20.0, tot = 100.0;
    const double e = (np - nm) / tot, se2 = 4 * np * nm / (tot * tot * tot);
    EXPECT_NEAR(r.coherence.value, (e + e + e) / 3.0, 1e-15);
    EXPECT_NEAR(r.coherence.sigma, std::sqrt(3 * se2) / 3.0, 1e-15);
    EXPECT_NEAR(r.fidelity.sigma, 0.5 * std::hypot(r.population.sigma, r.coherence.sigma), 1e-15);
    EXPECT_NEAR(r.z_score, (r.fidelity.value - 0.5) / r.fidelity.sigma, 1e-12);
}

TEST(Counts, ClosureAndScaling) {
    const Matrix rho = noisy_ghz(0.7);
    const auto exact = fidelity_pc(rho);
    // Coverage of each estimate separately; nominal 3-sigma coverage is 99.73%.
    int cp = 0, cc = 0, cf = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto r = estimate_from_counts(sample(rho, 1e5, derive_seed(42, t)));
        cp += std::abs(r.population.value - exact.population.value) < 3 * r.population.sigma;
        cc += std::abs(r.coherence.value - exact.coherence.value) < 3 * r.coherence.sigma;
        cf += std::abs(r.fidelity.value - exact.fidelity.value) < 3 * r.fidelity.sigma;
    }
    EXPECT_GE(cp, 990);
    EXPECT_GE(cc, 990);
    EXPECT_GE(cf, 990);

    std::vector<double> lx, ly;
    for (double total : {1e3, 1e4, 1e5}) {
        lx.push_back(std::log(total));
        ly.push_back(std::log(estimate_from_counts(sample(rho, total, 8)).fidelity.sigma));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    EXPECT_NEAR(sxy / sxx, -0.5, 0.05);
}

TEST(Seeds, Derivation) {
    EXPECT_EQ(derive_seed(1, 0), derive_seed(1, 0));
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Characterize, IdentityAndSplitter) {
    const auto id = characterize_circuit(Matrix::Identity(4, 4), {1, 2, 3, 4}, {1, 2, 3, 4});
    EXPECT_EQ(id.amplitude, Eigen::MatrixXd::Identity(4, 4));
    EXPECT_EQ(id.phase, Eigen::MatrixXd::Zero(4, 4));

    const Matrix bs = compile({2, {Element::beam_splitter(1, 2, 0.5)}, ""}).matrix;
    const auto c = characterize_circuit(bs, {1, 2}, {1, 2});
    for (int i = 0; i < 2; ++i)
        for (int o = 0; o < 2; ++o) EXPECT_NEAR(c.amplitude(i, o), 0.5, 1e-12);
    EXPECT_EQ(c.phase(0, 0), 0.0);
    EXPECT_EQ(c.phase(0, 1), 0.0);
    EXPECT_EQ(c.phase(1, 0), 0.0);
    // i * i / (i * i) * 1: the double-reflection entry carries pi in this gauge.
    EXPECT_NEAR(c.phase(1, 1), kPi, 1e-12);
}

TEST(Characterize, PresetGaugeInvariants) {
    const Matrix u = compile(ghz_preset()).matrix;
    std::vector<int> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto c = characterize_circuit(u, all, all);
    const Matrix r = rebuild_from_characterization(c);
    // |U| and every rectangle product U(o,i) U(o',i') conj(U(o,i') U(o',i)) are gauge invariant.
    for (int o = 0; o < 10; ++o)
        for (int i = 0; i < 10; ++i) EXPECT_NEAR(std::abs(r(o, i)), std::abs(u(o, i)), 1e-9);
    double worst = 0.0;
    for (int o = 0; o < 10; ++o)
        for (int o2 = 0; o2 < 10; ++o2)
            for (int i = 0; i < 10; ++i)
                for (int i2 = 0; i2 < 10; ++i2) {
                    auto q = [&](const Matrix& m) { return m(o, i) * m(o2, i2) * std::conj(m(o, i2) * m(o2, i)); };
                    worst = std::max(worst, std::abs(q(r) - q(u)));
                }
    EXPECT_LT(worst, 1e-9);

    const auto again = characterize_circuit(r, all, all);
    EXPECT_EQ(again.amplitude, c.amplitude);
    EXPECT_EQ(again.phase, c.phase);
}

TEST(Characterize, RestrictedShapeAndReGauge) {
    const Matrix u = compile(ghz_preset()).matrix;
    const std::vector<int> in{1, 3, 4, 6, 8, 9}, out{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto c = characterize_circuit(u, in, out);
    EXPECT_EQ(c.amplitude.rows(), 6);
    EXPECT_EQ(c.amplitude.cols(), 9);
    EXPECT_EQ(c.phase.rows(), 6);
    EXPECT_EQ(c.phase.cols(), 9);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(c.amplitude.row(i).sum(), 1.0, 1e-11);
    const Matrix r = rebuild_from_characterization(c);
    std::vector<int> in_r(6), out_r(9);
    for (int i = 0; i < 6; ++i) in_r[static_cast<std::size_t>(i)] = i + 1;
    for (int o = 0; o < 9; ++o) out_r[static_cast<std::size_t>(o)] = o + 1;
    const auto again = characterize_circuit(r, in_r, out_r);
    EXPECT_EQ(again.amplitude, c.amplitude);
    EXPECT_EQ(again.phase, c.phase);
    EXPECT_THROW(characterize_circuit(u, {11}, {1}), ArgumentError);
}

}  // namespace
}  // namespace heraldsim
