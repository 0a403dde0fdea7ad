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

#include "heraldsim/error.hpp"
#include "heraldsim/interferometer.hpp"
#include "heraldsim/preset.hpp"

namespace heraldsim {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

CircuitSpec two_mode(std::vector<Element> e) { return {2, std::move(e), ""}; }

TEST(Compile, BeamSplitterConvention) {
    const Matrix u = compile(two_mode({Element::beam_splitter(1, 2, 0.5)})).matrix;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(u(i, j)), 1.0 / std::sqrt(2.0), 1e-15);
    Matrix expect(2, 2);
    expect << 1.0, kI, kI, 1.0;
    EXPECT_LT(max_abs(u - expect / std::sqrt(2.0)), 1e-15);

    EXPECT_LT(max_abs(compile(two_mode({Element::beam_splitter(1, 2, 1.0)})).matrix - Matrix::Identity(2, 2)), 1e-15);
    Matrix cross(2, 2);
    cross << 0.0, kI, kI, 0.0;
    EXPECT_LT(max_abs(compile(two_mode({Element::beam_splitter(1, 2, 0.0)})).matrix - cross), 1e-15);
}

TEST(Compile, PhaseShifter) {
    const Matrix u = compile(two_mode({Element::phase_shifter(2, kPi)})).matrix;
    Matrix expect(2, 2);
    expect << 1.0, 0.0, 0.0, -1.0;
    EXPECT_LT(max_abs(u - expect), 1e-15);
}

TEST(Compile, MziExpansion) {
    const Matrix bs = compile(two_mode({Element::beam_splitter(1, 2, 0.5)})).matrix;
    EXPECT_LT(max_abs(compile(two_mode({Element::mzi(1, 2, 0.0, 0.0)})).matrix - bs * bs), 1e-15);

    const double th = 0.7, ph = -1.3;
    Matrix p_th = Matrix::Identity(2, 2), p_ph = Matrix::Identity(2, 2);
    p_th(0, 0) = std::polar(1.0, th);
    p_ph(0, 0) = std::polar(1.0, ph);
    EXPECT_LT(max_abs(compile(two_mode({Element::mzi(1, 2, th, ph)})).matrix - p_ph * bs * p_th * bs), 1e-15);
}

TEST(Compile, Homomorphism) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 1.0), ph(-kPi, kPi);
    std::uniform_int_distribution<int> mode(1, 5);
    auto random_spec = [&](int len) {
        CircuitSpec s{5, {}, ""};
        for (int k = 0; k < len; ++k) {
            int a = mode(rng), b = mode(rng);
            while (b == a) b = mode(rng);
            switch (k % 3) {
                case 0: s.elements.push_back(Element::beam_splitter(a, b, t(rng))); break;
                case 1: s.elements.push_back(Element::phase_shifter(a, ph(rng))); break;
                default: s.elements.push_back(Element::mzi(a, b, ph(rng), ph(rng)));
            }
        }
        return s;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_spec(7), b = random_spec(9);
        const Matrix ab = compile(concatenate(a, b)).matrix;
        EXPECT_LT(max_abs(ab - compile(b).matrix * compile(a).matrix), 1e-12);
        EXPECT_TRUE(validate_unitary(ab).pass);
    }
}

TEST(Compile, Errors) {
    EXPECT_THROW(compile(two_mode({Element::beam_splitter(1, 3, 0.5)})), ArgumentError);
    EXPECT_THROW(compile(two_mode({Element::beam_splitter(1, 1, 0.5)})), ArgumentError);
    EXPECT_THROW(compile(two_mode({Element::beam_splitter(1, 2, 1.5)})), ArgumentError);
    EXPECT_THROW(compile(two_mode({Element::phase_shifter(0, 0.1)})), ArgumentError);
}

TEST(Unitarity, Report) {
    const auto id = validate_unitary(Matrix::Identity(10, 10));
    EXPECT_EQ(id.deviation, 0.0);
    EXPECT_TRUE(id.pass);
    Matrix scaled = Matrix::Identity(10, 10);
    scaled(3, 3) *= 1.001;
    EXPECT_FALSE(validate_unitary(scaled).pass);
    EXPECT_THROW(validate_unitary(Matrix::Identity(2, 3)), ArgumentError);
    EXPECT_TRUE(validate_unitary(compile(ghz_preset()).matrix).pass);
}

TEST(Element, CanonicalComparison) {
    EXPECT_TRUE(Element::phase_shifter(1, 0.3).same_as(Element::phase_shifter(1, 0.3 + 2 * kPi)));
    EXPECT_FALSE(Element::phase_shifter(1, 0.3).same_as(Element::phase_shifter(2, 0.3)));
    EXPECT_NEAR(canonical_phase(-kPi / 2), 1.5 * kPi, 1e-15);
}

// Single-photon amplitudes on a pair after a measurement stage.
Eigen::Vector2cd measure_pair(double a0_re, Complex a1, const QubitMeasurement& m) {
    const auto reg = DualRailRegister::standard(1);
    const Matrix u = compile(append_measurement({2, {}, ""}, {m}, reg)).matrix;
    Eigen::Vector2cd in(a0_re, a1);
    in.normalize();
    return u * in;
}

TEST(Measurement, Examples) {
    // Z eigenstate in the X basis: even split.
    auto out = measure_pair(1.0, 0.0, QubitMeasurement::equatorial(0.0));
    EXPECT_NEAR(std::norm(out(0)), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(out(1)), 0.5, 1e-15);
    // X eigenstate exits the "+" rail.
    out = measure_pair(1.0, 1.0, QubitMeasurement::equatorial(0.0));
    EXPECT_NEAR(std::norm(out(0)), 1.0, 1e-15);
    for (double th : {kPi / 3, 2 * kPi / 3, 1.1}) {
        out = measure_pair(1.0, std::polar(1.0, th), QubitMeasurement::equatorial(th));
        EXPECT_NEAR(std::norm(out(0)), 1.0, 1e-14);
        out = measure_pair(1.0, -std::polar(1.0, th), QubitMeasurement::equatorial(th));
        EXPECT_NEAR(std::norm(out(1)), 1.0, 1e-14);
    }
    // Computational setting passes rails straight through.
    out = measure_pair(1.0, 0.0, QubitMeasurement::computational());
    EXPECT_NEAR(std::norm(out(0)), 1.0, 1e-15);
    EXPECT_THROW(append_measurement({6, {}, ""}, {QubitMeasurement{}}, DualRailRegister::standard()), ArgumentError);
}

TEST(Measurement, ZPhases) {
    const auto s = append_z_phases({6, {}, ""}, {0.5, 0.0, -1.0});
    ASSERT_EQ(s.elements.size(), 2u);
    EXPECT_EQ(s.elements[0].mode_a, 2);
    EXPECT_EQ(s.elements[1].mode_a, 6);
}

TEST(CircuitFile, RoundTrip) {
    CircuitSpec s{4, {}, "mixed"};
    s.elements.push_back(Element::beam_splitter(1, 2, 1.0 / 3.0));
    s.elements.push_back(Element::phase_shifter(3, 0.1 + 0.2));
    s.elements.push_back(Element::mzi(2, 4, kPi / 7, -std::sqrt(2.0)));
    const std::string text = circuit_to_json(s);
    const CircuitSpec back = circuit_from_json(text);
    EXPECT_EQ(circuit_to_json(back), text);
    ASSERT_EQ(back.elements.size(), 3u);
    EXPECT_EQ(back.elements[0].transmission, 1.0 / 3.0);
    EXPECT_EQ(back.elements[1].phase, 0.1 + 0.2);
    EXPECT_EQ(back.elements[2].external, -std::sqrt(2.0));
    EXPECT_EQ(back.label, "mixed");
    EXPECT_EQ(circuit_to_json(circuit_from_json(circuit_to_json(ghz_preset()))), circuit_to_json(ghz_preset()));
}

TEST(CircuitFile, Errors) {
    EXPECT_THROW(circuit_from_json("{"), ArgumentError);
    EXPECT_THROW(circuit_from_json(R"({"elements": []})"), ArgumentError);
    EXPECT_THROW(circuit_from_json(R"({"n_modes": 2, "elements": [{"kind": "mirror", "modes": [1], "param": 0}]})"),
                 ArgumentError);
    EXPECT_THROW(circuit_from_json(R"({"n_modes": 2, "elements": [{"kind": "beam_splitter", "modes": [1, 3], "param": 0.5}]})"),
                 ArgumentError);
}

TEST(Preset, Inventory) {
    const CircuitSpec p = ghz_preset();
    EXPECT_EQ(p.n_modes, 10);
    EXPECT_EQ(p.count(ElementKind::BeamSplitter), 12u);
    EXPECT_EQ(p.count(ElementKind::PhaseShifter), 2u);
    EXPECT_EQ(p.count(ElementKind::Mzi), 0u);
    for (const auto& e : p.elements) {
        if (e.kind == ElementKind::BeamSplitter) {
            const double t = e.transmission;
            EXPECT_TRUE(std::abs(t - 0.5) < 1e-15 || std::abs(t - 0.25) < 1e-15 || std::abs(t - 2.0 / 3.0) < 1e-15) << t;
        } else {
            EXPECT_NEAR(e.phase, kPi, 1e-15);
        }
    }
    EXPECT_FALSE(ghz_preset_bundle().provenance.empty());
    EXPECT_EQ(ghz_preset_bundle().input, (OccupationVector{1, 0, 1, 1, 0, 1, 0, 1, 1, 0}));
}

}  // namespace
}  // namespace heraldsim
