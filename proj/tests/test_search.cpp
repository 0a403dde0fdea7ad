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

#include "heraldsim/error.hpp"
#include "heraldsim/heralding.hpp"
#include "heraldsim/preset.hpp"
#include "heraldsim/search.hpp"

namespace heraldsim {
namespace {

SearchProblem preset_problem() {
    const auto& p = ghz_preset_bundle();
    return SearchProblem::transmissions_of(p.circuit, p.input, p.rule);
}

TEST(Objective, PresetIsOptimal) {
    const auto sp = preset_problem();
    EXPECT_EQ(sp.free.size(), 12u);
    const auto ev = evaluate(sp.initial_params(), sp);
    EXPECT_LT(ev.objective, 1e-8);
    EXPECT_NEAR(ev.min_fidelity, 1.0, 1e-9);
    EXPECT_NEAR(ev.min_probability, 1.0 / 108.0, 1e-12);
}

// The closed-form phase-maximized fidelity equals the fidelity of the
// explicitly heralded and corrected state when the corrections are optimal.
TEST(Objective, MatchesHeraldedState) {
    auto sp = preset_problem();
    auto x = sp.initial_params();
    x[0] = 0.45;
    x[7] = 0.6;
    const auto ev = evaluate(x, sp);
    const PureState psi = evolve_pure(compile(sp.apply(x)).matrix, sp.input);
    HeraldRule bare = sp.rule;
    bare.corrections.clear();
    const auto out = herald(psi, bare);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(ev.per_pattern[k].probability, out.per_pattern[k].probability, 1e-14);
        const auto& st = *out.per_pattern[k].state;
        const auto reg = DualRailRegister::standard();
        const Complex r00 = st.element(reg.encode("000", 6), reg.encode("000", 6));
        const Complex r11 = st.element(reg.encode("111", 6), reg.encode("111", 6));
        const Complex r01 = st.element(reg.encode("000", 6), reg.encode("111", 6));
        EXPECT_NEAR(ev.per_pattern[k].fidelity, 0.5 * (r00.real() + r11.real()) + std::abs(r01), 1e-12);
    }
}

TEST(Objective, Probes) {
    auto sp = preset_problem();
    const auto ones = std::vector<double>(12, 1.0);
    EXPECT_GE(objective(ones, sp), sp.w_probability / 108.0 - 1e-15);
    const auto base = sp.initial_params();
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto x = base;
        x[i] = std::min(1.0, x[i] + 0.05);
        EXPECT_GT(objective(x, sp), 0.0) << "element " << sp.free[i].element;
    }
    auto bad = base;
    bad[3] = 1.2;
    EXPECT_THROW(objective(bad, sp), ArgumentError);
}

TEST(Problem, Validation) {
    auto sp = preset_problem();
    sp.w_fidelity = sp.w_probability = 0.0;
    EXPECT_THROW(sp.validate(), ArgumentError);
    sp = preset_problem();
    sp.free.clear();
    EXPECT_THROW(sp.validate(), ArgumentError);
    sp = preset_problem();
    sp.free[0].kind = ParamKind::Phase;
    EXPECT_THROW(sp.validate(), ArgumentError);
}

TEST(Optimize, StartAtOptimum) {
    SearchOptions o;
    o.seed = 1;
    const auto r = optimize(preset_problem(), o);
    EXPECT_LT(r.best_objective, 1e-8);
    EXPECT_EQ(r.improving_steps, 0u);
    EXPECT_EQ(r.status, "converged");
    EXPECT_EQ(r.best_params, preset_problem().initial_params());
}

TEST(Optimize, ZeroBudget) {
    SearchOptions o;
    o.budget = 0;
    o.noise = 0.02;
    const auto r = optimize(preset_problem(), o);
    EXPECT_EQ(r.status, "no search performed");
    EXPECT_EQ(r.best_params, preset_problem().initial_params());
}

TEST(Optimize, BasinRecoveryAndDeterminism) {
    SearchOptions o;
    o.seed = 2024;
    o.noise = 0.02;
    o.restarts = 3;
    const auto a = optimize(preset_problem(), o);
    EXPECT_GT(a.heralded_fidelity, 0.99);
    EXPECT_GE(a.per_pattern_probability, 0.9 / 108.0);
    for (const auto& r : a.restarts) {
        for (std::size_t i = 0; i < r.start.size(); ++i) {
            EXPECT_LE(std::abs(r.start[i] - preset_problem().initial_params()[i]), 0.01 + 1e-15);
        }
    }
    // Trace: improving points only, best-so-far never increases.
    double prev = INFINITY;
    for (const auto& t : a.trace) {
        EXPECT_LE(t.best, prev);
        EXPECT_LE(t.best, t.objective);
        prev = t.best;
    }
    EXPECT_EQ(a.trace.back().best, a.best_objective);

    const auto b = optimize(preset_problem(), o);
    EXPECT_EQ(a.best_params, b.best_params);
    EXPECT_EQ(a.best_objective, b.best_objective);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(Optimize, RandomStartRespectsBudget) {
    SearchOptions o;
    o.seed = 5;
    o.random_start = true;
    o.budget = 300;
    o.restarts = 2;
    const auto r = optimize(preset_problem(), o);
    for (const auto& rs : r.restarts) {
        EXPECT_LE(rs.evaluations, 300u);
        for (double t : rs.start) {
            EXPECT_GE(t, 0.05);
            EXPECT_LE(t, 0.95);
        }
    }
    EXPECT_NE(r.restarts[0].start, r.restarts[1].start);
    EXPECT_GE(r.heralded_fidelity, 0.0);
    EXPECT_LE(r.heralded_fidelity, 1.0);
}

}  // namespace
}  // namespace heraldsim
