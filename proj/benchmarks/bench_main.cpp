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


#include <benchmark/benchmark.h>

#include <random>

#include "heraldsim/evolution.hpp"
#include "heraldsim/heralding.hpp"
#include "heraldsim/interferometer.hpp"
#include "heraldsim/permanent.hpp"
#include "heraldsim/preset.hpp"
#include "heraldsim/search.hpp"

namespace {

using namespace heraldsim;

Matrix random_matrix(int n) {
    std::mt19937_64 rng(static_cast<unsigned>(n));
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

void BM_Permanent(benchmark::State& state) {
    const Matrix a = random_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(permanent(a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 14, 2);

void BM_PermanentNaive(benchmark::State& state) {
    const Matrix a = random_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(permanent_naive(a));
}
BENCHMARK(BM_PermanentNaive)->DenseRange(2, 8, 2);

void BM_EvolvePreset(benchmark::State& state) {
    const auto& p = ghz_preset_bundle();
    const Matrix u = compile(p.circuit).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_pure(u, p.input));
}
BENCHMARK(BM_EvolvePreset)->Unit(benchmark::kMillisecond);

void BM_HeraldIdeal(benchmark::State& state) {
    const auto& p = ghz_preset_bundle();
    const PureState psi = evolve_pure(compile(p.circuit).matrix, p.input);
    for (auto _ : state) benchmark::DoNotOptimize(herald(psi, p.rule));
}
BENCHMARK(BM_HeraldIdeal)->Unit(benchmark::kMillisecond);

void BM_HeraldDistinguishable(benchmark::State& state) {
    const auto& p = ghz_preset_bundle();
    const Matrix u = compile(p.circuit).matrix;
    const auto src = SourceModel::from_visibility_factors({1, 3, 4, 6, 8, 9}, std::vector<double>(6, 0.95));
    for (auto _ : state) benchmark::DoNotOptimize(herald(u, src, p.rule));
}
BENCHMARK(BM_HeraldDistinguishable)->Unit(benchmark::kMillisecond);

void BM_SearchObjective(benchmark::State& state) {
    const auto& p = ghz_preset_bundle();
    const auto problem = SearchProblem::transmissions_of(p.circuit, p.input, p.rule);
    const auto x = problem.initial_params();
    for (auto _ : state) benchmark::DoNotOptimize(objective(x, problem));
}
BENCHMARK(BM_SearchObjective)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
