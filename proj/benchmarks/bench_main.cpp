/*
   Copyright 2026 The ruinkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cmath>

#include <benchmark/benchmark.h>

#include "ruinkit/analytic.hpp"
#include "ruinkit/claims.hpp"
#include "ruinkit/numerics.hpp"
#include "ruinkit/simulate.hpp"

namespace {

using namespace ruinkit;

void BM_AdjustmentCoefficientExponential(benchmark::State& state) {
    const ModelParams model(2.0, 1.0, Exponential{1.0});
    for (auto _ : state) benchmark::DoNotOptimize(classify_regime(model));
}
BENCHMARK(BM_AdjustmentCoefficientExponential);

void BM_AdjustmentCoefficientGamma(benchmark::State& state) {
    const ModelParams model(2.5, 1.0, Gamma{2.0, 1.5});
    for (auto _ : state) benchmark::DoNotOptimize(classify_regime(model));
}
BENCHMARK(BM_AdjustmentCoefficientGamma);

void BM_QuadratureFinite(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_finite([](double x) { return std::exp(-x * x); }, 0.0, 2.0));
    }
}
BENCHMARK(BM_QuadratureFinite);

void BM_QuadratureSemiInfinite(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_semi_infinite([](double x) { return 1.0 / (x * x); }, 1.0));
    }
}
BENCHMARK(BM_QuadratureSemiInfinite);

void BM_PInfinityDfGamma(benchmark::State& state) {
    const ModelParams model(2.5, 1.0, Gamma{2.0, 1.5});
    const double R = std::get<CramerLight>(classify_regime(model)).R;
    for (auto _ : state) benchmark::DoNotOptimize(p_infinity_df(model, R, 1.0));
}
BENCHMARK(BM_PInfinityDfGamma);

void BM_CramerConstantRenewal(benchmark::State& state) {
    const ModelParams model(2.5, 1.0, Gamma{2.0, 1.5});
    const double R = std::get<CramerLight>(classify_regime(model)).R;
    for (auto _ : state) benchmark::DoNotOptimize(cramer_constant_renewal(ExponentialDecayRescue{1.0}, model, R));
}
BENCHMARK(BM_CramerConstantRenewal)->Unit(benchmark::kMillisecond);

void path_throughput(benchmark::State& state, const ModelParams& model, const Mechanism& mech, double u) {
    const Barrier barrier = resolve_barrier(model, u, AutoBarrier{});
    std::uint64_t path = 0;
    for (auto _ : state) {
        PathRandom rng(1, path++);
        benchmark::DoNotOptimize(simulate_path(model, mech, u, barrier.level, rng, 10'000'000));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(path));
}

void BM_PathsExponentialParisian(benchmark::State& state) {
    path_throughput(state, ModelParams(2.0, 1.0, Exponential{1.0}), mechanism::ParisianFixed{0.5}, 2.0);
}
BENCHMARK(BM_PathsExponentialParisian);

void BM_PathsParetoCumulative(benchmark::State& state) {
    path_throughput(state, ModelParams(2.0, 1.0, Pareto{2.5, 1.5}), mechanism::CumulativeParisianFixed{1.0},
                            10.0);
}
BENCHMARK(BM_PathsParetoCumulative)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
