// Copyright 2026 The gpm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "gpm/dilation.hpp"
#include "gpm/fisher.hpp"
#include "gpm/measurement.hpp"
#include "gpm/reversal.hpp"
#include "gpm/rng.hpp"

namespace {

void BM_SampleOutcome(benchmark::State &state) {
    const gpm::MeasurementPair meas = gpm::build_measurement_along(0.3, 0.7, {0.4, 1.1});
    const gpm::PureState psi = gpm::state_from_angles(1.0, 2.0);
    gpm::RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::sample_outcome(psi, meas, rng));
    }
}
BENCHMARK(BM_SampleOutcome);

void BM_ReversalTrials(benchmark::State &state) {
    const gpm::PureState psi = gpm::state_from_angles(1.0, 2.0);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::run_reversal_trials(psi, 0.3, 0.2, trials, 7, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReversalTrials)->Arg(1 << 16);

void BM_FisherMatrix(benchmark::State &state) {
    const gpm::Direction n{0.4, 1.1};
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::fisher_matrix({theta, 0.7}, n, 0.3, 0.8));
        theta = theta > 3.0 ? 0.1 : theta + 1e-3;
    }
}
BENCHMARK(BM_FisherMatrix);

void BM_FisherSurface(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            gpm::fisher_surface(std::numbers::pi / 6, 0.0, 0.0, 0.0, 101));
    }
}
BENCHMARK(BM_FisherSurface)->Unit(benchmark::kMillisecond);

void BM_NaimarkUnitary(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::build_naimark_unitary(0.3, 0.6));
    }
}
BENCHMARK(BM_NaimarkUnitary);

void BM_DoubleWellPropagator(benchmark::State &state) {
    const gpm::TunnelElements t = gpm::pulse_params(0.3, 0.6, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::doublewell_propagator({50.0, t.t0, t.t1, 1.0}));
    }
}
BENCHMARK(BM_DoubleWellPropagator);

void BM_DeterministicSearch(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gpm::deterministic_reversal_search(0.7, 0.2, 32));
    }
}
BENCHMARK(BM_DeterministicSearch)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
