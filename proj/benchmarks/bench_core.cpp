// Copyright 2026 The gbs-phase-space Authors
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

#include "gbs/gcp.hpp"
#include "gbs/oracle.hpp"
#include "gbs/pipeline.hpp"
#include "gbs/sampler.hpp"

namespace {

using namespace gbs;

GaussianModeMoments squeezed(std::size_t modes) {
    return derive_moments(GaussianInputSpec{StateKind::pure_squeezed, std::vector<double>(modes, 1.0), 0.0, modes,
                                            std::nullopt});
}

void BM_Propagate(benchmark::State &state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const auto input = draw_input_ensemble(squeezed(modes), Representation::positive_p, 1024, 1);
    const auto t = make_transmission(generate_haar_unitary(modes, 1), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(input, t));
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_Propagate)->Arg(20)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SimulateGcp(benchmark::State &state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto moments = squeezed(modes);
    const auto t = make_transmission(generate_haar_unitary(modes, 2), 0.5);
    const auto cm = click_moments(propagate(draw_input_ensemble(moments, Representation::positive_p, 20000, 3), t));
    const auto spec = partition_modes(modes, d, std::nullopt);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_gcp(cm, spec));
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_SimulateGcp)->Args({20, 1})->Args({20, 2})->Args({100, 1})->Args({40, 4})->Unit(benchmark::kMillisecond);

void BM_ExactGcp(benchmark::State &state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const auto cov = output_covariance(squeezed(modes), make_transmission(generate_haar_unitary(modes, 4), 0.5));
    const auto spec = partition_modes(modes, 2, std::nullopt);
    for (auto _ : state) benchmark::DoNotOptimize(exact_gcp(cov, spec));
}
BENCHMARK(BM_ExactGcp)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
