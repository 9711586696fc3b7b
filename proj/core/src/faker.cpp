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

#include "gbs/faker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbs/error.hpp"
#include "gbs/parallel.hpp"
#include "gbs/rng.hpp"

namespace gbs {

namespace {

constexpr std::size_t kChunk = 1024;

void require_classical_output(const PhaseSpaceEnsemble &ensemble) {
    if (ensemble.representation != Representation::diagonal_p)
        fail(ErrorCode::representation_violation,
             "patterns can only be faked from diagonal-P (classical) ensembles");
    if (ensemble.stage != Stage::output)
        fail(ErrorCode::invalid_argument, "patterns are generated from output-stage ensembles");
}

void fill_patterns(const PhaseSpaceEnsemble &ensemble, std::uint64_t seed, std::uint8_t *out) {
    const std::size_t modes = ensemble.modes;
    for (std::size_t k = 0; k < ensemble.trajectories; ++k) {
        const CounterRng rng(seed, ensemble.first_trajectory + k, Stream::bernoulli);
        const auto row = ensemble.alpha_row(k);
        std::uint8_t *bits = out + k * modes;
        std::array<double, 2> u{};
        for (std::size_t j = 0; j < modes; ++j) {
            if (j % 2 == 0) u = rng.uniform_pair(static_cast<std::uint32_t>(j / 2));
            const double n = std::norm(row[j]);
            if (!(n <= kMaxPhotonNumberMagnitude))
                fail(ErrorCode::numerical_guard, "trajectory " + std::to_string(ensemble.first_trajectory + k) +
                                                     ": output photon number out of range");
            const double p_click = -std::expm1(-n);
            bits[j] = u[j % 2] < p_click ? 1 : 0;
        }
    }
}

PatternSet empty_fake(std::size_t modes, std::size_t count, std::uint64_t seed) {
    PatternSet out;
    out.modes = modes;
    out.source = PatternSource::classical_fake;
    out.bits.assign(count * modes, 0);
    out.metadata.emplace_back("faker_seed", std::to_string(seed));
    return out;
}

}  // namespace

PatternSet generate_classical_patterns(const PhaseSpaceEnsemble &ensemble, std::uint64_t seed, unsigned threads) {
    require_classical_output(ensemble);
    PatternSet out = empty_fake(ensemble.modes, ensemble.trajectories, seed);
    out.metadata.emplace_back("ensemble_seed", std::to_string(ensemble.seed));
    const std::size_t chunks = (ensemble.trajectories + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t count = std::min(kChunk, ensemble.trajectories - lo);
        PhaseSpaceEnsemble view;
        view.representation = ensemble.representation;
        view.stage = ensemble.stage;
        view.first_trajectory = ensemble.first_trajectory + lo;
        view.trajectories = count;
        view.modes = ensemble.modes;
        view.alpha.assign(ensemble.alpha.begin() + static_cast<std::ptrdiff_t>(lo * ensemble.modes),
                          ensemble.alpha.begin() + static_cast<std::ptrdiff_t>((lo + count) * ensemble.modes));
        fill_patterns(view, seed, out.bits.data() + lo * ensemble.modes);
    });
    return out;
}

PatternSet generate_classical_patterns(const GaussianModeMoments &moments, const TransmissionMatrix &transmission,
                                       std::size_t count, std::uint64_t ensemble_seed, std::uint64_t faker_seed,
                                       unsigned threads) {
    if (count == 0) fail(ErrorCode::invalid_argument, "pattern count must be positive");
    if (!all_classical(moments))
        fail(ErrorCode::representation_violation,
             "no efficient count generator exists for non-classical inputs; use a classical state");
    PatternSet out = empty_fake(transmission.dim_out(), count, faker_seed);
    out.metadata.emplace_back("ensemble_seed", std::to_string(ensemble_seed));
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t n = std::min(kChunk, count - lo);
        const auto input = draw_trajectories(moments, Representation::diagonal_p, ensemble_seed, lo, n);
        const auto output = propagate(input, transmission);
        fill_patterns(output, faker_seed, out.bits.data() + lo * transmission.dim_out());
    });
    return out;
}

}  // namespace gbs
