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

#pragma once

#include <cstddef>
#include <cstdint>

#include "gbs/patterns.hpp"
#include "gbs/sampler.hpp"

namespace gbs {

/// Classical pattern faker: one pattern per output-stage diagonal-P
/// trajectory, bit j set with probability 1 - exp(-|alpha'_j|^2).
///
/// The uniform for (trajectory k, mode j) comes from Philox keyed by
/// (seed, k), block j / 2, so the result is a pure function of the inputs.
PatternSet generate_classical_patterns(const PhaseSpaceEnsemble &ensemble, std::uint64_t seed, unsigned threads = 1);

/// Same patterns as draw -> propagate -> generate_classical_patterns, without
/// holding the ensemble in memory.
PatternSet generate_classical_patterns(const GaussianModeMoments &moments, const TransmissionMatrix &transmission,
                                       std::size_t count, std::uint64_t ensemble_seed, std::uint64_t faker_seed,
                                       unsigned threads = 1);

}  // namespace gbs
