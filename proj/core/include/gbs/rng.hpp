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

#include <array>
#include <cstdint>

namespace gbs {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Output is a pure function of (counter, key), so any random draw can be
/// addressed directly instead of advancing shared state. Every stochastic
/// quantity in this library is keyed by (seed, subject, stream) where the
/// subject is usually a trajectory index.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter counter, Key key) noexcept;
};

/// Independent substreams sharing one user seed.
enum class Stream : std::uint32_t {
    input_noise = 1,
    bernoulli = 2,
    ginibre = 3,
    partition = 4,
};

/// Maps 53 random bits onto [0, 1).
inline double to_unit_interval(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

/// Deterministic random source for one (seed, subject, stream) triple.
///
/// Draw i of the source is block i of Philox; nothing depends on how many
/// other subjects were evaluated before, or on which thread.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t subject, Stream stream) noexcept;

    /// Two uniforms in [0, 1) taken from Philox block `index`.
    std::array<double, 2> uniform_pair(std::uint32_t index) const noexcept;

    /// Sequential standard normal deviates (Box-Muller, two per block).
    double normal() noexcept;

    /// Sequential uniform deviate in [0, 1).
    double uniform() noexcept;

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter base_;
    std::uint32_t next_block_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
    bool uniform_cached_ = false;
};

}  // namespace gbs
