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

#include "gbs/rng.hpp"

#include <cmath>
#include <numbers>

namespace gbs {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t product = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t subject, Stream stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      base_{0u, static_cast<std::uint32_t>(subject), static_cast<std::uint32_t>(subject >> 32),
            static_cast<std::uint32_t>(stream)} {}

std::array<double, 2> CounterRng::uniform_pair(std::uint32_t index) const noexcept {
    Philox4x32::Counter ctr = base_;
    ctr[0] = index;
    const auto out = Philox4x32::apply(ctr, key_);
    return {to_unit_interval(out[0], out[1]), to_unit_interval(out[2], out[3])};
}

double CounterRng::normal() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    uniform_cached_ = false;
    const auto u = uniform_pair(next_block_++);
    // 1 - u lies in (0, 1], so the logarithm is finite.
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u[0]));
    const double angle = 2.0 * std::numbers::pi * u[1];
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

double CounterRng::uniform() noexcept {
    if (uniform_cached_) {
        uniform_cached_ = false;
        return cached_;
    }
    has_cached_ = false;
    const auto u = uniform_pair(next_block_++);
    cached_ = u[1];
    uniform_cached_ = true;
    return u[0];
}

}  // namespace gbs
