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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbs/patterns.hpp"
#include "gbs/sampler.hpp"

namespace gbs {

/// Grouped-count observable: d disjoint mode subsets S_1..S_d of an M-mode pattern.
struct GcpSpec {
    std::size_t modes = 0;
    std::vector<std::vector<std::size_t>> subsets;
    std::optional<std::uint64_t> permutation_seed;

    std::size_t dimension() const { return subsets.size(); }
    /// (M_1 + 1, ..., M_d + 1)
    std::vector<std::size_t> shape() const;
    std::size_t bin_count() const;
};

inline constexpr std::size_t kMaxGcpDimension = 4;
inline constexpr std::size_t kMaxGcpBins = std::size_t{1} << 24;

/// Validates explicit subsets (disjoint, in range, non-empty, d <= 4).
GcpSpec make_gcp_spec(std::size_t modes, std::vector<std::vector<std::size_t>> subsets);

/// Equal split into d subsets of M/d modes. Without a seed the subsets are
/// contiguous blocks; with one, modes are shuffled first. Subsets are sorted.
GcpSpec partition_modes(std::size_t modes, std::size_t dimension, std::optional<std::uint64_t> permutation_seed);

/// Number of distinct random permutation tests, C(M, M/d) / d.
boost::multiprecision::cpp_int permutation_count(std::size_t modes, std::size_t dimension);

enum class GcpSource { phase_space, patterns, exact };

std::string_view to_string(GcpSource source);
GcpSource parse_gcp_source(std::string_view text);

/// Dense grouped-count distribution, row-major over the spec's shape (last axis fastest).
struct GcpDistribution {
    GcpSpec spec;
    std::vector<std::size_t> shape;
    std::vector<double> probabilities;
    std::vector<double> sigma;
    /// Present for GcpSource::patterns.
    std::optional<std::vector<std::uint64_t>> raw_counts;
    GcpSource source = GcpSource::phase_space;
    /// Trajectories or patterns behind the estimate.
    std::uint64_t samples = 0;

    std::size_t bin_count() const { return probabilities.size(); }
    std::vector<std::size_t> unflatten(std::size_t flat) const;
    std::size_t flatten(std::span<const std::size_t> index) const;
};

inline constexpr std::size_t kDefaultBlocks = 100;

/// Produces click moments for trajectories [first, first + count).
using ClickSource = std::function<ClickMoments(std::size_t first, std::size_t count)>;

/// Phase-space GCP via the Fourier observable.
///
/// Per trajectory and subset j, f_j(k) = prod_{i in S_j} (pi_i(0) + pi_i(1) e^{-i k theta_j})
/// with theta_j = 2 pi / (M_j + 1). The outer product of the f_j is averaged over
/// trajectories, inverse-transformed, and its real part kept. sigma is the
/// standard error of `blocks` contiguous sub-ensemble estimates.
///
/// Blocks are the unit of work; within a block trajectories are summed in
/// fixed chunks combined pairwise, so results do not depend on `threads`.
GcpDistribution simulate_gcp(const ClickMoments &moments, const GcpSpec &spec,
                             std::size_t blocks = kDefaultBlocks, unsigned threads = 1);

std::vector<GcpDistribution> simulate_gcp(const ClickMoments &moments, std::span<const GcpSpec> specs,
                                          std::size_t blocks = kDefaultBlocks, unsigned threads = 1);

/// Streaming form: trajectories are generated chunk by chunk and never stored.
std::vector<GcpDistribution> simulate_gcp(const ClickSource &source, std::size_t trajectories,
                                          std::span<const GcpSpec> specs, std::size_t blocks = kDefaultBlocks,
                                          unsigned threads = 1);

/// Histogram of grouped counts m_j = sum_{i in S_j} c_i with binomial standard errors.
GcpDistribution bin_patterns(const PatternSet &patterns, const GcpSpec &spec);

/// Sums a distribution over every axis except `axis` (sigma is not propagated).
std::vector<double> marginal(const GcpDistribution &distribution, std::size_t axis);

}  // namespace gbs
