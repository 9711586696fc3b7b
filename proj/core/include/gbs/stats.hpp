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
#include <string>
#include <utility>
#include <vector>

#include "gbs/gcp.hpp"

namespace gbs {

/// A bin enters the chi-square sum only with more than this many counts.
inline constexpr std::uint64_t kMinValidCount = 10;

struct BinDifference {
    std::vector<std::size_t> index;
    /// (G_a - G_b) / sigma, sigma^2 = sigma_a^2 + sigma_b^2
    double normalized_difference = 0.0;
};

struct ChiSquareResult {
    double chi_square = 0.0;
    std::size_t valid_bins = 0;
    std::vector<BinDifference> per_bin;
};

/// chi^2 = sum over valid bins of (G_a - G_b)^2 / (sigma_a^2 + sigma_b^2).
///
/// Validity: if exactly one side carries raw counts, that side must exceed
/// 10 counts in the bin; if both do, both must. If neither does, bins with
/// positive probability on side b are valid. Bins with zero combined sigma
/// are never valid.
ChiSquareResult chi_square_test(const GcpDistribution &a, const GcpDistribution &b);

/// Wilson-Hilferty normal deviate of chi^2 with k degrees of freedom.
double z_score(double chi_square, std::size_t k);

struct TestReport {
    double chi_square = 0.0;
    std::size_t k = 0;
    double z_score = 0.0;
    std::vector<BinDifference> per_bin;
    std::pair<std::string, std::string> labels;
    std::vector<std::string> warnings;

    /// "Z_" + first label + second label, e.g. Z_EI.
    std::string statistic_name() const { return "Z_" + labels.first + labels.second; }
};

TestReport compare_report(const GcpDistribution &a, const GcpDistribution &b,
                          std::pair<std::string, std::string> labels);

}  // namespace gbs
