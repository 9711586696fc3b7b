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

#include "gbs/stats.hpp"

#include <cmath>

#include "gbs/error.hpp"

namespace gbs {

ChiSquareResult chi_square_test(const GcpDistribution &a, const GcpDistribution &b) {
    if (a.shape != b.shape || a.probabilities.size() != b.probabilities.size())
        fail(ErrorCode::dimension_mismatch, "distributions live on different grouped-count grids");
    if (a.spec.subsets != b.spec.subsets)
        fail(ErrorCode::dimension_mismatch, "distributions use different mode subsets");

    ChiSquareResult result;
    for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
        bool valid;
        if (a.raw_counts || b.raw_counts) {
            valid = (!a.raw_counts || (*a.raw_counts)[i] > kMinValidCount) &&
                    (!b.raw_counts || (*b.raw_counts)[i] > kMinValidCount);
        } else {
            valid = b.probabilities[i] > 0.0;
        }
        const double variance = a.sigma[i] * a.sigma[i] + b.sigma[i] * b.sigma[i];
        if (!valid || !(variance > 0.0)) continue;
        const double diff = a.probabilities[i] - b.probabilities[i];
        result.chi_square += diff * diff / variance;
        ++result.valid_bins;
        result.per_bin.push_back({a.unflatten(i), diff / std::sqrt(variance)});
    }
    if (result.valid_bins == 0) fail(ErrorCode::no_valid_bins, "no bin passes the validity rule");
    return result;
}

double z_score(double chi_square, std::size_t k) {
    if (k == 0) fail(ErrorCode::invalid_argument, "Z-score needs k >= 1");
    const double variance = 2.0 / (9.0 * static_cast<double>(k));
    return (std::cbrt(chi_square / static_cast<double>(k)) - (1.0 - variance)) / std::sqrt(variance);
}

TestReport compare_report(const GcpDistribution &a, const GcpDistribution &b,
                          std::pair<std::string, std::string> labels) {
    ChiSquareResult chi = chi_square_test(a, b);
    TestReport report;
    report.chi_square = chi.chi_square;
    report.k = chi.valid_bins;
    report.z_score = z_score(chi.chi_square, chi.valid_bins);
    report.per_bin = std::move(chi.per_bin);
    report.labels = std::move(labels);
    if (report.k < 10)
        report.warnings.push_back("only " + std::to_string(report.k) +
                                  " valid bins; the normal approximation needs k >= 10");
    return report;
}

}  // namespace gbs
