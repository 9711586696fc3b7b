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

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

namespace gbs {
namespace {

GcpDistribution analytic(std::size_t bins, double sigma) {
    GcpDistribution d;
    d.spec = make_gcp_spec(bins - 1, {[&] {
                               std::vector<std::size_t> all(bins - 1);
                               for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
                               return all;
                           }()});
    d.shape = d.spec.shape();
    d.probabilities.resize(bins);
    d.sigma.assign(bins, sigma);
    for (std::size_t i = 0; i < bins; ++i) d.probabilities[i] = (1.0 + i % 7) / (4.0 * bins);
    return d;
}

GcpDistribution counted(const GcpDistribution &base, std::vector<std::uint64_t> counts) {
    GcpDistribution d = base;
    d.raw_counts = std::move(counts);
    d.source = GcpSource::patterns;
    return d;
}

TEST(ZScore, ClosedFormAnchors) {
    EXPECT_NEAR(z_score(63.0, 63), std::sqrt(2.0 / 567.0), 1e-12);
    EXPECT_NEAR(z_score(63.0, 63), 0.05939138709164986, 1e-12);
    EXPECT_NEAR(z_score(0.0, 63), -16.77806685339109, 1e-12);
    EXPECT_GBS_ERROR(z_score(1.0, 0), ErrorCode::invalid_argument);
}

TEST(ZScore, StrictlyIncreasingInChiSquare) {
    for (std::size_t k : {1u, 10u, 63u, 500u}) {
        double previous = z_score(0.0, k);
        for (double chi2 = 0.25; chi2 < 4.0 * static_cast<double>(k); chi2 *= 1.5) {
            const double z = z_score(chi2, k);
            EXPECT_GT(z, previous);
            previous = z;
        }
    }
}

TEST(ChiSquare, IdenticalDistributions) {
    const auto a = analytic(40, 1e-3);
    const auto result = chi_square_test(a, a);
    EXPECT_EQ(result.chi_square, 0.0);
    EXPECT_EQ(result.valid_bins, 40u);
    for (const auto &bin : result.per_bin) EXPECT_EQ(bin.normalized_difference, 0.0);
    const auto report = compare_report(a, a, {"T", "T"});
    EXPECT_LT(report.z_score, 0.1);
    EXPECT_TRUE(report.warnings.empty());
}

TEST(ChiSquare, OneSigmaShiftPerBin) {
    auto a = analytic(50, 0.0);
    auto b = analytic(50, 0.0);
    for (std::size_t i = 0; i < 50; ++i) {
        a.sigma[i] = 1e-5 * (1.0 + 0.1 * static_cast<double>(i));
        b.sigma[i] = 2e-5;
        const double s = std::sqrt(a.sigma[i] * a.sigma[i] + b.sigma[i] * b.sigma[i]);
        b.probabilities[i] = a.probabilities[i] + (i % 2 == 0 ? s : -s);
    }
    const auto result = chi_square_test(a, b);
    EXPECT_NEAR(result.chi_square, 50.0, 1e-9);
    EXPECT_EQ(result.valid_bins, 50u);
    for (const auto &bin : result.per_bin) EXPECT_NEAR(std::abs(bin.normalized_difference), 1.0, 1e-9);
}

TEST(ChiSquare, CountThresholdIsStrict) {
    auto theory = analytic(3, 1e-2);
    theory.probabilities = {0.2, 0.3, 0.5};
    auto data = counted(theory, {10, 11, 0});
    data.probabilities = {0.25, 0.25, 0.5};
    const auto result = chi_square_test(data, theory);
    EXPECT_EQ(result.valid_bins, 1u);
    ASSERT_EQ(result.per_bin.size(), 1u);
    EXPECT_EQ(result.per_bin[0].index, (std::vector<std::size_t>{1}));

    const auto reversed = chi_square_test(theory, data);
    EXPECT_EQ(reversed.valid_bins, 1u);

    // both sides count-based: each must exceed the threshold
    auto fake = counted(theory, {20, 20, 20});
    fake.probabilities = {0.3, 0.3, 0.4};
    EXPECT_EQ(chi_square_test(fake, counted(theory, {100, 5, 100})).valid_bins, 2u);
}

TEST(ChiSquare, NoValidBinsIsAnError) {
    auto theory = analytic(3, 1e-2);
    auto data = counted(theory, {1, 2, 3});
    EXPECT_GBS_ERROR(chi_square_test(data, theory), ErrorCode::no_valid_bins);
}

TEST(ChiSquare, GridMismatch) {
    EXPECT_GBS_ERROR(chi_square_test(analytic(3, 1.0), analytic(4, 1.0)), ErrorCode::dimension_mismatch);
    auto a = analytic(3, 1.0);
    auto b = a;
    b.spec = make_gcp_spec(3, {{0, 2}});
    EXPECT_GBS_ERROR(chi_square_test(a, b), ErrorCode::dimension_mismatch);
}

TEST(ChiSquare, SwapSymmetryAndScaling) {
    auto a = analytic(30, 0.0);
    auto b = analytic(30, 0.0);
    for (std::size_t i = 0; i < 30; ++i) {
        a.sigma[i] = 1e-3 + 1e-5 * static_cast<double>(i);
        b.sigma[i] = 5e-4;
        b.probabilities[i] += 1e-3 * std::sin(static_cast<double>(i));
    }
    const auto ab = chi_square_test(a, b);
    const auto ba = chi_square_test(b, a);
    EXPECT_EQ(ab.valid_bins, ba.valid_bins);
    EXPECT_NEAR(ab.chi_square, ba.chi_square, 1e-12 * ab.chi_square);

    auto a3 = a, b3 = b;
    for (auto &s : a3.sigma) s *= 3.0;
    for (auto &s : b3.sigma) s *= 3.0;
    EXPECT_NEAR(chi_square_test(a3, b3).chi_square, ab.chi_square / 9.0, 1e-12 * ab.chi_square);
}

TEST(ChiSquare, ZeroSigmaBinsAreSkipped) {
    auto a = analytic(5, 1e-3);
    a.sigma[2] = 0.0;
    auto b = analytic(5, 0.0);
    EXPECT_EQ(chi_square_test(a, b).valid_bins, 4u);
}

TEST(CompareReport, LabelsAndSmallKWarning) {
    auto theory = analytic(6, 1e-2);
    auto data = counted(theory, {50, 50, 50, 50, 50, 50});
    const auto report = compare_report(data, theory, {"E", "I"});
    EXPECT_EQ(report.statistic_name(), "Z_EI");
    EXPECT_EQ(report.k, 6u);
    EXPECT_EQ(report.warnings.size(), 1u);
    EXPECT_NEAR(report.z_score, z_score(report.chi_square, report.k), 0.0);
}

}  // namespace
}  // namespace gbs
