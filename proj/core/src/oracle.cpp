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

#include "gbs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbs/error.hpp"
#include "gbs/parallel.hpp"

namespace gbs {

namespace {

double clamp_probability(double p) {
    if (p < -1e-10 || p > 1.0 + 1e-10)
        fail(ErrorCode::numerical_guard, "pattern probability " + std::to_string(p) + " outside [0, 1]");
    return std::clamp(p, 0.0, 1.0);
}

double vacuum_overlap(const Eigen::MatrixXd &half_sum, std::size_t modes, std::span<const std::size_t> subset) {
    if (subset.empty()) return 1.0;
    const auto size = static_cast<Eigen::Index>(2 * subset.size());
    Eigen::MatrixXd block(size, size);
    const auto z = static_cast<Eigen::Index>(subset.size());
    for (Eigen::Index a = 0; a < z; ++a)
        for (Eigen::Index b = 0; b < z; ++b) {
            const auto i = static_cast<Eigen::Index>(subset[static_cast<std::size_t>(a)]);
            const auto j = static_cast<Eigen::Index>(subset[static_cast<std::size_t>(b)]);
            const auto m = static_cast<Eigen::Index>(modes);
            block(a, b) = half_sum(i, j);
            block(a, b + z) = half_sum(i, j + m);
            block(a + z, b) = half_sum(i + m, j);
            block(a + z, b + z) = half_sum(i + m, j + m);
        }
    const Eigen::LLT<Eigen::MatrixXd> llt(block);
    if (llt.info() != Eigen::Success) fail(ErrorCode::numerical_guard, "vacuum-overlap matrix is not positive definite");
    // det = prod(L_ii)^2, so 1/sqrt(det) = 1/prod(L_ii)
    double product = 1.0;
    for (Eigen::Index i = 0; i < size; ++i) product *= llt.matrixLLT()(i, i);
    return 1.0 / product;
}

Eigen::MatrixXd half_sum_with_identity(const QuadratureCovariance &covariance) {
    const auto n = covariance.matrix.rows();
    return 0.5 * (covariance.matrix + Eigen::MatrixXd::Identity(n, n));
}

void check_covariance(const QuadratureCovariance &covariance) {
    const auto expected = static_cast<Eigen::Index>(2 * covariance.modes);
    if (covariance.matrix.rows() != expected || covariance.matrix.cols() != expected)
        fail(ErrorCode::dimension_mismatch, "covariance must be 2M x 2M");
}

}  // namespace

QuadratureCovariance output_covariance(const GaussianModeMoments &moments, const TransmissionMatrix &transmission) {
    const std::size_t n_in = moments.size();
    if (transmission.dim_in() != n_in)
        fail(ErrorCode::dimension_mismatch, "transmission matrix inputs do not match the number of input modes");
    const auto n = static_cast<Eigen::Index>(n_in);
    const auto m = static_cast<Eigen::Index>(transmission.dim_out());

    Eigen::MatrixXd s(2 * m, 2 * n);
    const Eigen::MatrixXd re = transmission.entries.real();
    const Eigen::MatrixXd im = transmission.entries.imag();
    s.topLeftCorner(m, n) = re;
    s.topRightCorner(m, n) = -im;
    s.bottomLeftCorner(m, n) = im;
    s.bottomRightCorner(m, n) = re;

    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2 * m, 2 * m);
    const Eigen::MatrixXd loss = identity - s * s.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(loss, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        fail(ErrorCode::domain, "transmission matrix is unphysical (I - T T^dagger is indefinite)");

    // V_in - I in normally ordered variances
    Eigen::VectorXd excess(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        excess(j) = moments.var_x[static_cast<std::size_t>(j)];
        excess(j + n) = moments.var_y[static_cast<std::size_t>(j)];
    }
    QuadratureCovariance out;
    out.modes = transmission.dim_out();
    out.matrix = identity + s * excess.asDiagonal() * s.transpose();
    out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
    return out;
}

double vacuum_probability(const QuadratureCovariance &covariance, std::span<const std::size_t> subset) {
    check_covariance(covariance);
    if (subset.empty()) fail(ErrorCode::invalid_argument, "vacuum probability needs a non-empty subset");
    std::vector<bool> seen(covariance.modes, false);
    for (std::size_t i : subset) {
        if (i >= covariance.modes) fail(ErrorCode::invalid_argument, "mode index out of range");
        if (seen[i]) fail(ErrorCode::invalid_argument, "duplicate mode index in subset");
        seen[i] = true;
    }
    return vacuum_overlap(half_sum_with_identity(covariance), covariance.modes, subset);
}

double pattern_probability(const QuadratureCovariance &covariance, std::span<const std::uint8_t> pattern) {
    check_covariance(covariance);
    if (pattern.size() != covariance.modes) fail(ErrorCode::dimension_mismatch, "pattern length differs from M");
    std::vector<std::size_t> dark, clicked;
    for (std::size_t j = 0; j < pattern.size(); ++j) (pattern[j] ? clicked : dark).push_back(j);
    if (clicked.size() > 20) fail(ErrorCode::cost_guard, "more than 20 clicks: 2^clicks overlap terms");

    const Eigen::MatrixXd half_sum = half_sum_with_identity(covariance);
    const std::size_t terms = std::size_t{1} << clicked.size();
    double total = 0.0;
    std::vector<std::size_t> subset;
    for (std::size_t mask = 0; mask < terms; ++mask) {
        subset = dark;
        int parity = 0;
        for (std::size_t b = 0; b < clicked.size(); ++b)
            if (mask >> b & 1U) {
                subset.push_back(clicked[b]);
                parity ^= 1;
            }
        std::sort(subset.begin(), subset.end());
        const double q = vacuum_overlap(half_sum, covariance.modes, subset);
        total += parity ? -q : q;
    }
    return clamp_probability(total);
}

std::vector<double> all_pattern_probabilities(const QuadratureCovariance &covariance, unsigned threads) {
    check_covariance(covariance);
    const std::size_t modes = covariance.modes;
    if (modes > kMaxOracleModes)
        fail(ErrorCode::cost_guard, "exact enumeration is limited to " + std::to_string(kMaxOracleModes) + " modes");
    const Eigen::MatrixXd half_sum = half_sum_with_identity(covariance);
    const std::size_t count = std::size_t{1} << modes;

    // h[K] = probability that every mode outside the click set K is dark
    std::vector<double> h(count);
    parallel_for(count, threads, [&](std::size_t clicks) {
        std::vector<std::size_t> dark;
        for (std::size_t j = 0; j < modes; ++j)
            if (!(clicks >> j & 1U)) dark.push_back(j);
        h[clicks] = vacuum_overlap(half_sum, modes, dark);
    });
    // P(K) = sum_{Y subset K} (-1)^{|K \ Y|} h[Y]
    for (std::size_t bit = 1; bit < count; bit <<= 1)
        for (std::size_t mask = 0; mask < count; ++mask)
            if (mask & bit) h[mask] -= h[mask ^ bit];
    for (auto &p : h) p = clamp_probability(p);
    return h;
}

GcpDistribution exact_gcp(const QuadratureCovariance &covariance, const GcpSpec &spec, unsigned threads) {
    if (spec.modes != covariance.modes) fail(ErrorCode::dimension_mismatch, "GCP spec and covariance mode counts differ");
    const auto probabilities = all_pattern_probabilities(covariance, threads);
    GcpDistribution dist;
    dist.spec = spec;
    dist.shape = spec.shape();
    dist.source = GcpSource::exact;
    dist.probabilities.assign(spec.bin_count(), 0.0);
    dist.sigma.assign(spec.bin_count(), 0.0);
    for (std::size_t mask = 0; mask < probabilities.size(); ++mask) {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < spec.subsets.size(); ++a) {
            std::size_t m = 0;
            for (std::size_t i : spec.subsets[a]) m += mask >> i & 1U;
            flat = flat * dist.shape[a] + m;
        }
        dist.probabilities[flat] += probabilities[mask];
    }
    return dist;
}

}  // namespace gbs
