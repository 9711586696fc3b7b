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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gbs/gcp.hpp"
#include "gbs/network.hpp"
#include "gbs/states.hpp"

namespace gbs {

/// Zero-mean Gaussian state as a 2M x 2M quadrature covariance in symmetric
/// units (vacuum = identity), ordered (x_1..x_M, y_1..y_M).
struct QuadratureCovariance {
    std::size_t modes = 0;
    Eigen::MatrixXd matrix;
};

/// V_out = I + S (V_in - I) S^T with S = [[Re T, -Im T], [Im T, Re T]] and
/// V_in = diag(var_x + 1, var_y + 1). Loss ports contribute vacuum.
QuadratureCovariance output_covariance(const GaussianModeMoments &moments, const TransmissionMatrix &transmission);

/// Probability that no mode in `subset` clicks: 1 / sqrt(det((V + I) / 2)|_subset).
double vacuum_probability(const QuadratureCovariance &covariance, std::span<const std::size_t> subset);

/// Exact threshold-detector probability of click pattern c by
/// inclusion-exclusion over the clicked modes. At most 20 clicks.
double pattern_probability(const QuadratureCovariance &covariance, std::span<const std::uint8_t> pattern);

inline constexpr std::size_t kMaxOracleModes = 16;

/// All 2^M pattern probabilities, indexed by the click mask (bit j = mode j
/// clicked). Uses one vacuum overlap per subset and a subset Moebius transform.
std::vector<double> all_pattern_probabilities(const QuadratureCovariance &covariance, unsigned threads = 1);

/// Exact GCP by exhaustive enumeration (M <= 16); sigma is zero.
GcpDistribution exact_gcp(const QuadratureCovariance &covariance, const GcpSpec &spec, unsigned threads = 1);

}  // namespace gbs
