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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gbs {

enum class StateKind { pure_squeezed, thermalized, thermal, squashed, squished, vacuum };

std::string_view to_string(StateKind kind);
StateKind parse_state_kind(std::string_view text);

/// Input-state description: N squeezing parameters feeding the first N of M modes.
struct GaussianInputSpec {
    StateKind kind = StateKind::pure_squeezed;
    std::vector<double> r;
    /// Thermalized fraction; only used by StateKind::thermalized.
    double epsilon = 0.0;
    std::size_t modes = 0;
    /// Squashed states only: explicit per-mode photon numbers replacing sinh^2 r.
    std::optional<std::vector<double>> photon_numbers;
};

/// Per-mode Gaussian moments in normally ordered convention (vacuum = 0).
///
/// var_x = 2(n + m), var_y = 2(n - m). var_y < 0 marks quadrature squeezing.
struct GaussianModeMoments {
    std::vector<double> n;
    std::vector<double> m_tilde;
    std::vector<double> var_x;
    std::vector<double> var_y;

    std::size_t size() const { return n.size(); }
};

GaussianModeMoments derive_moments(const GaussianInputSpec &spec);

/// Builds moments directly from (n, m) pairs, e.g. for externally fitted states.
GaussianModeMoments moments_from(std::vector<double> n, std::vector<double> m_tilde);

/// Per mode: no normally ordered quadrature variance below -1e-12.
std::vector<bool> is_classical(const GaussianModeMoments &moments);
bool all_classical(const GaussianModeMoments &moments);

/// Variances in symmetric units (vacuum = 1), as used for display.
struct SymmetricVariances {
    std::vector<double> x;
    std::vector<double> y;
};
SymmetricVariances symmetric_variances(const GaussianModeMoments &moments);

}  // namespace gbs
