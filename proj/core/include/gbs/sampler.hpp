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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbs/network.hpp"
#include "gbs/states.hpp"

namespace gbs {

enum class Representation { positive_p, diagonal_p };
enum class Stage { input, output };

std::string_view to_string(Representation representation);
Representation parse_representation(std::string_view text);

/// Stochastic trajectories in the doubled phase space.
///
/// alpha and beta are row-major [trajectory][mode]. Rows are numbered from
/// first_trajectory so that a chunk of a larger ensemble is bit-identical to
/// the corresponding rows of the full ensemble.
struct PhaseSpaceEnsemble {
    Representation representation = Representation::positive_p;
    Stage stage = Stage::input;
    std::uint64_t seed = 0;
    std::size_t first_trajectory = 0;
    std::size_t trajectories = 0;
    std::size_t modes = 0;
    std::vector<Complex> alpha;
    std::vector<Complex> beta;
    /// Every amplitude is real. Fixed by the input moments, never by the data,
    /// so all chunkings take the same arithmetic path.
    bool real_amplitudes = false;

    std::span<const Complex> alpha_row(std::size_t k) const { return {alpha.data() + k * modes, modes}; }
    std::span<const Complex> beta_row(std::size_t k) const { return {beta.data() + k * modes, modes}; }
};

/// Output photon numbers n' = alpha' beta' and click probabilities per trajectory.
struct ClickMoments {
    Representation representation = Representation::positive_p;
    std::size_t trajectories = 0;
    std::size_t modes = 0;
    std::vector<Complex> n_prime;
    /// exp(-n'), probability of no click.
    std::vector<Complex> pi0;
    /// 1 - exp(-n'), probability of a click.
    std::vector<Complex> pi1;

    std::span<const Complex> pi0_row(std::size_t k) const { return {pi0.data() + k * modes, modes}; }
    std::span<const Complex> pi1_row(std::size_t k) const { return {pi1.data() + k * modes, modes}; }
};

/// |n'| above this aborts the run: exp(-n') would overflow or the sampling has diverged.
inline constexpr double kMaxPhotonNumberMagnitude = 700.0;

/// Samples alpha_j = (dx w_j + i dy w_{j+M}) / 2, beta_j = (dx w_j - i dy w_{j+M}) / 2
/// with dx = sqrt(var_x), dy the principal square root of var_y.
///
/// Trajectory k draws its 2M noises from Philox keyed by (seed, k), so the
/// ensemble is independent of threading and chunking.
PhaseSpaceEnsemble draw_input_ensemble(const GaussianModeMoments &moments, Representation representation,
                                       std::size_t trajectories, std::uint64_t seed);

/// Rows [first, first + count) of the ensemble draw_input_ensemble would produce.
PhaseSpaceEnsemble draw_trajectories(const GaussianModeMoments &moments, Representation representation,
                                     std::uint64_t seed, std::size_t first, std::size_t count);

/// alpha' = T alpha, beta' = conj(T) beta for every trajectory.
PhaseSpaceEnsemble propagate(const PhaseSpaceEnsemble &ensemble, const TransmissionMatrix &transmission);

ClickMoments click_moments(const PhaseSpaceEnsemble &ensemble);

/// Click moments from given output photon numbers (row-major, trajectories x modes).
ClickMoments click_moments_from_photon_numbers(std::vector<Complex> n_prime, std::size_t trajectories,
                                               std::size_t modes, Representation representation);

/// Debug dump: "GBSENS01", E_S, M (uint64), representation, stage (uint32),
/// then alpha and beta as row-major complex doubles. Not a stable format.
void write_ensemble(const std::string &path, const PhaseSpaceEnsemble &ensemble);
PhaseSpaceEnsemble read_ensemble(const std::string &path);

}  // namespace gbs
