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

#include "gbs/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

#include "gbs/error.hpp"
#include "gbs/rng.hpp"

namespace gbs {

namespace {

constexpr std::size_t kLane = 64;

// Row-major split copy of T (and of conj(T) through the sign of imag).
struct SplitMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> re, im;

    explicit SplitMatrix(const ComplexMatrix &m)
        : rows(static_cast<std::size_t>(m.rows())), cols(static_cast<std::size_t>(m.cols())),
          re(rows * cols), im(rows * cols) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const Complex v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                re[i * cols + j] = v.real();
                im[i * cols + j] = v.imag();
            }
    }
};

// out = sign-adjusted T * in for up to kLane trajectories at once. Each output
// is summed over inputs in ascending order, independent of how many
// trajectories share the lane block.
void apply_block(const SplitMatrix &t, bool conjugate, bool real_input, std::span<const Complex> in,
                 std::span<Complex> out, std::size_t count) {
    const std::size_t n = t.cols, m = t.rows;
    std::vector<double> in_re(n * kLane, 0.0), in_im(n * kLane, 0.0);
    for (std::size_t k = 0; k < count; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            in_re[j * kLane + k] = in[k * n + j].real();
            in_im[j * kLane + k] = in[k * n + j].imag();
        }
    const double sign = conjugate ? -1.0 : 1.0;
    alignas(64) std::array<double, kLane> acc_re;
    alignas(64) std::array<double, kLane> acc_im;
    for (std::size_t i = 0; i < m; ++i) {
        acc_re.fill(0.0);
        acc_im.fill(0.0);
        const double *row_re = t.re.data() + i * n;
        const double *row_im = t.im.data() + i * n;
        if (real_input) {
            for (std::size_t j = 0; j < n; ++j) {
                const double tr = row_re[j], ti = sign * row_im[j];
                const double *a = in_re.data() + j * kLane;
                for (std::size_t k = 0; k < kLane; ++k) {
                    acc_re[k] += tr * a[k];
                    acc_im[k] += ti * a[k];
                }
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                const double tr = row_re[j], ti = sign * row_im[j];
                const double *a = in_re.data() + j * kLane;
                const double *b = in_im.data() + j * kLane;
                for (std::size_t k = 0; k < kLane; ++k) {
                    acc_re[k] += tr * a[k] - ti * b[k];
                    acc_im[k] += tr * b[k] + ti * a[k];
                }
            }
        }
        for (std::size_t k = 0; k < count; ++k) out[k * m + i] = Complex(acc_re[k], acc_im[k]);
    }
}

}  // namespace

std::string_view to_string(Representation representation) {
    return representation == Representation::positive_p ? "positive_P" : "diagonal_P";
}

Representation parse_representation(std::string_view text) {
    if (text == "positive_P" || text == "positive_p" || text == "positive-P") return Representation::positive_p;
    if (text == "diagonal_P" || text == "diagonal_p" || text == "diagonal-P") return Representation::diagonal_p;
    fail(ErrorCode::config, "unknown representation '" + std::string(text) + "'");
}

PhaseSpaceEnsemble draw_trajectories(const GaussianModeMoments &moments, Representation representation,
                                     std::uint64_t seed, std::size_t first, std::size_t count) {
    const std::size_t modes = moments.size();
    if (modes == 0) fail(ErrorCode::invalid_dimension, "moments describe zero modes");
    if (representation == Representation::diagonal_p && !all_classical(moments))
        fail(ErrorCode::representation_violation,
             "diagonal-P sampling requires classical inputs (a squeezed quadrature has no positive P function)");

    std::vector<double> dx(modes), dy(modes);
    std::vector<bool> squeezed(modes);
    bool real_amplitudes = true;
    for (std::size_t j = 0; j < modes; ++j) {
        dx[j] = std::sqrt(std::max(moments.var_x[j], 0.0));
        squeezed[j] = moments.var_y[j] < 0.0 && representation == Representation::positive_p;
        // principal root: sqrt(-v) = i sqrt(v), so i*dy is the real number -sqrt(v)
        dy[j] = squeezed[j] ? -std::sqrt(-moments.var_y[j]) : std::sqrt(std::max(moments.var_y[j], 0.0));
        if (!squeezed[j] && dy[j] != 0.0) real_amplitudes = false;
    }

    PhaseSpaceEnsemble out;
    out.representation = representation;
    out.stage = Stage::input;
    out.seed = seed;
    out.first_trajectory = first;
    out.trajectories = count;
    out.modes = modes;
    out.real_amplitudes = real_amplitudes;
    out.alpha.resize(count * modes);
    out.beta.resize(count * modes);

    std::vector<double> w(2 * modes);
    for (std::size_t k = 0; k < count; ++k) {
        CounterRng rng(seed, first + k, Stream::input_noise);
        for (auto &x : w) x = rng.normal();
        Complex *alpha = out.alpha.data() + k * modes;
        Complex *beta = out.beta.data() + k * modes;
        for (std::size_t j = 0; j < modes; ++j) {
            const double common = 0.5 * dx[j] * w[j];
            if (squeezed[j]) {
                const double quad = 0.5 * dy[j] * w[j + modes];
                alpha[j] = Complex(common + quad, 0.0);
                beta[j] = Complex(common - quad, 0.0);
            } else {
                const double quad = 0.5 * dy[j] * w[j + modes];
                alpha[j] = Complex(common, quad);
                beta[j] = Complex(common, -quad);
            }
        }
    }
    return out;
}

PhaseSpaceEnsemble draw_input_ensemble(const GaussianModeMoments &moments, Representation representation,
                                       std::size_t trajectories, std::uint64_t seed) {
    if (trajectories == 0) fail(ErrorCode::invalid_argument, "ensemble size must be positive");
    return draw_trajectories(moments, representation, seed, 0, trajectories);
}

PhaseSpaceEnsemble propagate(const PhaseSpaceEnsemble &ensemble, const TransmissionMatrix &transmission) {
    if (ensemble.stage != Stage::input) fail(ErrorCode::invalid_argument, "ensemble has already been propagated");
    if (transmission.dim_in() != ensemble.modes)
        fail(ErrorCode::dimension_mismatch, "transmission matrix has " + std::to_string(transmission.dim_in()) +
                                                " inputs but the ensemble has " + std::to_string(ensemble.modes) +
                                                " modes");
    const SplitMatrix t(transmission.entries);
    const std::size_t in_modes = ensemble.modes, out_modes = t.rows;

    PhaseSpaceEnsemble out;
    out.representation = ensemble.representation;
    out.stage = Stage::output;
    out.seed = ensemble.seed;
    out.first_trajectory = ensemble.first_trajectory;
    out.trajectories = ensemble.trajectories;
    out.modes = out_modes;
    out.real_amplitudes = false;
    out.alpha.resize(ensemble.trajectories * out_modes);
    out.beta.resize(ensemble.trajectories * out_modes);

    const bool diagonal = ensemble.representation == Representation::diagonal_p;
    for (std::size_t start = 0; start < ensemble.trajectories; start += kLane) {
        const std::size_t count = std::min(kLane, ensemble.trajectories - start);
        const std::span<const Complex> alpha_in(ensemble.alpha.data() + start * in_modes, count * in_modes);
        const std::span<Complex> alpha_out(out.alpha.data() + start * out_modes, count * out_modes);
        apply_block(t, false, ensemble.real_amplitudes, alpha_in, alpha_out, count);
        if (diagonal) {
            for (std::size_t i = 0; i < count * out_modes; ++i) out.beta[start * out_modes + i] = std::conj(alpha_out[i]);
        } else {
            const std::span<const Complex> beta_in(ensemble.beta.data() + start * in_modes, count * in_modes);
            const std::span<Complex> beta_out(out.beta.data() + start * out_modes, count * out_modes);
            apply_block(t, true, ensemble.real_amplitudes, beta_in, beta_out, count);
        }
    }
    return out;
}

ClickMoments click_moments_from_photon_numbers(std::vector<Complex> n_prime, std::size_t trajectories,
                                               std::size_t modes, Representation representation) {
    if (n_prime.size() != trajectories * modes)
        fail(ErrorCode::dimension_mismatch, "photon number array does not match trajectories x modes");
    ClickMoments out;
    out.representation = representation;
    out.trajectories = trajectories;
    out.modes = modes;
    out.pi0.resize(n_prime.size());
    out.pi1.resize(n_prime.size());
    for (std::size_t i = 0; i < n_prime.size(); ++i) {
        const Complex n = n_prime[i];
        if (!(std::abs(n) <= kMaxPhotonNumberMagnitude))
            fail(ErrorCode::numerical_guard, "trajectory " + std::to_string(i / std::max<std::size_t>(modes, 1)) +
                                                 " mode " + std::to_string(i % std::max<std::size_t>(modes, 1)) +
                                                 ": |n'| exceeds " + std::to_string(kMaxPhotonNumberMagnitude) +
                                                 " (divergent sampling)");
        const Complex p0 = n.imag() == 0.0 ? Complex(std::exp(-n.real()), 0.0) : std::exp(-n);
        out.pi0[i] = p0;
        out.pi1[i] = Complex(1.0, 0.0) - p0;
    }
    out.n_prime = std::move(n_prime);
    return out;
}

ClickMoments click_moments(const PhaseSpaceEnsemble &ensemble) {
    if (ensemble.stage != Stage::output) fail(ErrorCode::invalid_argument, "click moments need an output-stage ensemble");
    std::vector<Complex> n_prime(ensemble.alpha.size());
    if (ensemble.representation == Representation::diagonal_p) {
        for (std::size_t i = 0; i < n_prime.size(); ++i) n_prime[i] = Complex(std::norm(ensemble.alpha[i]), 0.0);
    } else {
        for (std::size_t i = 0; i < n_prime.size(); ++i) n_prime[i] = ensemble.alpha[i] * ensemble.beta[i];
    }
    return click_moments_from_photon_numbers(std::move(n_prime), ensemble.trajectories, ensemble.modes,
                                             ensemble.representation);
}

namespace {
constexpr char kEnsembleMagic[8] = {'G', 'B', 'S', 'E', 'N', 'S', '0', '1'};
}

void write_ensemble(const std::string &path, const PhaseSpaceEnsemble &ensemble) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot write ensemble file " + path);
    const std::uint64_t header[2] = {ensemble.trajectories, ensemble.modes};
    const std::uint32_t flags[2] = {static_cast<std::uint32_t>(ensemble.representation),
                                    static_cast<std::uint32_t>(ensemble.stage)};
    out.write(kEnsembleMagic, sizeof kEnsembleMagic);
    out.write(reinterpret_cast<const char *>(header), sizeof header);
    out.write(reinterpret_cast<const char *>(flags), sizeof flags);
    out.write(reinterpret_cast<const char *>(ensemble.alpha.data()),
              static_cast<std::streamsize>(ensemble.alpha.size() * sizeof(Complex)));
    out.write(reinterpret_cast<const char *>(ensemble.beta.data()),
              static_cast<std::streamsize>(ensemble.beta.size() * sizeof(Complex)));
}

PhaseSpaceEnsemble read_ensemble(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open ensemble file " + path);
    char magic[8];
    std::uint64_t header[2];
    std::uint32_t flags[2];
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char *>(header), sizeof header);
    in.read(reinterpret_cast<char *>(flags), sizeof flags);
    if (!in || std::memcmp(magic, kEnsembleMagic, sizeof magic) != 0 || flags[0] > 1 || flags[1] > 1)
        fail(ErrorCode::data, path + ": not an ensemble dump");
    PhaseSpaceEnsemble e;
    e.trajectories = header[0];
    e.modes = header[1];
    e.representation = static_cast<Representation>(flags[0]);
    e.stage = static_cast<Stage>(flags[1]);
    e.alpha.resize(e.trajectories * e.modes);
    e.beta.resize(e.trajectories * e.modes);
    in.read(reinterpret_cast<char *>(e.alpha.data()), static_cast<std::streamsize>(e.alpha.size() * sizeof(Complex)));
    in.read(reinterpret_cast<char *>(e.beta.data()), static_cast<std::streamsize>(e.beta.size() * sizeof(Complex)));
    if (!in) fail(ErrorCode::data, path + ": truncated ensemble dump");
    return e;
}

}  // namespace gbs
