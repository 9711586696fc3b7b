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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"

namespace gbs {
namespace {

GaussianModeMoments single_mode(StateKind kind, double r) {
    return derive_moments(GaussianInputSpec{kind, {r}, 0.0, 1, std::nullopt});
}

GaussianModeMoments all_modes(StateKind kind, std::vector<double> r, std::size_t modes) {
    return derive_moments(GaussianInputSpec{kind, std::move(r), 0.0, modes, std::nullopt});
}

TEST(Representation, ParseAndPrint) {
    EXPECT_EQ(to_string(Representation::positive_p), "positive_P");
    EXPECT_EQ(to_string(Representation::diagonal_p), "diagonal_P");
    EXPECT_EQ(parse_representation("positive_P"), Representation::positive_p);
    EXPECT_EQ(parse_representation("diagonal_P"), Representation::diagonal_p);
    EXPECT_GBS_ERROR(parse_representation("Q"), ErrorCode::config);
}

TEST(InputSampling, VacuumGivesZeroAmplitudes) {
    const auto e = draw_input_ensemble(all_modes(StateKind::vacuum, {}, 4), Representation::positive_p, 100, 1);
    for (const auto &a : e.alpha) EXPECT_EQ(a, Complex(0.0, 0.0));
    for (const auto &b : e.beta) EXPECT_EQ(b, Complex(0.0, 0.0));
}

TEST(InputSampling, SqueezedAmplitudesAreRealAndIndependent) {
    const auto e = draw_input_ensemble(single_mode(StateKind::pure_squeezed, 1.0), Representation::positive_p, 1000, 3);
    EXPECT_TRUE(e.real_amplitudes);
    std::size_t distinct = 0;
    for (std::size_t k = 0; k < e.trajectories; ++k) {
        EXPECT_EQ(e.alpha[k].imag(), 0.0);
        EXPECT_EQ(e.beta[k].imag(), 0.0);
        if (e.alpha[k] != e.beta[k]) ++distinct;
    }
    EXPECT_EQ(distinct, e.trajectories);
}

TEST(InputSampling, SqueezedMomentsMatchStateParameters) {
    constexpr std::size_t samples = 1000000;
    const auto moments = single_mode(StateKind::pure_squeezed, 1.0);
    const auto e = draw_input_ensemble(moments, Representation::positive_p, samples, 11);
    const auto photons = testing::estimate_mean(samples, [&](std::size_t k) { return (e.alpha[k] * e.beta[k]).real(); });
    EXPECT_TRUE(photons.within(std::sinh(1.0) * std::sinh(1.0), 5.0)) << photons.mean;
    const auto coherence = testing::estimate_mean(samples, [&](std::size_t k) { return (e.alpha[k] * e.alpha[k]).real(); });
    EXPECT_TRUE(coherence.within(moments.m_tilde[0], 5.0)) << coherence.mean;
}

TEST(InputSampling, ThermalDiagonalPhotonNumber) {
    constexpr std::size_t samples = 1000000;
    const auto moments = single_mode(StateKind::thermal, testing::r_for_photons(1.0));
    const auto e = draw_input_ensemble(moments, Representation::diagonal_p, samples, 5);
    EXPECT_FALSE(e.real_amplitudes);
    for (std::size_t k = 0; k < 100; ++k) EXPECT_EQ(e.beta[k], std::conj(e.alpha[k]));
    const auto photons = testing::estimate_mean(samples, [&](std::size_t k) { return std::norm(e.alpha[k]); });
    EXPECT_TRUE(photons.within(1.0, 5.0)) << photons.mean;
    const auto coherence = testing::estimate_mean(samples, [&](std::size_t k) { return (e.alpha[k] * e.alpha[k]).real(); });
    EXPECT_TRUE(coherence.within(0.0, 5.0)) << coherence.mean;
}

TEST(InputSampling, DiagonalRejectsNonClassicalInputs) {
    EXPECT_GBS_ERROR(draw_input_ensemble(single_mode(StateKind::pure_squeezed, 0.5), Representation::diagonal_p, 10, 1),
                     ErrorCode::representation_violation);
    EXPECT_GBS_ERROR(draw_input_ensemble(single_mode(StateKind::thermal, 0.5), Representation::positive_p, 0, 1),
                     ErrorCode::invalid_argument);
}

TEST(InputSampling, ChunksReproduceTheFullEnsemble) {
    const auto moments = all_modes(StateKind::thermalized, {0.4, 0.9, 0.2}, 5);
    const auto full = draw_input_ensemble(moments, Representation::positive_p, 300, 77);
    const auto chunk = draw_trajectories(moments, Representation::positive_p, 77, 100, 150);
    for (std::size_t i = 0; i < chunk.alpha.size(); ++i) {
        ASSERT_EQ(chunk.alpha[i], full.alpha[100 * 5 + i]);
        ASSERT_EQ(chunk.beta[i], full.beta[100 * 5 + i]);
    }
    const auto transmission = make_transmission(generate_haar_unitary(5, 2), 0.6);
    const auto full_out = propagate(full, transmission);
    const auto chunk_out = propagate(chunk, transmission);
    for (std::size_t i = 0; i < chunk_out.alpha.size(); ++i) {
        ASSERT_EQ(chunk_out.alpha[i], full_out.alpha[100 * 5 + i]);
        ASSERT_EQ(chunk_out.beta[i], full_out.beta[100 * 5 + i]);
    }
}

TEST(Propagation, IdentityLeavesAmplitudesUnchanged) {
    const auto e = draw_input_ensemble(all_modes(StateKind::pure_squeezed, {0.3, 0.6, 0.9}, 3),
                                       Representation::positive_p, 200, 9);
    const auto out = propagate(e, transmission_from_matrix(ComplexMatrix::Identity(3, 3)));
    EXPECT_EQ(out.stage, Stage::output);
    for (std::size_t i = 0; i < e.alpha.size(); ++i) {
        EXPECT_EQ(out.alpha[i], e.alpha[i]);
        EXPECT_EQ(out.beta[i], e.beta[i]);
    }
    EXPECT_GBS_ERROR(propagate(out, transmission_from_matrix(ComplexMatrix::Identity(3, 3))),
                     ErrorCode::invalid_argument);
    EXPECT_GBS_ERROR(propagate(e, transmission_from_matrix(ComplexMatrix::Identity(4, 4))),
                     ErrorCode::dimension_mismatch);
}

TEST(Propagation, UniformLossScalesPhotonNumbers) {
    const auto e = draw_input_ensemble(all_modes(StateKind::pure_squeezed, {0.8, 0.8}, 2), Representation::positive_p,
                                       500, 4);
    const auto out = propagate(e, transmission_from_matrix(ComplexMatrix::Identity(2, 2) * std::sqrt(0.5)));
    for (std::size_t i = 0; i < e.alpha.size(); ++i)
        EXPECT_NEAR((out.alpha[i] * out.beta[i]).real(), 0.5 * (e.alpha[i] * e.beta[i]).real(), 1e-12);
}

TEST(Propagation, LosslessNetworkConservesPhotonsPerTrajectory) {
    constexpr std::size_t modes = 10;
    for (auto repr : {Representation::positive_p, Representation::diagonal_p}) {
        const auto kind = repr == Representation::positive_p ? StateKind::pure_squeezed : StateKind::thermal;
        const auto e = draw_input_ensemble(all_modes(kind, std::vector<double>(modes, 0.7), modes), repr, 200, 8);
        const auto out = propagate(e, make_transmission(generate_haar_unitary(modes, 13), 1.0));
        for (std::size_t k = 0; k < e.trajectories; ++k) {
            Complex before = 0.0, after = 0.0;
            for (std::size_t j = 0; j < modes; ++j) {
                before += e.alpha_row(k)[j] * e.beta_row(k)[j];
                after += out.alpha_row(k)[j] * out.beta_row(k)[j];
            }
            EXPECT_NEAR(std::abs(after - before), 0.0, 1e-12 * std::max(1.0, std::abs(before)));
        }
    }
}

TEST(Propagation, OutputPhotonNumbersFollowTransmissionIntensities) {
    constexpr std::size_t modes = 6, samples = 400000;
    const std::vector<double> r{0.9, 0.2, 0.6, 0.0, 1.0, 0.4};
    const auto moments = all_modes(StateKind::pure_squeezed, r, modes);
    const auto transmission = make_transmission(generate_haar_unitary(modes, 31), 0.7);
    const auto out = propagate(draw_input_ensemble(moments, Representation::positive_p, samples, 12), transmission);
    for (std::size_t i = 0; i < modes; ++i) {
        double expected = 0.0;
        for (std::size_t j = 0; j < modes; ++j) expected += std::norm(transmission.entries(i, j)) * moments.n[j];
        const auto estimate = testing::estimate_mean(samples, [&](std::size_t k) {
            return (out.alpha[k * modes + i] * out.beta[k * modes + i]).real();
        });
        EXPECT_TRUE(estimate.within(expected, 5.0)) << i << " " << estimate.mean << " vs " << expected;
    }
}

TEST(ClickMoments, ProbabilitiesFromPhotonNumbers) {
    const auto c = click_moments_from_photon_numbers({Complex(std::numbers::ln2, 0.0), Complex(0.0, 0.0)}, 1, 2,
                                                     Representation::diagonal_p);
    EXPECT_NEAR(c.pi0[0].real(), 0.5, 1e-15);
    EXPECT_NEAR(c.pi1[0].real(), 0.5, 1e-15);
    EXPECT_EQ(c.pi0[1], Complex(1.0, 0.0));
    EXPECT_EQ(c.pi1[1], Complex(0.0, 0.0));

    const auto complex_n = click_moments_from_photon_numbers({Complex(0.3, -1.2)}, 1, 1, Representation::positive_p);
    EXPECT_NEAR(std::abs(complex_n.pi0[0] - std::exp(-Complex(0.3, -1.2))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(complex_n.pi0[0] + complex_n.pi1[0] - 1.0), 0.0, 1e-15);
}

TEST(ClickMoments, OverflowGuardAndShapes) {
    EXPECT_GBS_ERROR(click_moments_from_photon_numbers({Complex(701.0, 0.0)}, 1, 1, Representation::positive_p),
                     ErrorCode::numerical_guard);
    EXPECT_GBS_ERROR(click_moments_from_photon_numbers({Complex(std::nan(""), 0.0)}, 1, 1, Representation::positive_p),
                     ErrorCode::numerical_guard);
    EXPECT_GBS_ERROR(click_moments_from_photon_numbers({Complex(1.0, 0.0)}, 2, 1, Representation::positive_p),
                     ErrorCode::dimension_mismatch);
    const auto e = draw_input_ensemble(single_mode(StateKind::thermal, 0.5), Representation::diagonal_p, 10, 1);
    EXPECT_GBS_ERROR(click_moments(e), ErrorCode::invalid_argument);
}

TEST(ClickMoments, DiagonalUsesModulusSquared) {
    const auto e = draw_input_ensemble(all_modes(StateKind::thermal, {0.5, 0.5}, 2), Representation::diagonal_p, 50, 2);
    const auto out = propagate(e, make_transmission(generate_haar_unitary(2, 1), 0.9));
    const auto c = click_moments(out);
    for (std::size_t i = 0; i < c.n_prime.size(); ++i) {
        EXPECT_EQ(c.n_prime[i].imag(), 0.0);
        EXPECT_NEAR(c.n_prime[i].real(), std::norm(out.alpha[i]), 1e-15);
    }
}

TEST(EnsembleDump, RoundTrip) {
    const auto dir = testing::scratch_dir("ensemble_dump");
    const auto e = draw_input_ensemble(all_modes(StateKind::thermalized, {0.4, 0.7}, 3), Representation::positive_p, 64, 6);
    const auto out = propagate(e, make_transmission(generate_haar_unitary(3, 2), 0.5));
    write_ensemble((dir / "e.bin").string(), out);
    const auto back = read_ensemble((dir / "e.bin").string());
    EXPECT_EQ(back.trajectories, out.trajectories);
    EXPECT_EQ(back.modes, out.modes);
    EXPECT_EQ(back.representation, out.representation);
    EXPECT_EQ(back.stage, Stage::output);
    EXPECT_EQ(back.alpha, out.alpha);
    EXPECT_EQ(back.beta, out.beta);

    testing::write_text(dir / "bad.bin", "NOTANENSEMBLE");
    EXPECT_GBS_ERROR(read_ensemble((dir / "bad.bin").string()), ErrorCode::data);
}

}  // namespace
}  // namespace gbs
