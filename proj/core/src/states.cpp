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

#include "gbs/states.hpp"

#include <cmath>

#include "gbs/error.hpp"

namespace gbs {

std::string_view to_string(StateKind kind) {
    switch (kind) {
        case StateKind::pure_squeezed: return "pure_squeezed";
        case StateKind::thermalized: return "thermalized";
        case StateKind::thermal: return "thermal";
        case StateKind::squashed: return "squashed";
        case StateKind::squished: return "squished";
        case StateKind::vacuum: return "vacuum";
    }
    return "unknown";
}

StateKind parse_state_kind(std::string_view text) {
    for (auto kind : {StateKind::pure_squeezed, StateKind::thermalized, StateKind::thermal,
                      StateKind::squashed, StateKind::squished, StateKind::vacuum})
        if (text == to_string(kind)) return kind;
    if (text == "squeezed") return StateKind::pure_squeezed;
    fail(ErrorCode::config, "unknown state kind '" + std::string(text) + "'");
}

GaussianModeMoments moments_from(std::vector<double> n, std::vector<double> m_tilde) {
    if (n.size() != m_tilde.size()) fail(ErrorCode::dimension_mismatch, "n and m_tilde lengths differ");
    GaussianModeMoments out;
    out.var_x.resize(n.size());
    out.var_y.resize(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        if (!(n[j] >= 0.0) || !std::isfinite(n[j])) fail(ErrorCode::domain, "photon number must be finite and >= 0");
        if (!(m_tilde[j] >= 0.0) || m_tilde[j] > std::sqrt(n[j] * (n[j] + 1.0)) + 1e-12)
            fail(ErrorCode::domain, "coherence exceeds the Gaussian bound sqrt(n(n+1))");
        out.var_x[j] = 2.0 * (n[j] + m_tilde[j]);
        out.var_y[j] = 2.0 * (n[j] - m_tilde[j]);
    }
    out.n = std::move(n);
    out.m_tilde = std::move(m_tilde);
    return out;
}

GaussianModeMoments derive_moments(const GaussianInputSpec &spec) {
    if (spec.modes == 0) fail(ErrorCode::invalid_dimension, "mode count must be positive");
    if (spec.r.size() > spec.modes) fail(ErrorCode::invalid_dimension, "more squeezing parameters than modes");
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) fail(ErrorCode::domain, "epsilon must lie in [0, 1]");
    for (double r : spec.r)
        if (!std::isfinite(r)) fail(ErrorCode::domain, "squeezing parameters must be finite");
    if (spec.photon_numbers) {
        if (spec.kind != StateKind::squashed)
            fail(ErrorCode::invalid_argument, "photon number override is only valid for squashed states");
        if (spec.photon_numbers->size() != spec.r.size())
            fail(ErrorCode::dimension_mismatch, "photon number override must match the number of inputs");
    }

    std::vector<double> n(spec.modes, 0.0), m(spec.modes, 0.0);
    if (spec.kind != StateKind::vacuum) {
        for (std::size_t j = 0; j < spec.r.size(); ++j) {
            const double s = std::sinh(spec.r[j]);
            const double photons = s * s;
            const double coherence = std::sqrt(photons * (photons + 1.0));
            switch (spec.kind) {
                case StateKind::pure_squeezed:
                    n[j] = photons;
                    m[j] = coherence;
                    break;
                case StateKind::thermalized:
                    n[j] = photons;
                    m[j] = (1.0 - spec.epsilon) * coherence;
                    break;
                case StateKind::thermal:
                    n[j] = photons;
                    break;
                case StateKind::squished:
                    n[j] = photons;
                    m[j] = photons;
                    break;
                case StateKind::squashed:
                    n[j] = spec.photon_numbers ? (*spec.photon_numbers)[j] : photons;
                    m[j] = n[j];
                    break;
                case StateKind::vacuum:
                    break;
            }
        }
    }
    return moments_from(std::move(n), std::move(m));
}

std::vector<bool> is_classical(const GaussianModeMoments &moments) {
    std::vector<bool> out(moments.size());
    for (std::size_t j = 0; j < moments.size(); ++j)
        out[j] = moments.var_x[j] >= -1e-12 && moments.var_y[j] >= -1e-12;
    return out;
}

bool all_classical(const GaussianModeMoments &moments) {
    for (bool c : is_classical(moments))
        if (!c) return false;
    return true;
}

SymmetricVariances symmetric_variances(const GaussianModeMoments &moments) {
    SymmetricVariances out{moments.var_x, moments.var_y};
    for (auto &v : out.x) v += 1.0;
    for (auto &v : out.y) v += 1.0;
    return out;
}

}  // namespace gbs
