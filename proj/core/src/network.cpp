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

#include "gbs/network.hpp"

#include <cmath>

#include "gbs/error.hpp"
#include "gbs/rng.hpp"

namespace gbs {

UnitaryMatrix generate_haar_unitary(std::size_t modes, std::uint64_t seed) {
    if (modes == 0) fail(ErrorCode::invalid_dimension, "unitary dimension must be at least 1");
    const auto m = static_cast<Eigen::Index>(modes);

    // Column j of the Ginibre matrix draws from subject j so entries do not
    // depend on evaluation order.
    ComplexMatrix ginibre(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        CounterRng rng(seed, static_cast<std::uint64_t>(j), Stream::ginibre);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            ginibre(i, j) = Complex(re, im) * M_SQRT1_2;
        }
    }

    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < m; ++j) {
        const Complex diag = r(j, j);
        const double magnitude = std::abs(diag);
        const Complex phase = magnitude > 0.0 ? diag / magnitude : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return UnitaryMatrix{std::move(q), seed};
}

TransmissionMatrix make_transmission(const UnitaryMatrix &unitary, double intensity_transmission) {
    if (!(intensity_transmission >= 0.0) || !std::isfinite(intensity_transmission))
        fail(ErrorCode::domain, "transmission must be a finite non-negative number");
    TransmissionMatrix out;
    out.entries = unitary.entries * std::sqrt(intensity_transmission);
    out.intensity_transmission = intensity_transmission;
    out.haar_seed = unitary.seed;
    return out;
}

TransmissionMatrix make_transmission(const TransmissionMatrix &base, double intensity_transmission) {
    if (!(intensity_transmission >= 0.0) || !std::isfinite(intensity_transmission))
        fail(ErrorCode::domain, "transmission must be a finite non-negative number");
    TransmissionMatrix out = base;
    out.entries = base.entries * std::sqrt(intensity_transmission);
    out.intensity_transmission = base.intensity_transmission * intensity_transmission;
    return out;
}

TransmissionMatrix transmission_from_matrix(ComplexMatrix entries) {
    if (entries.cols() < 1 || entries.rows() < entries.cols())
        fail(ErrorCode::invalid_dimension, "transmission matrix must be M x N with M >= N >= 1");
    TransmissionMatrix out;
    out.entries = std::move(entries);
    return out;
}

UnitarityReport unitarity_defect(const ComplexMatrix &matrix) {
    const auto rows = matrix.rows();
    const ComplexMatrix gram = matrix * matrix.adjoint();
    const ComplexMatrix identity = ComplexMatrix::Identity(rows, rows);

    UnitarityReport report;
    report.defect = rows == 0 ? 0.0 : (gram - identity).cwiseAbs().maxCoeff();

    const ComplexMatrix loss = identity - gram;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(loss, Eigen::EigenvaluesOnly);
    report.min_loss_eigenvalue = rows == 0 ? 0.0 : solver.eigenvalues().minCoeff();
    report.physical = report.min_loss_eigenvalue >= -1e-10;
    return report;
}

UnitarityReport unitarity_defect(const TransmissionMatrix &transmission) {
    return unitarity_defect(transmission.entries);
}

}  // namespace gbs
