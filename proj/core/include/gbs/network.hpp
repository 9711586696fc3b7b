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
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace gbs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Square unitary with the seed it was generated from.
struct UnitaryMatrix {
    ComplexMatrix entries;
    std::uint64_t seed = 0;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Linear network map T (M outputs x N inputs, N <= M).
///
/// Amplitudes propagate as alpha' = T alpha. The loss complement B with
/// B B^dagger = I - T T^dagger is never built: vacuum entering the loss ports
/// carries no normally ordered noise.
struct TransmissionMatrix {
    ComplexMatrix entries;
    /// Intensity transmission t applied on top of the source matrix.
    double intensity_transmission = 1.0;
    std::optional<std::uint64_t> haar_seed;

    std::size_t dim_out() const { return static_cast<std::size_t>(entries.rows()); }
    std::size_t dim_in() const { return static_cast<std::size_t>(entries.cols()); }
};

/// Haar-random M x M unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q. Deterministic in (M, seed).
UnitaryMatrix generate_haar_unitary(std::size_t modes, std::uint64_t seed);

/// T = sqrt(t) U. t > 1 is accepted (fit correction) and shows up as an
/// unphysical unitarity report rather than an error.
TransmissionMatrix make_transmission(const UnitaryMatrix &unitary, double intensity_transmission);

/// Further scales an existing transmission matrix; intensities compose multiplicatively.
TransmissionMatrix make_transmission(const TransmissionMatrix &base, double intensity_transmission);

/// Wraps an arbitrary (e.g. measured) matrix. Requires rows >= cols >= 1.
TransmissionMatrix transmission_from_matrix(ComplexMatrix entries);

struct UnitarityReport {
    /// max |(T T^dagger - I)_ij|
    double defect = 0.0;
    /// Smallest eigenvalue of I - T T^dagger.
    double min_loss_eigenvalue = 0.0;
    /// min_loss_eigenvalue >= -1e-10
    bool physical = true;
};

UnitarityReport unitarity_defect(const TransmissionMatrix &transmission);
UnitarityReport unitarity_defect(const ComplexMatrix &matrix);

// Matrix files: JSON {"m", "n", "re", "im"} with row-major arrays, or CSV
// rows of alternating re,im columns. Both round-trip doubles exactly.
ComplexMatrix read_matrix_json(const std::string &path);
void write_matrix_json(const std::string &path, const ComplexMatrix &matrix);
ComplexMatrix read_matrix_csv(const std::string &path);
void write_matrix_csv(const std::string &path, const ComplexMatrix &matrix);
/// Dispatches on the file extension (.json, otherwise CSV).
ComplexMatrix read_matrix(const std::string &path);

}  // namespace gbs
