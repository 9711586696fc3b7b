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
#include <optional>
#include <string>
#include <vector>

#include "gbs/sampler.hpp"
#include "gbs/states.hpp"

namespace gbs {

/// Everything one pipeline run needs. Loaded from an INI file:
///
///   [state]    kind, r (list or scalar), inputs, epsilon, modes, n (squashed override)
///   [network]  haar_seed | matrix_file, t
///   [gcp]      d, subsets ("0 1 2; 3 4 5"), permutation_seed, n_permutation_tests
///   [run]      ensembles, blocks, representation, patterns
///   [seeds]    ensemble, faker, partition
///   [outputs]  directory
///   [data]     patterns, theory, label
struct RunConfig {
    GaussianInputSpec state;
    Representation representation = Representation::positive_p;

    struct Network {
        std::optional<std::uint64_t> haar_seed;
        std::optional<std::string> matrix_file;
        double t = 1.0;
    } network;

    struct Gcp {
        std::size_t d = 1;
        std::optional<std::vector<std::vector<std::size_t>>> subsets;
        std::optional<std::uint64_t> permutation_seed;
        std::size_t n_permutation_tests = 0;
    } gcp;

    std::size_t ensembles = 0;
    std::size_t blocks = 100;
    /// Number of faked patterns; defaults to `ensembles`.
    std::size_t patterns = 0;

    struct Seeds {
        std::optional<std::uint64_t> ensemble;
        std::optional<std::uint64_t> faker;
        std::optional<std::uint64_t> partition;
    } seeds;

    std::string output_dir = ".";

    struct Data {
        std::optional<std::string> patterns;
        std::optional<std::string> theory;
        std::optional<std::string> label;
    } data;

    /// Effective settings (after overrides) plus digests of referenced files.
    std::string canonical;
    /// SHA-256 of `canonical`.
    std::string hash;
};

/// `overrides` are "key=value" strings. A bare key names a [seeds] entry
/// ("ensemble=5"); "haar_seed" maps to [network]; "section.key" sets any entry.
RunConfig load_run_config(const std::string &path, const std::vector<std::string> &overrides = {});
RunConfig parse_run_config(const std::string &text, const std::string &base_dir,
                           const std::vector<std::string> &overrides = {});

}  // namespace gbs
