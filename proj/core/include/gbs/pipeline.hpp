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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbs/config.hpp"
#include "gbs/gcp.hpp"
#include "gbs/network.hpp"
#include "gbs/stats.hpp"

namespace gbs {

enum class PipelineMode { simulate, fake, compare, oracle, permtest };

std::string_view to_string(PipelineMode mode);
PipelineMode parse_pipeline_mode(std::string_view text);

struct RunOptions {
    /// Worker threads; never changes any output bit.
    unsigned threads = 1;
    /// Overrides [outputs] directory.
    std::optional<std::string> output_dir;
    /// Human-readable progress and tables; nullptr for silence.
    std::ostream *log = nullptr;
};

struct PermutationSummary {
    std::size_t tests = 0;
    double mean_z = 0.0;
    double stddev_z = 0.0;
    double min_z = 0.0;
    double max_z = 0.0;
};

struct PipelineResult {
    int exit_status = 0;
    std::vector<std::string> artifacts;
    std::vector<TestReport> reports;
    std::vector<GcpDistribution> distributions;
    std::optional<PermutationSummary> permutation_summary;
};

/// Network described by the config: Haar(seed) or a matrix file, scaled by t.
TransmissionMatrix build_transmission(const RunConfig &config);

/// Input moments trimmed to the network's input dimension.
GaussianModeMoments build_moments(const RunConfig &config, const TransmissionMatrix &transmission);

/// Grouped-count spec from [gcp] (explicit subsets or an equal partition).
GcpSpec build_gcp_spec(const RunConfig &config);

/// draw -> propagate -> click moments, for any trajectory range.
ClickSource make_click_source(const GaussianModeMoments &moments, Representation representation,
                              const TransmissionMatrix &transmission, std::uint64_t seed);

/// Executes one mode and writes its artifacts (each stamped with config.hash).
/// Module errors propagate as gbs::Error; see exit_code() for the CLI mapping.
PipelineResult run_pipeline(const RunConfig &config, PipelineMode mode, const RunOptions &options = {});

}  // namespace gbs
