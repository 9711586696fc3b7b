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

#include <string>
#include <string_view>

#include "gbs/gcp.hpp"
#include "gbs/stats.hpp"

namespace gbs {

/// Lower-case hex SHA-256, used to stamp artifacts with their config.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string &path);

// GcpDistribution JSON:
//   {"config_hash", "source", "samples", "spec": {"modes", "subsets", "permutation_seed"},
//    "shape", "probabilities", "sigma", "raw_counts"?}
// Arrays are flattened row-major over "shape" (last axis fastest).
std::string gcp_to_json(const GcpDistribution &distribution, const std::string &config_hash);
GcpDistribution gcp_from_json(std::string_view text);
void write_gcp_json(const std::string &path, const GcpDistribution &distribution, const std::string &config_hash);
GcpDistribution read_gcp_json(const std::string &path);

/// One row per bin: m_1..m_d, probability, sigma, counts. Leading "# config_hash=" line.
void write_gcp_csv(const std::string &path, const GcpDistribution &distribution, const std::string &config_hash);

std::string report_to_json(const TestReport &report, const std::string &config_hash);
void write_report_json(const std::string &path, const TestReport &report, const std::string &config_hash);
/// Human-readable summary with the Z_XY naming, e.g. "Z_CT".
std::string format_report_table(const TestReport &report);

}  // namespace gbs
