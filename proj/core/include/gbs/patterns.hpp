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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gbs {

enum class PatternSource { experiment, classical_fake };

std::string_view to_string(PatternSource source);

/// Binary click patterns, stored row-major one byte per bit (0 or 1).
struct PatternSet {
    std::size_t modes = 0;
    std::vector<std::uint8_t> bits;
    PatternSource source = PatternSource::experiment;
    /// Free-form provenance, written as "# key: value" header lines.
    std::vector<std::pair<std::string, std::string>> metadata;

    std::size_t size() const { return modes == 0 ? 0 : bits.size() / modes; }
    std::span<const std::uint8_t> pattern(std::size_t i) const { return {bits.data() + i * modes, modes}; }
};

/// Text format: one pattern per line as M characters '0'/'1', LF-terminated;
/// lines starting with '#' are headers. Loaded sets are tagged as experiment
/// unless a "# source: classical_fake" header says otherwise.
PatternSet load_patterns(const std::string &path);
PatternSet parse_patterns(std::string_view text, const std::string &origin = "<memory>");
void write_patterns(const std::string &path, const PatternSet &patterns);

}  // namespace gbs
