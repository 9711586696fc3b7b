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

#include "gbs/error.hpp"

namespace gbs {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::invalid_dimension: return "invalid_dimension";
        case ErrorCode::domain: return "domain_error";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::representation_violation: return "representation_violation";
        case ErrorCode::cost_guard: return "cost_guard";
        case ErrorCode::config: return "config_error";
        case ErrorCode::data: return "data_error";
        case ErrorCode::io: return "io_error";
        case ErrorCode::numerical_guard: return "numerical_guard";
        case ErrorCode::no_valid_bins: return "no_valid_bins";
    }
    return "unknown";
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument:
        case ErrorCode::invalid_dimension:
        case ErrorCode::domain:
        case ErrorCode::representation_violation:
        case ErrorCode::cost_guard:
        case ErrorCode::config:
            return 2;
        case ErrorCode::dimension_mismatch:
        case ErrorCode::data:
        case ErrorCode::io:
        case ErrorCode::no_valid_bins:
            return 3;
        case ErrorCode::numerical_guard:
            return 4;
    }
    return 1;
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string &message) { throw Error(code, message); }

}  // namespace gbs
