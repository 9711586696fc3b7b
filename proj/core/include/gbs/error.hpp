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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbs {

/// Error categories. Each maps onto one CLI exit code (see exit_code()).
enum class ErrorCode {
    invalid_argument,
    invalid_dimension,
    domain,
    dimension_mismatch,
    representation_violation,
    cost_guard,
    config,
    data,
    io,
    numerical_guard,
    no_valid_bins,
};

std::string_view to_string(ErrorCode code);

/// Exit status used by the command-line tool: 2 config, 3 data, 4 numerical guard.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

}  // namespace gbs
