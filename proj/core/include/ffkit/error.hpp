// Copyright 2026 The ffkit Authors
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

namespace ffkit {

enum class ErrorCode {
    invalid_size,
    invalid_input,
    invalid_parameter,
    gapless_input,
    unsupported_model,
    impure_state,
    capacity_exceeded,
    configuration,
    undefined_fit,
};

const char *to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (notably the CLI) can map it onto an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what);
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what);

}  // namespace ffkit
