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

#include "ffkit/error.hpp"

namespace ffkit {

const char *to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_size: return "invalid-size";
        case ErrorCode::invalid_input: return "invalid-input";
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::gapless_input: return "gapless-input";
        case ErrorCode::unsupported_model: return "unsupported-model";
        case ErrorCode::impure_state: return "impure-state";
        case ErrorCode::capacity_exceeded: return "capacity-exceeded";
        case ErrorCode::configuration: return "configuration";
        case ErrorCode::undefined_fit: return "undefined-fit";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

}  // namespace ffkit
