// Copyright 2026 The nilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "nilq/config.hpp"
#include "nilq/errors.hpp"
#include "nilq/state.hpp"

namespace nilq {

class ParseError : public InvalidInput {
   public:
    ParseError(const std::string &what, int line) : InvalidInput(what), line_(line) {
    }
    // 1-based line, 0 if unknown
    int line() const noexcept {
        return line_;
    }

   private:
    int line_;
};

// JSON {"n": int, "amps": [[re, im], ...]} or CSV rows "mask,re,im".
PureState parse_state_json(const std::string &text);
PureState parse_state_csv(const std::string &text);
PureState read_state_file(const std::string &path);
// Named state or file path.
PureState load_state(const std::string &arg);

FlowConfig parse_config_json(const std::string &text);
FlowConfig read_config_file(const std::string &path);
std::string config_to_json(const FlowConfig &cfg);

std::string state_to_json(const PureState &s);

}  // namespace nilq
