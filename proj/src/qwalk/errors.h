// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_ERRORS_H
#define QWALK_ERRORS_H

#include <stdexcept>
#include <string>

namespace qwalk {

/// Raised when an internal consistency check fails (norm drift, leakage,
/// a compiled block that no longer matches its source). Distinct from
/// std::invalid_argument, which signals bad caller input.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string &msg) : std::runtime_error(msg) {
    }
};

}  // namespace qwalk

#endif
