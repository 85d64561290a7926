// Copyright 2026 The qss Authors
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

namespace qss {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the remaining failure classes so callers (and the CLI) can tell them apart.

/// A dense object would exceed the configured size cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A deterministic request hit a zero-probability branch or a singular quantity.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A protocol could not proceed (key reconstruction failed, runaway round count, ...).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No logical operator pair exists for the requested player set.
struct NoOperatorsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qss
