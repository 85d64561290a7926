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

#include "qss/schemes.h"

#include <stdexcept>

#include "qss/linalg.h"

namespace qss {

Scheme threshold_3_5_scheme() {
    GraphCode code(2, Graph::cycle(5), PauliString::parse_labels("Z1 Z2 Z3 Z4 Z5", 2, 5));
    std::vector<LogicalOperatorPair> pairs = {
        {{1, 2, 3}, PauliString::parse_labels("- Y1 Z2 Y3", 2, 5), PauliString::parse_labels("Z1 X2 Z3", 2, 5)},
        {{1, 3, 4}, PauliString::parse_labels("- Z1 X3 X4", 2, 5), PauliString::parse_labels("X1 Y3 Y4", 2, 5)},
    };
    return Scheme("threshold-3-5", std::move(code), AccessStructure::threshold(3, 5), std::move(pairs));
}

Scheme qutrit_2_3_scheme() {
    Graph triangle(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    GraphCode code(3, std::move(triangle), PauliString::parse_labels("Z2 Z3^2", 3, 3));
    return Scheme("qutrit-2-3", std::move(code), AccessStructure::threshold(2, 3));
}

Scheme trivial_scheme(int q) {
    GraphCode code(q, Graph(1), PauliString::single(q, 1, 0, 1, 0));
    return Scheme("trivial-" + std::to_string(q), std::move(code), AccessStructure::threshold(1, 1));
}

Scheme builtin_scheme(const std::string& name) {
    if (name == "threshold-3-5") {
        return threshold_3_5_scheme();
    }
    if (name == "qutrit-2-3") {
        return qutrit_2_3_scheme();
    }
    if (name.rfind("trivial-", 0) == 0) {
        int q = 0;
        try {
            q = std::stoi(name.substr(8));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown built-in scheme: " + name);
        }
        if (!is_prime(q)) {
            throw std::invalid_argument("unknown built-in scheme: " + name);
        }
        return trivial_scheme(q);
    }
    throw std::invalid_argument("unknown built-in scheme: " + name);
}

std::vector<std::string> builtin_scheme_names() { return {"threshold-3-5", "qutrit-2-3", "trivial-2", "trivial-3"}; }

}  // namespace qss
