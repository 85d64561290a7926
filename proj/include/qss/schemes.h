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

#include <string>
#include <vector>

#include "qss/access.h"

namespace qss {

/// Threshold (3,5) qubit scheme on the 5-cycle, |1_L> = Z^{(x)5}|C5>, with registered
/// pairs for {1,2,3} and {1,3,4}; the other eight triples are searched.
Scheme threshold_3_5_scheme();

/// Threshold (2,3) qutrit scheme on a triangle, |i_L> = (Z_2 Z_3^2)^i |triangle>.
Scheme qutrit_2_3_scheme();

/// One player holding the whole code: |i_L> = Z^i|+>.
Scheme trivial_scheme(int q);

/// "threshold-3-5", "qutrit-2-3", "trivial-<q>".
Scheme builtin_scheme(const std::string& name);
std::vector<std::string> builtin_scheme_names();

}  // namespace qss
