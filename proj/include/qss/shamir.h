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
#include <utility>
#include <vector>

#include "qss/access_structure.h"
#include "qss/errors.h"

namespace qss {

class Rng;

/// Test selector t = (t1, t2): the round measures Z^{t1} X^{t2} (dealer side transposed).
using TestSelector = std::pair<int, int>;

/// Classical key of the non-interactive protocols.
struct KeyMaterial {
    int rounds = 0;
    int q = 2;
    /// Use round, 0-based; q_string()[r] == 1.
    int use_round = 0;
    std::vector<TestSelector> t;
    std::vector<int> y;
    int x0 = 0;
    int x1 = 0;

    std::vector<int> q_string() const;

    /// Flat digit string: q-string, then (t1, t2, y) per round, then x0, x1.
    std::vector<int> digits() const;
    static KeyMaterial from_digits(int rounds, int q, const std::vector<int>& digits);

    /// r uniform over rounds, t uniform over `selectors`, y uniform (0 for the trivial
    /// selector), pad uniform. The use round still carries a drawn t and y.
    static KeyMaterial random(int rounds, int q, const std::vector<TestSelector>& selectors, Rng& rng);

    bool operator==(const KeyMaterial& other) const = default;
};

struct ReconstructionError : ProtocolError {
    using ProtocolError::ProtocolError;
};

struct ShareBlock {
    /// Minimal authorized set this block belongs to; empty for Shamir shares.
    std::vector<int> set;
    std::vector<int> values;
};

struct KeyShare {
    int player = 0;
    int modulus = 0;
    /// "shamir" or "replicated".
    std::string method;
    std::vector<ShareBlock> blocks;
};

/// Smallest prime strictly larger than max(n, q - 1).
int share_field_modulus(int num_players, int q);

/// Shares of one digit at x = 1..n from a random degree k-1 polynomial over GF(p).
std::vector<int> shamir_split(int secret, int k, int n, int p, Rng& rng);
/// Value at x = 0 of the interpolating polynomial through `points` (distinct x).
int lagrange_at_zero(const std::vector<std::pair<int, int>>& points, int p);

std::vector<KeyShare> share_key(const KeyMaterial& key, const AccessStructure& access, Rng& rng);

/// Reconstructs from the shares held by a player set; throws ReconstructionError when
/// the holders are not authorized or the shares are inconsistent.
KeyMaterial reconstruct_key(const std::vector<KeyShare>& shares, const AccessStructure& access, int rounds, int q);

}  // namespace qss
