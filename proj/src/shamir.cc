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

#include "qss/shamir.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qss/linalg.h"
#include "qss/rng.h"

namespace qss {

namespace {

long long pow_mod(long long base, long long e, int p) {
    long long r = 1;
    base = mod(base, p);
    while (e > 0) {
        if (e & 1) {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

long long inverse_mod(long long a, int p) { return pow_mod(a, p - 2, p); }

void check_digit(int value, int bound, const char* what) {
    if (value < 0 || value >= bound) {
        throw std::invalid_argument(std::string("key digit out of range: ") + what);
    }
}

}  // namespace

std::vector<int> KeyMaterial::q_string() const {
    std::vector<int> out(rounds, 0);
    out[use_round] = 1;
    return out;
}

std::vector<int> KeyMaterial::digits() const {
    std::vector<int> out = q_string();
    for (int i = 0; i < rounds; i++) {
        out.push_back(t[i].first);
        out.push_back(t[i].second);
        out.push_back(y[i]);
    }
    out.push_back(x0);
    out.push_back(x1);
    return out;
}

KeyMaterial KeyMaterial::from_digits(int rounds, int q, const std::vector<int>& digits) {
    if (rounds < 1 || digits.size() != static_cast<std::size_t>(4 * rounds + 2)) {
        throw std::invalid_argument("key digit string has the wrong length");
    }
    KeyMaterial k;
    k.rounds = rounds;
    k.q = q;
    int ones = 0;
    for (int i = 0; i < rounds; i++) {
        check_digit(digits[i], 2, "q-string");
        if (digits[i] == 1) {
            k.use_round = i;
            ones++;
        }
    }
    if (ones != 1) {
        throw std::invalid_argument("q-string must have exactly one marked round");
    }
    for (int i = 0; i < rounds; i++) {
        int base = rounds + 3 * i;
        check_digit(digits[base], q, "t1");
        check_digit(digits[base + 1], q, "t2");
        check_digit(digits[base + 2], q, "y");
        k.t.emplace_back(digits[base], digits[base + 1]);
        k.y.push_back(digits[base + 2]);
    }
    check_digit(digits[4 * rounds], q, "x0");
    check_digit(digits[4 * rounds + 1], q, "x1");
    k.x0 = digits[4 * rounds];
    k.x1 = digits[4 * rounds + 1];
    return k;
}

KeyMaterial KeyMaterial::random(int rounds, int q, const std::vector<TestSelector>& selectors, Rng& rng) {
    if (rounds < 1 || selectors.empty()) {
        throw std::invalid_argument("key needs at least one round and one selector");
    }
    KeyMaterial k;
    k.rounds = rounds;
    k.q = q;
    k.use_round = static_cast<int>(rng.uniform_int(rounds));
    for (int i = 0; i < rounds; i++) {
        TestSelector t = selectors[rng.uniform_int(selectors.size())];
        k.t.push_back(t);
        bool trivial = t.first == 0 && t.second == 0;
        k.y.push_back(trivial ? 0 : static_cast<int>(rng.uniform_int(q)));
    }
    k.x0 = static_cast<int>(rng.uniform_int(q));
    k.x1 = static_cast<int>(rng.uniform_int(q));
    return k;
}

int share_field_modulus(int num_players, int q) {
    int p = std::max(num_players, q - 1) + 1;
    while (!is_prime(p)) {
        p++;
    }
    return p;
}

std::vector<int> shamir_split(int secret, int k, int n, int p, Rng& rng) {
    if (k < 1 || k > n || n >= p) {
        throw std::invalid_argument("Shamir sharing needs 1 <= k <= n < p");
    }
    std::vector<long long> coeffs(k);
    coeffs[0] = mod(secret, p);
    for (int i = 1; i < k; i++) {
        coeffs[i] = static_cast<long long>(rng.uniform_int(p));
    }
    std::vector<int> shares(n);
    for (int x = 1; x <= n; x++) {
        long long acc = 0;
        for (int i = k - 1; i >= 0; i--) {
            acc = (acc * x + coeffs[i]) % p;
        }
        shares[x - 1] = static_cast<int>(acc);
    }
    return shares;
}

int lagrange_at_zero(const std::vector<std::pair<int, int>>& points, int p) {
    long long acc = 0;
    for (std::size_t i = 0; i < points.size(); i++) {
        long long num = 1;
        long long den = 1;
        for (std::size_t j = 0; j < points.size(); j++) {
            if (i == j) {
                continue;
            }
            num = num * mod(-points[j].first, p) % p;
            den = den * mod(points[i].first - points[j].first, p) % p;
        }
        if (den == 0) {
            throw std::invalid_argument("interpolation points must have distinct x");
        }
        acc = (acc + mod(points[i].second, p) * num % p * inverse_mod(den, p)) % p;
    }
    return static_cast<int>(acc);
}

std::vector<KeyShare> share_key(const KeyMaterial& key, const AccessStructure& access, Rng& rng) {
    const int n = access.num_players();
    const int p = share_field_modulus(n, key.q);
    const std::vector<int> digits = key.digits();
    std::vector<KeyShare> out(n);
    for (int j = 0; j < n; j++) {
        out[j].player = j + 1;
        out[j].modulus = p;
        out[j].method = access.is_threshold() ? "shamir" : "replicated";
    }
    if (access.is_threshold()) {
        for (auto& s : out) {
            s.blocks.push_back({{}, {}});
        }
        for (int d : digits) {
            std::vector<int> shares = shamir_split(d, access.threshold_k(), n, p, rng);
            for (int j = 0; j < n; j++) {
                out[j].blocks[0].values.push_back(shares[j]);
            }
        }
        return out;
    }
    for (const auto& set : access.minimal_sets()) {
        std::vector<std::vector<int>> parts(set.size());
        for (int d : digits) {
            long long rest = d;
            for (std::size_t m = 0; m + 1 < set.size(); m++) {
                int r = static_cast<int>(rng.uniform_int(p));
                parts[m].push_back(r);
                rest -= r;
            }
            parts.back().push_back(mod(rest, p));
        }
        for (std::size_t m = 0; m < set.size(); m++) {
            out[set[m] - 1].blocks.push_back({set, parts[m]});
        }
    }
    return out;
}

KeyMaterial reconstruct_key(const std::vector<KeyShare>& shares, const AccessStructure& access, int rounds, int q) {
    std::map<int, const KeyShare*> by_player;
    for (const KeyShare& s : shares) {
        by_player[s.player] = &s;
    }
    std::vector<int> holders;
    for (const auto& [player, share] : by_player) {
        holders.push_back(player);
    }
    std::vector<int> core;
    try {
        core = access.authorized_core(holders);
    } catch (const std::invalid_argument& e) {
        throw ReconstructionError(e.what());
    }
    if (core.empty()) {
        throw ReconstructionError("share holders do not form an authorized set");
    }
    const std::size_t len = static_cast<std::size_t>(4 * rounds + 2);
    const int p = share_field_modulus(access.num_players(), q);
    std::vector<int> digits(len, 0);
    for (int player : core) {
        if (by_player[player]->modulus != p) {
            throw ReconstructionError("share field modulus mismatch");
        }
    }
    if (access.is_threshold()) {
        for (std::size_t d = 0; d < len; d++) {
            std::vector<std::pair<int, int>> points;
            for (int player : core) {
                const auto& blocks = by_player[player]->blocks;
                if (blocks.size() != 1 || blocks[0].values.size() != len) {
                    throw ReconstructionError("malformed Shamir share");
                }
                points.emplace_back(player, blocks[0].values[d]);
            }
            digits[d] = lagrange_at_zero(points, p);
        }
    } else {
        for (int player : core) {
            const auto& blocks = by_player[player]->blocks;
            auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ShareBlock& b) { return b.set == core; });
            if (it == blocks.end() || it->values.size() != len) {
                throw ReconstructionError("missing replicated share block");
            }
            for (std::size_t d = 0; d < len; d++) {
                digits[d] = mod(static_cast<long long>(digits[d]) + it->values[d], p);
            }
        }
    }
    try {
        return KeyMaterial::from_digits(rounds, q, digits);
    } catch (const std::invalid_argument& e) {
        throw ReconstructionError(std::string("reconstructed key is invalid: ") + e.what());
    }
}

}  // namespace qss
