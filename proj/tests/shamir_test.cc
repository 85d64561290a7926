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

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "qss/rng.h"

using namespace qss;

namespace {

std::vector<TestSelector> qubit_selectors() { return {{0, 1}, {1, 0}}; }

std::vector<KeyShare> pick(const std::vector<KeyShare>& all, const std::vector<int>& players) {
    std::vector<KeyShare> out;
    for (int p : players) {
        out.push_back(all[p - 1]);
    }
    return out;
}

// Mutual information (bits) of a joint count table.
double mutual_information(const std::map<std::pair<int, int>, int>& joint, int total) {
    std::map<int, int> left;
    std::map<int, int> right;
    for (const auto& [key, c] : joint) {
        left[key.first] += c;
        right[key.second] += c;
    }
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        double pxy = static_cast<double>(c) / total;
        double px = static_cast<double>(left[key.first]) / total;
        double py = static_cast<double>(right[key.second]) / total;
        mi += pxy * std::log2(pxy / (px * py));
    }
    return mi;
}

}  // namespace

TEST(access_structure, threshold_sets) {
    AccessStructure a = AccessStructure::threshold(3, 5);
    EXPECT_EQ(a.minimal_sets().size(), 10u);
    EXPECT_TRUE(a.is_authorized({1, 2, 3}));
    EXPECT_TRUE(a.is_authorized({5, 1, 3, 4}));
    EXPECT_FALSE(a.is_authorized({4, 5}));
    EXPECT_THROW(a.is_authorized({0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(AccessStructure::threshold(2, 4), std::invalid_argument);
    EXPECT_THROW(AccessStructure::threshold(6, 5), std::invalid_argument);
}

TEST(access_structure, minimal_sets) {
    AccessStructure a = AccessStructure::from_minimal_sets(4, {{1, 2}, {2, 3, 4}, {1, 2, 4}, {1, 3}});
    ASSERT_EQ(a.minimal_sets().size(), 3u);
    EXPECT_TRUE(a.is_authorized({1, 2, 4}));
    EXPECT_FALSE(a.is_authorized({2, 4}));
    EXPECT_EQ(a.authorized_core({4, 3, 1}), (std::vector<int>{1, 3}));
    EXPECT_THROW(AccessStructure::from_minimal_sets(4, {{1, 2}, {3, 4}}), std::invalid_argument);
    EXPECT_THROW(AccessStructure::from_minimal_sets(4, {{}}), std::invalid_argument);
}

TEST(shamir, field_modulus) {
    EXPECT_EQ(share_field_modulus(5, 2), 7);
    EXPECT_EQ(share_field_modulus(3, 3), 5);
    EXPECT_EQ(share_field_modulus(2, 11), 11);
    EXPECT_EQ(share_field_modulus(1, 2), 2);
}

TEST(shamir, interpolation_matches_direct_evaluation) {
    // f(x) = 4 + 3x + 5x^2 over GF(7), evaluated directly at 1..5
    const int p = 7;
    std::vector<int> values;
    for (int x = 1; x <= 5; x++) {
        values.push_back((4 + 3 * x + 5 * x * x) % p);
    }
    for (const auto& set : subsets_of_size(5, 3)) {
        std::vector<std::pair<int, int>> pts;
        for (int x : set) {
            pts.emplace_back(x, values[x - 1]);
        }
        EXPECT_EQ(lagrange_at_zero(pts, p), 4);
    }
    Rng rng(5);
    for (int secret = 0; secret < p; secret++) {
        std::vector<int> shares = shamir_split(secret, 3, 5, p, rng);
        EXPECT_EQ(lagrange_at_zero({{2, shares[1]}, {4, shares[3]}, {5, shares[4]}}, p), secret);
    }
    EXPECT_THROW(lagrange_at_zero({{1, 1}, {1, 2}}, p), std::invalid_argument);
}

TEST(shamir, key_round_trip_every_authorized_set) {
    Rng rng(11);
    AccessStructure a = AccessStructure::threshold(3, 5);
    for (int S : {1, 4, 9}) {
        KeyMaterial key = KeyMaterial::random(S, 2, qubit_selectors(), rng);
        auto shares = share_key(key, a, rng);
        for (int k = 3; k <= 5; k++) {
            for (const auto& set : subsets_of_size(5, k)) {
                EXPECT_EQ(reconstruct_key(pick(shares, set), a, S, 2), key);
            }
        }
    }
}

TEST(shamir, too_few_shares) {
    Rng rng(12);
    AccessStructure a = AccessStructure::threshold(3, 5);
    KeyMaterial key = KeyMaterial::random(3, 2, qubit_selectors(), rng);
    auto shares = share_key(key, a, rng);
    EXPECT_THROW(reconstruct_key(pick(shares, {1, 5}), a, 3, 2), ReconstructionError);
    EXPECT_THROW(reconstruct_key({}, a, 3, 2), ReconstructionError);
}

TEST(shamir, replicated_fallback) {
    Rng rng(13);
    AccessStructure a = AccessStructure::from_minimal_sets(4, {{1, 2}, {1, 3}, {2, 3, 4}});
    std::vector<TestSelector> all;
    for (int t1 = 0; t1 < 3; t1++) {
        for (int t2 = 0; t2 < 3; t2++) {
            all.emplace_back(t1, t2);
        }
    }
    KeyMaterial key = KeyMaterial::random(5, 3, all, rng);
    auto shares = share_key(key, a, rng);
    EXPECT_EQ(shares[0].method, "replicated");
    EXPECT_EQ(reconstruct_key(pick(shares, {1, 2}), a, 5, 3), key);
    EXPECT_EQ(reconstruct_key(pick(shares, {3, 1}), a, 5, 3), key);
    EXPECT_EQ(reconstruct_key(pick(shares, {2, 3, 4}), a, 5, 3), key);
    EXPECT_THROW(reconstruct_key(pick(shares, {2, 4}), a, 5, 3), ReconstructionError);
}

TEST(shamir, key_material_invariants) {
    Rng rng(14);
    KeyMaterial key = KeyMaterial::random(6, 2, qubit_selectors(), rng);
    auto qs = key.q_string();
    EXPECT_EQ(std::count(qs.begin(), qs.end(), 1), 1);
    EXPECT_EQ(KeyMaterial::from_digits(6, 2, key.digits()), key);
    std::vector<int> bad = key.digits();
    bad[(key.use_round + 1) % 6] = 1;
    EXPECT_THROW(KeyMaterial::from_digits(6, 2, bad), std::invalid_argument);
    std::vector<int> range = key.digits();
    range.back() = 2;
    EXPECT_THROW(KeyMaterial::from_digits(6, 2, range), std::invalid_argument);
    KeyMaterial trivial = KeyMaterial::random(20, 3, {{0, 0}}, rng);
    for (int y : trivial.y) {
        EXPECT_EQ(y, 0);
    }
}

TEST(shamir, two_shares_carry_no_information) {
    const int p = 7;
    // exact: enumerate every polynomial; each share pair appears equally often per secret
    std::map<std::pair<int, int>, int> exact;
    for (int d = 0; d < p; d++) {
        for (int a1 = 0; a1 < p; a1++) {
            for (int a2 = 0; a2 < p; a2++) {
                int s2 = (d + 2 * a1 + 4 * a2) % p;
                int s5 = (d + 5 * a1 + 25 * a2) % p;
                exact[{d, s2 * p + s5}]++;
            }
        }
    }
    EXPECT_NEAR(mutual_information(exact, p * p * p), 0.0, 1e-12);

    // sampled: plug-in estimate minus the Miller-Madow bias (R-1)(C-1)/(2N ln 2)
    Rng rng(15);
    const int trials = 10000;
    std::map<std::pair<int, int>, int> counts;
    for (int i = 0; i < trials; i++) {
        int d = static_cast<int>(rng.uniform_int(p));
        std::vector<int> s = shamir_split(d, 3, 5, p, rng);
        counts[{d, s[1] * p + s[4]}]++;
    }
    double bias = (p - 1) * (p * p - 1) / (2.0 * trials * std::log(2.0));
    EXPECT_LT(mutual_information(counts, trials) - bias, 0.01);
}
