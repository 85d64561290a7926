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

#include "qss/access_structure.h"

#include <algorithm>
#include <stdexcept>

namespace qss {

namespace {

bool contains(const std::vector<int>& outer, const std::vector<int>& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
    for (int v : a) {
        if (std::binary_search(b.begin(), b.end(), v)) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) {
        return out;
    }
    std::vector<int> cur(k);
    for (int i = 0; i < k; i++) {
        cur[i] = i + 1;
    }
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i + 1) {
            i--;
        }
        if (i < 0) {
            break;
        }
        cur[i]++;
        for (int j = i + 1; j < k; j++) {
            cur[j] = cur[j - 1] + 1;
        }
    }
    return out;
}

AccessStructure AccessStructure::threshold(int k, int n) {
    if (n < 1 || k < 1 || k > n) {
        throw std::invalid_argument("threshold needs 1 <= k <= n");
    }
    if (2 * k <= n) {
        throw std::invalid_argument("threshold quantum schemes need 2k > n");
    }
    AccessStructure a;
    a.n_ = n;
    a.k_ = k;
    a.minimal_ = subsets_of_size(n, k);
    return a;
}

AccessStructure AccessStructure::from_minimal_sets(int n, std::vector<std::vector<int>> sets) {
    if (n < 1) {
        throw std::invalid_argument("access structure needs at least one player");
    }
    AccessStructure a;
    a.n_ = n;
    for (auto& s : sets) {
        s = a.normalize(std::move(s));
        if (s.empty()) {
            throw std::invalid_argument("authorized sets must be nonempty");
        }
    }
    std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    for (const auto& s : sets) {
        bool redundant = std::any_of(a.minimal_.begin(), a.minimal_.end(),
                                     [&](const std::vector<int>& m) { return contains(s, m); });
        if (!redundant) {
            a.minimal_.push_back(s);
        }
    }
    if (a.minimal_.empty()) {
        throw std::invalid_argument("access structure has no authorized set");
    }
    for (std::size_t i = 0; i < a.minimal_.size(); i++) {
        for (std::size_t j = i + 1; j < a.minimal_.size(); j++) {
            if (!intersects(a.minimal_[i], a.minimal_[j])) {
                throw std::invalid_argument("disjoint authorized sets violate no-cloning");
            }
        }
    }
    return a;
}

std::vector<int> AccessStructure::normalize(std::vector<int> players) const {
    std::sort(players.begin(), players.end());
    players.erase(std::unique(players.begin(), players.end()), players.end());
    for (int p : players) {
        if (p < 1 || p > n_) {
            throw std::invalid_argument("player label " + std::to_string(p) + " outside 1.." + std::to_string(n_));
        }
    }
    return players;
}

bool AccessStructure::is_authorized(const std::vector<int>& players) const {
    return !authorized_core(players).empty();
}

std::vector<int> AccessStructure::authorized_core(const std::vector<int>& players) const {
    std::vector<int> set = normalize(players);
    if (k_ > 0) {
        if (static_cast<int>(set.size()) < k_) {
            return {};
        }
        return std::vector<int>(set.begin(), set.begin() + k_);
    }
    for (const auto& m : minimal_) {
        if (contains(set, m)) {
            return m;
        }
    }
    return {};
}

}  // namespace qss
