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

#include <vector>

namespace qss {

/// Monotone family of authorized player sets over labels 1..n.
class AccessStructure {
   public:
    /// Any k of n players. Requires 2k > n (no-cloning).
    static AccessStructure threshold(int k, int n);
    /// Authorized sets are the supersets of `sets`. Sets must pairwise intersect.
    static AccessStructure from_minimal_sets(int n, std::vector<std::vector<int>> sets);

    int num_players() const { return n_; }
    bool is_threshold() const { return k_ > 0; }
    /// k for threshold structures, 0 otherwise.
    int threshold_k() const { return k_; }

    bool is_authorized(const std::vector<int>& players) const;
    const std::vector<std::vector<int>>& minimal_sets() const { return minimal_; }
    /// First minimal authorized set contained in `players`; empty when none.
    std::vector<int> authorized_core(const std::vector<int>& players) const;

    /// Sorted, deduplicated copy; throws on labels outside 1..n.
    std::vector<int> normalize(std::vector<int> players) const;

   private:
    AccessStructure() = default;

    int n_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> minimal_;
};

/// All k-subsets of 1..n in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k);

}  // namespace qss
