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

#include <cstdint>
#include <random>
#include <vector>

#include "qss/linalg.h"

namespace qss {

/// Seeded generator for every random choice in a run. A trial's stream is derived
/// from (master_seed, trial_index) so trials are reproducible in isolation.
///
/// Uniform draws are computed from raw 64-bit output instead of the standard
/// distributions, which are implementation-defined.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t master_seed, std::uint64_t trial_index);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform_real();
    double normal();
    /// Index drawn with probability proportional to `weights`.
    std::size_t categorical(const std::vector<double>& weights);

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index);

/// Haar-random pure state of dimension `dim`.
Vector random_pure_vector(Rng& rng, Eigen::Index dim);
/// Density matrix drawn from the Hilbert-Schmidt ensemble (rank `rank`, 0 = full).
Matrix random_density_matrix(Rng& rng, Eigen::Index dim, Eigen::Index rank = 0);

}  // namespace qss
