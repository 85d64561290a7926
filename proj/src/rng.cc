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

#include "qss/rng.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qss {

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(mix_seed(seed, 0)) {}

Rng::Rng(std::uint64_t master_seed, std::uint64_t trial_index)
    : engine_(mix_seed(mix_seed(master_seed, trial_index), 1)) {}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_int bound must be positive");
    }
    // rejection sampling keeps the draw exactly uniform
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

double Rng::uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform_real();
    } while (u1 <= 0.0);
    double u2 = uniform_real();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("categorical weights must have positive total");
    }
    double u = uniform_real() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); i++) {
        if (weights[i] > 0.0) {
            last_positive = i;
        }
        acc += weights[i];
        if (u < acc && weights[i] > 0.0) {
            return i;
        }
    }
    return last_positive;
}

Vector random_pure_vector(Rng& rng, Eigen::Index dim) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        double re = rng.normal();
        double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

Matrix random_density_matrix(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
    if (rank <= 0) {
        rank = dim;
    }
    Matrix g(dim, rank);
    for (Eigen::Index j = 0; j < rank; j++) {
        for (Eigen::Index i = 0; i < dim; i++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace qss
