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

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace qss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest number of dense entries any single state or operator may hold.
inline constexpr std::size_t kDenseEntryCap = std::size_t{1} << 20;

/// e^{i*pi*k/q}; the unit in which PauliString phases are counted.
Complex half_root(int q, long long k);

/// omega^k with omega = e^{2*pi*i/q}.
Complex omega_pow(int q, long long k);

/// q^n, throwing ResourceError if it exceeds `cap`.
std::size_t checked_dim(int q, int n, std::size_t cap = kDenseEntryCap);

bool is_prime(int value);

inline int mod(long long value, int modulus) {
    long long r = value % modulus;
    return static_cast<int>(r < 0 ? r + modulus : r);
}

/// Kronecker product with `low` on the fast-varying (low) sites.
Matrix kron(const Matrix& high, const Matrix& low);

/// Trace norm distance 0.5*||a-b||_1 of Hermitian matrices.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace qss
