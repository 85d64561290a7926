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

#include "qss/linalg.h"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qss/errors.h"

namespace qss {

Complex half_root(int q, long long k) {
    int r = mod(k, 2 * q);
    if (r == 0) {
        return {1.0, 0.0};
    }
    if (2 * r == 2 * q) {
        return {-1.0, 0.0};
    }
    if (q == 2) {
        return r == 1 ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
    }
    double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    return std::polar(1.0, angle);
}

Complex omega_pow(int q, long long k) { return half_root(q, 2 * static_cast<long long>(mod(k, q))); }

std::size_t checked_dim(int q, int n, std::size_t cap) {
    std::size_t dim = 1;
    for (int i = 0; i < n; i++) {
        dim *= static_cast<std::size_t>(q);
        if (dim > cap) {
            throw ResourceError("register of " + std::to_string(n) + " sites with q=" + std::to_string(q) +
                                " exceeds the dense size cap");
        }
    }
    return dim;
}

bool is_prime(int value) {
    if (value < 2) {
        return false;
    }
    for (int d = 2; d * d <= value; d++) {
        if (value % d == 0) {
            return false;
        }
    }
    return true;
}

Matrix kron(const Matrix& high, const Matrix& low) {
    Matrix out(high.rows() * low.rows(), high.cols() * low.cols());
    for (Eigen::Index i = 0; i < high.rows(); i++) {
        for (Eigen::Index j = 0; j < high.cols(); j++) {
            out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) = high(i, j) * low;
        }
    }
    return out;
}

double trace_distance(const Matrix& a, const Matrix& b) {
    Matrix diff = a - b;
    Matrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qss
