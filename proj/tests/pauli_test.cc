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

#include "qss/pauli.h"

#include <gtest/gtest.h>

#include "qss/errors.h"
#include "qss/rng.h"

using namespace qss;

namespace {

PauliString random_word(Rng& rng, int q, int n) {
    std::vector<int> z(n);
    std::vector<int> x(n);
    for (int s = 0; s < n; s++) {
        z[s] = static_cast<int>(rng.uniform_int(q));
        x[s] = static_cast<int>(rng.uniform_int(q));
    }
    return PauliString(q, z, x, static_cast<int>(rng.uniform_int(2 * q)));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(pauli, single_qubit_anticommutation) {
    PauliString x = PauliString::single(2, 1, 0, 0, 1);
    PauliString z = PauliString::single(2, 1, 0, 1, 0);
    PauliString xz = x * z;
    PauliString zx = z * x;
    EXPECT_EQ(xz, zx.with_phase(2));
    EXPECT_LT(max_abs(xz.to_matrix() - x.to_matrix() * z.to_matrix()), 1e-12);
    EXPECT_LT(max_abs(xz.to_matrix() + zx.to_matrix()), 1e-12);
    EXPECT_EQ(z.commutation_exponent(x), 1);
}

TEST(pauli, power_examples) {
    EXPECT_TRUE(PauliString::single(2, 1, 0, 0, 1).pow(2).is_identity());
    PauliString w = PauliString::single(3, 1, 0, 1, 2);
    EXPECT_TRUE(w.pow(0).is_identity());

    // dense oracle: (Z X^2)^3 as a 3x3 matrix product
    Matrix m = w.to_matrix();
    Matrix cube = m * m * m;
    PauliString p = w.pow(3);
    EXPECT_TRUE(p.is_scalar());
    EXPECT_LT(max_abs(cube - p.phase() * Matrix::Identity(3, 3)), 1e-12);

    PauliString zx = PauliString::single(3, 1, 0, 1, 1);
    Matrix zm = zx.to_matrix();
    Matrix zcube = zm * zm * zm;
    EXPECT_LT(max_abs(zcube - zx.pow(3).phase() * Matrix::Identity(3, 3)), 1e-12);
}

TEST(pauli, identity_and_x_matrices) {
    EXPECT_LT(max_abs(PauliString::identity(2, 2).to_matrix() - Matrix::Identity(4, 4)), 1e-15);
    Matrix x0 = PauliString::single(2, 2, 0, 0, 1).to_matrix();
    // |i0 i1> -> |(i0+1) i1>: swaps indices 0<->1 and 2<->3
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 0) = expected(0, 1) = expected(3, 2) = expected(2, 3) = 1.0;
    EXPECT_LT(max_abs(x0 - expected), 1e-15);
}

TEST(pauli, cycle_stabilizer_squares_to_identity) {
    PauliString k2 = PauliString::parse_labels("Z1 X2 Z3", 2, 5);
    Matrix m = k2.to_matrix();
    EXPECT_EQ(m.rows(), 32);
    EXPECT_LT(max_abs(m * m - Matrix::Identity(32, 32)), 1e-12);
    EXPECT_TRUE((k2 * k2).is_identity());
}

TEST(pauli, multiply_matches_matrices_and_is_associative) {
    Rng rng(11);
    for (int q : {2, 3, 5}) {
        int n = q == 5 ? 2 : 3;
        for (int trial = 0; trial < 30; trial++) {
            PauliString a = random_word(rng, q, n);
            PauliString b = random_word(rng, q, n);
            PauliString c = random_word(rng, q, n);
            EXPECT_LT(max_abs(a.to_matrix() * b.to_matrix() - (a * b).to_matrix()), 1e-12);
            EXPECT_EQ((a * b) * c, a * (b * c));
            Matrix ab = a.to_matrix() * b.to_matrix();
            Matrix ba = b.to_matrix() * a.to_matrix();
            EXPECT_LT(max_abs(ab - omega_pow(q, a.commutation_exponent(b)) * ba), 1e-12);
            EXPECT_LT(max_abs(a.dagger().to_matrix() - a.to_matrix().adjoint()), 1e-12);
            EXPECT_LT(max_abs(a.transpose().to_matrix() - a.to_matrix().transpose()), 1e-12);
            EXPECT_TRUE(a.without_phase().pow(q).is_scalar());
        }
    }
}

TEST(pauli, phase_free_power_q_is_scalar) {
    Rng rng(5);
    for (int q : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 20; trial++) {
            PauliString a = random_word(rng, q, 3).without_phase();
            PauliString p = a.pow(q);
            EXPECT_TRUE(p.is_scalar());
            if (q > 2) {
                EXPECT_TRUE(p.is_identity());
            }
        }
    }
}

TEST(pauli, text_round_trip) {
    PauliString p = PauliString::parse("w^3 . Z1X2 @ 0 ; Z0X1 @ 2", 3, 4);
    EXPECT_EQ(p.phase_exp(), 3);
    EXPECT_EQ(p.z(0), 1);
    EXPECT_EQ(p.x(0), 2);
    EXPECT_EQ(p.x(2), 1);
    EXPECT_EQ(p.str(), "w^3 . Z1X2 @ 0 ; Z0X1 @ 2");
    EXPECT_EQ(PauliString::identity(2, 3).str(), "w^0 . I");
    EXPECT_EQ(PauliString::parse("w^0 . I", 2, 3), PauliString::identity(2, 3));

    Rng rng(3);
    for (int q : {2, 3, 5}) {
        for (int trial = 0; trial < 20; trial++) {
            PauliString a = random_word(rng, q, 4);
            EXPECT_EQ(PauliString::parse(a.str(), q, 4), a);
        }
    }
}

TEST(pauli, label_notation) {
    PauliString y = PauliString::parse_labels("Y1", 2, 1);
    Matrix expected(2, 2);
    expected << 0, Complex(0, -1), Complex(0, 1), 0;
    EXPECT_LT(max_abs(y.to_matrix() - expected), 1e-15);
    PauliString neg = PauliString::parse_labels("- Z1 X3 X4", 2, 5);
    EXPECT_EQ(neg.phase_exp(), 2);
    EXPECT_EQ(neg.support(), (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(PauliString::parse_labels("Z2^2 X1", 3, 2).z(1), 2);
}

TEST(pauli, errors) {
    PauliString a(2, 2);
    PauliString b(2, 3);
    EXPECT_THROW(a * b, std::invalid_argument);
    EXPECT_THROW(PauliString(4, 1), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("Z1X0 @ 0", 2, 1), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("w^0 . Z1X0 @ 5", 2, 1), std::invalid_argument);
    EXPECT_THROW(PauliString::identity(2, 11).to_matrix(), ResourceError);
}

TEST(pauli, embed_restrict_tensor) {
    PauliString w = PauliString::parse_labels("X1 Z2", 2, 2);
    PauliString e = w.embed(4, {1, 3});
    EXPECT_EQ(e.x(1), 1);
    EXPECT_EQ(e.z(3), 1);
    EXPECT_EQ(e.restrict_to({1, 3}), w);
    EXPECT_THROW(e.restrict_to({1}), std::invalid_argument);
    PauliString t = PauliString::single(2, 1, 0, 0, 1).tensor(w);
    EXPECT_EQ(t.num_sites(), 3);
    EXPECT_LT(max_abs(t.to_matrix() - kron(w.to_matrix(), PauliString::single(2, 1, 0, 0, 1).to_matrix())), 1e-15);
}
