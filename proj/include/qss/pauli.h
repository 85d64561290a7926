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
#include <string_view>
#include <vector>

#include "qss/linalg.h"

namespace qss {

/// Phased tensor product of generalized Pauli operators on an n-site register of
/// prime dimension q:
///
///     e^{i*pi*phase/q} * (Z^{z_0} X^{x_0}) (x) (Z^{z_1} X^{x_1}) (x) ...
///
/// with X|i> = |i+1 mod q> and Z|i> = omega^i |i>. Phases are counted in units of
/// e^{i*pi/q} (modulus 2q) so that q = 2 reaches +-1, +-i and Y = i X Z.
/// Site 0 is the least significant digit of a state-vector index.
class PauliString {
   public:
    /// Empty qubit word; placeholder until assigned.
    PauliString() : q_(2) {}
    PauliString(int q, int num_sites);
    PauliString(int q, std::vector<int> z_exps, std::vector<int> x_exps, int phase_exp = 0);

    static PauliString identity(int q, int num_sites) { return PauliString(q, num_sites); }
    static PauliString single(int q, int num_sites, int site, int z_exp, int x_exp);

    int dimension() const { return q_; }
    int num_sites() const { return static_cast<int>(z_.size()); }
    int z(int site) const { return z_[site]; }
    int x(int site) const { return x_[site]; }
    int phase_exp() const { return phase_; }
    Complex phase() const { return half_root(q_, phase_); }

    bool is_identity() const;
    /// True when every site exponent is zero (phase ignored).
    bool is_scalar() const;
    bool phase_free() const { return phase_ == 0; }
    std::vector<int> support() const;
    int weight() const { return static_cast<int>(support().size()); }

    PauliString operator*(const PauliString& other) const;
    PauliString pow(long long k) const;
    PauliString dagger() const;
    /// Matrix transpose in the computational basis.
    PauliString transpose() const;
    PauliString with_phase(int phase_exp) const;
    PauliString without_phase() const { return with_phase(0); }

    /// c such that this * other = omega^c * other * this.
    int commutation_exponent(const PauliString& other) const;

    /// Places site s of this word at site `site_map[s]` of a `new_num_sites` register.
    PauliString embed(int new_num_sites, const std::vector<int>& site_map) const;
    /// Keeps only `sites` (in the given order). Exponents elsewhere must be zero.
    PauliString restrict_to(const std::vector<int>& sites) const;
    /// Tensor product with `high` occupying the sites after this word's sites.
    PauliString tensor(const PauliString& high) const;

    /// Column-wise action: word |j> = coefficient(j) |target(j)>.
    std::size_t target(std::size_t column) const;
    Complex coefficient(std::size_t column) const;

    Matrix to_matrix(std::size_t cap = kDenseEntryCap) const;

    /// "w^3 . Z1X2 @ 0 ; Z0X1 @ 2"; identity sites omitted, "I" when none remain.
    std::string str() const;
    static PauliString parse(std::string_view text, int q, int num_sites);
    /// Player-label notation used in scheme files: "X1 Z2 X3", "Y1 Z2 Y3", "Z1^2 X3",
    /// optional leading "-", "i", "-i" (q = 2) or "w^k" token. Labels start at `base`.
    static PauliString parse_labels(std::string_view text, int q, int num_sites, int base = 1);

    bool operator==(const PauliString& other) const;
    bool operator!=(const PauliString& other) const { return !(*this == other); }

   private:
    void normalize();

    int q_;
    std::vector<int> z_;
    std::vector<int> x_;
    int phase_ = 0;
};

}  // namespace qss
