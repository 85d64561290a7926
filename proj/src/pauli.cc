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

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "qss/errors.h"

namespace qss {

namespace {

void require_prime(int q) {
    if (!is_prime(q)) {
        throw std::invalid_argument("Pauli dimension must be prime, got " + std::to_string(q));
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

int parse_int(std::string_view s, std::string_view context) {
    s = trim(s);
    if (s.empty()) {
        throw std::invalid_argument("missing integer in '" + std::string(context) + "'");
    }
    int sign = 1;
    if (s.front() == '-') {
        sign = -1;
        s.remove_prefix(1);
    }
    int value = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("bad integer in '" + std::string(context) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return sign * value;
}

}  // namespace

PauliString::PauliString(int q, int num_sites) : q_(q), z_(num_sites, 0), x_(num_sites, 0) {
    require_prime(q);
    if (num_sites < 0) {
        throw std::invalid_argument("negative site count");
    }
}

PauliString::PauliString(int q, std::vector<int> z_exps, std::vector<int> x_exps, int phase_exp)
    : q_(q), z_(std::move(z_exps)), x_(std::move(x_exps)), phase_(phase_exp) {
    require_prime(q);
    if (z_.size() != x_.size()) {
        throw std::invalid_argument("z and x exponent lists differ in length");
    }
    normalize();
}

PauliString PauliString::single(int q, int num_sites, int site, int z_exp, int x_exp) {
    PauliString p(q, num_sites);
    if (site < 0 || site >= num_sites) {
        throw std::invalid_argument("site index out of range");
    }
    p.z_[site] = z_exp;
    p.x_[site] = x_exp;
    p.normalize();
    return p;
}

void PauliString::normalize() {
    for (auto& e : z_) {
        e = mod(e, q_);
    }
    for (auto& e : x_) {
        e = mod(e, q_);
    }
    phase_ = mod(phase_, 2 * q_);
}

bool PauliString::is_scalar() const {
    for (std::size_t s = 0; s < z_.size(); s++) {
        if (z_[s] != 0 || x_[s] != 0) {
            return false;
        }
    }
    return true;
}

bool PauliString::is_identity() const { return phase_ == 0 && is_scalar(); }

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int s = 0; s < num_sites(); s++) {
        if (z_[s] != 0 || x_[s] != 0) {
            out.push_back(s);
        }
    }
    return out;
}

PauliString PauliString::operator*(const PauliString& other) const {
    if (q_ != other.q_ || num_sites() != other.num_sites()) {
        throw std::invalid_argument("Pauli product of mismatched registers");
    }
    PauliString out(*this);
    long long phase = phase_ + other.phase_;
    for (int s = 0; s < num_sites(); s++) {
        // X^b Z^c = omega^{-bc} Z^c X^b
        phase -= 2LL * x_[s] * other.z_[s];
        out.z_[s] = z_[s] + other.z_[s];
        out.x_[s] = x_[s] + other.x_[s];
    }
    out.phase_ = mod(phase, 2 * q_);
    out.normalize();
    return out;
}

PauliString PauliString::pow(long long k) const {
    if (k < 0) {
        throw std::invalid_argument("negative Pauli power");
    }
    PauliString result = identity(q_, num_sites());
    PauliString base = *this;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        base = base * base;
        k >>= 1;
    }
    return result;
}

PauliString PauliString::dagger() const {
    PauliString out(*this);
    long long phase = -phase_;
    for (int s = 0; s < num_sites(); s++) {
        phase -= 2LL * x_[s] * z_[s];
        out.z_[s] = -z_[s];
        out.x_[s] = -x_[s];
    }
    out.phase_ = mod(phase, 2 * q_);
    out.normalize();
    return out;
}

PauliString PauliString::transpose() const {
    PauliString out(*this);
    long long phase = phase_;
    for (int s = 0; s < num_sites(); s++) {
        phase += 2LL * x_[s] * z_[s];
        out.x_[s] = -x_[s];
    }
    out.phase_ = mod(phase, 2 * q_);
    out.normalize();
    return out;
}

PauliString PauliString::with_phase(int phase_exp) const {
    PauliString out(*this);
    out.phase_ = mod(phase_exp, 2 * q_);
    return out;
}

int PauliString::commutation_exponent(const PauliString& other) const {
    if (q_ != other.q_ || num_sites() != other.num_sites()) {
        throw std::invalid_argument("commutator of mismatched registers");
    }
    long long c = 0;
    for (int s = 0; s < num_sites(); s++) {
        c += 1LL * z_[s] * other.x_[s] - 1LL * x_[s] * other.z_[s];
    }
    return mod(c, q_);
}

PauliString PauliString::embed(int new_num_sites, const std::vector<int>& site_map) const {
    if (static_cast<int>(site_map.size()) != num_sites()) {
        throw std::invalid_argument("site map must cover every site");
    }
    PauliString out(q_, new_num_sites);
    out.phase_ = phase_;
    for (int s = 0; s < num_sites(); s++) {
        int t = site_map[s];
        if (t < 0 || t >= new_num_sites) {
            throw std::invalid_argument("embedded site out of range");
        }
        if (out.z_[t] != 0 || out.x_[t] != 0) {
            throw std::invalid_argument("site map is not injective");
        }
        out.z_[t] = z_[s];
        out.x_[t] = x_[s];
    }
    return out;
}

PauliString PauliString::restrict_to(const std::vector<int>& sites) const {
    std::vector<bool> kept(num_sites(), false);
    PauliString out(q_, static_cast<int>(sites.size()));
    out.phase_ = phase_;
    for (std::size_t k = 0; k < sites.size(); k++) {
        int s = sites[k];
        if (s < 0 || s >= num_sites()) {
            throw std::invalid_argument("restricted site out of range");
        }
        kept[s] = true;
        out.z_[k] = z_[s];
        out.x_[k] = x_[s];
    }
    for (int s = 0; s < num_sites(); s++) {
        if (!kept[s] && (z_[s] != 0 || x_[s] != 0)) {
            throw std::invalid_argument("restriction drops a non-identity site");
        }
    }
    return out;
}

PauliString PauliString::tensor(const PauliString& high) const {
    if (q_ != high.q_) {
        throw std::invalid_argument("tensor of mismatched dimensions");
    }
    std::vector<int> z = z_;
    std::vector<int> x = x_;
    z.insert(z.end(), high.z_.begin(), high.z_.end());
    x.insert(x.end(), high.x_.begin(), high.x_.end());
    return PauliString(q_, std::move(z), std::move(x), phase_ + high.phase_);
}

std::size_t PauliString::target(std::size_t column) const {
    std::size_t out = 0;
    std::size_t stride = 1;
    for (int s = 0; s < num_sites(); s++) {
        auto digit = static_cast<int>(column % q_);
        column /= q_;
        out += static_cast<std::size_t>((digit + x_[s]) % q_) * stride;
        stride *= q_;
    }
    return out;
}

Complex PauliString::coefficient(std::size_t column) const {
    long long exponent = 0;
    for (int s = 0; s < num_sites(); s++) {
        auto digit = static_cast<long long>(column % q_);
        column /= q_;
        exponent += z_[s] * (digit + x_[s]);
    }
    return half_root(q_, phase_ + 2 * exponent);
}

Matrix PauliString::to_matrix(std::size_t cap) const {
    std::size_t dim = checked_dim(q_, num_sites(), cap);
    if (dim * dim > cap) {
        throw ResourceError("Pauli matrix exceeds the dense size cap");
    }
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; j++) {
        m(static_cast<Eigen::Index>(target(j)), static_cast<Eigen::Index>(j)) = coefficient(j);
    }
    return m;
}

std::string PauliString::str() const {
    std::ostringstream out;
    out << "w^" << phase_ << " . ";
    bool any = false;
    for (int s = 0; s < num_sites(); s++) {
        if (z_[s] == 0 && x_[s] == 0) {
            continue;
        }
        if (any) {
            out << " ; ";
        }
        out << 'Z' << z_[s] << 'X' << x_[s] << " @ " << s;
        any = true;
    }
    if (!any) {
        out << 'I';
    }
    return out.str();
}

PauliString PauliString::parse(std::string_view text, int q, int num_sites) {
    std::string context(text);
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        throw std::invalid_argument("Pauli text missing '.': " + context);
    }
    std::string_view head = trim(text.substr(0, dot));
    std::string_view body = trim(text.substr(dot + 1));
    if (head.size() < 3 || head.substr(0, 2) != "w^") {
        throw std::invalid_argument("Pauli text must start with w^k: " + context);
    }
    PauliString p(q, num_sites);
    p.phase_ = parse_int(head.substr(2), context);
    if (p.phase_ < 0 || p.phase_ >= 2 * q) {
        throw std::invalid_argument("phase exponent out of range: " + context);
    }
    if (body != "I") {
        while (!body.empty()) {
            auto semi = body.find(';');
            std::string_view item = trim(body.substr(0, semi));
            body = semi == std::string_view::npos ? std::string_view{} : body.substr(semi + 1);
            auto at = item.find('@');
            auto xpos = item.find('X');
            if (item.empty() || item.front() != 'Z' || at == std::string_view::npos || xpos == std::string_view::npos ||
                xpos > at) {
                throw std::invalid_argument("bad Pauli site term in: " + context);
            }
            int z = parse_int(item.substr(1, xpos - 1), context);
            int x = parse_int(item.substr(xpos + 1, at - xpos - 1), context);
            int site = parse_int(item.substr(at + 1), context);
            if (site < 0 || site >= num_sites || z < 0 || z >= q || x < 0 || x >= q) {
                throw std::invalid_argument("Pauli site term out of range: " + context);
            }
            if (p.z_[site] != 0 || p.x_[site] != 0) {
                throw std::invalid_argument("duplicate site in: " + context);
            }
            p.z_[site] = z;
            p.x_[site] = x;
        }
    }
    return p;
}

PauliString PauliString::parse_labels(std::string_view text, int q, int num_sites, int base) {
    std::string context(text);
    PauliString acc(q, num_sites);
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        if (token == "-") {
            acc = acc.with_phase(acc.phase_ + q);
            continue;
        }
        if (token == "i" || token == "-i") {
            if (q != 2) {
                throw std::invalid_argument("'i' phase token only valid for q=2: " + context);
            }
            acc = acc.with_phase(acc.phase_ + (token == "i" ? 1 : 3));
            continue;
        }
        if (token.rfind("w^", 0) == 0) {
            acc = acc.with_phase(acc.phase_ + parse_int(std::string_view(token).substr(2), context));
            continue;
        }
        char kind = token.front();
        if (kind != 'X' && kind != 'Y' && kind != 'Z') {
            throw std::invalid_argument("bad Pauli token '" + token + "' in: " + context);
        }
        std::string_view rest = std::string_view(token).substr(1);
        int exponent = 1;
        auto caret = rest.find('^');
        if (caret != std::string_view::npos) {
            exponent = parse_int(rest.substr(caret + 1), context);
            rest = rest.substr(0, caret);
        }
        int site = parse_int(rest, context) - base;
        if (site < 0 || site >= num_sites) {
            throw std::invalid_argument("player label out of range in: " + context);
        }
        PauliString factor(q, num_sites);
        if (kind == 'X') {
            factor = single(q, num_sites, site, 0, 1);
        } else if (kind == 'Z') {
            factor = single(q, num_sites, site, 1, 0);
        } else {
            if (q != 2) {
                throw std::invalid_argument("Y only defined for q=2: " + context);
            }
            // Y = iXZ = -i ZX
            factor = single(q, num_sites, site, 1, 1).with_phase(3);
        }
        acc = acc * factor.pow(mod(exponent, 2 * q));
    }
    return acc;
}

bool PauliString::operator==(const PauliString& other) const {
    return q_ == other.q_ && phase_ == other.phase_ && z_ == other.z_ && x_ == other.x_;
}

}  // namespace qss
