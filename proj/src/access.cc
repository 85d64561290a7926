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

#include "qss/access.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qss/errors.h"

namespace qss {

namespace {

constexpr double kActionTol = 1e-10;

std::vector<int> sites_of(const std::vector<int>& players) {
    std::vector<int> sites;
    for (int p : players) {
        sites.push_back(p - 1);
    }
    return sites;
}

// Phase exponent k with half_root(q, k) == c, or -1.
int phase_of(int q, Complex c) {
    for (int k = 0; k < 2 * q; k++) {
        if (std::abs(half_root(q, k) - c) < 1e-9) {
            return k;
        }
    }
    return -1;
}

// max_i | x|i_L> - |i+1_L> |
double shift_error(const std::vector<QuantumState>& basis, const PauliString& x) {
    const int q = static_cast<int>(basis.size());
    double worst = 0.0;
    for (int i = 0; i < q; i++) {
        Vector xi = apply_pauli(basis[i], x).amplitudes();
        worst = std::max(worst, (xi - basis[(i + 1) % q].amplitudes()).norm());
    }
    return worst;
}

// max_i | z|i_L> - w^i |i_L> |
double clock_error(const std::vector<QuantumState>& basis, const PauliString& z) {
    const int q = static_cast<int>(basis.size());
    double worst = 0.0;
    for (int i = 0; i < q; i++) {
        Vector zi = apply_pauli(basis[i], z).amplitudes();
        worst = std::max(worst, (zi - omega_pow(q, i) * basis[i].amplitudes()).norm());
    }
    return worst;
}

}  // namespace

PauliString LogicalOperatorPair::observable(TestSelector t) const { return z_l.pow(t.first) * x_l.pow(t.second); }

PauliString LogicalOperatorPair::local(const PauliString& word) const { return word.restrict_to(sites_of(players)); }

double logical_action_error(const GraphCode& code, const PauliString& x_l, const PauliString& z_l) {
    std::vector<QuantumState> basis = logical_basis(code);
    return std::max(shift_error(basis, x_l), clock_error(basis, z_l));
}

std::vector<TestSelector> test_selectors(int q) {
    if (q == 2) {
        return {{0, 1}, {1, 0}};
    }
    std::vector<TestSelector> out;
    for (int t1 = 0; t1 < q; t1++) {
        for (int t2 = 0; t2 < q; t2++) {
            out.emplace_back(t1, t2);
        }
    }
    return out;
}

PauliString dealer_observable(int q, TestSelector t) {
    return PauliString::single(q, 1, 0, t.first, t.second).transpose();
}

LogicalOperatorPair search_logical_ops(const GraphCode& code, std::vector<int> players) {
    const int q = code.dimension();
    const int n = code.num_players();
    std::sort(players.begin(), players.end());
    const int m = static_cast<int>(players.size());
    const std::vector<int> sites = sites_of(players);
    if (m == 0) {
        throw NoOperatorsError("empty player set has no logical operators");
    }
    std::size_t count = 1;
    for (int i = 0; i < 2 * m; i++) {
        count *= static_cast<std::size_t>(q);
        if (count > (std::size_t{1} << 22)) {
            throw ResourceError("logical operator search space too large");
        }
    }
    const std::vector<PauliString> ks = code.stabilizers();
    std::vector<int> d_pattern;
    for (const auto& k : ks) {
        d_pattern.push_back(code.dressing().commutation_exponent(k));
    }
    std::vector<QuantumState> basis = logical_basis(code);

    // candidates bucketed by weight, lexicographic within a bucket
    std::vector<std::vector<PauliString>> by_weight(m + 1);
    for (std::size_t idx = 1; idx < count; idx++) {
        std::vector<int> z(n, 0);
        std::vector<int> x(n, 0);
        std::size_t rest = idx;
        int weight = 0;
        for (int s = 0; s < m; s++) {
            z[sites[s]] = static_cast<int>(rest % q);
            rest /= q;
            x[sites[s]] = static_cast<int>(rest % q);
            rest /= q;
            weight += (z[sites[s]] != 0 || x[sites[s]] != 0) ? 1 : 0;
        }
        by_weight[weight].emplace_back(q, z, x);
    }

    auto fits = [&](const PauliString& w, bool is_x) {
        for (std::size_t j = 0; j < ks.size(); j++) {
            if (w.commutation_exponent(ks[j]) != (is_x ? d_pattern[j] : 0)) {
                return false;
            }
        }
        return true;
    };
    auto fix_phase = [&](const PauliString& w, bool is_x, PauliString& out) {
        const Vector& target = basis[is_x ? 1 : 0].amplitudes();
        Complex c = target.dot(apply_pauli(basis[0], w).amplitudes());
        int k = phase_of(q, c);
        if (k < 0) {
            return false;
        }
        out = w.with_phase(mod(-k, 2 * q));
        return true;
    };

    std::optional<PauliString> xl;
    std::optional<PauliString> zl;
    for (int weight = 1; weight <= m && !(xl && zl); weight++) {
        for (const PauliString& w : by_weight[weight]) {
            PauliString cand = w;
            if (!xl && fits(w, true) && fix_phase(w, true, cand) && shift_error(basis, cand) < kActionTol) {
                xl = cand;
            }
            if (!zl && fits(w, false) && fix_phase(w, false, cand) && clock_error(basis, cand) < kActionTol) {
                zl = cand;
            }
        }
    }
    if (!xl || !zl || logical_action_error(code, *xl, *zl) >= kActionTol) {
        throw NoOperatorsError("no logical operator pair supported on the given players");
    }
    return {players, *xl, *zl};
}

Scheme::Scheme(std::string name, GraphCode code, AccessStructure access, std::vector<LogicalOperatorPair> registered)
    : name_(std::move(name)), code_(std::move(code)), access_(std::move(access)) {
    if (access_.num_players() != code_.num_players()) {
        throw std::invalid_argument("access structure and code disagree on the player count");
    }
    for (LogicalOperatorPair& pair : registered) {
        pair.players = access_.normalize(pair.players);
        if (!access_.is_authorized(pair.players)) {
            throw std::invalid_argument("logical operators registered for an unauthorized set");
        }
        try {
            pair.local(pair.x_l);
            pair.local(pair.z_l);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("registered logical operators act outside their player set");
        }
        double err = logical_action_error(code_, pair.x_l, pair.z_l);
        if (err >= kActionTol) {
            throw std::invalid_argument("registered logical operators fail the logical action (error " +
                                        std::to_string(err) + ")");
        }
        registered_.push_back(pair.players);
        pairs_[pair.players] = pair;
    }
    for (const auto& set : access_.minimal_sets()) {
        if (pairs_.find(set) == pairs_.end()) {
            pairs_[set] = search_logical_ops(code_, set);
        }
    }
}

bool Scheme::is_registered(const std::vector<int>& minimal_set) const {
    return std::find(registered_.begin(), registered_.end(), access_.normalize(minimal_set)) != registered_.end();
}

LogicalOperatorPair Scheme::logical_ops(const std::vector<int>& players) const {
    std::vector<int> set = access_.normalize(players);
    if (!access_.is_authorized(set)) {
        throw NoOperatorsError("player set is not authorized");
    }
    auto it = pairs_.find(set);
    if (it == pairs_.end()) {
        it = pairs_.find(access_.authorized_core(set));
    }
    LogicalOperatorPair out = it->second;
    out.players = set;
    return out;
}

std::string StabilizerDecomposition::product_str() const {
    if (exponents.empty()) {
        return "none";
    }
    std::string out;
    for (std::size_t j = 0; j < exponents.size(); j++) {
        if (exponents[j] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += stabilizer_label(static_cast<int>(j));
        if (exponents[j] != 1) {
            out += '^' + std::to_string(exponents[j]);
        }
    }
    return out.empty() ? "I" : out;
}

std::vector<StabilizerDecomposition> test_operator_identity(const Scheme& scheme, const std::vector<int>& players) {
    const int q = scheme.dimension();
    const int n = scheme.num_players();
    LogicalOperatorPair ops = scheme.logical_ops(players);
    const std::vector<PauliString> gens = scheme.code().resource_stabilizers();
    std::optional<QuantumState> resource;
    std::vector<StabilizerDecomposition> out;
    for (TestSelector t : test_selectors(q)) {
        if (t.first == 0 && t.second == 0) {
            continue;
        }
        StabilizerDecomposition dec;
        dec.t = t;
        dec.observable = dealer_observable(q, t).tensor(ops.observable(t).dagger());
        std::vector<int> e(n + 1, 0);
        e[0] = dec.observable.x(0);
        for (int j = 1; j <= n; j++) {
            e[j] = mod(dec.observable.x(j) - static_cast<long long>(e[0]) * gens[0].x(j), q);
        }
        PauliString product = PauliString::identity(q, n + 1);
        for (int j = 0; j <= n; j++) {
            product = product * gens[j].pow(e[j]);
        }
        if (product == dec.observable) {
            dec.exponents = e;
            dec.symbolic = true;
            dec.verified = true;
        } else {
            if (!resource) {
                resource = epr_resource(scheme.code());
            }
            dec.verified = std::abs(expectation(*resource, dec.observable) - 1.0) < 1e-10;
        }
        out.push_back(dec);
    }
    return out;
}

PauliString local_test_word(const Scheme& scheme, const LogicalOperatorPair& ops, TestSelector t) {
    return dealer_observable(scheme.dimension(), t).tensor(ops.local(ops.observable(t).dagger()));
}

EntanglementProjector build_projector(const Scheme& scheme, const std::vector<int>& players) {
    const int q = scheme.dimension();
    EntanglementProjector out;
    LogicalOperatorPair ops = scheme.logical_ops(players);
    out.players = ops.players;
    const int local_n = 1 + static_cast<int>(ops.players.size());
    const std::size_t dim = checked_dim(q, local_n);
    if (dim * dim > kDenseEntryCap) {
        throw ResourceError("projector on dealer and B exceeds the dense cap");
    }
    out.matrix = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int t1 = 0; t1 < q; t1++) {
        for (int t2 = 0; t2 < q; t2++) {
            PauliString w = local_test_word(scheme, ops, {t1, t2});
            out.matrix += w.to_matrix();
            out.words.push_back(w);
        }
    }
    out.matrix /= static_cast<double>(q * q);
    return out;
}

AcceptancePovm build_acceptance_povm(const Scheme& scheme, const std::vector<int>& players) {
    AcceptancePovm out;
    LogicalOperatorPair ops = scheme.logical_ops(players);
    out.players = ops.players;
    const int local_n = 1 + static_cast<int>(ops.players.size());
    const std::size_t dim = checked_dim(scheme.dimension(), local_n);
    if (dim * dim > kDenseEntryCap) {
        throw ResourceError("acceptance POVM on dealer and B exceeds the dense cap");
    }
    const auto selectors = test_selectors(scheme.dimension());
    out.accept = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (TestSelector t : selectors) {
        out.accept += spectral_projector(local_test_word(scheme, ops, t), 0);
    }
    out.accept /= static_cast<double>(selectors.size());
    out.reject = Matrix::Identity(out.accept.rows(), out.accept.cols()) - out.accept;
    return out;
}

double secrecy_check(const Scheme& scheme, const std::vector<int>& players, const std::vector<QuantumState>& secrets) {
    std::vector<int> set = scheme.access().normalize(players);
    if (scheme.access().is_authorized(set)) {
        throw std::invalid_argument("secrecy check needs an unauthorized set");
    }
    if (set.empty()) {
        return 0.0;
    }
    std::vector<QuantumState> reduced;
    for (const QuantumState& s : secrets) {
        reduced.push_back(partial_trace(encode(scheme.code(), s), sites_of(set)));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < reduced.size(); i++) {
        for (std::size_t j = i + 1; j < reduced.size(); j++) {
            worst = std::max(worst, trace_distance(reduced[i], reduced[j]));
        }
    }
    return worst;
}

}  // namespace qss
