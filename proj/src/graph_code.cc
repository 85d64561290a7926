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

#include "qss/graph_code.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qss/errors.h"

namespace qss {

Graph::Graph(int num_vertices) : n_(num_vertices) {
    if (num_vertices < 1) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    adj_.assign(n_, std::vector<int>(n_, 0));
}

Graph::Graph(int num_vertices, const std::vector<Edge>& edges) : Graph(num_vertices) {
    for (const Edge& e : edges) {
        add_edge(e.u, e.v, e.weight);
    }
}

Graph Graph::cycle(int n) {
    Graph g(n);
    if (n == 2) {
        g.add_edge(0, 1);
    } else if (n > 2) {
        for (int i = 0; i < n; i++) {
            g.add_edge(i, (i + 1) % n);
        }
    }
    return g;
}

void Graph::add_edge(int u, int v, int weight) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        throw std::invalid_argument("edge references a missing vertex");
    }
    if (u == v) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    adj_[u][v] += weight;
    adj_[v][u] += weight;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; u++) {
        if (adj_[v][u] != 0) {
            out.push_back(u);
        }
    }
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; u++) {
        for (int v = u + 1; v < n_; v++) {
            if (adj_[u][v] != 0) {
                out.push_back({u, v, adj_[u][v]});
            }
        }
    }
    return out;
}

std::vector<PauliString> graph_stabilizers(const Graph& g, int q) {
    const int n = g.num_vertices();
    std::vector<PauliString> out;
    for (int i = 0; i < n; i++) {
        std::vector<int> z(n, 0);
        std::vector<int> x(n, 0);
        x[i] = 1;
        for (int j = 0; j < n; j++) {
            z[j] = mod(g.weight(i, j), q);
        }
        out.emplace_back(q, z, x);
    }
    return out;
}

QuantumState graph_state(const Graph& g, int q) {
    if (!is_prime(q)) {
        throw std::invalid_argument("qudit dimension must be prime");
    }
    const int n = g.num_vertices();
    const std::size_t dim = checked_dim(q, n);
    const std::vector<Edge> edges = g.edges();
    const double amp = std::pow(static_cast<double>(q), -0.5 * n);
    Vector v(static_cast<Eigen::Index>(dim));
    std::vector<int> digits(n, 0);
    for (std::size_t idx = 0; idx < dim; idx++) {
        long long phase = 0;
        for (const Edge& e : edges) {
            phase += static_cast<long long>(mod(e.weight, q)) * digits[e.u] * digits[e.v];
        }
        v(static_cast<Eigen::Index>(idx)) = amp * omega_pow(q, phase);
        for (int s = 0; s < n; s++) {
            if (++digits[s] < q) {
                break;
            }
            digits[s] = 0;
        }
    }
    return QuantumState::unchecked_vector(q, n, std::move(v));
}

GraphCode::GraphCode(int q, Graph graph, PauliString dressing)
    : q_(q), graph_(std::move(graph)), dressing_(std::move(dressing)) {
    if (!is_prime(q)) {
        throw std::invalid_argument("qudit dimension must be prime");
    }
    if (dressing_.dimension() != q || dressing_.num_sites() != graph_.num_vertices()) {
        throw std::invalid_argument("dressing word does not match the code register");
    }
    if (!dressing_.pow(q).is_identity()) {
        throw std::invalid_argument("dressing word must satisfy D^q = I");
    }
    QuantumState zero = graph_state(graph_, q);
    const Vector& v0 = zero.amplitudes();
    QuantumState shifted = zero;
    for (int k = 1; k < q; k++) {
        shifted = apply_pauli(shifted, dressing_);
        if (std::abs(v0.dot(shifted.amplitudes())) >= 1e-10) {
            throw std::invalid_argument("dressing does not produce orthogonal logical states");
        }
    }
}

std::vector<PauliString> GraphCode::resource_stabilizers() const {
    const int n = num_players();
    std::vector<int> all(n);
    for (int j = 0; j < n; j++) {
        all[j] = j + 1;
    }
    std::vector<PauliString> out;
    out.push_back(PauliString::single(q_, 1, 0, 0, 1).tensor(dressing_));
    for (const PauliString& k : stabilizers()) {
        int e = dressing_.commutation_exponent(k);
        out.push_back(PauliString::single(q_, 1, 0, e, 0).tensor(k));
    }
    return out;
}

std::optional<Graph> GraphCode::dealer_extended_graph() const {
    const int n = num_players();
    if (!dressing_.phase_free()) {
        return std::nullopt;
    }
    for (int j = 0; j < n; j++) {
        if (dressing_.x(j) != 0) {
            return std::nullopt;
        }
    }
    Graph g(n + 1);
    for (const Edge& e : graph_.edges()) {
        g.add_edge(e.u + 1, e.v + 1, mod(e.weight, q_));
    }
    for (int j = 0; j < n; j++) {
        if (dressing_.z(j) != 0) {
            g.add_edge(0, j + 1, dressing_.z(j));
        }
    }
    return g;
}

std::vector<QuantumState> logical_basis(const GraphCode& code) {
    std::vector<QuantumState> out;
    out.push_back(graph_state(code.graph(), code.dimension()));
    for (int k = 1; k < code.dimension(); k++) {
        out.push_back(apply_pauli(out.back(), code.dressing()));
    }
    return out;
}

QuantumState encode(const GraphCode& code, const QuantumState& secret) {
    const int q = code.dimension();
    if (secret.dimension() != q || secret.num_sites() != 1) {
        throw std::invalid_argument("secret must be a single qudit of the code dimension");
    }
    std::vector<QuantumState> basis = logical_basis(code);
    const Eigen::Index dim = static_cast<Eigen::Index>(basis[0].size());
    Matrix iso(dim, q);
    for (int i = 0; i < q; i++) {
        iso.col(i) = basis[i].amplitudes();
    }
    if (secret.is_pure()) {
        return QuantumState::unchecked_vector(q, code.num_players(), iso * secret.amplitudes());
    }
    checked_dim(q, 2 * code.num_players());
    return QuantumState::unchecked_density(q, code.num_players(), iso * secret.density_matrix() * iso.adjoint());
}

QuantumState epr_resource(const GraphCode& code) {
    const int q = code.dimension();
    const int n = code.num_players();
    const std::size_t dim = checked_dim(q, n + 1);
    std::vector<QuantumState> basis = logical_basis(code);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (int i = 0; i < q; i++) {
        const Vector& col = basis[i].amplitudes();
        for (Eigen::Index p = 0; p < col.size(); p++) {
            v(i + q * p) = norm * col(p);
        }
    }
    return QuantumState::unchecked_vector(q, n + 1, std::move(v));
}

std::string stabilizer_label(int index) { return index == 0 ? "K_d" : "K_" + std::to_string(index); }

}  // namespace qss
