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

#include <cmath>

#include <gtest/gtest.h>

#include "qss/errors.h"
#include "qss/rng.h"

using namespace qss;

namespace {

GraphCode five_cycle_code() { return GraphCode(2, Graph::cycle(5), PauliString::parse_labels("Z1 Z2 Z3 Z4 Z5", 2, 5)); }

Graph wheel() {
    Graph g(6);
    for (int j = 1; j <= 5; j++) {
        g.add_edge(0, j);
        g.add_edge(j, j % 5 + 1);
    }
    return g;
}

// Global-phase-insensitive overlap of two pure states.
double overlap(const QuantumState& a, const QuantumState& b) { return std::abs(a.amplitudes().dot(b.amplitudes())); }

// Joint +1 eigenstate by projecting a random vector with prod (I + K + ... + K^{q-1}) / q.
QuantumState projected_eigenstate(const std::vector<PauliString>& ks, int q, int n, std::uint64_t seed) {
    Rng rng(seed);
    Vector v = random_pure_vector(rng, static_cast<Eigen::Index>(std::pow(q, n)));
    for (const PauliString& k : ks) {
        Matrix m = k.to_matrix();
        Matrix p = Matrix::Identity(m.rows(), m.cols());
        Matrix acc = p;
        for (int e = 1; e < q; e++) {
            acc = acc * m;
            p += acc;
        }
        v = p * v / static_cast<double>(q);
    }
    return QuantumState::from_vector(q, n, v / v.norm());
}

}  // namespace

TEST(graph, validation) {
    Graph g(3);
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
    EXPECT_THROW(Graph(0), std::invalid_argument);
    g.add_edge(0, 2, 2);
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edges()[0].weight, 2);
    EXPECT_EQ(g.neighbors(2), std::vector<int>{0});
}

TEST(graph_state, single_vertex_is_plus) {
    for (int q : {2, 3, 5}) {
        QuantumState s = graph_state(Graph(1), q);
        for (int i = 0; i < q; i++) {
            EXPECT_NEAR(std::abs(s.amplitudes()(i) - 1.0 / std::sqrt(q)), 0.0, 1e-12);
        }
    }
}

TEST(graph_state, five_cycle_stabilizers) {
    QuantumState c5 = graph_state(Graph::cycle(5), 2);
    for (const PauliString& k : graph_stabilizers(Graph::cycle(5), 2)) {
        EXPECT_NEAR(std::abs(expectation(c5, k) - 1.0), 0.0, 1e-10);
    }
    for (Eigen::Index i = 0; i < 32; i++) {
        Complex a = c5.amplitudes()(i);
        EXPECT_NEAR(std::abs(a.imag()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(a.real()), 1.0 / std::sqrt(32.0), 1e-12);
    }
}

TEST(graph_state, matches_eigenequation_solution) {
    for (int q : {2, 3}) {
        Graph g(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {0, 3, 1}});
        auto ks = graph_stabilizers(g, q);
        QuantumState built = graph_state(g, q);
        QuantumState solved = projected_eigenstate(ks, q, 4, 5);
        EXPECT_NEAR(overlap(built, solved), 1.0, 1e-10);
        for (const PauliString& k : ks) {
            EXPECT_NEAR(std::abs(expectation(built, k) - 1.0), 0.0, 1e-10);
        }
    }
}

TEST(graph_state, stabilizers_commute) {
    for (int q : {2, 3, 5}) {
        Graph g(5, {{0, 1, 1}, {1, 2, 3}, {0, 4, 2}, {3, 4, 1}, {1, 3, 1}});
        auto ks = graph_stabilizers(g, q);
        for (const auto& a : ks) {
            for (const auto& b : ks) {
                EXPECT_EQ(a.commutation_exponent(b), 0);
            }
        }
    }
}

TEST(graph_state, cap_exceeded) { EXPECT_THROW(graph_state(Graph::cycle(21), 2), ResourceError); }

TEST(graph_code, five_cycle_logical_basis) {
    GraphCode code = five_cycle_code();
    auto basis = logical_basis(code);
    ASSERT_EQ(basis.size(), 2u);
    EXPECT_LT(overlap(basis[0], graph_state(Graph::cycle(5), 2)), 1.0 + 1e-12);
    EXPECT_NEAR(overlap(basis[0], graph_state(Graph::cycle(5), 2)), 1.0, 1e-12);
    EXPECT_LT(overlap(basis[0], basis[1]), 1e-12);
    QuantumState again = apply_pauli(basis[1], code.dressing());
    EXPECT_NEAR(overlap(again, basis[0]), 1.0, 1e-12);
}

TEST(graph_code, single_vertex_codes) {
    // |+> with dressing Z gives {|+>, |->}; X fixes |+> and is rejected
    GraphCode code(2, Graph(1), PauliString::parse_labels("Z1", 2, 1));
    auto basis = logical_basis(code);
    EXPECT_NEAR(std::abs(basis[1].amplitudes()(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(basis[1].amplitudes()(1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
    EXPECT_THROW(GraphCode(2, Graph(1), PauliString::parse_labels("X1", 2, 1)), std::invalid_argument);
    EXPECT_THROW(GraphCode(4, Graph(1), PauliString::parse_labels("Z1", 4, 1)), std::invalid_argument);
    EXPECT_THROW(GraphCode(2, Graph(2), PauliString::parse_labels("Z1", 2, 1)), std::invalid_argument);
}

TEST(graph_code, random_codes_are_orthonormal) {
    for (int q : {2, 3, 5}) {
        Graph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
        GraphCode code(q, g, PauliString::parse_labels("Z2 Z3^2", q, 3));
        auto basis = logical_basis(code);
        for (int i = 0; i < q; i++) {
            for (int j = 0; j < q; j++) {
                Complex ip = basis[i].amplitudes().dot(basis[j].amplitudes());
                EXPECT_NEAR(std::abs(ip - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(graph_code, resource_is_wheel_graph_state) {
    GraphCode code = five_cycle_code();
    QuantumState resource = epr_resource(code);
    EXPECT_NEAR(resource.trace(), 1.0, 1e-12);
    EXPECT_NEAR(overlap(resource, graph_state(wheel(), 2)), 1.0, 1e-12);
    ASSERT_TRUE(code.dealer_extended_graph().has_value());
    EXPECT_TRUE(*code.dealer_extended_graph() == wheel());
    auto gens = code.resource_stabilizers();
    auto wheel_ks = graph_stabilizers(wheel(), 2);
    ASSERT_EQ(gens.size(), wheel_ks.size());
    for (std::size_t i = 0; i < gens.size(); i++) {
        EXPECT_EQ(gens[i], wheel_ks[i]) << stabilizer_label(static_cast<int>(i));
    }
}

TEST(graph_code, resource_stabilizers_hold_for_general_dressing) {
    // q = 2 dressings on a path, including one with an X component
    Graph path(3, {{0, 1, 1}, {1, 2, 1}});
    for (const char* d : {"Z1 Z3", "Y1 Z3", "Z1"}) {
        GraphCode code(2, path, PauliString::parse_labels(d, 2, 3));
        QuantumState resource = epr_resource(code);
        for (const PauliString& s : code.resource_stabilizers()) {
            EXPECT_NEAR(std::abs(expectation(resource, s) - 1.0), 0.0, 1e-10) << d;
        }
    }
    GraphCode qutrit(3, Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), PauliString::parse_labels("Z2 Z3^2", 3, 3));
    QuantumState resource = epr_resource(qutrit);
    for (const PauliString& s : qutrit.resource_stabilizers()) {
        EXPECT_NEAR(std::abs(expectation(resource, s) - 1.0), 0.0, 1e-10);
    }
    EXPECT_NEAR(overlap(resource, graph_state(*qutrit.dealer_extended_graph(), 3)), 1.0, 1e-12);
}

TEST(graph_code, trivial_code_resource_is_bell_pair) {
    for (int q : {2, 3}) {
        GraphCode code(q, Graph(1), PauliString::single(q, 1, 0, 1, 0));
        QuantumState resource = epr_resource(code);
        // the one-vertex logical basis is the Fourier basis; undo it on the player
        Matrix fourier_dag(q, q);
        for (int j = 0; j < q; j++) {
            for (int k = 0; k < q; k++) {
                fourier_dag(j, k) = std::conj(omega_pow(q, static_cast<long long>(j) * k)) / std::sqrt(q);
            }
        }
        QuantumState bell = apply_operator(resource, {1}, fourier_dag);
        for (int a = 0; a < q; a++) {
            for (int b = 0; b < q; b++) {
                double want = a == b ? 1.0 / std::sqrt(q) : 0.0;
                EXPECT_NEAR(std::abs(bell.amplitudes()(a + q * b) - want), 0.0, 1e-12);
            }
        }
    }
}

TEST(graph_code, dealer_marginal_is_maximally_mixed) {
    GraphCode code = five_cycle_code();
    QuantumState dealer = partial_trace(epr_resource(code), {0});
    EXPECT_LT(trace_distance(dealer, QuantumState::maximally_mixed(2, 1)), 1e-12);
}

TEST(graph_code, encode_pure_and_mixed) {
    Rng rng(3);
    GraphCode code = five_cycle_code();
    QuantumState secret = QuantumState::from_vector(2, 1, random_pure_vector(rng, 2));
    QuantumState enc = encode(code, secret);
    auto basis = logical_basis(code);
    Vector want = secret.amplitudes()(0) * basis[0].amplitudes() + secret.amplitudes()(1) * basis[1].amplitudes();
    EXPECT_NEAR((enc.amplitudes() - want).norm(), 0.0, 1e-12);
    QuantumState mixed = encode(code, secret.as_mixed());
    EXPECT_LT(trace_distance(mixed, enc.as_mixed()), 1e-12);
}
