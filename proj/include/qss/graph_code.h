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

#include <optional>
#include <string>
#include <vector>

#include "qss/pauli.h"
#include "qss/state.h"

namespace qss {

struct Edge {
    int u = 0;
    int v = 0;
    int weight = 1;
};

/// Undirected weighted graph on vertices 0..n-1. Weights are reduced mod q when used.
class Graph {
   public:
    explicit Graph(int num_vertices);
    Graph(int num_vertices, const std::vector<Edge>& edges);

    static Graph cycle(int n);

    /// Adds `weight` to the (u, v) edge weight.
    void add_edge(int u, int v, int weight = 1);

    int num_vertices() const { return n_; }
    int weight(int u, int v) const { return adj_[u][v]; }
    std::vector<int> neighbors(int v) const;
    /// Edges with u < v and nonzero weight, sorted.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

   private:
    int n_;
    std::vector<std::vector<int>> adj_;
};

/// K_i = X_i prod_j Z_j^{w_ij}.
std::vector<PauliString> graph_stabilizers(const Graph& g, int q);

/// CZ^w along every edge applied to |+>^n.
QuantumState graph_state(const Graph& g, int q);

/// Graph-state code: |i_L> = D^i |G>, with D the dressing word.
class GraphCode {
   public:
    /// Validates q prime, D^q = I and <j_L|i_L> = 0 for i != j.
    GraphCode(int q, Graph graph, PauliString dressing);

    int dimension() const { return q_; }
    int num_players() const { return graph_.num_vertices(); }
    const Graph& graph() const { return graph_; }
    const PauliString& dressing() const { return dressing_; }

    std::vector<PauliString> stabilizers() const { return graph_stabilizers(graph_, q_); }

    /// Generators of the resource's stabilizer group on (dealer, players): index 0 is
    /// X_d (x) D, index j is Z_d^{e_j} (x) K_j with D K_j = w^{e_j} K_j D.
    std::vector<PauliString> resource_stabilizers() const;

    /// For a Z-type dressing the resource is itself a graph state: the player graph
    /// plus a dealer vertex 0 joined to player j with weight equal to D's Z exponent.
    std::optional<Graph> dealer_extended_graph() const;

   private:
    int q_;
    Graph graph_;
    PauliString dressing_;
};

std::vector<QuantumState> logical_basis(const GraphCode& code);

/// sum_i a_i |i_L> for a one-qudit secret (pure or mixed).
QuantumState encode(const GraphCode& code, const QuantumState& secret);

/// (1/sqrt q) sum_i |i>_d |i_L>_P with the dealer on site 0.
QuantumState epr_resource(const GraphCode& code);

/// Vertex labels in stabilizer names: "d" for the dealer, player j otherwise.
std::string stabilizer_label(int index);

}  // namespace qss
