// Copyright 2026 The gslocc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gslocc/bits.hpp"
#include "gslocc/pauli.hpp"

namespace gslocc {

// Simple undirected graph stored as adjacency bitsets. Symmetric, no
// self-loops, 1 <= n <= 64.
struct Graph {
    int n = 0;
    std::vector<Bits> adj;  // adj[k] = neighbourhood mask of vertex k

    static Graph empty(int n);
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    bool has_edge(int a, int b) const { return get_bit(adj[static_cast<std::size_t>(a)], b); }
    Bits neighbors(int k) const { return adj[static_cast<std::size_t>(k)]; }
    int degree(int k) const { return popcount(adj[static_cast<std::size_t>(k)]); }
    std::vector<std::pair<int, int>> edge_list() const;

    // GF(2) matrix-vector product: bit k of the result is the parity of
    // |N(k) & b|.
    Bits adj_mul(Bits b) const;

    bool operator==(const Graph&) const = default;
};

// Accepts either the JSON schema {"n":..., "edges":[[a,b],...]} with
// 0-based a<b, or a graph6 string (optionally prefixed ">>graph6<<").
Graph parse_graph(std::string_view text);

std::string graph_to_json(const Graph& g);
std::string graph_to_graph6(const Graph& g);

// Generator sigma_i: X on vertex i, Z on each neighbour.
PauliWord stabilizer_generator(const Graph& g, int i);

// Product of the generators selected by the bits of b, multiplied in
// ascending vertex order. The x bits of the result equal b and the z bits
// equal adj*b over GF(2); the phase depends on the fixed ordering.
PauliWord stabilizer_element(const Graph& g, Bits b);

// Complements the subgraph induced on the neighbourhood of v.
Graph local_complement(const Graph& g, int v);

}  // namespace gslocc
