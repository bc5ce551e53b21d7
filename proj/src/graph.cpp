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

#include "gslocc/graph.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "gslocc/error.hpp"

namespace gslocc {

Graph Graph::empty(int n) {
    if (n < 1 || n > kMaxSites)
        throw DimensionError("vertex count must be in 1..64, got " + std::to_string(n));
    Graph g;
    g.n = n;
    g.adj.assign(static_cast<std::size_t>(n), 0);
    return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g = Graph::empty(n);
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const auto [a, b] = edges[idx];
        const std::string where = "edges[" + std::to_string(idx) + "]";
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw ParseError(where + ": vertex out of range 0.." + std::to_string(n - 1));
        if (a == b) throw ParseError(where + ": self-loop on vertex " + std::to_string(a));
        if (a > b) throw ParseError(where + ": endpoints must satisfy a < b");
        if (g.has_edge(a, b)) throw ParseError(where + ": duplicate edge");
        g.adj[static_cast<std::size_t>(a)] |= Bits{1} << b;
        g.adj[static_cast<std::size_t>(b)] |= Bits{1} << a;
    }
    return g;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (has_edge(a, b)) edges.emplace_back(a, b);
    return edges;
}

Bits Graph::adj_mul(Bits b) const {
    Bits r = 0;
    for (int k = 0; k < n; ++k)
        if (parity(adj[static_cast<std::size_t>(k)] & b)) r |= Bits{1} << k;
    return r;
}

namespace {

Graph parse_graph_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON must be an object with \"n\" and \"edges\"");
    if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > kMaxSites) throw ParseError("\"n\" must be in 1..64");
    if (!j["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t idx = 0; idx < j["edges"].size(); ++idx) {
        const auto& e = j["edges"][idx];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("edges[" + std::to_string(idx) + "]: expected [a, b] integer pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

Graph parse_graph6(std::string_view s) {
    std::size_t pos = 0;
    if (s.starts_with(">>graph6<<")) pos = 10;
    if (pos >= s.size()) throw ParseError("graph6: empty string");

    auto byte_at = [&](std::size_t i) -> int {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126)
            throw ParseError("graph6: byte out of range at position " + std::to_string(i));
        return c - 63;
    };

    long long n;
    if (s[pos] == '~') {
        if (pos + 3 >= s.size()) throw ParseError("graph6: truncated vertex count");
        if (s[pos + 1] == '~') throw ParseError("graph6: vertex counts above 64 unsupported");
        n = (static_cast<long long>(byte_at(pos + 1)) << 12) |
            (static_cast<long long>(byte_at(pos + 2)) << 6) | byte_at(pos + 3);
        pos += 4;
    } else {
        n = byte_at(pos);
        pos += 1;
    }
    if (n < 1 || n > kMaxSites)
        throw ParseError("graph6: vertex count " + std::to_string(n) + " not in 1..64");

    const std::size_t nbits = static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (s.size() - pos != nbytes)
        throw ParseError("graph6: expected " + std::to_string(nbytes) + " data bytes, got " +
                         std::to_string(s.size() - pos));

    Graph g = Graph::empty(static_cast<int>(n));
    std::size_t bit = 0;
    for (int b = 1; b < g.n; ++b)
        for (int a = 0; a < b; ++a, ++bit) {
            const int v = byte_at(pos + bit / 6);
            if ((v >> (5 - bit % 6)) & 1) {
                g.adj[static_cast<std::size_t>(a)] |= Bits{1} << b;
                g.adj[static_cast<std::size_t>(b)] |= Bits{1} << a;
            }
        }
    // Padding bits must be zero.
    for (; bit < nbytes * 6; ++bit) {
        const int v = byte_at(pos + bit / 6);
        if ((v >> (5 - bit % 6)) & 1)
            throw ParseError("graph6: nonzero padding bit at position " +
                             std::to_string(pos + bit / 6));
    }
    return g;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) throw ParseError("empty graph description");
    std::size_t end = text.find_last_not_of(" \t\r\n");
    text = text.substr(begin, end - begin + 1);
    if (text.front() == '{') return parse_graph_json(text);
    return parse_graph6(text);
}

std::string graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edge_list()) j["edges"].push_back({a, b});
    return j.dump();
}

std::string graph_to_graph6(const Graph& g) {
    std::string out;
    if (g.n <= 62) {
        out.push_back(static_cast<char>(g.n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((g.n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((g.n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((g.n & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (int b = 1; b < g.n; ++b)
        for (int a = 0; a < b; ++a) {
            acc = (acc << 1) | (g.has_edge(a, b) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

PauliWord stabilizer_generator(const Graph& g, int i) {
    if (i < 0 || i >= g.n)
        throw DimensionError("vertex " + std::to_string(i) + " out of range for n=" +
                             std::to_string(g.n));
    return PauliWord{g.n, Bits{1} << i, g.neighbors(i), 0};
}

PauliWord stabilizer_element(const Graph& g, Bits b) {
    PauliWord p = PauliWord::identity(g.n);
    for (int i = 0; i < g.n; ++i)
        if (get_bit(b, i)) p = pauli_mul(p, stabilizer_generator(g, i));
    return p;
}

Graph local_complement(const Graph& g, int v) {
    if (v < 0 || v >= g.n)
        throw DimensionError("vertex " + std::to_string(v) + " out of range for n=" +
                             std::to_string(g.n));
    Graph r = g;
    const Bits nb = g.neighbors(v);
    for (int a = 0; a < g.n; ++a) {
        if (!get_bit(nb, a)) continue;
        for (int b = a + 1; b < g.n; ++b) {
            if (!get_bit(nb, b)) continue;
            r.adj[static_cast<std::size_t>(a)] ^= Bits{1} << b;
            r.adj[static_cast<std::size_t>(b)] ^= Bits{1} << a;
        }
    }
    return r;
}

}  // namespace gslocc
