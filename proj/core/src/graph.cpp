// Copyright 2026 The spinrev Authors
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

#include "spinrev/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "spinrev/random.hpp"

namespace spinrev {

bool Graph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    return edges_.insert(u < v ? Edge{u, v} : Edge{v, u}).second;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    if (u == v) return false;
    return edges_.count(u < v ? Edge{u, v} : Edge{v, u}) != 0;
}

std::size_t Graph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
    return d;
}

Graph erdos_renyi(std::size_t vertex_count, double edge_probability, std::uint64_t seed) {
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    Graph g(vertex_count);
    Rng rng(derive_seed(seed, {tag("erdos-renyi")}));
    for (std::size_t u = 0; u < vertex_count; ++u) {
        for (std::size_t v = u + 1; v < vertex_count; ++v) {
            if (rng.bernoulli(edge_probability)) g.add_edge(u, v);
        }
    }
    return g;
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph graph_from_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("edge list must start with the vertex count");
    Graph g(n);
    std::size_t u = 0;
    std::size_t v = 0;
    while (in >> u) {
        if (!(in >> v)) throw std::invalid_argument("dangling endpoint in edge list");
        g.add_edge(u, v);
    }
    if (!in.eof()) throw std::invalid_argument("malformed edge list");
    return g;
}

std::string_view to_string(ProblemKind kind) {
    return kind == ProblemKind::MaxClique ? "max-clique" : "min-vertex-cover";
}

ProblemKind problem_kind_from_string(std::string_view name) {
    if (name == "max-clique" || name == "clique") return ProblemKind::MaxClique;
    if (name == "min-vertex-cover" || name == "mvc" || name == "vertex-cover") return ProblemKind::MinVertexCover;
    throw std::invalid_argument("unknown problem kind '" + std::string(name) + "'");
}

ProblemReduction max_clique_qubo(const Graph& g, double a, double b) {
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("max clique penalties need B > A > 0");
    const std::size_t n = g.vertex_count();
    QuboModel q(n);
    for (std::size_t v = 0; v < n; ++v) q.set_linear(v, -a);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v)) q.set_quadratic(u, v, b);
        }
    }
    return {ProblemKind::MaxClique, std::move(q), a, b, g};
}

ProblemReduction min_vertex_cover_qubo(const Graph& g, double a, double b) {
    if (!(b > 0.0 && a > b)) throw std::invalid_argument("vertex cover penalties need A > B > 0");
    const std::size_t n = g.vertex_count();
    QuboModel q(n, a * static_cast<double>(g.edge_count()));
    for (std::size_t v = 0; v < n; ++v) q.set_linear(v, b);
    for (const auto& [u, v] : g.edges()) {
        q.add_linear(u, -a);
        q.add_linear(v, -a);
        q.set_quadratic(u, v, a);
    }
    return {ProblemKind::MinVertexCover, std::move(q), a, b, g};
}

ProblemReduction reduce(const Graph& g, ProblemKind kind) {
    return kind == ProblemKind::MaxClique ? max_clique_qubo(g) : min_vertex_cover_qubo(g);
}

bool is_clique(const Graph& g, const std::vector<std::size_t>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (!g.has_edge(vertices[i], vertices[j])) return false;
        }
    }
    return true;
}

bool is_vertex_cover(const Graph& g, const std::vector<std::size_t>& vertices) {
    std::vector<bool> in(g.vertex_count(), false);
    for (auto v : vertices) in.at(v) = true;
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return in[e.first] || in[e.second]; });
}

DecodedSolution decode_solution(const ProblemReduction& reduction, const SpinState& state) {
    if (state.size() != reduction.graph.vertex_count()) {
        throw std::invalid_argument("state length does not match the graph");
    }
    SpinState x = state.to_binary();
    DecodedSolution out;
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (x[v] == 1) out.vertices.push_back(v);
    }
    out.objective = out.vertices.size();
    out.feasible = reduction.kind == ProblemKind::MaxClique ? is_clique(reduction.graph, out.vertices)
                                                             : is_vertex_cover(reduction.graph, out.vertices);
    return out;
}

namespace {

std::vector<std::uint32_t> neighbourhoods(const Graph& g) {
    if (g.vertex_count() > kSubsetSearchLimit) {
        throw std::invalid_argument("subset search refused: " + std::to_string(g.vertex_count()) +
                                    " vertices exceeds limit of " + std::to_string(kSubsetSearchLimit));
    }
    std::vector<std::uint32_t> adj(g.vertex_count(), 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= std::uint32_t{1} << v;
        adj[v] |= std::uint32_t{1} << u;
    }
    return adj;
}

}  // namespace

std::size_t brute_force_max_clique(const Graph& g) {
    auto adj = neighbourhoods(g);
    const std::size_t n = g.vertex_count();
    int best = 0;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        int size = std::popcount(s);
        if (size <= best) continue;
        bool ok = true;
        for (std::uint32_t rest = s; rest != 0 && ok; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(std::countr_zero(rest));
            ok = (s & ~(adj[v] | (std::uint32_t{1} << v))) == 0;
        }
        if (ok) best = size;
    }
    return static_cast<std::size_t>(best);
}

std::size_t brute_force_min_vertex_cover(const Graph& g) {
    auto adj = neighbourhoods(g);
    const std::size_t n = g.vertex_count();
    const std::uint32_t all = n == 32 ? ~0U : (std::uint32_t{1} << n) - 1;
    int best = static_cast<int>(n);
    for (std::uint32_t s = 0; s <= all; ++s) {
        int size = std::popcount(s);
        if (size < best) {
            // s is a cover iff every vertex outside s has all neighbours inside s.
            bool ok = true;
            for (std::uint32_t rest = all & ~s; rest != 0 && ok; rest &= rest - 1) {
                auto v = static_cast<std::size_t>(std::countr_zero(rest));
                ok = (adj[v] & ~s) == 0;
            }
            if (ok) best = size;
        }
        if (s == all) break;
    }
    return static_cast<std::size_t>(best);
}

}  // namespace spinrev
