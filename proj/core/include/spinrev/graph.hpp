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

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinrev/ising.hpp"

namespace spinrev {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph; edges stored canonically (u < v).
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count) : n_(vertex_count) {}

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<Edge>& edges() const { return edges_; }

    /// Returns false if the edge was already present. Self-loops and
    /// out-of-range endpoints throw.
    bool add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;
    std::size_t degree(std::size_t v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    std::size_t n_ = 0;
    std::set<Edge> edges_;
};

/// G(n, p): every one of the C(n,2) pairs, in lexicographic order, is kept by
/// an independent Bernoulli(p) draw from a generator seeded with `seed`.
Graph erdos_renyi(std::size_t vertex_count, double edge_probability, std::uint64_t seed);

/// Edge list text: first line `n`, then one `u v` line per edge.
std::string to_edge_list(const Graph& g);
Graph graph_from_edge_list(std::string_view text);

enum class ProblemKind { MaxClique, MinVertexCover };

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view name);

struct ProblemReduction {
    ProblemKind kind = ProblemKind::MaxClique;
    QuboModel qubo;
    double penalty_a = 0.0;
    double penalty_b = 0.0;
    Graph graph;
};

/// H(x) = -A sum_v x_v + B sum_{(u,v) not in E} x_u x_v. Requires B > A > 0.
ProblemReduction max_clique_qubo(const Graph& g, double a = 1.0, double b = 2.0);

/// H(x) = A sum_{(u,v) in E} (1 - x_u)(1 - x_v) + B sum_v x_v. Requires A > B > 0.
ProblemReduction min_vertex_cover_qubo(const Graph& g, double a = 2.0, double b = 1.0);

/// Reduction with the default penalty weights for `kind`.
ProblemReduction reduce(const Graph& g, ProblemKind kind);

struct DecodedSolution {
    std::vector<std::size_t> vertices;
    bool feasible = false;
    std::size_t objective = 0;
};

/// Selected vertices are those with x_v = 1 (spin states are read through
/// x = (s+1)/2). Infeasibility is reported, not thrown.
DecodedSolution decode_solution(const ProblemReduction& reduction, const SpinState& state);

bool is_clique(const Graph& g, const std::vector<std::size_t>& vertices);
bool is_vertex_cover(const Graph& g, const std::vector<std::size_t>& vertices);

inline constexpr std::size_t kSubsetSearchLimit = 20;

/// Exact optima by subset enumeration; refuse graphs with more than 20 vertices.
std::size_t brute_force_max_clique(const Graph& g);
std::size_t brute_force_min_vertex_cover(const Graph& g);

}  // namespace spinrev
