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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace spinrev;

TEST(Graph, EdgesAreCanonical) {
    Graph g(4);
    EXPECT_TRUE(g.add_edge(2, 1));
    EXPECT_FALSE(g.add_edge(1, 2));
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_EQ(g.edges().begin()->first, 1U);
    EXPECT_EQ(g.degree(1), 1U);
    EXPECT_THROW(g.add_edge(3, 3), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 4), std::out_of_range);
}

TEST(ErdosRenyi, ExtremeProbabilities) {
    EXPECT_EQ(erdos_renyi(10, 0.0, 1).edge_count(), 0U);
    EXPECT_EQ(erdos_renyi(10, 1.0, 1).edge_count(), 45U);
    EXPECT_THROW(erdos_renyi(5, 1.5, 1), std::invalid_argument);
    EXPECT_THROW(erdos_renyi(5, -0.1, 1), std::invalid_argument);
}

TEST(ErdosRenyi, DeterministicPerSeed) {
    EXPECT_EQ(erdos_renyi(20, 0.3, 9), erdos_renyi(20, 0.3, 9));
    EXPECT_NE(erdos_renyi(20, 0.3, 9), erdos_renyi(20, 0.3, 10));
}

// Edge count over many seeds stays within 4 sigma of the binomial mean.
TEST(ErdosRenyi, EdgeCountIsBinomial) {
    const std::size_t n = 30;
    const double pairs = n * (n - 1) / 2.0;
    for (double p : {0.1, 0.5, 0.9}) {
        double total = 0.0;
        const int runs = 200;
        for (int s = 0; s < runs; ++s) total += static_cast<double>(erdos_renyi(n, p, s).edge_count());
        double mean = total / runs;
        double sigma = std::sqrt(pairs * p * (1 - p) / runs);
        EXPECT_NEAR(mean, pairs * p, 4 * sigma) << "p = " << p;
    }
}

TEST(EdgeList, RoundTrip) {
    auto g = erdos_renyi(15, 0.4, 3);
    EXPECT_EQ(graph_from_edge_list(to_edge_list(g)), g);
    EXPECT_ANY_THROW(graph_from_edge_list("3\n0 5\n"));
    EXPECT_ANY_THROW(graph_from_edge_list("x\n"));
}

TEST(ProblemKind, Names) {
    EXPECT_EQ(to_string(ProblemKind::MaxClique), "max-clique");
    EXPECT_EQ(problem_kind_from_string("min-vertex-cover"), ProblemKind::MinVertexCover);
    EXPECT_THROW(problem_kind_from_string("tsp"), std::invalid_argument);
}

TEST(MaxClique, PenaltyPreconditions) {
    Graph g(3);
    EXPECT_THROW(max_clique_qubo(g, 2.0, 1.0), std::invalid_argument);
    EXPECT_THROW(max_clique_qubo(g, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(min_vertex_cover_qubo(g, 1.0, 2.0), std::invalid_argument);
}

TEST(MaxClique, TriangleExample) {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    auto red = max_clique_qubo(g);
    EXPECT_TRUE(red.qubo.quadratic_terms().empty());
    auto gs = brute_force_ground_state(red.qubo);
    EXPECT_EQ(gs.energy, -3.0);
    auto sol = decode_solution(red, gs.states.at(0));
    EXPECT_TRUE(sol.feasible);
    EXPECT_EQ(sol.objective, 3U);
}

TEST(MinVertexCover, StarExample) {
    Graph g(5);
    for (std::size_t v = 1; v < 5; ++v) g.add_edge(0, v);
    auto red = min_vertex_cover_qubo(g);
    auto gs = brute_force_ground_state(red.qubo);
    ASSERT_EQ(gs.states.size(), 1U);
    auto sol = decode_solution(red, gs.states[0]);
    EXPECT_TRUE(sol.feasible);
    EXPECT_EQ(sol.vertices, (std::vector<std::size_t>{0}));
    EXPECT_EQ(gs.energy, 1.0);
}

TEST(MinVertexCover, ExpandedFormMatchesPenaltySum) {
    auto g = erdos_renyi(8, 0.5, 4);
    auto red = min_vertex_cover_qubo(g, 2.0, 1.0);
    for (std::uint64_t c = 0; c < 256; ++c) {
        std::vector<int> x(8);
        for (int i = 0; i < 8; ++i) x[i] = (c >> i) & 1;
        double direct = 0.0;
        for (auto [u, v] : g.edges()) direct += 2.0 * (1 - x[u]) * (1 - x[v]);
        for (int i = 0; i < 8; ++i) direct += x[i];
        EXPECT_NEAR(oracle::term_energy(red.qubo, x), direct, 1e-12);
    }
}

TEST(Decode, ReportsInfeasibility) {
    Graph g(3);
    g.add_edge(0, 1);
    auto red = max_clique_qubo(g);
    auto sol = decode_solution(red, SpinState(VarType::Binary, {1, 0, 1}));
    EXPECT_FALSE(sol.feasible);
    auto cover = decode_solution(min_vertex_cover_qubo(g), SpinState(VarType::Spin, {-1, -1, 1}));
    EXPECT_FALSE(cover.feasible);
}

TEST(Reductions, GroundStatesMatchSubsetOracles) {
    for (int s = 0; s < 12; ++s) {
        auto g = erdos_renyi(9, 0.2 + 0.05 * s, 100 + s);
        auto mc = reduce(g, ProblemKind::MaxClique);
        auto mv = reduce(g, ProblemKind::MinVertexCover);
        for (const auto& st : brute_force_ground_state(mc.qubo).states) {
            auto sol = decode_solution(mc, st);
            EXPECT_TRUE(sol.feasible);
            EXPECT_EQ(sol.objective, oracle::max_clique(g));
        }
        for (const auto& st : brute_force_ground_state(mv.qubo).states) {
            auto sol = decode_solution(mv, st);
            EXPECT_TRUE(sol.feasible);
            EXPECT_EQ(sol.objective, oracle::min_vertex_cover(g));
        }
        EXPECT_EQ(brute_force_max_clique(g), oracle::max_clique(g));
        EXPECT_EQ(brute_force_min_vertex_cover(g), oracle::min_vertex_cover(g));
    }
}

TEST(Reductions, SubsetSearchLimit) {
    EXPECT_THROW(brute_force_max_clique(Graph(kSubsetSearchLimit + 1)), std::invalid_argument);
}
