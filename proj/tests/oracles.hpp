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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "spinrev/graph.hpp"
#include "spinrev/ising.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

struct DenseIsing {
    std::size_t n = 0;
    std::vector<double> h;
    std::vector<std::vector<double>> j;  // upper triangle used
    double offset = 0.0;
};

inline DenseIsing random_dense(std::size_t n, std::uint32_t seed, double density = 0.6) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::bernoulli_distribution keep(density);
    DenseIsing d;
    d.n = n;
    d.h.resize(n);
    d.j.assign(n, std::vector<double>(n, 0.0));
    for (auto& x : d.h) x = coef(gen);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (keep(gen)) d.j[a][b] = coef(gen);
        }
    }
    d.offset = coef(gen);
    return d;
}

inline spinrev::IsingModel to_model(const DenseIsing& d) {
    spinrev::IsingModel m(d.n, d.offset);
    for (std::size_t i = 0; i < d.n; ++i) m.set_linear(i, d.h[i]);
    for (std::size_t a = 0; a < d.n; ++a) {
        for (std::size_t b = a + 1; b < d.n; ++b) {
            if (d.j[a][b] != 0.0) m.set_quadratic(a, b, d.j[a][b]);
        }
    }
    return m;
}

inline spinrev::IsingModel random_model(std::size_t n, std::uint32_t seed, double density = 0.6) {
    return to_model(random_dense(n, seed, density));
}

// Spin i of state number `code` is +1 when bit i is set.
inline std::vector<int> spins_of(std::uint64_t code, std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (code >> i) & 1U ? 1 : -1;
    return s;
}

inline spinrev::SpinState state_of(std::uint64_t code, std::size_t n) {
    std::vector<std::int8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (code >> i) & 1U ? 1 : -1;
    return spinrev::SpinState(spinrev::VarType::Spin, std::move(v));
}

inline double dense_energy(const DenseIsing& d, const std::vector<int>& s) {
    double e = d.offset;
    for (std::size_t i = 0; i < d.n; ++i) e += d.h[i] * s[i];
    for (std::size_t a = 0; a < d.n; ++a) {
        for (std::size_t b = a + 1; b < d.n; ++b) e += d.j[a][b] * s[a] * s[b];
    }
    return e;
}

// Evaluates any model term by term from its public coefficient tables.
template <spinrev::VarType V>
double term_energy(const spinrev::QuadraticModel<V>& m, const std::vector<int>& x) {
    double e = m.offset();
    for (std::size_t i = 0; i < m.num_variables(); ++i) e += m.linear(i) * x[i];
    for (const auto& [k, v] : m.quadratic_terms()) e += v * x[k.first] * x[k.second];
    return e;
}

inline double ground_energy(const spinrev::IsingModel& m) {
    double best = 1e300;
    for (std::uint64_t c = 0; c < (1ULL << m.num_variables()); ++c) {
        best = std::min(best, term_energy(m, spins_of(c, m.num_variables())));
    }
    return best;
}

inline std::size_t clique_search(const spinrev::Graph& g, std::vector<std::size_t>& chosen, std::size_t next) {
    std::size_t best = chosen.size();
    for (std::size_t v = next; v < g.vertex_count(); ++v) {
        bool ok = true;
        for (auto u : chosen) ok = ok && g.has_edge(u, v);
        if (!ok) continue;
        chosen.push_back(v);
        best = std::max(best, clique_search(g, chosen, v + 1));
        chosen.pop_back();
    }
    return best;
}

inline std::size_t max_clique(const spinrev::Graph& g) {
    std::vector<std::size_t> chosen;
    return clique_search(g, chosen, 0);
}

// Minimum vertex cover = |V| - maximum independent set = |V| - max clique of the complement.
inline std::size_t min_vertex_cover(const spinrev::Graph& g) {
    spinrev::Graph c(g.vertex_count());
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
            if (!g.has_edge(u, v)) c.add_edge(u, v);
        }
    }
    return g.vertex_count() - max_clique(c);
}

inline spinrev::SpinReversalMask random_mask(std::size_t n, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::bernoulli_distribution coin(0.5);
    spinrev::SpinReversalMask m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, coin(gen));
    return m;
}

}  // namespace oracle
