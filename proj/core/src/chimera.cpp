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

#include "spinrev/chimera.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>

#include "json.hpp"
#include "spinrev/random.hpp"

namespace spinrev {

// ---------------------------------------------------------------------------
// Topology

ChimeraTopology::ChimeraTopology(std::size_t rows, std::size_t cols, std::size_t shore)
    : rows_(rows), cols_(cols), shore_(shore) {
    if (rows == 0 || cols == 0 || shore == 0) {
        throw std::invalid_argument("chimera dimensions must all be at least 1");
    }
    adjacency_.resize(qubit_count());
    auto link = [&](std::size_t u, std::size_t v) {
        edges_.push_back(u < v ? Edge{u, v} : Edge{v, u});
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    };
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            for (std::size_t i = 0; i < shore_; ++i) {
                for (std::size_t j = 0; j < shore_; ++j) link(qubit(r, c, 0, i), qubit(r, c, 1, j));
                if (r + 1 < rows_) link(qubit(r, c, 0, i), qubit(r + 1, c, 0, i));
                if (c + 1 < cols_) link(qubit(r, c, 1, i), qubit(r, c + 1, 1, i));
            }
        }
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

std::size_t ChimeraTopology::qubit(std::size_t row, std::size_t col, std::size_t side, std::size_t k) const {
    if (row >= rows_ || col >= cols_ || side > 1 || k >= shore_) throw std::out_of_range("chimera coordinate");
    return ((row * cols_) + col) * 2 * shore_ + side * shore_ + k;
}

ChimeraCoord ChimeraTopology::coord(std::size_t q) const {
    if (q >= qubit_count()) throw std::out_of_range("qubit id " + std::to_string(q));
    ChimeraCoord c;
    c.k = q % shore_;
    c.side = (q / shore_) % 2;
    std::size_t cell = q / (2 * shore_);
    c.col = cell % cols_;
    c.row = cell / cols_;
    return c;
}

bool ChimeraTopology::has_edge(std::size_t u, std::size_t v) const {
    if (u >= qubit_count() || v >= qubit_count()) return false;
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

ChimeraTopology chimera(std::size_t rows, std::size_t cols, std::size_t shore) {
    return ChimeraTopology(rows, cols, shore);
}

// ---------------------------------------------------------------------------
// Embedding

std::size_t Embedding::max_chain_length() const {
    std::size_t m = 0;
    for (const auto& c : chains_) m = std::max(m, c.size());
    return m;
}

std::vector<std::size_t> Embedding::used_qubits() const {
    std::vector<std::size_t> out;
    for (const auto& c : chains_) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

constexpr std::size_t kNoChain = static_cast<std::size_t>(-1);

// Owner chain per qubit; throws on overlap or out-of-range ids.
std::vector<std::size_t> owners(const Embedding& emb, std::size_t qubit_count) {
    std::vector<std::size_t> owner(qubit_count, kNoChain);
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        for (auto q : emb.chain(i)) {
            if (q >= qubit_count) throw EmbeddingError("chain " + std::to_string(i) + " uses out-of-range qubit");
            if (owner[q] != kNoChain) throw EmbeddingError("qubit " + std::to_string(q) + " is in two chains");
            owner[q] = i;
        }
    }
    return owner;
}

bool chain_connected(const std::vector<std::size_t>& chain, std::size_t id, const std::vector<std::size_t>& owner,
                     const ChimeraTopology& topo) {
    if (chain.empty()) return false;
    std::vector<std::size_t> seen{chain.front()};
    std::queue<std::size_t> frontier;
    frontier.push(chain.front());
    while (!frontier.empty()) {
        auto q = frontier.front();
        frontier.pop();
        for (auto nb : topo.neighbours(q)) {
            if (owner[nb] == id && std::find(seen.begin(), seen.end(), nb) == seen.end()) {
                seen.push_back(nb);
                frontier.push(nb);
            }
        }
    }
    return seen.size() == chain.size();
}

// Lowest canonical physical edge between two chains, if any.
std::optional<Edge> bridge(const Embedding& emb, std::size_t i, std::size_t j, const std::vector<std::size_t>& owner,
                           const ChimeraTopology& topo) {
    std::optional<Edge> best;
    for (auto q : emb.chain(i)) {
        for (auto nb : topo.neighbours(q)) {
            if (owner[nb] != j) continue;
            Edge e = q < nb ? Edge{q, nb} : Edge{nb, q};
            if (!best || e < *best) best = e;
        }
    }
    return best;
}

}  // namespace

std::vector<std::string> embedding_violations(const Embedding& emb, const ChimeraTopology& topo,
                                              const IsingModel* logical) {
    std::vector<std::string> problems;
    std::vector<std::size_t> owner(topo.qubit_count(), kNoChain);
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        if (emb.chain(i).empty()) problems.push_back("chain " + std::to_string(i) + " is empty");
        for (auto q : emb.chain(i)) {
            if (q >= topo.qubit_count()) {
                problems.push_back("chain " + std::to_string(i) + " uses qubit " + std::to_string(q) +
                                   " outside the topology");
            } else if (owner[q] != kNoChain) {
                problems.push_back("qubit " + std::to_string(q) + " shared by chains " + std::to_string(owner[q]) +
                                   " and " + std::to_string(i));
            } else {
                owner[q] = i;
            }
        }
    }
    if (!problems.empty()) return problems;
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        if (!chain_connected(emb.chain(i), i, owner, topo)) {
            problems.push_back("chain " + std::to_string(i) + " is not connected");
        }
    }
    if (logical != nullptr) {
        if (logical->num_variables() != emb.num_chains()) {
            problems.push_back("logical model size differs from chain count");
            return problems;
        }
        for (const auto& [k, a] : logical->quadratic_terms()) {
            if (a != 0.0 && !bridge(emb, k.first, k.second, owner, topo)) {
                problems.push_back("coupler (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                                   ") has no physical edge");
            }
        }
    }
    return problems;
}

Embedding embed_complete(std::size_t k, const ChimeraTopology& topo) {
    const std::size_t t = topo.shore();
    const std::size_t capacity = t * std::min(topo.rows(), topo.cols());
    if (k > capacity) {
        throw CapacityError("K_" + std::to_string(k) + " does not fit a " + std::to_string(topo.rows()) + "x" +
                            std::to_string(topo.cols()) + " chimera with shore " + std::to_string(t) +
                            " (capacity " + std::to_string(capacity) + ")");
    }
    if (k == 0) return Embedding{};
    if (k == 1) return embed_single_qubits({topo.qubit(0, 0, 0, 0)});

    const std::size_t m = (k + t - 1) / t;
    std::vector<std::vector<std::size_t>> chains;
    chains.reserve(k);
    for (std::size_t v = 0; v < k; ++v) {
        const std::size_t a = v / t;
        const std::size_t j = v % t;
        std::vector<std::size_t> chain;
        chain.reserve(m + 1);
        for (std::size_t r = 0; r <= a; ++r) chain.push_back(topo.qubit(r, a, 0, j));
        for (std::size_t c = a; c < m; ++c) chain.push_back(topo.qubit(a, c, 1, j));
        chains.push_back(std::move(chain));
    }
    return Embedding(std::move(chains));
}

Embedding embed_single_qubits(const std::vector<std::size_t>& qubits) {
    std::vector<std::vector<std::size_t>> chains;
    chains.reserve(qubits.size());
    for (auto q : qubits) chains.push_back({q});
    return Embedding(std::move(chains));
}

double default_chain_strength(const IsingModel& logical) {
    double m = 0.0;
    for (double a : logical.linear_terms()) m = std::max(m, std::abs(a));
    for (const auto& [k, a] : logical.quadratic_terms()) m = std::max(m, std::abs(a));
    return m > 0.0 ? 2.0 * m : 1.0;
}

PhysicalIsing embed_model(const IsingModel& logical, const Embedding& emb, const ChimeraTopology& topo,
                          double chain_strength) {
    if (logical.num_variables() != emb.num_chains()) {
        throw std::invalid_argument("logical model has " + std::to_string(logical.num_variables()) +
                                    " variables but embedding has " + std::to_string(emb.num_chains()) + " chains");
    }
    auto owner = owners(emb, topo.qubit_count());
    PhysicalIsing out;
    out.model = IsingModel(topo.qubit_count(), logical.offset());
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        const auto& chain = emb.chain(i);
        if (chain.empty()) throw EmbeddingError("chain " + std::to_string(i) + " is empty");
        const double share = logical.linear(i) / static_cast<double>(chain.size());
        for (auto q : chain) {
            out.model.set_linear(q, share);
            for (auto nb : topo.neighbours(q)) {
                if (owner[nb] == i && q < nb) out.model.set_quadratic(q, nb, -chain_strength);
            }
        }
    }
    for (const auto& [k, a] : logical.quadratic_terms()) {
        if (a == 0.0) continue;
        auto e = bridge(emb, k.first, k.second, owner, topo);
        if (!e) {
            throw EmbeddingError("no physical edge between chains " + std::to_string(k.first) + " and " +
                                 std::to_string(k.second));
        }
        out.model.set_quadratic(e->first, e->second, a);
    }
    out.logical = logical;
    out.embedding = emb;
    out.chain_strength = chain_strength;
    out.active_qubits = emb.used_qubits();
    return out;
}

SpinState unembed(const SpinState& physical_state, const Embedding& emb, std::uint64_t tie_seed) {
    if (physical_state.domain != VarType::Spin) throw std::invalid_argument("unembed needs an Ising state");
    std::vector<std::int8_t> logical(emb.num_chains());
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        int votes = 0;
        for (auto q : emb.chain(i)) votes += physical_state.values.at(q);
        if (votes > 0) {
            logical[i] = 1;
        } else if (votes < 0) {
            logical[i] = -1;
        } else {
            Rng coin(derive_seed(tie_seed, {tag("unembed-tie"), i}));
            logical[i] = coin.bernoulli(0.5) ? 1 : -1;
        }
    }
    return SpinState(VarType::Spin, std::move(logical));
}

SpinReversalMask expand_chain_mask(const SpinReversalMask& logical_mask, const Embedding& emb,
                                   std::size_t physical_size) {
    if (logical_mask.size() != emb.num_chains()) {
        throw std::invalid_argument("logical mask length " + std::to_string(logical_mask.size()) +
                                    " != chain count " + std::to_string(emb.num_chains()));
    }
    SpinReversalMask out(physical_size);
    for (std::size_t i = 0; i < emb.num_chains(); ++i) {
        for (auto q : emb.chain(i)) {
            if (q >= physical_size) throw std::out_of_range("chain qubit beyond physical mask size");
            out.set(q, logical_mask[i]);
        }
    }
    return out;
}

SpinReversalMask random_mask(std::size_t length, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("reversal probability must lie in [0,1]");
    Rng rng(derive_seed(seed, {tag("random-mask")}));
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = rng.bernoulli(p);
    return SpinReversalMask(std::move(bits));
}

SpinReversalMask scatter_mask(const SpinReversalMask& compact_mask, const std::vector<std::size_t>& qubits,
                              std::size_t size) {
    if (compact_mask.size() != qubits.size()) throw std::invalid_argument("compact mask length mismatch");
    SpinReversalMask out(size);
    for (std::size_t i = 0; i < qubits.size(); ++i) out.set(qubits[i], compact_mask[i]);
    return out;
}

SpinReversalMask gather_mask(const SpinReversalMask& full, const std::vector<std::size_t>& qubits) {
    SpinReversalMask out(qubits.size());
    for (std::size_t i = 0; i < qubits.size(); ++i) out.set(i, full[qubits.at(i)]);
    return out;
}

CompactModel compact(const IsingModel& model) {
    std::vector<bool> used(model.num_variables(), false);
    for (std::size_t i = 0; i < model.num_variables(); ++i) used[i] = model.linear(i) != 0.0;
    for (const auto& [k, a] : model.quadratic_terms()) used[k.first] = used[k.second] = true;
    CompactModel out;
    std::vector<std::size_t> index(model.num_variables(), kNoChain);
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i]) {
            index[i] = out.variables.size();
            out.variables.push_back(i);
        }
    }
    out.model = IsingModel(out.variables.size(), model.offset());
    for (std::size_t c = 0; c < out.variables.size(); ++c) out.model.set_linear(c, model.linear(out.variables[c]));
    for (const auto& [k, a] : model.quadratic_terms()) out.model.set_quadratic(index[k.first], index[k.second], a);
    return out;
}

SpinState expand_state(const SpinState& compact_state, const std::vector<std::size_t>& variables, std::size_t size,
                       std::int8_t fill) {
    if (compact_state.size() != variables.size()) throw std::invalid_argument("compact state length mismatch");
    SpinState out(compact_state.domain, std::vector<std::int8_t>(size, fill));
    for (std::size_t i = 0; i < variables.size(); ++i) out.values.at(variables[i]) = compact_state.values[i];
    return out;
}

std::string embedding_to_json(const Embedding& emb, const ChimeraTopology& topo) {
    nlohmann::json doc;
    doc["topology"] = {{"rows", topo.rows()}, {"cols", topo.cols()}, {"shore", topo.shore()}};
    nlohmann::json chains = nlohmann::json::object();
    for (std::size_t i = 0; i < emb.num_chains(); ++i) chains[std::to_string(i)] = emb.chain(i);
    doc["chains"] = std::move(chains);
    return doc.dump() + "\n";
}

EmbeddingFile embedding_from_json(std::string_view text) {
    auto doc = nlohmann::json::parse(text);
    const auto& t = doc.at("topology");
    ChimeraTopology topo(t.at("rows").get<std::size_t>(), t.at("cols").get<std::size_t>(),
                         t.value("shore", std::size_t{4}));
    const auto& chains = doc.at("chains");
    std::vector<std::vector<std::size_t>> out(chains.size());
    for (const auto& [k, v] : chains.items()) {
        auto i = static_cast<std::size_t>(std::stoul(k));
        if (i >= out.size()) throw std::invalid_argument("embedding chain keys must be 0..n-1");
        out[i] = v.get<std::vector<std::size_t>>();
    }
    Embedding emb(std::move(out));
    auto problems = embedding_violations(emb, topo);
    if (!problems.empty()) throw EmbeddingError("invalid embedding: " + problems.front());
    return {std::move(emb), std::move(topo)};
}

}  // namespace spinrev
