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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinrev/graph.hpp"
#include "spinrev/ising.hpp"

namespace spinrev {

/// Raised when a requested embedding does not fit the topology.
class CapacityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an embedding cannot carry a logical model.
class EmbeddingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ChimeraCoord {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t side = 0;  // 0: vertical shore, 1: horizontal shore
    std::size_t k = 0;
};

/// M x N grid of K_{t,t} cells. Qubit id = ((row*N)+col)*2t + side*t + k.
/// Vertical-shore qubits couple to the same k in the cells above and below;
/// horizontal-shore qubits to the same k in the cells left and right.
class ChimeraTopology {
  public:
    ChimeraTopology(std::size_t rows, std::size_t cols, std::size_t shore = 4);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t shore() const { return shore_; }
    std::size_t qubit_count() const { return rows_ * cols_ * 2 * shore_; }

    std::size_t qubit(std::size_t row, std::size_t col, std::size_t side, std::size_t k) const;
    ChimeraCoord coord(std::size_t qubit) const;

    /// Canonical (u < v), ascending.
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t intra_cell_edge_count() const { return rows_ * cols_ * shore_ * shore_; }
    bool has_edge(std::size_t u, std::size_t v) const;
    const std::vector<std::size_t>& neighbours(std::size_t qubit) const { return adjacency_.at(qubit); }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t shore_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Validating factory; all dimensions must be at least 1.
ChimeraTopology chimera(std::size_t rows, std::size_t cols, std::size_t shore = 4);

/// Logical variable i is represented by the physical qubits chains[i].
class Embedding {
  public:
    Embedding() = default;
    explicit Embedding(std::vector<std::vector<std::size_t>> chains) : chains_(std::move(chains)) {}

    std::size_t num_chains() const { return chains_.size(); }
    const std::vector<std::size_t>& chain(std::size_t i) const { return chains_.at(i); }
    const std::vector<std::vector<std::size_t>>& chains() const { return chains_; }
    std::size_t max_chain_length() const;
    /// All qubits of all chains, ascending.
    std::vector<std::size_t> used_qubits() const;

    friend bool operator==(const Embedding&, const Embedding&) = default;

  private:
    std::vector<std::vector<std::size_t>> chains_;
};

/// Lists every violated invariant (empty when valid): ids in range, chains
/// non-empty, pairwise disjoint and connected, and, if `logical` is given,
/// every nonzero logical coupler bridged by a physical edge.
std::vector<std::string> embedding_violations(const Embedding& emb, const ChimeraTopology& topo,
                                              const IsingModel* logical = nullptr);

/// Clique embedding of K_k on the top-left m x m block, m = ceil(k/t).
/// Variable v = a*t + j uses the vertical-shore qubit j of column a in rows
/// 0..a and the horizontal-shore qubit j of row a in columns a..m-1, so every
/// chain has m+1 qubits (a single qubit when k == 1).
Embedding embed_complete(std::size_t k, const ChimeraTopology& topo);

/// Identity-style embedding where variable i is the single qubit qubits[i].
Embedding embed_single_qubits(const std::vector<std::size_t>& qubits);

struct PhysicalIsing {
    IsingModel model;  // over all topology qubit ids
    IsingModel logical;
    Embedding embedding;
    double chain_strength = 0.0;
    /// Qubits carrying at least one chain, ascending.
    std::vector<std::size_t> active_qubits;
};

/// 2 * max(|a_i|, |a_ij|), or 1 for an all-zero model.
double default_chain_strength(const IsingModel& logical);

/// Splits each a_i equally over chain(i), places each a_ij on the lowest-id
/// physical edge between chain(i) and chain(j), and sets every chain-internal
/// edge to -chain_strength. Throws EmbeddingError for unbridgeable couplers.
PhysicalIsing embed_model(const IsingModel& logical, const Embedding& emb, const ChimeraTopology& topo,
                          double chain_strength);

/// Majority vote per chain; exact ties are decided by a fair coin derived
/// from (tie_seed, chain index).
SpinState unembed(const SpinState& physical_state, const Embedding& emb, std::uint64_t tie_seed);

/// Physical mask with bit i copied to every qubit of chain(i).
SpinReversalMask expand_chain_mask(const SpinReversalMask& logical_mask, const Embedding& emb,
                                   std::size_t physical_size);

/// Each bit set independently with probability p.
SpinReversalMask random_mask(std::size_t length, double p, std::uint64_t seed);

/// Places compact[i] at position qubits[i] of an all-false mask of `size`.
SpinReversalMask scatter_mask(const SpinReversalMask& compact, const std::vector<std::size_t>& qubits,
                              std::size_t size);
SpinReversalMask gather_mask(const SpinReversalMask& full, const std::vector<std::size_t>& qubits);

/// A model restricted to its variables that carry a coefficient.
struct CompactModel {
    IsingModel model;
    std::vector<std::size_t> variables;  // compact index -> original index
};

CompactModel compact(const IsingModel& model);
/// Inverse of compact() for states; variables outside `variables` get `fill`.
SpinState expand_state(const SpinState& compact_state, const std::vector<std::size_t>& variables, std::size_t size,
                       std::int8_t fill = 1);

/// {"topology":{"rows":M,"cols":N,"shore":t},"chains":{"0":[q,...],...}}
std::string embedding_to_json(const Embedding& emb, const ChimeraTopology& topo);
struct EmbeddingFile {
    Embedding embedding;
    ChimeraTopology topology;
};
EmbeddingFile embedding_from_json(std::string_view text);

}  // namespace spinrev
