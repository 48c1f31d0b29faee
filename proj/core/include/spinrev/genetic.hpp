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
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinrev/chimera.hpp"
#include "spinrev/ising.hpp"
#include "spinrev/sampler.hpp"

namespace spinrev {

/// Whether masks address individual physical qubits or whole chains.
enum class Level : std::uint8_t { Qubit, Chain };

std::string_view to_string(Level level);
Level level_from_string(std::string_view name);

struct GAConfig {
    std::size_t population = 80;  // N
    double p_spin = 0.1;          // initial reversal probability per bit
    double p_mat = 0.1;           // fraction of the population kept as parents
    double p_mut = 0.01;          // per-bit mutation probability
    std::size_t generations = 100;  // R
    std::size_t anneals = 1000;     // N_a reads per evaluation
    double score_fraction = 0.01;   // reporting metric only
    Level level = Level::Qubit;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // individuals evaluated concurrently

    /// N = 80, p_spin = 0.1, p_mat = 0.1, p_mut = 0.01.
    static GAConfig standard();
    /// Base set of the parameter studies: N = 20, otherwise as standard().
    static GAConfig study_base();

    /// ceil(p_mat * N), at least 2 and at most N.
    std::size_t selection_size() const;
    void validate() const;

    friend bool operator==(const GAConfig&, const GAConfig&) = default;
};

struct Individual {
    SpinReversalMask mask;
    double fitness = std::numeric_limits<double>::infinity();  // minimum energy over N_a reads
    double score = std::numeric_limits<double>::infinity();    // low-fraction mean of the same reads
    std::uint64_t eval_seed = 0;
    bool evaluated = false;
};

struct GenerationStats {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double worst_fitness = 0.0;
    double best_score = 0.0;
    double best_so_far = 0.0;  // cumulative minimum of best_fitness
    SpinReversalMask best_mask;
    std::size_t best_popcount = 0;
};

struct GAHistory {
    std::vector<GenerationStats> generations;

    bool empty() const { return generations.empty(); }
    std::size_t size() const { return generations.size(); }
    const GenerationStats& operator[](std::size_t g) const { return generations.at(g); }
};

/// Fitness oracle for masks of a fixed length. `solve` receives the mask,
/// the evaluation seed and the number of reads, and returns samples in the
/// original frame.
struct MaskEvaluator {
    std::size_t mask_length = 0;
    std::function<SampleSet(const SpinReversalMask&, std::uint64_t, std::size_t)> solve;
};

/// Masks over the variables of `model`.
MaskEvaluator make_model_evaluator(IsingModel model, NoiseModel noise, SamplerConfig sampler);
/// Masks over the physical model's active qubits (ascending id order).
MaskEvaluator make_qubit_evaluator(PhysicalIsing physical, NoiseModel noise, SamplerConfig sampler);
/// Masks over logical variables, expanded to whole chains before sampling.
MaskEvaluator make_chain_evaluator(PhysicalIsing physical, NoiseModel noise, SamplerConfig sampler);
MaskEvaluator make_evaluator(PhysicalIsing physical, Level level, NoiseModel noise, SamplerConfig sampler);

struct GAResult {
    SpinReversalMask best_mask;
    double best_fitness = 0.0;
    double best_score = 0.0;
    std::vector<Individual> population;  // final, evaluated
    GAHistory history;                   // generations 0..R
};

/// Thrown when the evaluator fails; carries the generations completed so far.
class GAAborted : public std::runtime_error {
  public:
    GAAborted(const std::string& what, GAHistory partial) : std::runtime_error(what), history(std::move(partial)) {}
    GAHistory history;
};

struct GAOptions {
    /// When non-empty, the resumable state is rewritten after every generation.
    std::filesystem::path checkpoint;
    std::function<void(const GenerationStats&)> on_generation;
};

SpinReversalMask crossover(const SpinReversalMask& a, const SpinReversalMask& b, std::uint64_t seed);
SpinReversalMask mutate(const SpinReversalMask& mask, double p_mut, std::uint64_t seed);

/// N masks whose bits are set with probability p_spin. Individual i depends
/// only on (seed, i), so populations of different sizes share a prefix.
std::vector<SpinReversalMask> initial_population(std::size_t size, std::size_t length, double p_spin,
                                                 std::uint64_t seed);

/// Annotates every individual with the minimum energy of N_a reads. The
/// evaluation seed of individual i is derived from (seed, generation, i).
void evaluate_population(std::vector<Individual>& population, const MaskEvaluator& evaluator, std::size_t anneals,
                         double score_fraction, std::uint64_t seed, std::size_t generation, unsigned threads = 1);

/// Genetic search over spin-reversal masks.
///
/// Each generation is evaluated, the ceil(p_mat*N) fittest individuals form
/// the parent pool, N children are bred by uniform crossover of two parents
/// drawn with replacement, every child is mutated, and one uniformly chosen
/// child is then replaced by the generation's best (unmutated) individual.
/// After R generations the final population is evaluated once more and its
/// fittest mask returned. Ties go to the lowest population index.
GAResult run_ga(const MaskEvaluator& evaluator, const GAConfig& cfg, const GAOptions& options = {});

/// Convenience overload searching masks over the variables of `model`.
GAResult run_ga(const IsingModel& model, const GAConfig& cfg, const NoiseModel& noise, const SamplerConfig& sampler);

/// Continues a run from a checkpoint written by run_ga.
GAResult resume_ga(const MaskEvaluator& evaluator, const std::filesystem::path& checkpoint,
                   const GAOptions& options = {});

std::string ga_config_to_json(const GAConfig& cfg);
GAConfig ga_config_from_json(std::string_view text);

/// generation,best_e,mean_e,worst_e,best_popcount,best_score,best_so_far,seed
std::string history_to_csv(const GAHistory& history, const GAConfig& cfg);

}  // namespace spinrev
