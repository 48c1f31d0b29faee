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
#include <string>
#include <string_view>
#include <vector>

#include "spinrev/chimera.hpp"
#include "spinrev/genetic.hpp"
#include "spinrev/graph.hpp"
#include "spinrev/sampler.hpp"

namespace spinrev {

/// Reversal probabilities of the p_s sweep: 0.01, 0.05, 0.1, 0.2, ..., 0.9, 0.95, 0.99.
std::vector<double> reversal_probability_grid();
/// 0.1, 0.3, 0.5, 0.7, 0.9.
std::vector<double> edge_probability_grid();

/// Everything an experiment depends on. Serialised next to its outputs so a
/// run can be replayed from the file alone.
struct ExperimentSpec {
    std::vector<ProblemKind> problems{ProblemKind::MaxClique, ProblemKind::MinVertexCover};
    std::size_t vertices = 12;
    std::vector<double> edge_probabilities = edge_probability_grid();
    std::vector<double> reversal_probabilities = reversal_probability_grid();
    std::size_t repetitions = 10;
    std::size_t realizations = 6;
    std::size_t reads = 200;  // N_a per solve or evaluation
    std::size_t native_reads = 200;
    std::size_t native_transforms = 10;
    Level level = Level::Qubit;
    std::size_t chimera_size = 0;  // 0: smallest square grid holding K_|V|
    std::size_t shore = 4;
    std::string parameter = "N";
    std::vector<double> values;  // empty: the studied parameter's default list
    GAConfig ga = GAConfig::standard();
    NoiseModel noise;
    SamplerConfig sampler;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    /// |V| = 12, N_a = 200, 3 sweeps per read, R = 100.
    static ExperimentSpec desk();
    /// |V| = 64 on a 16 x 16 grid, 50 repetitions, N_a = 1000, native
    /// baseline of 10000 reads over 100 transforms, 1000 sweeps, R = 100.
    static ExperimentSpec paper_scale();

    void validate() const;

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

std::string spec_to_json(const ExperimentSpec& spec);
/// Missing fields keep their desk() values.
ExperimentSpec spec_from_json(std::string_view text);

/// A clique-embedded instance of one graph.
struct Instance {
    Graph graph;
    ProblemReduction reduction;
    IsingModel logical;
    ChimeraTopology topology;
    PhysicalIsing physical;
};

Instance make_instance(const Graph& graph, ProblemKind kind, std::size_t chimera_size, std::size_t shore);

/// Scores of one (problem, p_G, p_s, repetition) job.
struct SweepSample {
    ProblemKind problem = ProblemKind::MaxClique;
    std::size_t edge_index = 0;
    std::size_t reversal_index = 0;
    std::size_t repetition = 0;
    double standard = 0.0;
    double native = 0.0;
    double masked = 0.0;
    std::uint64_t graph_seed = 0;
    std::uint64_t sampler_seed = 0;
    std::uint64_t mask_seed = 0;
};

struct SweepRow {
    ProblemKind problem = ProblemKind::MaxClique;
    double edge_probability = 0.0;
    double reversal_probability = 0.0;
    std::size_t repetitions = 0;
    double masked_mean = 0.0;  // masked - standard
    double masked_std = 0.0;
    double native_mean = 0.0;  // native - standard
    double native_std = 0.0;
};

struct SweepResult {
    std::vector<SweepSample> samples;  // ordered by (problem, p_G, p_s, repetition)
    std::vector<SweepRow> rows;        // ordered by (problem, p_G, p_s)
};

/// For every problem, p_G and p_s: regenerate the graph, reduction and
/// embedding per repetition; score the standard anneal (all-false mask),
/// native reversal and a random mask of density p_s at spec.level, all with
/// the same sampler seed and chip; aggregate differences to the standard
/// score as mean and sample standard deviation. `partial`, when non-empty,
/// receives one line per finished job.
SweepResult sweep_ps(const ExperimentSpec& spec, const std::filesystem::path& partial = {});

/// GA parameter names accepted by ga_param_study.
std::vector<std::string> ga_parameters();
/// Default value lists per parameter and level.
std::vector<double> default_study_values(std::string_view parameter, Level level);
/// GAConfig::study_base() with p_spin = 0.5 at chain level.
GAConfig study_base(Level level);

struct StudyTrace {
    double value = 0.0;
    GAConfig config;
    GAHistory history;
};

struct StudyResult {
    std::string parameter;
    std::vector<StudyTrace> traces;
};

/// One GA run per value of `parameter` on a fixed graph and embedding; the
/// remaining parameters stay at study_base(spec.level). All runs share the
/// GA seed, so runs that differ only after initialisation start alike.
StudyResult ga_param_study(const ExperimentSpec& spec, const std::string& parameter,
                           const std::vector<double>& values);

struct NativeComparison {
    ProblemKind problem = ProblemKind::MaxClique;
    std::size_t realization = 0;
    double native_score = 0.0;
    std::uint64_t ga_seed = 0;
    std::uint64_t native_seed = 0;
    GAHistory history;
};

struct ComparisonResult {
    std::vector<Instance> instances;     // one per spec.problems entry
    std::vector<NativeComparison> runs;  // ordered by (problem, realization)
};

/// Per problem: one graph and embedding, one native baseline score, and
/// spec.realizations GA runs with spec.ga at spec.level.
ComparisonResult ga_vs_native(const ExperimentSpec& spec);

/// Popcount of the best mask of every generation.
std::vector<std::size_t> reversal_count_trace(const GAHistory& history);

/// Population variance of values[first..last].
double window_variance(const std::vector<std::size_t>& values, std::size_t first, std::size_t last);

// CSV writers. Every row carries the seeds needed to replay it.
std::string sweep_samples_csv(const ExperimentSpec& spec, const SweepResult& result);
std::string sweep_rows_csv(const ExperimentSpec& spec, const SweepResult& result);
std::string study_csv(const ExperimentSpec& spec, const StudyResult& result);
std::string comparison_csv(const ExperimentSpec& spec, const ComparisonResult& result);

// SVG figures.
std::string sweep_svg(const SweepResult& result, ProblemKind problem, Level level);
std::string study_svg(const StudyResult& result);
std::string comparison_svg(const ComparisonResult& result);
std::string reversal_count_svg(const ComparisonResult& result);

}  // namespace spinrev
