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


#include "spinrev/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"

using namespace spinrev;

namespace {

ExperimentSpec tiny(std::uint64_t seed) {
    auto s = ExperimentSpec::desk();
    s.vertices = 6;
    s.edge_probabilities = {0.3, 0.7};
    s.reversal_probabilities = {0.1, 0.5};
    s.repetitions = 2;
    s.realizations = 2;
    s.reads = 40;
    s.native_reads = 40;
    s.native_transforms = 4;
    s.ga.population = 6;
    s.ga.generations = 3;
    s.ga.anneals = s.reads;
    s.sampler.sweeps = 20;
    s.seed = seed;
    s.noise.chip_seed = seed + 1;
    return s;
}

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(Grids, Sizes) {
    auto ps = reversal_probability_grid();
    ASSERT_EQ(ps.size(), 13U);
    EXPECT_DOUBLE_EQ(ps.front(), 0.01);
    EXPECT_DOUBLE_EQ(ps.back(), 0.99);
    EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
    EXPECT_NE(std::find(ps.begin(), ps.end(), 0.5), ps.end());
    auto pg = edge_probability_grid();
    EXPECT_EQ(pg, (std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}));
}

TEST(Spec, Presets) {
    auto d = ExperimentSpec::desk();
    EXPECT_NO_THROW(d.validate());
    EXPECT_EQ(d.vertices, 12U);
    EXPECT_EQ(d.ga.anneals, d.reads);
    auto p = ExperimentSpec::paper_scale();
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.vertices, 64U);
    EXPECT_EQ(p.chimera_size, 16U);
    EXPECT_EQ(p.repetitions, 50U);
    EXPECT_EQ(p.reads, 1000U);
    EXPECT_EQ(p.native_reads, 10000U);
    EXPECT_EQ(p.native_transforms, 100U);
    EXPECT_EQ(p.ga.generations, 100U);
}

TEST(Spec, Validation) {
    auto s = tiny(0);
    s.reversal_probabilities = {1.5};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = tiny(0);
    s.chimera_size = 1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = tiny(0);
    s.native_transforms = 100;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = tiny(0);
    s.problems.clear();
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Spec, JsonRoundTrip) {
    auto s = tiny(0xDEADBEEFCAFEULL);
    s.level = Level::Chain;
    s.parameter = "p_mut";
    s.values = {0.001, 0.25};
    s.noise.leakage = 0.125;
    s.problems = {ProblemKind::MinVertexCover};
    auto text = spec_to_json(s);
    EXPECT_EQ(spec_from_json(text), s);
    EXPECT_EQ(spec_to_json(spec_from_json(text)), text);
    EXPECT_EQ(spec_from_json("{}"), ExperimentSpec::desk());
    EXPECT_THROW(spec_from_json("[1,2]"), std::exception);
}

TEST(Instance, DeskShape) {
    auto g = erdos_renyi(12, 0.5, 3);
    auto inst = make_instance(g, ProblemKind::MaxClique, 0, 4);
    EXPECT_EQ(inst.topology.rows(), 3U);
    EXPECT_EQ(inst.topology.qubit_count(), 72U);
    EXPECT_EQ(inst.physical.embedding.num_chains(), 12U);
    EXPECT_EQ(inst.physical.embedding.max_chain_length(), 4U);
    EXPECT_EQ(inst.physical.active_qubits.size(), 48U);
    EXPECT_TRUE(embedding_violations(inst.physical.embedding, inst.topology, &inst.logical).empty());
}

TEST(Instance, PhysicalGroundStateDecodesToOptimum) {
    auto g = erdos_renyi(5, 0.6, 8);
    for (auto kind : {ProblemKind::MaxClique, ProblemKind::MinVertexCover}) {
        auto inst = make_instance(g, kind, 0, 4);
        auto c = compact(inst.physical.model);
        auto gs = brute_force_ground_state(c.model);
        auto full = expand_state(gs.states.front(), c.variables, inst.physical.model.num_variables());
        auto logical = unembed(full, inst.physical.embedding, 0);
        auto d = decode_solution(inst.reduction, logical);
        EXPECT_TRUE(d.feasible);
        EXPECT_EQ(d.objective, kind == ProblemKind::MaxClique ? oracle::max_clique(g) : oracle::min_vertex_cover(g));
        EXPECT_NEAR(energy(inst.logical, logical), oracle::ground_energy(inst.logical), 1e-9);
    }
}

TEST(Sweep, ShapeAndOrdering) {
    auto s = tiny(4);
    auto r = sweep_ps(s);
    EXPECT_EQ(r.rows.size(), 2U * 2U * 2U);
    EXPECT_EQ(r.samples.size(), 2U * 2U * 2U * 2U);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(r.rows[i].repetitions, 2U);
        EXPECT_GE(r.rows[i].masked_std, 0.0);
    }
    EXPECT_EQ(r.rows[0].problem, ProblemKind::MaxClique);
    EXPECT_EQ(r.rows.back().problem, ProblemKind::MinVertexCover);
    EXPECT_DOUBLE_EQ(r.rows[1].reversal_probability, 0.5);
    EXPECT_DOUBLE_EQ(r.rows[2].edge_probability, 0.7);
    EXPECT_EQ(line_count(sweep_rows_csv(s, r)), r.rows.size() + 1);
    EXPECT_EQ(line_count(sweep_samples_csv(s, r)), r.samples.size() + 1);
}

TEST(Sweep, RowsSummarizeSamples) {
    auto s = tiny(5);
    s.repetitions = 3;
    auto r = sweep_ps(s);
    for (std::size_t row = 0; row < r.rows.size(); ++row) {
        double sum = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& x = r.samples[row * 3 + k];
            EXPECT_EQ(x.repetition, k);
            sum += x.masked - x.standard;
        }
        const double mean = sum / 3.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& x = r.samples[row * 3 + k];
            sq += (x.masked - x.standard - mean) * (x.masked - x.standard - mean);
        }
        EXPECT_NEAR(r.rows[row].masked_mean, mean, 1e-9);
        EXPECT_NEAR(r.rows[row].masked_std, std::sqrt(sq / 2.0), 1e-9);
    }
}

TEST(Sweep, NoNoiseNoDifference) {
    auto s = tiny(6);
    s.noise = NoiseModel::ideal();
    s.sampler.sweeps = 400;
    s.reads = 50;
    s.native_reads = 50;
    s.edge_probabilities = {0.3, 0.6};
    s.reversal_probabilities = {0.05, 0.5, 0.95};
    auto r = sweep_ps(s);
    for (const auto& row : r.rows) {
        EXPECT_NEAR(row.masked_mean, 0.0, 1e-9);
        EXPECT_NEAR(row.native_mean, 0.0, 1e-9);
    }
}

TEST(Sweep, ThreadsDoNotChangeOutput) {
    auto s = tiny(7);
    auto one = sweep_rows_csv(s, sweep_ps(s));
    s.threads = 3;
    auto three = sweep_rows_csv(s, sweep_ps(s));
    EXPECT_EQ(one, three);
}

TEST(Sweep, ReplayFromRecordedSpec) {
    auto s = tiny(8);
    auto first = sweep_ps(s);
    auto replayed_spec = spec_from_json(spec_to_json(s));
    auto second = sweep_ps(replayed_spec);
    EXPECT_EQ(sweep_samples_csv(s, first), sweep_samples_csv(replayed_spec, second));
    EXPECT_EQ(sweep_rows_csv(s, first), sweep_rows_csv(replayed_spec, second));
    EXPECT_EQ(sweep_svg(first, ProblemKind::MaxClique, s.level), sweep_svg(second, ProblemKind::MaxClique, s.level));
}

TEST(Study, ParametersAndDefaults) {
    EXPECT_EQ(ga_parameters(), (std::vector<std::string>{"N", "p_spin", "p_mat", "p_mut"}));
    EXPECT_THROW(default_study_values("p_cross", Level::Qubit), std::invalid_argument);
    EXPECT_EQ(default_study_values("p_spin", Level::Chain), (std::vector<double>{0.1, 0.3, 0.5}));
    EXPECT_EQ(default_study_values("p_spin", Level::Qubit), (std::vector<double>{0.001, 0.01, 0.1}));
    for (const auto& p : ga_parameters()) EXPECT_FALSE(default_study_values(p, Level::Qubit).empty());
    EXPECT_EQ(study_base(Level::Qubit).population, 20U);
    EXPECT_DOUBLE_EQ(study_base(Level::Chain).p_spin, 0.5);
}

TEST(Study, TracesShareTheirStart) {
    auto s = tiny(9);
    auto r = ga_param_study(s, "p_mut", {0.01, 0.2});
    ASSERT_EQ(r.traces.size(), 2U);
    EXPECT_DOUBLE_EQ(r.traces[1].config.p_mut, 0.2);
    EXPECT_EQ(r.traces[0].history.size(), s.ga.generations + 1);
    EXPECT_EQ(r.traces[0].history[0].best_mask, r.traces[1].history[0].best_mask);
    EXPECT_EQ(line_count(study_csv(s, r)), 2 * (s.ga.generations + 1) + 1);
    EXPECT_THROW(ga_param_study(s, "N", {2.5}), std::invalid_argument);
    EXPECT_THROW(ga_param_study(s, "N", {1}), std::invalid_argument);
    EXPECT_THROW(ga_param_study(s, "bogus", {1}), std::invalid_argument);
    EXPECT_NE(study_svg(r).find("<svg"), std::string::npos);
}

TEST(Compare, RunsAndOutputs) {
    auto s = tiny(10);
    auto r = ga_vs_native(s);
    ASSERT_EQ(r.instances.size(), 2U);
    ASSERT_EQ(r.runs.size(), 4U);
    EXPECT_EQ(r.runs[0].problem, ProblemKind::MaxClique);
    EXPECT_EQ(r.runs[3].problem, ProblemKind::MinVertexCover);
    EXPECT_EQ(r.runs[1].realization, 1U);
    EXPECT_EQ(r.instances[0].graph, r.instances[1].graph);
    EXPECT_NE(r.runs[0].ga_seed, r.runs[1].ga_seed);
    EXPECT_EQ(r.runs[0].native_seed, r.runs[1].native_seed);
    for (const auto& run : r.runs) {
        EXPECT_EQ(run.history.size(), s.ga.generations + 1);
        EXPECT_TRUE(std::isfinite(run.native_score));
    }
    EXPECT_EQ(line_count(comparison_csv(s, r)), 4 * (s.ga.generations + 1) + 1);
    EXPECT_NE(comparison_svg(r).find("native"), std::string::npos);
    EXPECT_NE(reversal_count_svg(r).find("<svg"), std::string::npos);
    EXPECT_EQ(comparison_csv(s, r), comparison_csv(s, ga_vs_native(s)));
}

TEST(Helpers, WindowVariance) {
    std::vector<std::size_t> v{1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(window_variance(v, 0, 4), 2.0);
    EXPECT_DOUBLE_EQ(window_variance(v, 2, 2), 0.0);
    EXPECT_DOUBLE_EQ(window_variance(v, 3, 4), 0.25);
    EXPECT_THROW(window_variance(v, 3, 5), std::out_of_range);
    EXPECT_THROW(window_variance(v, 3, 2), std::out_of_range);
}

TEST(Helpers, ReversalTrace) {
    GAHistory h;
    for (std::size_t g = 0; g < 3; ++g) {
        GenerationStats s;
        s.generation = g;
        s.best_popcount = g * 2;
        h.generations.push_back(s);
    }
    EXPECT_EQ(reversal_count_trace(h), (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_THROW(reversal_count_trace(GAHistory{}), std::invalid_argument);
}

TEST(Csv, SeedColumns) {
    auto s = tiny(11);
    s.problems = {ProblemKind::MaxClique};
    s.edge_probabilities = {0.5};
    s.reversal_probabilities = {0.5};
    s.repetitions = 1;
    auto csv = sweep_samples_csv(s, sweep_ps(s));
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header,
              "problem,level,p_g,p_s,repetition,standard,native,masked,"
              "seed,graph_seed,sampler_seed,mask_seed,chip_seed");
    EXPECT_EQ(row.rfind("max-clique,qubit,", 0), 0U);
    EXPECT_NE(row.find("," + std::to_string(s.noise.chip_seed)), std::string::npos);
}
