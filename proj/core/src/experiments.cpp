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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "spinrev/io.hpp"
#include "spinrev/parallel.hpp"
#include "spinrev/random.hpp"
#include "spinrev/svg.hpp"

namespace spinrev {

using json = nlohmann::ordered_json;

std::vector<double> reversal_probability_grid() {
    return {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}

std::vector<double> edge_probability_grid() { return {0.1, 0.3, 0.5, 0.7, 0.9}; }

ExperimentSpec ExperimentSpec::desk() {
    ExperimentSpec s;
    s.sampler.sweeps = 3;
    s.ga.generations = 100;
    s.ga.anneals = s.reads;
    return s;
}

ExperimentSpec ExperimentSpec::paper_scale() {
    ExperimentSpec s;
    s.vertices = 64;
    s.chimera_size = 16;
    s.repetitions = 50;
    s.reads = 1000;
    s.native_reads = 10000;
    s.native_transforms = 100;
    s.sampler.sweeps = 1000;
    s.ga.generations = 100;
    s.ga.anneals = s.reads;
    return s;
}

void ExperimentSpec::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("experiment spec: " + what); };
    auto check_probabilities = [&](const std::vector<double>& ps, const char* name) {
        if (ps.empty()) fail(std::string(name) + " is empty");
        for (double p : ps) {
            if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " entry " + format_number(p) + " outside [0,1]");
        }
    };
    if (problems.empty()) fail("no problems");
    if (vertices < 1) fail("need at least one vertex");
    check_probabilities(edge_probabilities, "edge_probabilities");
    check_probabilities(reversal_probabilities, "reversal_probabilities");
    if (repetitions < 1) fail("repetitions must be at least 1");
    if (realizations < 1) fail("realizations must be at least 1");
    if (reads < 1) fail("reads must be at least 1");
    if (native_transforms < 1) fail("native_transforms must be at least 1");
    if (native_transforms > reads || native_transforms > native_reads) {
        fail("native_transforms exceeds the read budget");
    }
    if (shore < 1) fail("shore must be at least 1");
    if (chimera_size != 0 && vertices > chimera_size * shore) {
        fail("K_" + std::to_string(vertices) + " does not fit a " + std::to_string(chimera_size) + "x" +
             std::to_string(chimera_size) + " grid");
    }
    ga.validate();
    noise.validate();
    sampler.validate();
}

std::string spec_to_json(const ExperimentSpec& spec) {
    json doc;
    json problems = json::array();
    for (auto k : spec.problems) problems.push_back(std::string(to_string(k)));
    doc["problems"] = problems;
    doc["vertices"] = spec.vertices;
    doc["edge_probabilities"] = spec.edge_probabilities;
    doc["reversal_probabilities"] = spec.reversal_probabilities;
    doc["repetitions"] = spec.repetitions;
    doc["realizations"] = spec.realizations;
    doc["reads"] = spec.reads;
    doc["native_reads"] = spec.native_reads;
    doc["native_transforms"] = spec.native_transforms;
    doc["level"] = std::string(to_string(spec.level));
    doc["chimera_size"] = spec.chimera_size;
    doc["shore"] = spec.shore;
    doc["parameter"] = spec.parameter;
    doc["values"] = spec.values;
    doc["ga"] = json::parse(ga_config_to_json(spec.ga));
    doc["noise"] = json::parse(noise_to_json(spec.noise));
    doc["sampler"] = json::parse(sampler_config_to_json(spec.sampler));
    doc["seed"] = spec.seed;
    doc["threads"] = spec.threads;
    return doc.dump(2) + "\n";
}

ExperimentSpec spec_from_json(std::string_view text) {
    auto doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
    ExperimentSpec s = ExperimentSpec::desk();
    if (doc.contains("problems")) {
        s.problems.clear();
        for (const auto& p : doc.at("problems")) s.problems.push_back(problem_kind_from_string(p.get<std::string>()));
    }
    s.vertices = doc.value("vertices", s.vertices);
    s.edge_probabilities = doc.value("edge_probabilities", s.edge_probabilities);
    s.reversal_probabilities = doc.value("reversal_probabilities", s.reversal_probabilities);
    s.repetitions = doc.value("repetitions", s.repetitions);
    s.realizations = doc.value("realizations", s.realizations);
    s.reads = doc.value("reads", s.reads);
    s.native_reads = doc.value("native_reads", s.native_reads);
    s.native_transforms = doc.value("native_transforms", s.native_transforms);
    if (doc.contains("level")) s.level = level_from_string(doc.at("level").get<std::string>());
    s.chimera_size = doc.value("chimera_size", s.chimera_size);
    s.shore = doc.value("shore", s.shore);
    s.parameter = doc.value("parameter", s.parameter);
    s.values = doc.value("values", s.values);
    if (doc.contains("ga")) s.ga = ga_config_from_json(doc.at("ga").dump());
    if (doc.contains("noise")) s.noise = noise_from_json(doc.at("noise").dump());
    if (doc.contains("sampler")) s.sampler = sampler_config_from_json(doc.at("sampler").dump());
    s.seed = doc.value("seed", s.seed);
    s.threads = doc.value("threads", s.threads);
    return s;
}

Instance make_instance(const Graph& graph, ProblemKind kind, std::size_t chimera_size, std::size_t shore) {
    const std::size_t n = graph.vertex_count();
    const std::size_t m = chimera_size != 0 ? chimera_size : std::max<std::size_t>(1, (n + shore - 1) / shore);
    ChimeraTopology topo = chimera(m, m, shore);
    ProblemReduction red = reduce(graph, kind);
    IsingModel logical = qubo_to_ising(red.qubo);
    Embedding emb = embed_complete(n, topo);
    PhysicalIsing phys = embed_model(logical, emb, topo, default_chain_strength(logical));
    return Instance{graph, std::move(red), std::move(logical), std::move(topo), std::move(phys)};
}

namespace {

SpinReversalMask level_mask(const Instance& inst, Level level, double p, std::uint64_t seed) {
    const std::size_t size = inst.physical.model.num_variables();
    if (level == Level::Qubit) {
        return scatter_mask(random_mask(inst.physical.active_qubits.size(), p, seed), inst.physical.active_qubits,
                            size);
    }
    return expand_chain_mask(random_mask(inst.physical.embedding.num_chains(), p, seed), inst.physical.embedding,
                             size);
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd r;
    if (xs.empty()) return r;
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return r;
}

std::size_t problem_index(ProblemKind k) { return static_cast<std::size_t>(k); }

}  // namespace

SweepResult sweep_ps(const ExperimentSpec& spec, const std::filesystem::path& partial) {
    spec.validate();
    const std::size_t np = spec.problems.size();
    const std::size_t ng = spec.edge_probabilities.size();
    const std::size_t ns = spec.reversal_probabilities.size();
    const std::size_t nr = spec.repetitions;
    const std::size_t jobs = np * ng * ns * nr;

    std::ofstream partial_out;
    std::mutex partial_mutex;
    if (!partial.empty()) {
        if (partial.has_parent_path()) std::filesystem::create_directories(partial.parent_path());
        partial_out.open(partial, std::ios::trunc);
        if (!partial_out) throw std::runtime_error("cannot open " + partial.string());
        partial_out << "problem,p_g,p_s,repetition,standard,native,masked\n" << std::flush;
    }

    std::vector<SweepSample> samples(jobs);
    parallel_for(jobs, spec.threads, [&](std::size_t job) {
        std::size_t rep = job % nr;
        std::size_t si = (job / nr) % ns;
        std::size_t gi = (job / (nr * ns)) % ng;
        std::size_t pi = job / (nr * ns * ng);
        const ProblemKind kind = spec.problems[pi];
        const double pg = spec.edge_probabilities[gi];
        const double ps = spec.reversal_probabilities[si];

        SweepSample& out = samples[job];
        out.problem = kind;
        out.edge_index = gi;
        out.reversal_index = si;
        out.repetition = rep;
        out.graph_seed = derive_seed(spec.seed, {tag("sweep-graph"), gi, si, rep});
        out.sampler_seed = derive_seed(spec.seed, {tag("sweep-sampler"), problem_index(kind), gi, si, rep});
        out.mask_seed = derive_seed(spec.seed, {tag("sweep-mask"), problem_index(kind), gi, si, rep});

        Instance inst = make_instance(erdos_renyi(spec.vertices, pg, out.graph_seed), kind, spec.chimera_size,
                                      spec.shore);
        const IsingModel& model = inst.physical.model;
        SamplerConfig sc = spec.sampler;
        sc.num_reads = spec.reads;
        sc.seed = out.sampler_seed;
        sc.threads = 1;
        out.standard = score(solve_with_mask(model, SpinReversalMask(model.num_variables()), spec.noise, sc));
        out.native = score(solve_native(model, spec.reads, spec.native_transforms, spec.noise, sc));
        out.masked = score(solve_with_mask(model, level_mask(inst, spec.level, ps, out.mask_seed), spec.noise, sc));

        if (partial_out.is_open()) {
            std::lock_guard lock(partial_mutex);
            partial_out << to_string(kind) << ',' << format_number(pg) << ',' << format_number(ps) << ',' << rep
                        << ',' << format_number(out.standard) << ',' << format_number(out.native) << ','
                        << format_number(out.masked) << '\n'
                        << std::flush;
        }
    });

    SweepResult result;
    result.samples = std::move(samples);
    for (std::size_t pi = 0; pi < np; ++pi) {
        for (std::size_t gi = 0; gi < ng; ++gi) {
            for (std::size_t si = 0; si < ns; ++si) {
                std::vector<double> masked, native;
                for (std::size_t rep = 0; rep < nr; ++rep) {
                    const auto& s = result.samples[((pi * ng + gi) * ns + si) * nr + rep];
                    masked.push_back(s.masked - s.standard);
                    native.push_back(s.native - s.standard);
                }
                auto m = mean_std(masked);
                auto v = mean_std(native);
                result.rows.push_back({spec.problems[pi], spec.edge_probabilities[gi],
                                       spec.reversal_probabilities[si], nr, m.mean, m.std, v.mean, v.std});
            }
        }
    }
    return result;
}

std::vector<std::string> ga_parameters() { return {"N", "p_spin", "p_mat", "p_mut"}; }

std::vector<double> default_study_values(std::string_view parameter, Level level) {
    if (parameter == "N") return {20, 50, 80};
    if (parameter == "p_spin") {
        return level == Level::Qubit ? std::vector<double>{0.001, 0.01, 0.1} : std::vector<double>{0.1, 0.3, 0.5};
    }
    if (parameter == "p_mat") return {0.1, 0.3, 0.5};
    if (parameter == "p_mut") return {0.001, 0.01, 0.1};
    throw std::invalid_argument("unknown GA parameter '" + std::string(parameter) + "' (expected N, p_spin, p_mat "
                                "or p_mut)");
}

GAConfig study_base(Level level) {
    GAConfig cfg = GAConfig::study_base();
    cfg.level = level;
    if (level == Level::Chain) cfg.p_spin = 0.5;
    return cfg;
}

namespace {

GAConfig with_parameter(GAConfig cfg, const std::string& parameter, double value) {
    if (parameter == "N") {
        if (!(value >= 2.0) || value != std::floor(value)) {
            throw std::invalid_argument("population size must be an integer of at least 2, got " +
                                        format_number(value));
        }
        cfg.population = static_cast<std::size_t>(value);
    } else if (parameter == "p_spin") {
        cfg.p_spin = value;
    } else if (parameter == "p_mat") {
        cfg.p_mat = value;
    } else if (parameter == "p_mut") {
        cfg.p_mut = value;
    } else {
        default_study_values(parameter, cfg.level);  // throws
    }
    cfg.validate();
    return cfg;
}

SamplerConfig evaluation_sampler(const ExperimentSpec& spec) {
    SamplerConfig sc = spec.sampler;
    sc.threads = 1;
    return sc;
}

}  // namespace

StudyResult ga_param_study(const ExperimentSpec& spec, const std::string& parameter,
                           const std::vector<double>& values) {
    spec.validate();
    std::vector<double> vals = values.empty() ? default_study_values(parameter, spec.level) : values;
    default_study_values(parameter, spec.level);

    const ProblemKind kind = spec.problems.front();
    const std::uint64_t graph_seed = derive_seed(spec.seed, {tag("study-graph")});
    Instance inst =
        make_instance(erdos_renyi(spec.vertices, spec.edge_probabilities.front(), graph_seed), kind,
                      spec.chimera_size, spec.shore);
    MaskEvaluator evaluator = make_evaluator(inst.physical, spec.level, spec.noise, evaluation_sampler(spec));

    StudyResult result;
    result.parameter = parameter;
    for (double v : vals) {
        GAConfig cfg = study_base(spec.level);
        cfg.generations = spec.ga.generations;
        cfg.anneals = spec.reads;
        cfg.score_fraction = spec.ga.score_fraction;
        cfg.seed = derive_seed(spec.seed, {tag("study-ga")});
        cfg.threads = spec.threads;
        cfg = with_parameter(cfg, parameter, v);
        GAResult run = run_ga(evaluator, cfg);
        result.traces.push_back({v, cfg, std::move(run.history)});
    }
    return result;
}

ComparisonResult ga_vs_native(const ExperimentSpec& spec) {
    spec.validate();
    ComparisonResult result;
    const std::uint64_t graph_seed = derive_seed(spec.seed, {tag("compare-graph")});
    const Graph graph = erdos_renyi(spec.vertices, spec.edge_probabilities.front(), graph_seed);
    for (ProblemKind kind : spec.problems) {
        result.instances.push_back(make_instance(graph, kind, spec.chimera_size, spec.shore));
        const Instance& inst = result.instances.back();

        SamplerConfig sc = evaluation_sampler(spec);
        sc.threads = spec.threads;
        sc.seed = derive_seed(spec.seed, {tag("compare-native"), problem_index(kind)});
        const double native =
            score(solve_native(inst.physical.model, spec.native_reads, spec.native_transforms, spec.noise, sc));

        MaskEvaluator evaluator = make_evaluator(inst.physical, spec.level, spec.noise, evaluation_sampler(spec));
        for (std::size_t r = 0; r < spec.realizations; ++r) {
            GAConfig cfg = spec.ga;
            cfg.anneals = spec.reads;
            cfg.level = spec.level;
            cfg.seed = derive_seed(spec.seed, {tag("compare-ga"), problem_index(kind), r});
            cfg.threads = spec.threads;
            GAResult run = run_ga(evaluator, cfg);
            result.runs.push_back({kind, r, native, cfg.seed, sc.seed, std::move(run.history)});
        }
    }
    return result;
}

std::vector<std::size_t> reversal_count_trace(const GAHistory& history) {
    if (history.empty()) throw std::invalid_argument("empty GA history");
    std::vector<std::size_t> out;
    out.reserve(history.size());
    for (const auto& s : history.generations) out.push_back(s.best_popcount);
    return out;
}

double window_variance(const std::vector<std::size_t>& values, std::size_t first, std::size_t last) {
    if (first > last || last >= values.size()) throw std::out_of_range("variance window outside the series");
    const double n = static_cast<double>(last - first + 1);
    double mean = 0.0;
    for (std::size_t i = first; i <= last; ++i) mean += static_cast<double>(values[i]);
    mean /= n;
    double ss = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        double d = static_cast<double>(values[i]) - mean;
        ss += d * d;
    }
    return ss / n;
}

// ---------------------------------------------------------------------------
// CSV

std::string sweep_samples_csv(const ExperimentSpec& spec, const SweepResult& result) {
    std::ostringstream out;
    out << "problem,level,p_g,p_s,repetition,standard,native,masked,seed,graph_seed,sampler_seed,mask_seed,"
           "chip_seed\n";
    for (const auto& s : result.samples) {
        out << to_string(s.problem) << ',' << to_string(spec.level) << ','
            << format_number(spec.edge_probabilities.at(s.edge_index)) << ','
            << format_number(spec.reversal_probabilities.at(s.reversal_index)) << ',' << s.repetition << ','
            << format_number(s.standard) << ',' << format_number(s.native) << ',' << format_number(s.masked) << ','
            << spec.seed << ',' << s.graph_seed << ',' << s.sampler_seed << ',' << s.mask_seed << ','
            << spec.noise.chip_seed << '\n';
    }
    return out.str();
}

std::string sweep_rows_csv(const ExperimentSpec& spec, const SweepResult& result) {
    std::ostringstream out;
    out << "problem,level,p_g,p_s,repetitions,masked_mean,masked_std,native_mean,native_std,seed,chip_seed\n";
    for (const auto& r : result.rows) {
        out << to_string(r.problem) << ',' << to_string(spec.level) << ',' << format_number(r.edge_probability)
            << ',' << format_number(r.reversal_probability) << ',' << r.repetitions << ','
            << format_number(r.masked_mean) << ',' << format_number(r.masked_std) << ','
            << format_number(r.native_mean) << ',' << format_number(r.native_std) << ',' << spec.seed << ','
            << spec.noise.chip_seed << '\n';
    }
    return out.str();
}

std::string study_csv(const ExperimentSpec& spec, const StudyResult& result) {
    std::ostringstream out;
    out << "parameter,value,generation,best_e,mean_e,best_score,best_popcount,seed,ga_seed,chip_seed\n";
    for (const auto& t : result.traces) {
        for (const auto& g : t.history.generations) {
            out << result.parameter << ',' << format_number(t.value) << ',' << g.generation << ','
                << format_number(g.best_fitness) << ',' << format_number(g.mean_fitness) << ','
                << format_number(g.best_score) << ',' << g.best_popcount << ',' << spec.seed << ',' << t.config.seed
                << ',' << spec.noise.chip_seed << '\n';
        }
    }
    return out.str();
}

std::string comparison_csv(const ExperimentSpec& spec, const ComparisonResult& result) {
    std::ostringstream out;
    out << "problem,realization,generation,best_score,native_score,difference,best_e,best_popcount,seed,ga_seed,"
           "native_seed,chip_seed\n";
    for (const auto& r : result.runs) {
        for (const auto& g : r.history.generations) {
            out << to_string(r.problem) << ',' << r.realization << ',' << g.generation << ','
                << format_number(g.best_score) << ',' << format_number(r.native_score) << ','
                << format_number(g.best_score - r.native_score) << ',' << format_number(g.best_fitness) << ','
                << g.best_popcount << ',' << spec.seed << ',' << r.ga_seed << ',' << r.native_seed << ','
                << spec.noise.chip_seed << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SVG

std::string sweep_svg(const SweepResult& result, ProblemKind problem, Level level) {
    LineChart chart;
    chart.title = std::string(to_string(problem)) + ", " + std::string(to_string(level)) + " level";
    chart.x_label = "p_s";
    chart.y_label = "mean score difference to standard anneal";
    std::map<double, Series> by_pg;
    std::map<double, std::vector<double>> native;
    for (const auto& r : result.rows) {
        if (r.problem != problem) continue;
        auto& s = by_pg[r.edge_probability];
        s.label = "p_G = " + format_number(r.edge_probability);
        s.x.push_back(r.reversal_probability);
        s.y.push_back(r.masked_mean);
        s.error.push_back(r.masked_std);
        native[r.reversal_probability].push_back(r.native_mean);
    }
    for (auto& [pg, s] : by_pg) chart.series.push_back(std::move(s));
    Series nat;
    nat.label = "native";
    for (const auto& [ps, v] : native) {
        nat.x.push_back(ps);
        nat.y.push_back(mean_std(v).mean);
    }
    if (!nat.x.empty()) chart.series.push_back(std::move(nat));
    return chart.to_svg();
}

std::string study_svg(const StudyResult& result) {
    LineChart chart;
    chart.title = "GA parameter " + result.parameter;
    chart.x_label = "generation";
    chart.y_label = "best energy";
    for (const auto& t : result.traces) {
        Series s;
        s.label = result.parameter + " = " + format_number(t.value);
        for (const auto& g : t.history.generations) {
            s.x.push_back(static_cast<double>(g.generation));
            s.y.push_back(g.best_fitness);
        }
        chart.series.push_back(std::move(s));
    }
    return chart.to_svg();
}

namespace {

template <typename F>
std::string per_problem_chart(const ComparisonResult& result, LineChart chart, F value) {
    std::map<std::size_t, std::map<std::size_t, std::vector<double>>> acc;
    for (const auto& r : result.runs) {
        for (const auto& g : r.history.generations) {
            acc[problem_index(r.problem)][g.generation].push_back(value(r, g));
        }
    }
    for (const auto& [pk, gens] : acc) {
        Series s;
        s.label = std::string(to_string(static_cast<ProblemKind>(pk)));
        for (const auto& [g, v] : gens) {
            auto m = mean_std(v);
            s.x.push_back(static_cast<double>(g));
            s.y.push_back(m.mean);
            s.error.push_back(m.std);
        }
        chart.series.push_back(std::move(s));
    }
    return chart.to_svg();
}

}  // namespace

std::string comparison_svg(const ComparisonResult& result) {
    LineChart chart;
    chart.title = "GA best 1% score minus native score";
    chart.x_label = "generation";
    chart.y_label = "energy difference";
    return per_problem_chart(result, chart, [](const NativeComparison& r, const GenerationStats& g) {
        return g.best_score - r.native_score;
    });
}

std::string reversal_count_svg(const ComparisonResult& result) {
    LineChart chart;
    chart.title = "Reversed spins in the best mask";
    chart.x_label = "generation";
    chart.y_label = "popcount";
    return per_problem_chart(result, chart, [](const NativeComparison&, const GenerationStats& g) {
        return static_cast<double>(g.best_popcount);
    });
}

}  // namespace spinrev
