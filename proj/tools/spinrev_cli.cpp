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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinrev/chimera.hpp"
#include "spinrev/experiments.hpp"
#include "spinrev/genetic.hpp"
#include "spinrev/graph.hpp"
#include "spinrev/io.hpp"
#include "spinrev/ising.hpp"
#include "spinrev/random.hpp"
#include "spinrev/sampler.hpp"
#include "spinrev/svg.hpp"

namespace fs = std::filesystem;
using namespace spinrev;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string noise_profile;
    std::string out = "out";
    bool paper_scale = false;
    unsigned threads = 1;
};

NoiseModel load_noise(const Globals& g) {
    if (g.noise_profile.empty()) return NoiseModel{};
    return noise_from_json(read_text_file(g.noise_profile));
}

void note(const fs::path& path) { std::cout << "wrote " << path.string() << '\n'; }

void emit(const fs::path& path, const std::string& text) {
    write_text_file(path, text);
    note(path);
}

ProblemKind parse_problem(const std::string& name) { return problem_kind_from_string(name); }

// Experiment options shared by sweep-ps, ga-study and ga-vs-native. Only
// options given on the command line override the base spec.
struct ExperimentFlags {
    std::string spec_file;
    std::vector<std::string> problems;
    std::size_t vertices = 0;
    std::vector<double> edge_probabilities;
    std::size_t repetitions = 0;
    std::size_t realizations = 0;
    std::size_t reads = 0;
    std::size_t native_reads = 0;
    std::size_t native_transforms = 0;
    std::string level;
    std::size_t chimera_size = 0;
    std::size_t sweeps = 0;
    std::size_t generations = 0;
    CLI::App* app = nullptr;

    void attach(CLI::App* sub) {
        app = sub;
        sub->add_option("--spec", spec_file, "Experiment spec JSON; replays a recorded run")->check(CLI::ExistingFile);
        sub->add_option("--problem", problems, "max-clique and/or min-vertex-cover");
        sub->add_option("--vertices", vertices, "Graph size |V|");
        sub->add_option("--edge-probability", edge_probabilities, "p_G value(s)");
        sub->add_option("--repetitions", repetitions, "Graphs per grid point");
        sub->add_option("--realizations", realizations, "GA runs per problem");
        sub->add_option("--reads", reads, "Anneals per solve or GA evaluation (N_a)");
        sub->add_option("--native-reads", native_reads, "Reads of the native baseline");
        sub->add_option("--native-transforms", native_transforms, "Gauges of the native baseline (N_s)");
        sub->add_option("--level", level, "qubit or chain");
        sub->add_option("--chimera-size", chimera_size, "Grid side M = N (0: smallest fit)");
        sub->add_option("--sweeps", sweeps, "Metropolis sweeps per read");
        sub->add_option("--generations", generations, "GA generations R");
    }

    bool given(const char* name) const { return app->count(name) > 0; }

    ExperimentSpec build(const Globals& g) const {
        ExperimentSpec s = g.paper_scale ? ExperimentSpec::paper_scale() : ExperimentSpec::desk();
        if (!spec_file.empty()) s = spec_from_json(read_text_file(spec_file));
        if (g.seed_set) s.seed = g.seed;
        if (!g.noise_profile.empty()) s.noise = load_noise(g);
        if (given("--problem")) {
            s.problems.clear();
            for (const auto& p : problems) s.problems.push_back(parse_problem(p));
        }
        if (given("--vertices")) s.vertices = vertices;
        if (given("--edge-probability")) s.edge_probabilities = edge_probabilities;
        if (given("--repetitions")) s.repetitions = repetitions;
        if (given("--realizations")) s.realizations = realizations;
        if (given("--reads")) s.reads = reads;
        if (given("--native-reads")) s.native_reads = native_reads;
        if (given("--native-transforms")) s.native_transforms = native_transforms;
        if (given("--level")) s.level = level_from_string(level);
        if (given("--chimera-size")) s.chimera_size = chimera_size;
        if (given("--sweeps")) s.sampler.sweeps = sweeps;
        if (given("--generations")) s.ga.generations = generations;
        s.ga.anneals = s.reads;
        s.ga.level = s.level;
        s.threads = g.threads;
        s.validate();
        return s;
    }
};

int run_generate(const Globals& g, std::size_t n, double p) {
    Graph graph = erdos_renyi(n, p, g.seed);
    emit(fs::path(g.out) / "graph.txt", to_edge_list(graph));
    return 0;
}

int run_reduce(const Globals& g, const std::string& graph_file, const std::string& problem,
               std::optional<double> a, std::optional<double> b) {
    Graph graph = graph_from_edge_list(read_text_file(graph_file));
    ProblemKind kind = parse_problem(problem);
    ProblemReduction red = kind == ProblemKind::MaxClique
                               ? max_clique_qubo(graph, a.value_or(1.0), b.value_or(2.0))
                               : min_vertex_cover_qubo(graph, a.value_or(2.0), b.value_or(1.0));
    std::string meta = "{\"problem\":\"" + std::string(to_string(kind)) + "\",\"penalty_a\":" +
                       format_number(red.penalty_a) + ",\"penalty_b\":" + format_number(red.penalty_b) + "}";
    emit(fs::path(g.out) / "qubo.json", to_json(red.qubo, meta));
    emit(fs::path(g.out) / "ising.json", to_json(qubo_to_ising(red.qubo), meta));
    return 0;
}

int run_embed(const Globals& g, const std::string& model_file, std::size_t size, std::size_t shore,
              std::optional<double> chain_strength) {
    IsingModel logical = as_ising(model_from_json(read_text_file(model_file)));
    const std::size_t n = logical.num_variables();
    const std::size_t m = size != 0 ? size : std::max<std::size_t>(1, (n + shore - 1) / shore);
    ChimeraTopology topo = chimera(m, m, shore);
    Embedding emb = embed_complete(n, topo);
    double cs = chain_strength.value_or(default_chain_strength(logical));
    PhysicalIsing phys = embed_model(logical, emb, topo, cs);
    emit(fs::path(g.out) / "embedding.json", embedding_to_json(emb, topo));
    emit(fs::path(g.out) / "physical.json",
         to_json(phys.model, "{\"chain_strength\":" + format_number(cs) + ",\"logical_variables\":" +
                                 std::to_string(n) + "}"));
    return 0;
}

int run_sample(const Globals& g, const std::string& model_file, SamplerConfig cfg, const std::string& mask_file,
               std::size_t native) {
    IsingModel model = as_ising(model_from_json(read_text_file(model_file)));
    NoiseModel noise = load_noise(g);
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    SampleSet samples;
    if (native > 0) {
        if (!mask_file.empty()) throw std::invalid_argument("--mask and --native are mutually exclusive");
        samples = solve_native(model, cfg.num_reads, native, noise, cfg);
    } else if (!mask_file.empty()) {
        samples = solve_with_mask(model, mask_from_json(read_text_file(mask_file)), noise, cfg);
    } else {
        samples = sample(model, noise, cfg);
    }
    emit(fs::path(g.out) / "samples.csv", to_csv(samples, noise, cfg));
    std::cout << "min energy " << format_number(samples.min_energy()) << ", 1% score "
              << format_number(score(samples)) << '\n';
    return 0;
}

struct GAFlags {
    std::string model_file;
    std::string embedding_file;
    std::string level = "qubit";
    std::string checkpoint;
    std::string resume;
    std::size_t sweeps = 0;
    GAConfig cfg = GAConfig::standard();
};

int run_ga_command(const Globals& g, GAFlags f) {
    IsingModel model = as_ising(model_from_json(read_text_file(f.model_file)));
    NoiseModel noise = load_noise(g);
    SamplerConfig sc;
    if (f.sweeps != 0) sc.sweeps = f.sweeps;
    f.cfg.level = level_from_string(f.level);
    f.cfg.seed = g.seed;
    f.cfg.threads = g.threads;

    MaskEvaluator evaluator;
    std::optional<EmbeddingFile> emb;
    std::optional<PhysicalIsing> phys;
    if (f.embedding_file.empty()) {
        evaluator = make_model_evaluator(model, noise, sc);
    } else {
        emb = embedding_from_json(read_text_file(f.embedding_file));
        phys = PhysicalIsing{model, IsingModel(emb->embedding.num_chains()), emb->embedding, 0.0,
                             emb->embedding.used_qubits()};
        if (model.num_variables() != emb->topology.qubit_count()) {
            throw std::invalid_argument("model has " + std::to_string(model.num_variables()) +
                                        " variables but the embedding topology has " +
                                        std::to_string(emb->topology.qubit_count()) + " qubits");
        }
        evaluator = make_evaluator(*phys, f.cfg.level, noise, sc);
    }

    GAOptions options;
    options.checkpoint = f.checkpoint;
    options.on_generation = [](const GenerationStats& s) {
        std::cerr << "generation " << s.generation << ": best " << format_number(s.best_fitness) << ", score "
                  << format_number(s.best_score) << ", popcount " << s.best_popcount << '\n';
    };
    GAResult result = f.resume.empty() ? run_ga(evaluator, f.cfg, options) : resume_ga(evaluator, f.resume, options);
    const GAConfig& used = f.cfg;
    emit(fs::path(g.out) / "ga_history.csv", history_to_csv(result.history, used));
    emit(fs::path(g.out) / "ga_config.json", ga_config_to_json(used));
    emit(fs::path(g.out) / "best_mask.json", mask_to_json(result.best_mask));
    std::cout << "best energy " << format_number(result.best_fitness) << ", 1% score "
              << format_number(result.best_score) << '\n';
    return 0;
}

SpinReversalMask in_use_mask(const Instance& inst, Level level, const SpinReversalMask& mask) {
    const auto& used = inst.physical.active_qubits;
    if (level == Level::Qubit) return mask;
    return gather_mask(expand_chain_mask(mask, inst.physical.embedding, inst.physical.model.num_variables()), used);
}

int run_sweep(const Globals& g, const ExperimentFlags& flags) {
    ExperimentSpec spec = flags.build(g);
    fs::path out(g.out);
    emit(out / "spec.json", spec_to_json(spec));
    fs::path partial = out / "sweep_ps.partial.csv";
    SweepResult result = sweep_ps(spec, partial);
    fs::remove(partial);
    emit(out / "sweep_ps_samples.csv", sweep_samples_csv(spec, result));
    emit(out / "sweep_ps.csv", sweep_rows_csv(spec, result));
    for (ProblemKind k : spec.problems) {
        emit(out / ("sweep_ps_" + std::string(to_string(k)) + ".svg"), sweep_svg(result, k, spec.level));
    }
    return 0;
}

int run_study(const Globals& g, const ExperimentFlags& flags, const std::string& parameter,
              const std::vector<double>& values) {
    ExperimentSpec spec = flags.build(g);
    if (flags.given("--parameter") || flags.spec_file.empty()) spec.parameter = parameter;
    if (flags.given("--values")) spec.values = values;
    if (spec.level == Level::Chain && !flags.given("--generations") && flags.spec_file.empty()) {
        spec.ga.generations = 50;
    }
    std::vector<std::string> names = spec.parameter == "all" ? ga_parameters() : std::vector{spec.parameter};
    fs::path out(g.out);
    emit(out / "spec.json", spec_to_json(spec));
    for (const auto& name : names) {
        StudyResult result = ga_param_study(spec, name, spec.parameter == "all" ? std::vector<double>{} : spec.values);
        emit(out / ("ga_study_" + name + ".csv"), study_csv(spec, result));
        emit(out / ("ga_study_" + name + ".svg"), study_svg(result));
    }
    return 0;
}

int run_compare(const Globals& g, const ExperimentFlags& flags) {
    ExperimentSpec spec = flags.build(g);
    fs::path out(g.out);
    emit(out / "spec.json", spec_to_json(spec));
    ComparisonResult result = ga_vs_native(spec);
    emit(out / "ga_vs_native.csv", comparison_csv(spec, result));
    emit(out / "ga_vs_native.svg", comparison_svg(result));
    emit(out / "reversal_counts.svg", reversal_count_svg(result));
    for (std::size_t p = 0; p < spec.problems.size(); ++p) {
        const Instance& inst = result.instances[p];
        for (const auto& run : result.runs) {
            if (run.problem != spec.problems[p] || run.realization != 0) continue;
            const auto& first = run.history.generations.front();
            const auto& last = run.history.generations.back();
            std::string stem = "layout_" + std::string(to_string(run.problem));
            fs::path a = out / (stem + "_initial.svg");
            fs::path b = out / (stem + "_final.svg");
            render_layout(inst.topology, inst.physical.embedding, in_use_mask(inst, spec.level, first.best_mask), a,
                          "generation 0");
            note(a);
            render_layout(inst.topology, inst.physical.embedding, in_use_mask(inst, spec.level, last.best_mask), b,
                          "generation " + std::to_string(last.generation));
            note(b);
        }
    }
    return 0;
}

int run_render(const Globals& g, const std::string& embedding_file, const std::string& mask_file,
               const std::string& title) {
    EmbeddingFile e = embedding_from_json(read_text_file(embedding_file));
    SpinReversalMask mask = mask_from_json(read_text_file(mask_file));
    auto used = e.embedding.used_qubits();
    if (mask.size() == e.topology.qubit_count() && mask.size() != used.size()) mask = gather_mask(mask, used);
    fs::path path = fs::path(g.out) / "layout.svg";
    render_layout(e.topology, e.embedding, mask, path, title);
    note(path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-reversal transform experiments on an emulated noisy annealer"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master seed")->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--noise-profile", g.noise_profile, "Noise model JSON")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_flag("--paper-scale", g.paper_scale, "Use full-size experiment defaults");
    app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();
    for (auto* opt : app.get_options()) opt->configurable();
    app.fallthrough();

    std::size_t gen_n = 12;
    double gen_p = 0.5;
    auto* gen = app.add_subcommand("generate", "Erdos-Renyi graph G(n, p)");
    gen->add_option("--vertices,-n", gen_n, "Vertex count")->capture_default_str();
    gen->add_option("--edge-probability,-p", gen_p, "Edge probability")->capture_default_str();

    std::string red_graph, red_problem = "max-clique";
    std::optional<double> red_a, red_b;
    auto* red = app.add_subcommand("reduce", "Graph problem to QUBO and Ising model");
    red->add_option("--graph", red_graph, "Edge list file")->required()->check(CLI::ExistingFile);
    red->add_option("--problem", red_problem, "max-clique or min-vertex-cover")->capture_default_str();
    red->add_option("--penalty-a", red_a, "Penalty weight A");
    red->add_option("--penalty-b", red_b, "Penalty weight B");

    std::string emb_model;
    std::size_t emb_size = 0, emb_shore = 4;
    std::optional<double> emb_cs;
    auto* emb = app.add_subcommand("embed", "Clique-embed a logical model on a Chimera grid");
    emb->add_option("--model", emb_model, "Logical model JSON")->required()->check(CLI::ExistingFile);
    emb->add_option("--chimera-size", emb_size, "Grid side M = N (0: smallest fit)");
    emb->add_option("--shore", emb_shore, "Cell shore size t")->capture_default_str();
    emb->add_option("--chain-strength", emb_cs, "Default: 2 * max |coefficient|");

    std::string smp_model, smp_mask;
    std::size_t smp_native = 0;
    SamplerConfig smp_cfg;
    auto* smp = app.add_subcommand("sample", "Anneal a model on the emulated chip");
    smp->add_option("--model", smp_model, "Model JSON")->required()->check(CLI::ExistingFile);
    smp->add_option("--reads", smp_cfg.num_reads, "Number of reads")->capture_default_str();
    smp->add_option("--sweeps", smp_cfg.sweeps, "Sweeps per read")->capture_default_str();
    smp->add_option("--beta-min", smp_cfg.beta_min, "Initial inverse temperature")->capture_default_str();
    smp->add_option("--beta-max", smp_cfg.beta_max, "Final inverse temperature")->capture_default_str();
    smp->add_option("--mask", smp_mask, "Spin-reversal mask JSON")->check(CLI::ExistingFile);
    smp->add_option("--native", smp_native, "Native reversal with this many random gauges");

    GAFlags ga_flags;
    auto* ga = app.add_subcommand("ga", "Genetic search for a spin-reversal mask");
    ga->add_option("--model", ga_flags.model_file, "Model JSON; the physical model when --embedding is given")
        ->required()
        ->check(CLI::ExistingFile);
    ga->add_option("--embedding", ga_flags.embedding_file, "Embedding JSON; masks then address qubits or chains")
        ->check(CLI::ExistingFile);
    ga->add_option("--level", ga_flags.level, "qubit or chain")->capture_default_str();
    ga->add_option("--population,-N", ga_flags.cfg.population)->capture_default_str();
    ga->add_option("--p-spin", ga_flags.cfg.p_spin)->capture_default_str();
    ga->add_option("--p-mat", ga_flags.cfg.p_mat)->capture_default_str();
    ga->add_option("--p-mut", ga_flags.cfg.p_mut)->capture_default_str();
    ga->add_option("--generations,-R", ga_flags.cfg.generations)->capture_default_str();
    ga->add_option("--reads", ga_flags.cfg.anneals, "Anneals per evaluation (N_a)")->capture_default_str();
    ga->add_option("--sweeps", ga_flags.sweeps, "Sweeps per read");
    ga->add_option("--checkpoint", ga_flags.checkpoint, "Rewrite a resumable state file every generation");
    ga->add_option("--resume", ga_flags.resume, "Continue from a checkpoint")->check(CLI::ExistingFile);

    ExperimentFlags sweep_flags, study_flags, compare_flags;
    auto* sweep = app.add_subcommand("sweep-ps", "Score difference to the standard anneal versus p_s");
    sweep_flags.attach(sweep);

    std::string study_param = "N";
    std::vector<double> study_values;
    auto* study = app.add_subcommand("ga-study", "GA parameter dependence");
    study_flags.attach(study);
    study->add_option("--parameter", study_param, "N, p_spin, p_mat, p_mut or all")->capture_default_str();
    study->add_option("--values", study_values, "Values to try (default: the standard list)");

    auto* compare = app.add_subcommand("ga-vs-native", "GA against native spin reversal");
    compare_flags.attach(compare);

    std::string render_embedding, render_mask, render_title;
    auto* render = app.add_subcommand("render-layout", "Colour in-use Chimera qubits by mask bit");
    render->add_option("--embedding", render_embedding, "Embedding JSON")->required()->check(CLI::ExistingFile);
    render->add_option("--mask", render_mask, "Mask JSON over the in-use qubits")->required()->check(CLI::ExistingFile);
    render->add_option("--title", render_title, "Figure title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen) return run_generate(g, gen_n, gen_p);
        if (*red) return run_reduce(g, red_graph, red_problem, red_a, red_b);
        if (*emb) return run_embed(g, emb_model, emb_size, emb_shore, emb_cs);
        if (*smp) return run_sample(g, smp_model, smp_cfg, smp_mask, smp_native);
        if (*ga) return run_ga_command(g, ga_flags);
        if (*sweep) return run_sweep(g, sweep_flags);
        if (*study) return run_study(g, study_flags, study_param, study_values);
        if (*compare) return run_compare(g, compare_flags);
        if (*render) return run_render(g, render_embedding, render_mask, render_title);
    } catch (const GAAborted& e) {
        std::cerr << "error: " << e.what() << " (" << e.history.size() << " generations completed)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
