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

#include "spinrev/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "spinrev/io.hpp"
#include "spinrev/parallel.hpp"
#include "spinrev/random.hpp"

namespace spinrev {

using nlohmann::json;

std::string_view to_string(Level level) { return level == Level::Qubit ? "qubit" : "chain"; }

Level level_from_string(std::string_view name) {
    if (name == "qubit") return Level::Qubit;
    if (name == "chain") return Level::Chain;
    throw std::invalid_argument("unknown level '" + std::string(name) + "' (expected qubit or chain)");
}

GAConfig GAConfig::standard() { return GAConfig{}; }

GAConfig GAConfig::study_base() {
    GAConfig c;
    c.population = 20;
    return c;
}

std::size_t GAConfig::selection_size() const {
    auto k = static_cast<std::size_t>(std::ceil(p_mat * static_cast<double>(population) - 1e-9));
    return std::clamp<std::size_t>(k, 2, population);
}

void GAConfig::validate() const {
    if (population < 2) throw std::invalid_argument("GA population must be at least 2");
    auto in_unit = [](double p) { return p > 0.0 && p <= 1.0; };
    if (!in_unit(p_spin) || !in_unit(p_mat)) throw std::invalid_argument("p_spin and p_mat must lie in (0,1]");
    if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw std::invalid_argument("p_mut must lie in [0,1]");
    if (generations < 1) throw std::invalid_argument("GA needs at least one generation");
    if (anneals < 1) throw std::invalid_argument("GA needs at least one anneal per evaluation");
    if (!(score_fraction > 0.0 && score_fraction <= 1.0)) throw std::invalid_argument("score fraction in (0,1]");
}

// ---------------------------------------------------------------------------
// Evaluators

MaskEvaluator make_model_evaluator(IsingModel model, NoiseModel noise, SamplerConfig sampler) {
    const std::size_t n = model.num_variables();
    return {n, [model = std::move(model), noise, sampler](const SpinReversalMask& mask, std::uint64_t seed,
                                                         std::size_t reads) {
                SamplerConfig cfg = sampler;
                cfg.seed = seed;
                cfg.num_reads = reads;
                return solve_with_mask(model, mask, noise, cfg);
            }};
}

MaskEvaluator make_qubit_evaluator(PhysicalIsing physical, NoiseModel noise, SamplerConfig sampler) {
    const std::size_t n = physical.active_qubits.size();
    return {n, [p = std::move(physical), noise, sampler](const SpinReversalMask& mask, std::uint64_t seed,
                                                        std::size_t reads) {
                SamplerConfig cfg = sampler;
                cfg.seed = seed;
                cfg.num_reads = reads;
                auto full = scatter_mask(mask, p.active_qubits, p.model.num_variables());
                SampleSet out = solve_with_mask(p.model, full, noise, cfg);
                out.frame.space = Space::Physical;
                return out;
            }};
}

MaskEvaluator make_chain_evaluator(PhysicalIsing physical, NoiseModel noise, SamplerConfig sampler) {
    const std::size_t n = physical.embedding.num_chains();
    return {n, [p = std::move(physical), noise, sampler](const SpinReversalMask& mask, std::uint64_t seed,
                                                        std::size_t reads) {
                SamplerConfig cfg = sampler;
                cfg.seed = seed;
                cfg.num_reads = reads;
                auto full = expand_chain_mask(mask, p.embedding, p.model.num_variables());
                SampleSet out = solve_with_mask(p.model, full, noise, cfg);
                out.frame.space = Space::Physical;
                return out;
            }};
}

MaskEvaluator make_evaluator(PhysicalIsing physical, Level level, NoiseModel noise, SamplerConfig sampler) {
    return level == Level::Qubit ? make_qubit_evaluator(std::move(physical), noise, sampler)
                                 : make_chain_evaluator(std::move(physical), noise, sampler);
}

// ---------------------------------------------------------------------------
// Operators

SpinReversalMask crossover(const SpinReversalMask& a, const SpinReversalMask& b, std::uint64_t seed) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
    Rng rng(seed);
    SpinReversalMask child(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) child.set(i, rng.bernoulli(0.5) ? a[i] : b[i]);
    return child;
}

SpinReversalMask mutate(const SpinReversalMask& mask, double p_mut, std::uint64_t seed) {
    if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw std::invalid_argument("p_mut must lie in [0,1]");
    Rng rng(seed);
    SpinReversalMask out = mask;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.bernoulli(p_mut)) out.flip(i);
    }
    return out;
}

std::vector<SpinReversalMask> initial_population(std::size_t size, std::size_t length, double p_spin,
                                                 std::uint64_t seed) {
    std::vector<SpinReversalMask> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        out.push_back(random_mask(length, p_spin, derive_seed(seed, {tag("ga-init"), i})));
    }
    return out;
}

void evaluate_population(std::vector<Individual>& population, const MaskEvaluator& evaluator, std::size_t anneals,
                         double score_fraction, std::uint64_t seed, std::size_t generation, unsigned threads) {
    for (const auto& ind : population) {
        if (ind.mask.size() != evaluator.mask_length) {
            throw std::invalid_argument("individual mask length " + std::to_string(ind.mask.size()) +
                                        " != evaluator mask length " + std::to_string(evaluator.mask_length));
        }
    }
    parallel_for(population.size(), threads, [&](std::size_t i) {
        Individual& ind = population[i];
        ind.eval_seed = derive_seed(seed, {tag("ga-evaluate"), generation, i});
        SampleSet samples = evaluator.solve(ind.mask, ind.eval_seed, anneals);
        ind.fitness = samples.min_energy();
        ind.score = score(samples, score_fraction);
        ind.evaluated = true;
    });
}

// ---------------------------------------------------------------------------
// Driver

namespace {

std::size_t argmin_fitness(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].fitness < pop[best].fitness) best = i;
    }
    return best;
}

GenerationStats summarize(const std::vector<Individual>& pop, std::size_t generation, const GAHistory& history) {
    GenerationStats s;
    s.generation = generation;
    std::size_t best = argmin_fitness(pop);
    s.best_fitness = pop[best].fitness;
    s.best_score = pop[best].score;
    s.best_mask = pop[best].mask;
    s.best_popcount = pop[best].mask.popcount();
    double sum = 0.0;
    s.worst_fitness = pop[0].fitness;
    for (const auto& ind : pop) {
        sum += ind.fitness;
        s.worst_fitness = std::max(s.worst_fitness, ind.fitness);
    }
    s.mean_fitness = sum / static_cast<double>(pop.size());
    s.best_so_far = history.empty() ? s.best_fitness : std::min(history.generations.back().best_so_far, s.best_fitness);
    return s;
}

std::vector<SpinReversalMask> breed(const std::vector<Individual>& pop, const GAConfig& cfg, std::size_t generation) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness < pop[b].fitness; });
    order.resize(cfg.selection_size());

    Rng rng(derive_seed(cfg.seed, {tag("ga-breed"), generation}));
    std::vector<SpinReversalMask> children;
    children.reserve(cfg.population);
    for (std::size_t c = 0; c < cfg.population; ++c) {
        const auto& a = pop[order[rng.index(order.size())]].mask;
        const auto& b = pop[order[rng.index(order.size())]].mask;
        auto child = crossover(a, b, derive_seed(cfg.seed, {tag("ga-crossover"), generation, c}));
        children.push_back(mutate(child, cfg.p_mut, derive_seed(cfg.seed, {tag("ga-mutate"), generation, c})));
    }
    children[rng.index(children.size())] = pop[order.front()].mask;
    return children;
}

json stats_doc(const GenerationStats& s) {
    return {{"generation", s.generation},       {"best_fitness", s.best_fitness}, {"mean_fitness", s.mean_fitness},
            {"worst_fitness", s.worst_fitness}, {"best_score", s.best_score},     {"best_so_far", s.best_so_far},
            {"best_mask", s.best_mask.to_string()}};
}

GenerationStats stats_from_doc(const json& d) {
    GenerationStats s;
    s.generation = d.at("generation").get<std::size_t>();
    s.best_fitness = d.at("best_fitness").get<double>();
    s.mean_fitness = d.at("mean_fitness").get<double>();
    s.worst_fitness = d.at("worst_fitness").get<double>();
    s.best_score = d.at("best_score").get<double>();
    s.best_so_far = d.at("best_so_far").get<double>();
    s.best_mask = SpinReversalMask::from_string(d.at("best_mask").get<std::string>());
    s.best_popcount = s.best_mask.popcount();
    return s;
}

void write_checkpoint(const std::filesystem::path& path, const GAConfig& cfg, std::size_t next_generation,
                      const std::vector<SpinReversalMask>& population, const GAHistory& history) {
    json doc;
    doc["generator"] = std::string(kGeneratorName);
    doc["config"] = json::parse(ga_config_to_json(cfg));
    doc["next_generation"] = next_generation;
    json pop = json::array();
    for (const auto& m : population) pop.push_back(m.to_string());
    doc["population"] = std::move(pop);
    json hist = json::array();
    for (const auto& s : history.generations) hist.push_back(stats_doc(s));
    doc["history"] = std::move(hist);
    auto tmp = path;
    tmp += ".tmp";
    write_text_file(tmp, doc.dump() + "\n");
    std::filesystem::rename(tmp, path);
}

GAResult drive(const MaskEvaluator& evaluator, const GAConfig& cfg, std::size_t start,
               std::vector<SpinReversalMask> masks, GAHistory history, const GAOptions& options) {
    std::vector<Individual> pop;
    for (std::size_t g = start;; ++g) {
        pop.assign(masks.size(), Individual{});
        for (std::size_t i = 0; i < masks.size(); ++i) pop[i].mask = std::move(masks[i]);
        try {
            evaluate_population(pop, evaluator, cfg.anneals, cfg.score_fraction, cfg.seed, g, cfg.threads);
        } catch (const std::exception& e) {
            throw GAAborted(std::string("GA evaluation failed in generation ") + std::to_string(g) + ": " + e.what(),
                            std::move(history));
        }
        history.generations.push_back(summarize(pop, g, history));
        if (options.on_generation) options.on_generation(history.generations.back());
        if (g == cfg.generations) break;
        masks = breed(pop, cfg, g);
        if (!options.checkpoint.empty()) write_checkpoint(options.checkpoint, cfg, g + 1, masks, history);
    }
    GAResult result;
    std::size_t best = argmin_fitness(pop);
    result.best_mask = pop[best].mask;
    result.best_fitness = pop[best].fitness;
    result.best_score = pop[best].score;
    result.population = std::move(pop);
    result.history = std::move(history);
    return result;
}

}  // namespace

GAResult run_ga(const MaskEvaluator& evaluator, const GAConfig& cfg, const GAOptions& options) {
    cfg.validate();
    if (!evaluator.solve) throw std::invalid_argument("GA evaluator is empty");
    auto masks = initial_population(cfg.population, evaluator.mask_length, cfg.p_spin, cfg.seed);
    if (!options.checkpoint.empty()) write_checkpoint(options.checkpoint, cfg, 0, masks, GAHistory{});
    return drive(evaluator, cfg, 0, std::move(masks), GAHistory{}, options);
}

GAResult run_ga(const IsingModel& model, const GAConfig& cfg, const NoiseModel& noise, const SamplerConfig& sampler) {
    return run_ga(make_model_evaluator(model, noise, sampler), cfg);
}

GAResult resume_ga(const MaskEvaluator& evaluator, const std::filesystem::path& checkpoint, const GAOptions& options) {
    auto doc = json::parse(read_text_file(checkpoint));
    GAConfig cfg = ga_config_from_json(doc.at("config").dump());
    auto next = doc.at("next_generation").get<std::size_t>();
    std::vector<SpinReversalMask> masks;
    for (const auto& m : doc.at("population")) masks.push_back(SpinReversalMask::from_string(m.get<std::string>()));
    GAHistory history;
    for (const auto& s : doc.at("history")) history.generations.push_back(stats_from_doc(s));
    if (masks.size() != cfg.population) throw std::invalid_argument("checkpoint population size mismatch");
    for (const auto& m : masks) {
        if (m.size() != evaluator.mask_length) throw std::invalid_argument("checkpoint mask length mismatch");
    }
    if (history.size() != next || next > cfg.generations) throw std::invalid_argument("inconsistent checkpoint");
    return drive(evaluator, cfg, next, std::move(masks), std::move(history), options);
}

std::string ga_config_to_json(const GAConfig& cfg) {
    json doc = {{"population", cfg.population},   {"p_spin", cfg.p_spin},
                {"p_mat", cfg.p_mat},             {"p_mut", cfg.p_mut},
                {"generations", cfg.generations}, {"anneals", cfg.anneals},
                {"score_fraction", cfg.score_fraction}, {"level", std::string(to_string(cfg.level))},
                {"seed", cfg.seed}};
    return doc.dump(1) + "\n";
}

GAConfig ga_config_from_json(std::string_view text) {
    auto doc = json::parse(text);
    GAConfig c;
    c.population = doc.value("population", c.population);
    c.p_spin = doc.value("p_spin", c.p_spin);
    c.p_mat = doc.value("p_mat", c.p_mat);
    c.p_mut = doc.value("p_mut", c.p_mut);
    c.generations = doc.value("generations", c.generations);
    c.anneals = doc.value("anneals", c.anneals);
    c.score_fraction = doc.value("score_fraction", c.score_fraction);
    if (doc.contains("level")) c.level = level_from_string(doc["level"].get<std::string>());
    c.seed = doc.value("seed", c.seed);
    c.validate();
    return c;
}

std::string history_to_csv(const GAHistory& history, const GAConfig& cfg) {
    std::ostringstream out;
    out << "generation,best_e,mean_e,worst_e,best_popcount,best_score,best_so_far,seed\n";
    for (const auto& s : history.generations) {
        out << s.generation << ',' << format_number(s.best_fitness) << ',' << format_number(s.mean_fitness) << ','
            << format_number(s.worst_fitness) << ',' << s.best_popcount << ',' << format_number(s.best_score) << ','
            << format_number(s.best_so_far) << ',' << cfg.seed << '\n';
    }
    return out.str();
}

}  // namespace spinrev
