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

#include "spinrev/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "spinrev/chimera.hpp"
#include "spinrev/io.hpp"
#include "spinrev/parallel.hpp"
#include "spinrev/random.hpp"

namespace spinrev {

using nlohmann::json;

NoiseModel NoiseModel::ideal() {
    NoiseModel n;
    n.bias_sigma = 0.0;
    n.coupler_sigma = 0.0;
    n.dac_bits = 53;
    n.leakage = 0.0;
    n.read_sigma = 0.0;
    return n;
}

void NoiseModel::validate() const {
    if (!(bias_sigma >= 0.0 && coupler_sigma >= 0.0 && read_sigma >= 0.0)) {
        throw std::invalid_argument("noise sigmas must be non-negative");
    }
    if (dac_bits < 1 || dac_bits > 60) throw std::invalid_argument("dac_bits must lie in [1,60]");
    if (!std::isfinite(leakage)) throw std::invalid_argument("leakage must be finite");
}

void SamplerConfig::validate() const {
    if (num_reads < 1) throw std::invalid_argument("num_reads must be at least 1");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be at least 1");
    if (!(beta_min > 0.0 && beta_min < beta_max)) throw std::invalid_argument("need 0 < beta_min < beta_max");
}

double SampleSet::min_energy() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : records) m = std::min(m, r.energy);
    return m;
}

// ---------------------------------------------------------------------------
// Noise realisation

double quantization_step(double range, int dac_bits) { return 2.0 * range / std::ldexp(1.0, dac_bits); }

namespace {

double quantize(double x, double range, double step) {
    double q = std::round(x / step) * step;
    return std::clamp(q, -range, range);
}

std::vector<bool> active_variables(const IsingModel& model) {
    std::vector<bool> active(model.num_variables(), false);
    for (std::size_t i = 0; i < model.num_variables(); ++i) active[i] = model.linear(i) != 0.0;
    for (const auto& [k, a] : model.quadratic_terms()) active[k.first] = active[k.second] = true;
    return active;
}

}  // namespace

IsingModel realize_noise(const IsingModel& model, const NoiseModel& noise) {
    noise.validate();
    const auto active = active_variables(model);
    IsingModel out = rescale(model).model;

    const double h_step = quantization_step(2.0, noise.dac_bits);
    const double j_step = quantization_step(1.0, noise.dac_bits);
    for (std::size_t i = 0; i < out.num_variables(); ++i) {
        if (active[i]) out.set_linear(i, quantize(out.linear(i), 2.0, h_step));
    }
    for (const auto& [k, a] : model.quadratic_terms()) {
        out.set_quadratic(k.first, k.second, quantize(out.quadratic(k.first, k.second), 1.0, j_step));
    }

    if (noise.bias_sigma > 0.0) {
        for (std::size_t i = 0; i < out.num_variables(); ++i) {
            if (active[i]) out.add_linear(i, noise.bias_sigma * hashed_normal(noise.chip_seed, {tag("bias"), i}));
        }
    }
    if (noise.coupler_sigma > 0.0) {
        for (const auto& [k, a] : model.quadratic_terms()) {
            const double offset = hashed_normal(noise.chip_seed, {tag("coupler"), k.first, k.second});
            out.add_quadratic(k.first, k.second, noise.coupler_sigma * offset);
        }
    }
    if (noise.leakage != 0.0) {
        std::vector<double> leak(out.num_variables(), 0.0);
        for (const auto& [k, a] : out.quadratic_terms()) {
            leak[k.first] += a;
            leak[k.second] += a;
        }
        for (std::size_t i = 0; i < out.num_variables(); ++i) {
            if (leak[i] != 0.0) out.add_linear(i, noise.leakage * leak[i]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Annealing

namespace {

// Active part of a model in adjacency form.
struct CompactProblem {
    std::vector<std::size_t> variables;
    std::vector<double> h;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<double> j;
    std::vector<std::uint32_t> row_start;  // CSR over variables
    std::vector<std::uint32_t> neighbour;
    std::vector<std::uint32_t> edge_of;
};

CompactProblem build_problem(const IsingModel& submitted, const IsingModel& realized) {
    const auto active = active_variables(submitted);
    CompactProblem p;
    std::vector<std::uint32_t> index(submitted.num_variables(), 0);
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i]) {
            index[i] = static_cast<std::uint32_t>(p.variables.size());
            p.variables.push_back(i);
            p.h.push_back(realized.linear(i));
        }
    }
    const std::size_t n = p.variables.size();
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& [k, a] : submitted.quadratic_terms()) {
        p.edges.emplace_back(index[k.first], index[k.second]);
        p.j.push_back(realized.quadratic(k.first, k.second));
        ++degree[index[k.first]];
        ++degree[index[k.second]];
    }
    p.row_start.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) p.row_start[i + 1] = p.row_start[i] + degree[i];
    p.neighbour.resize(p.row_start[n]);
    p.edge_of.resize(p.row_start[n]);
    std::vector<std::uint32_t> fill(p.row_start.begin(), p.row_start.end() - 1);
    for (std::uint32_t e = 0; e < p.edges.size(); ++e) {
        auto [a, b] = p.edges[e];
        p.neighbour[fill[a]] = b;
        p.edge_of[fill[a]++] = e;
        p.neighbour[fill[b]] = a;
        p.edge_of[fill[b]++] = e;
    }
    return p;
}

std::vector<double> beta_schedule(const SamplerConfig& cfg) {
    std::vector<double> betas(cfg.sweeps);
    if (cfg.sweeps == 1) {
        betas[0] = cfg.beta_max;
        return betas;
    }
    const double ratio = cfg.beta_max / cfg.beta_min;
    for (std::size_t k = 0; k < cfg.sweeps; ++k) {
        betas[k] = cfg.beta_min * std::pow(ratio, static_cast<double>(k) / static_cast<double>(cfg.sweeps - 1));
    }
    return betas;
}

constexpr double kRejectAbove = 24.0;
constexpr double kTwoPow32 = 4294967296.0;

SpinState anneal_once(const CompactProblem& p, const std::vector<double>& betas, double read_sigma, std::size_t size,
                      std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = p.variables.size();
    std::vector<double> h = p.h;
    std::vector<double> j = p.j;
    if (read_sigma > 0.0) {
        for (auto& x : h) x += read_sigma * rng.normal();
        for (auto& x : j) x += read_sigma * rng.normal();
    }
    std::vector<double> coupling(p.edge_of.size());
    for (std::size_t k = 0; k < coupling.size(); ++k) coupling[k] = j[p.edge_of[k]];

    std::vector<std::int8_t> full(size);
    for (std::size_t base = 0; base < size; base += 64) {
        std::uint64_t word = rng.bits();
        for (std::size_t b = 0; b < 64 && base + b < size; ++b) full[base + b] = (word >> b) & 1U ? 1 : -1;
    }

    std::vector<double> s(n);
    for (auto& x : s) x = rng.bernoulli(0.5) ? 1.0 : -1.0;
    std::vector<double> field(h);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        auto [a, b] = p.edges[e];
        field[a] += j[e] * s[b];
        field[b] += j[e] * s[a];
    }
    const std::uint32_t* row = p.row_start.data();
    const std::uint32_t* nb = p.neighbour.data();
    const double* cp = coupling.data();
    // Acceptance draws use 32-bit halves of each generator word.
    std::uint64_t word = 0;
    bool spare = false;
    auto draw = [&]() -> std::uint32_t {
        if (spare) {
            spare = false;
            return static_cast<std::uint32_t>(word >> 32);
        }
        word = rng.bits();
        spare = true;
        return static_cast<std::uint32_t>(word);
    };
    for (double beta : betas) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = -2.0 * beta * s[i] * field[i];
            if (x <= 0.0 ||
                (x < kRejectAbove && static_cast<double>(draw()) < kTwoPow32 * std::exp(static_cast<float>(-x)))) {
                const double change = -2.0 * s[i];
                s[i] = -s[i];
                for (std::uint32_t k = row[i]; k < row[i + 1]; ++k) field[nb[k]] += cp[k] * change;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) full[p.variables[i]] = s[i] > 0.0 ? 1 : -1;
    return SpinState(VarType::Spin, std::move(full));
}

void sort_records(std::vector<SampleRecord>& records) {
    std::sort(records.begin(), records.end(), [](const SampleRecord& a, const SampleRecord& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.state.values < b.state.values;
    });
}

std::vector<SampleRecord> aggregate(const IsingModel& model, std::vector<SpinState>&& states) {
    std::map<std::vector<std::int8_t>, std::size_t> counts;
    for (auto& s : states) ++counts[std::move(s.values)];
    std::vector<SampleRecord> records;
    records.reserve(counts.size());
    for (auto& [values, count] : counts) {
        SpinState s(VarType::Spin, values);
        double e = energy(model, s);
        records.push_back({std::move(s), e, count});
    }
    sort_records(records);
    return records;
}

}  // namespace

SampleSet sample(const IsingModel& model, const NoiseModel& noise, const SamplerConfig& cfg) {
    cfg.validate();
    const IsingModel realized = realize_noise(model, noise);
    const CompactProblem problem = build_problem(model, realized);
    const auto betas = beta_schedule(cfg);

    std::vector<SpinState> reads(cfg.num_reads);
    parallel_for(cfg.num_reads, cfg.threads, [&](std::size_t r) {
        reads[r] = anneal_once(problem, betas, noise.read_sigma, model.num_variables(),
                               derive_seed(cfg.seed, {tag("read"), r}));
    });

    SampleSet out;
    out.records = aggregate(model, std::move(reads));
    out.total_reads = cfg.num_reads;
    return out;
}

SampleSet solve_with_mask(const IsingModel& model, const SpinReversalMask& mask, const NoiseModel& noise,
                          const SamplerConfig& cfg) {
    SampleSet out = sample(apply_spin_reversal(model, mask), noise, cfg);
    for (auto& r : out.records) r.state = transform_state(r.state, mask);
    sort_records(out.records);
    out.frame.gauge = Gauge::Original;
    return out;
}

SampleSet solve_native(const IsingModel& model, std::size_t num_reads, std::size_t num_transforms,
                       const NoiseModel& noise, const SamplerConfig& cfg) {
    if (num_transforms < 1) throw std::invalid_argument("need at least one spin reversal transform");
    if (num_transforms > num_reads) {
        throw std::invalid_argument("num_transforms (" + std::to_string(num_transforms) + ") exceeds num_reads (" +
                                    std::to_string(num_reads) + ")");
    }
    const std::size_t per = num_reads / num_transforms;
    std::map<std::vector<std::int8_t>, SampleRecord> merged;
    for (std::size_t t = 0; t < num_transforms; ++t) {
        auto mask = random_mask(model.num_variables(), 0.5, derive_seed(cfg.seed, {tag("native-mask"), t}));
        SamplerConfig sub = cfg;
        sub.num_reads = per;
        sub.seed = derive_seed(cfg.seed, {tag("native-reads"), t});
        for (auto& r : solve_with_mask(model, mask, noise, sub).records) {
            auto [it, fresh] = merged.try_emplace(r.state.values, r);
            if (!fresh) it->second.occurrences += r.occurrences;
        }
    }
    SampleSet out;
    for (auto& [k, r] : merged) out.records.push_back(std::move(r));
    sort_records(out.records);
    out.total_reads = per * num_transforms;
    out.dropped_reads = num_reads - out.total_reads;
    out.num_transforms = num_transforms;
    return out;
}

double score(const SampleSet& samples, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("score fraction must lie in (0,1]");
    std::vector<std::pair<double, std::size_t>> levels;
    std::size_t total = 0;
    for (const auto& r : samples.records) {
        if (r.occurrences == 0) continue;
        levels.emplace_back(r.energy, r.occurrences);
        total += r.occurrences;
    }
    if (total == 0) throw std::invalid_argument("cannot score an empty sample set");
    std::sort(levels.begin(), levels.end());
    auto take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
    take = std::clamp<std::size_t>(take, 1, total);
    double sum = 0.0;
    std::size_t left = take;
    for (const auto& [e, count] : levels) {
        std::size_t used = std::min(left, count);
        sum += e * static_cast<double>(used);
        left -= used;
        if (left == 0) break;
    }
    return sum / static_cast<double>(take);
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

json noise_doc(const NoiseModel& n) {
    return {{"chip_seed", n.chip_seed}, {"bias_sigma", n.bias_sigma}, {"coupler_sigma", n.coupler_sigma},
            {"dac_bits", n.dac_bits},   {"leakage", n.leakage},       {"read_sigma", n.read_sigma}};
}

json sampler_doc(const SamplerConfig& c) {
    return {{"num_reads", c.num_reads}, {"sweeps", c.sweeps}, {"beta_min", c.beta_min},
            {"beta_max", c.beta_max},   {"seed", c.seed}};
}

std::string_view space_name(Space s) { return s == Space::Logical ? "logical" : "physical"; }
std::string_view gauge_name(Gauge g) { return g == Gauge::Original ? "original" : "gauged"; }

}  // namespace

std::string noise_to_json(const NoiseModel& noise) { return noise_doc(noise).dump(1) + "\n"; }

NoiseModel noise_from_json(std::string_view text) {
    auto doc = json::parse(text);
    NoiseModel n;
    n.chip_seed = doc.value("chip_seed", n.chip_seed);
    n.bias_sigma = doc.value("bias_sigma", n.bias_sigma);
    n.coupler_sigma = doc.value("coupler_sigma", n.coupler_sigma);
    n.dac_bits = doc.value("dac_bits", n.dac_bits);
    n.leakage = doc.value("leakage", n.leakage);
    n.read_sigma = doc.value("read_sigma", n.read_sigma);
    n.validate();
    return n;
}

std::string sampler_config_to_json(const SamplerConfig& cfg) { return sampler_doc(cfg).dump(1) + "\n"; }

SamplerConfig sampler_config_from_json(std::string_view text) {
    auto doc = json::parse(text);
    SamplerConfig c;
    c.num_reads = doc.value("num_reads", c.num_reads);
    c.sweeps = doc.value("sweeps", c.sweeps);
    c.beta_min = doc.value("beta_min", c.beta_min);
    c.beta_max = doc.value("beta_max", c.beta_max);
    c.seed = doc.value("seed", c.seed);
    c.validate();
    return c;
}

std::string to_csv(const SampleSet& samples, const NoiseModel& noise, const SamplerConfig& cfg) {
    json meta;
    meta["frame"] = {{"space", space_name(samples.frame.space)}, {"gauge", gauge_name(samples.frame.gauge)}};
    meta["total_reads"] = samples.total_reads;
    meta["dropped_reads"] = samples.dropped_reads;
    meta["num_transforms"] = samples.num_transforms;
    meta["generator"] = std::string(kGeneratorName);
    meta["sampler"] = sampler_doc(cfg);
    meta["noise"] = noise_doc(noise);
    std::ostringstream out;
    out << "# " << meta.dump() << "\n";
    out << "state,energy,occurrences\n";
    for (const auto& r : samples.records) {
        out << r.state.to_bitstring() << ',' << format_number(r.energy) << ',' << r.occurrences << '\n';
    }
    return out.str();
}

SampleSet sample_set_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    SampleSet out;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw std::invalid_argument("sample CSV must start with a '# {json}' metadata line");
    }
    auto meta = json::parse(line.substr(2));
    const auto& frame = meta.at("frame");
    out.frame.space = frame.at("space").get<std::string>() == "physical" ? Space::Physical : Space::Logical;
    out.frame.gauge = frame.at("gauge").get<std::string>() == "gauged" ? Gauge::Gauged : Gauge::Original;
    out.dropped_reads = meta.value("dropped_reads", std::size_t{0});
    out.num_transforms = meta.value("num_transforms", std::size_t{0});
    if (!std::getline(in, line) || line != "state,energy,occurrences") {
        throw std::invalid_argument("sample CSV header missing");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw std::invalid_argument("bad sample row");
        SampleRecord r;
        r.state = SpinState::from_bitstring(line.substr(0, c1), VarType::Spin);
        r.energy = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        r.occurrences = std::stoull(line.substr(c2 + 1));
        out.total_reads += r.occurrences;
        out.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace spinrev
