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
#include <string>
#include <string_view>
#include <vector>

#include "spinrev/ising.hpp"

namespace spinrev {

/// Persistent imperfections of an emulated chip. Everything except the
/// per-read jitter is a pure function of chip_seed and qubit/coupler ids, so
/// the same chip shows the same errors on every submission.
struct NoiseModel {
    std::uint64_t chip_seed = 0;
    double bias_sigma = 0.02;     // persistent additive offset on each h_i
    double coupler_sigma = 0.01;  // persistent additive offset on each J_ij
    int dac_bits = 8;             // coefficient quantisation resolution
    double leakage = 0.05;        // h_i += leakage * sum_j J_ij
    double read_sigma = 0.005;    // fresh Gaussian jitter per read

    /// No offsets, no leakage, no jitter, and 53-bit quantisation.
    static NoiseModel ideal();
    void validate() const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

struct SamplerConfig {
    std::size_t num_reads = 100;
    std::size_t sweeps = 1000;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // 0: one per hardware thread

    void validate() const;

    friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

enum class Space : std::uint8_t { Logical, Physical };
enum class Gauge : std::uint8_t { Original, Gauged };

struct Frame {
    Space space = Space::Logical;
    Gauge gauge = Gauge::Original;
    friend bool operator==(const Frame&, const Frame&) = default;
};

struct SampleRecord {
    SpinState state;
    double energy = 0.0;
    std::size_t occurrences = 0;
};

/// Read-out of a batch of anneals. Energies are always those of the ideal
/// submitted model; records are sorted by energy, then state.
struct SampleSet {
    std::vector<SampleRecord> records;
    Frame frame;
    std::size_t total_reads = 0;
    std::size_t dropped_reads = 0;  // native mode remainder
    std::size_t num_transforms = 0; // native mode gauge count

    double min_energy() const;
};

/// Coefficients as the chip realises them: joint rescale into [-2,2]/[-1,1],
/// quantisation to 2^dac_bits levels per class range, persistent offsets on
/// every coefficient the model uses, then coupler leakage into the fields.
IsingModel realize_noise(const IsingModel& model, const NoiseModel& noise);

/// Quantisation step for a class spanning [-range, range].
double quantization_step(double range, int dac_bits);

/// Metropolis single-spin-flip annealing of realize_noise(model) plus fresh
/// per-read jitter over a geometric inverse-temperature schedule. Read r uses
/// a generator derived from (cfg.seed, r), so the result does not depend on
/// cfg.threads.
SampleSet sample(const IsingModel& model, const NoiseModel& noise, const SamplerConfig& cfg);

/// Samples the gauged model and maps the states back to the original frame.
SampleSet solve_with_mask(const IsingModel& model, const SpinReversalMask& mask, const NoiseModel& noise,
                          const SamplerConfig& cfg);

/// Native-style spin reversal: `num_transforms` random gauges (p = 0.5 per
/// variable) with floor(num_reads / num_transforms) reads each.
SampleSet solve_native(const IsingModel& model, std::size_t num_reads, std::size_t num_transforms,
                       const NoiseModel& noise, const SamplerConfig& cfg);

/// Mean of the ceil(fraction * total) lowest energies, counting multiplicity.
double score(const SampleSet& samples, double fraction = 0.01);

std::string noise_to_json(const NoiseModel& noise);
/// Missing fields keep their defaults.
NoiseModel noise_from_json(std::string_view text);
std::string sampler_config_to_json(const SamplerConfig& cfg);
SamplerConfig sampler_config_from_json(std::string_view text);

/// First line `# {json metadata}`, then `state,energy,occurrences` rows.
/// States are bitstrings with '1' for spin +1.
std::string to_csv(const SampleSet& samples, const NoiseModel& noise, const SamplerConfig& cfg);
SampleSet sample_set_from_csv(std::string_view text);

}  // namespace spinrev
