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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "spinrev/chimera.hpp"

using namespace spinrev;

namespace {

NoiseModel noisy(std::uint64_t chip) {
    NoiseModel n;
    n.chip_seed = chip;
    return n;
}

SamplerConfig quick(std::size_t reads, std::uint64_t seed, std::size_t sweeps = 200) {
    SamplerConfig c;
    c.num_reads = reads;
    c.sweeps = sweeps;
    c.seed = seed;
    return c;
}

std::size_t occurrence_total(const SampleSet& s) {
    std::size_t total = 0;
    for (const auto& r : s.records) total += r.occurrences;
    return total;
}

}  // namespace

TEST(Noise, QuantizationStep) {
    EXPECT_DOUBLE_EQ(quantization_step(2.0, 8), 0.015625);
    EXPECT_DOUBLE_EQ(quantization_step(1.0, 8), 0.0078125);
    EXPECT_DOUBLE_EQ(quantization_step(1.0, 1), 1.0);
}

TEST(Noise, Validation) {
    NoiseModel n;
    n.dac_bits = 0;
    EXPECT_THROW(n.validate(), std::invalid_argument);
    n = NoiseModel{};
    n.bias_sigma = -1.0;
    EXPECT_THROW(n.validate(), std::invalid_argument);
    SamplerConfig c;
    c.beta_min = 5.0;
    c.beta_max = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SamplerConfig{};
    c.num_reads = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Noise, IdealRealizationIsTheRescaledModel) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        auto m = oracle::random_model(7, seed);
        EXPECT_TRUE(approx_equal(realize_noise(m, NoiseModel::ideal()), rescale(m).model, 1e-12)) << seed;
    }
}

TEST(Noise, QuantizedCoefficientsSitOnTheGrid) {
    NoiseModel n = NoiseModel::ideal();
    n.dac_bits = 4;
    auto m = oracle::random_model(8, 3);
    auto r = realize_noise(m, n);
    const double hs = quantization_step(2.0, 4);
    const double js = quantization_step(1.0, 4);
    for (double h : r.linear_terms()) {
        EXPECT_NEAR(h / hs, std::round(h / hs), 1e-9);
        EXPECT_LE(std::abs(h), 2.0);
    }
    for (const auto& [k, j] : r.quadratic_terms()) {
        EXPECT_NEAR(j / js, std::round(j / js), 1e-9);
        EXPECT_LE(std::abs(j), 1.0);
    }
}

TEST(Noise, IdealRealizationCommutesWithGauge) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        auto m = oracle::random_model(6, seed);
        auto mask = oracle::random_mask(6, seed + 100);
        NoiseModel n = NoiseModel::ideal();
        n.dac_bits = 6;
        EXPECT_TRUE(approx_equal(realize_noise(apply_spin_reversal(m, mask), n),
                                 apply_spin_reversal(realize_noise(m, n), mask), 1e-12));
    }
}

TEST(Noise, LeakageBreaksGaugeSymmetry) {
    IsingModel m(2);
    m.set_quadratic(0, 1, 1.0);
    SpinReversalMask mask = SpinReversalMask::from_string("10");
    NoiseModel n = NoiseModel::ideal();
    n.leakage = 0.1;
    auto direct = realize_noise(apply_spin_reversal(m, mask), n);
    auto mapped = apply_spin_reversal(realize_noise(m, n), mask);
    EXPECT_FALSE(approx_equal(direct, mapped, 1e-9));
    EXPECT_DOUBLE_EQ(direct.linear(1), -0.1);
    EXPECT_DOUBLE_EQ(mapped.linear(1), 0.1);
}

TEST(Noise, OffsetsPersistPerChip) {
    auto m = oracle::random_model(8, 11);
    EXPECT_EQ(realize_noise(m, noisy(5)), realize_noise(m, noisy(5)));
    EXPECT_FALSE(approx_equal(realize_noise(m, noisy(5)), realize_noise(m, noisy(6)), 1e-6));
}

TEST(Noise, IdleVariablesStayIdle) {
    IsingModel m(4);
    m.set_quadratic(0, 1, -1.0);
    auto r = realize_noise(m, noisy(1));
    EXPECT_EQ(r.linear(2), 0.0);
    EXPECT_EQ(r.linear(3), 0.0);
    EXPECT_EQ(r.quadratic_terms().size(), 1U);
}

TEST(Sampler, EnergiesAreMeasuredOnTheIdealModel) {
    auto m = oracle::random_model(9, 4);
    auto s = sample(m, noisy(2), quick(60, 9, 50));
    EXPECT_EQ(s.total_reads, 60U);
    EXPECT_EQ(occurrence_total(s), 60U);
    std::set<SpinState> seen;
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        EXPECT_NEAR(s.records[i].energy, energy(m, s.records[i].state), 1e-9);
        EXPECT_TRUE(seen.insert(s.records[i].state).second);
        if (i > 0) EXPECT_LE(s.records[i - 1].energy, s.records[i].energy + 1e-12);
    }
}

TEST(Sampler, ZeroModelGivesOffsetEnergies) {
    IsingModel m(5, 3.5);
    auto s = sample(m, noisy(1), quick(20, 2, 10));
    for (const auto& r : s.records) EXPECT_DOUBLE_EQ(r.energy, 3.5);
    EXPECT_EQ(occurrence_total(s), 20U);
}

TEST(Sampler, Deterministic) {
    auto m = oracle::random_model(10, 8);
    auto cfg = quick(40, 77, 30);
    auto a = sample(m, noisy(3), cfg);
    auto b = sample(m, noisy(3), cfg);
    EXPECT_EQ(to_csv(a, noisy(3), cfg), to_csv(b, noisy(3), cfg));
    cfg.seed = 78;
    auto c = sample(m, noisy(3), cfg);
    EXPECT_NE(to_csv(a, noisy(3), quick(40, 77, 30)), to_csv(c, noisy(3), quick(40, 77, 30)));
}

TEST(Sampler, ThreadCountDoesNotChangeResults) {
    auto m = oracle::random_model(10, 12);
    auto cfg = quick(30, 5, 30);
    auto one = sample(m, noisy(4), cfg);
    cfg.threads = 3;
    auto three = sample(m, noisy(4), cfg);
    ASSERT_EQ(one.records.size(), three.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        EXPECT_EQ(one.records[i].state, three.records[i].state);
        EXPECT_EQ(one.records[i].occurrences, three.records[i].occurrences);
    }
}

TEST(Sampler, FindsGroundStatesWithoutNoise) {
    std::size_t hits = 0;
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        auto m = oracle::random_model(8, 500 + seed);
        SamplerConfig cfg;
        cfg.num_reads = 10;
        cfg.seed = seed;
        auto s = sample(m, NoiseModel::ideal(), cfg);
        if (std::abs(s.min_energy() - oracle::ground_energy(m)) < 1e-9) ++hits;
    }
    EXPECT_GE(hits, 19U);
}

TEST(Sampler, EmptyMaskMatchesPlainSampling) {
    auto m = oracle::random_model(8, 21);
    auto cfg = quick(25, 4, 40);
    auto plain = sample(m, noisy(9), cfg);
    auto masked = solve_with_mask(m, SpinReversalMask(8), noisy(9), cfg);
    ASSERT_EQ(plain.records.size(), masked.records.size());
    for (std::size_t i = 0; i < plain.records.size(); ++i) {
        EXPECT_EQ(plain.records[i].state, masked.records[i].state);
        EXPECT_EQ(plain.records[i].occurrences, masked.records[i].occurrences);
    }
}

TEST(Sampler, MaskedSamplesReturnInTheOriginalFrame) {
    auto m = oracle::random_model(8, 22);
    auto mask = oracle::random_mask(8, 3);
    auto s = solve_with_mask(m, mask, NoiseModel::ideal(), quick(30, 1));
    EXPECT_EQ(s.frame.gauge, Gauge::Original);
    for (const auto& r : s.records) EXPECT_NEAR(r.energy, energy(m, r.state), 1e-9);
    EXPECT_NEAR(s.min_energy(), oracle::ground_energy(m), 1e-9);
    EXPECT_THROW(solve_with_mask(m, SpinReversalMask(7), NoiseModel::ideal(), quick(3, 1)), std::invalid_argument);
}

TEST(Sampler, NoiseMakesResultsGaugeDependent) {
    auto m = oracle::random_model(10, 31, 0.8);
    NoiseModel n = noisy(1);
    n.bias_sigma = 0.2;
    n.coupler_sigma = 0.1;
    n.read_sigma = 0.0;
    n.dac_bits = 5;
    std::set<double> scores;
    for (std::uint32_t k = 0; k < 100; ++k) {
        scores.insert(score(solve_with_mask(m, oracle::random_mask(10, k), n, quick(20, 6, 20)), 0.5));
    }
    EXPECT_GT(scores.size(), 1U);
}

TEST(Native, Bookkeeping) {
    auto m = oracle::random_model(8, 41);
    auto s = solve_native(m, 103, 10, noisy(2), quick(1, 3, 30));
    EXPECT_EQ(s.total_reads, 100U);
    EXPECT_EQ(s.dropped_reads, 3U);
    EXPECT_EQ(s.num_transforms, 10U);
    EXPECT_EQ(occurrence_total(s), 100U);
    for (const auto& r : s.records) EXPECT_NEAR(r.energy, energy(m, r.state), 1e-9);
}

TEST(Native, Preconditions) {
    auto m = oracle::random_model(4, 1);
    EXPECT_THROW(solve_native(m, 5, 6, noisy(0), quick(1, 1)), std::invalid_argument);
    EXPECT_THROW(solve_native(m, 5, 0, noisy(0), quick(1, 1)), std::invalid_argument);
    EXPECT_NO_THROW(solve_native(m, 5, 5, noisy(0), quick(1, 1, 5)));
}

TEST(Score, Examples) {
    SampleSet s;
    s.records = {{SpinState(VarType::Spin, {1}), -3.0, 1}, {SpinState(VarType::Spin, {-1}), -1.0, 199}};
    EXPECT_DOUBLE_EQ(score(s, 0.01), -2.0);
    EXPECT_DOUBLE_EQ(score(s, 0.005), -3.0);
    EXPECT_DOUBLE_EQ(score(s, 1.0), (-3.0 - 199.0) / 200.0);
    EXPECT_THROW(score(s, 0.0), std::invalid_argument);
    EXPECT_THROW(score(SampleSet{}, 0.01), std::invalid_argument);
}

TEST(Score, MonotoneInFraction) {
    auto m = oracle::random_model(9, 51);
    auto s = sample(m, noisy(1), quick(150, 2, 10));
    double prev = score(s, 0.01);
    EXPECT_GE(prev, s.min_energy() - 1e-12);
    for (double f : {0.05, 0.1, 0.3, 0.6, 1.0}) {
        double cur = score(s, f);
        EXPECT_GE(cur, prev - 1e-12);
        prev = cur;
    }
}

TEST(SamplerIo, CsvRoundTrip) {
    auto m = oracle::random_model(6, 61);
    auto cfg = quick(30, 4, 20);
    auto s = solve_native(m, 30, 3, noisy(8), cfg);
    auto text = to_csv(s, noisy(8), cfg);
    auto back = sample_set_from_csv(text);
    EXPECT_EQ(back.total_reads, s.total_reads);
    EXPECT_EQ(back.num_transforms, 3U);
    ASSERT_EQ(back.records.size(), s.records.size());
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        EXPECT_EQ(back.records[i].state, s.records[i].state);
        EXPECT_EQ(back.records[i].occurrences, s.records[i].occurrences);
        EXPECT_NEAR(back.records[i].energy, s.records[i].energy, 1e-12);
    }
    EXPECT_EQ(to_csv(back, noisy(8), cfg), text);
    EXPECT_THROW(sample_set_from_csv("state,energy\n"), std::invalid_argument);
}

TEST(SamplerIo, JsonRoundTrip) {
    NoiseModel n = noisy(123456789012345ULL);
    n.leakage = -0.25;
    n.dac_bits = 9;
    EXPECT_EQ(noise_from_json(noise_to_json(n)), n);
    EXPECT_EQ(noise_from_json(noise_to_json(NoiseModel::ideal())), NoiseModel::ideal());
    SamplerConfig c = quick(17, 99, 33);
    c.beta_max = 7.5;
    EXPECT_EQ(sampler_config_from_json(sampler_config_to_json(c)), c);
}
