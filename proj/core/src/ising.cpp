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

#include "spinrev/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace spinrev {

std::string_view to_string(VarType v) { return v == VarType::Spin ? "ising" : "qubo"; }

namespace {

void check_value(VarType domain, std::int8_t v) {
    bool ok = domain == VarType::Spin ? (v == -1 || v == 1) : (v == 0 || v == 1);
    if (!ok) {
        throw std::invalid_argument("state value " + std::to_string(v) + " outside the " +
                                    std::string(to_string(domain)) + " domain");
    }
}

std::int8_t low_value(VarType d) { return d == VarType::Spin ? -1 : 0; }

}  // namespace

// ---------------------------------------------------------------------------
// SpinState

SpinState::SpinState(VarType d, std::vector<std::int8_t> v) : domain(d), values(std::move(v)) {
    for (auto x : values) check_value(domain, x);
}

std::string SpinState::to_bitstring() const {
    std::string out(values.size(), '0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 1) out[i] = '1';
    }
    return out;
}

SpinState SpinState::from_bitstring(std::string_view bits, VarType domain) {
    std::vector<std::int8_t> v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v[i] = 1;
        } else if (bits[i] == '0') {
            v[i] = low_value(domain);
        } else {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
    }
    return SpinState(domain, std::move(v));
}

SpinState SpinState::to_binary() const {
    if (domain == VarType::Binary) return *this;
    SpinState out;
    out.domain = VarType::Binary;
    out.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] == 1 ? 1 : 0;
    return out;
}

SpinState SpinState::to_spin() const {
    if (domain == VarType::Spin) return *this;
    SpinState out;
    out.domain = VarType::Spin;
    out.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i] == 1 ? 1 : -1;
    return out;
}

// ---------------------------------------------------------------------------
// SpinReversalMask

SpinReversalMask::SpinReversalMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
}

SpinReversalMask SpinReversalMask::from_string(std::string_view bits) {
    std::vector<std::uint8_t> v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') {
            throw std::invalid_argument("mask string may only contain '0' and '1'");
        }
        v[i] = bits[i] == '1';
    }
    return SpinReversalMask(std::move(v));
}

std::string SpinReversalMask::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out[i] = '1';
    }
    return out;
}

std::size_t SpinReversalMask::popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

SpinReversalMask SpinReversalMask::operator^(const SpinReversalMask& other) const {
    if (other.size() != size()) throw std::invalid_argument("mask length mismatch in xor");
    SpinReversalMask out(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
    return out;
}

// ---------------------------------------------------------------------------
// QuadraticModel

template <VarType V>
Coupler QuadraticModel<V>::key(std::size_t i, std::size_t j) const {
    if (i == j) throw std::invalid_argument("self-coupler (" + std::to_string(i) + "," + std::to_string(i) + ")");
    if (i >= num_variables() || j >= num_variables()) {
        throw std::out_of_range("coupler index out of range for model with " + std::to_string(num_variables()) +
                                " variables");
    }
    return i < j ? Coupler{i, j} : Coupler{j, i};
}

template <VarType V>
double QuadraticModel<V>::quadratic(std::size_t i, std::size_t j) const {
    auto it = quadratic_.find(key(i, j));
    return it == quadratic_.end() ? 0.0 : it->second;
}

template <VarType V>
void QuadraticModel<V>::set_quadratic(std::size_t i, std::size_t j, double value) {
    quadratic_[key(i, j)] = value;
}

template <VarType V>
void QuadraticModel<V>::add_quadratic(std::size_t i, std::size_t j, double value) {
    quadratic_[key(i, j)] += value;
}

template <VarType V>
bool QuadraticModel<V>::is_zero() const {
    if (offset_ != 0.0) return false;
    for (double a : linear_) {
        if (a != 0.0) return false;
    }
    for (const auto& [k, a] : quadratic_) {
        if (a != 0.0) return false;
    }
    return true;
}

template class QuadraticModel<VarType::Spin>;
template class QuadraticModel<VarType::Binary>;

template <VarType V>
bool approx_equal(const QuadraticModel<V>& a, const QuadraticModel<V>& b, double tol) {
    if (a.num_variables() != b.num_variables()) return false;
    if (std::abs(a.offset() - b.offset()) > tol) return false;
    for (std::size_t i = 0; i < a.num_variables(); ++i) {
        if (std::abs(a.linear(i) - b.linear(i)) > tol) return false;
    }
    for (const auto& [k, v] : a.quadratic_terms()) {
        if (std::abs(v - b.quadratic(k.first, k.second)) > tol) return false;
    }
    for (const auto& [k, v] : b.quadratic_terms()) {
        if (std::abs(v - a.quadratic(k.first, k.second)) > tol) return false;
    }
    return true;
}

template bool approx_equal(const IsingModel&, const IsingModel&, double);
template bool approx_equal(const QuboModel&, const QuboModel&, double);

template <VarType V>
double energy(const QuadraticModel<V>& model, const SpinState& state) {
    if (state.domain != V) {
        throw std::invalid_argument("state domain " + std::string(to_string(state.domain)) +
                                    " does not match model kind " + std::string(to_string(V)));
    }
    if (state.size() != model.num_variables()) {
        throw std::invalid_argument("state has " + std::to_string(state.size()) + " entries, model has " +
                                    std::to_string(model.num_variables()) + " variables");
    }
    double e = model.offset();
    const auto& lin = model.linear_terms();
    for (std::size_t i = 0; i < lin.size(); ++i) e += lin[i] * state.values[i];
    for (const auto& [k, a] : model.quadratic_terms()) {
        e += a * state.values[k.first] * state.values[k.second];
    }
    return e;
}

template double energy(const IsingModel&, const SpinState&);
template double energy(const QuboModel&, const SpinState&);

// ---------------------------------------------------------------------------
// Gauge transform

IsingModel apply_spin_reversal(const IsingModel& model, const SpinReversalMask& mask) {
    if (mask.size() != model.num_variables()) {
        throw std::invalid_argument("mask length " + std::to_string(mask.size()) + " != model size " +
                                    std::to_string(model.num_variables()));
    }
    IsingModel out(model.num_variables(), model.offset());
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        out.set_linear(i, mask[i] ? -model.linear(i) : model.linear(i));
    }
    for (const auto& [k, a] : model.quadratic_terms()) {
        out.set_quadratic(k.first, k.second, mask[k.first] != mask[k.second] ? -a : a);
    }
    return out;
}

SpinState transform_state(const SpinState& state, const SpinReversalMask& mask) {
    if (state.domain != VarType::Spin) throw std::invalid_argument("transform_state needs an Ising state");
    if (mask.size() != state.size()) {
        throw std::invalid_argument("mask length " + std::to_string(mask.size()) + " != state length " +
                                    std::to_string(state.size()));
    }
    SpinState out = state;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (mask[i]) out.values[i] = static_cast<std::int8_t>(-out.values[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conversions

IsingModel qubo_to_ising(const QuboModel& q) {
    // x = (s + 1) / 2
    IsingModel m(q.num_variables(), q.offset());
    double offset = q.offset();
    for (std::size_t i = 0; i < q.num_variables(); ++i) {
        m.add_linear(i, q.linear(i) / 2.0);
        offset += q.linear(i) / 2.0;
    }
    for (const auto& [k, a] : q.quadratic_terms()) {
        m.set_quadratic(k.first, k.second, a / 4.0);
        m.add_linear(k.first, a / 4.0);
        m.add_linear(k.second, a / 4.0);
        offset += a / 4.0;
    }
    m.set_offset(offset);
    return m;
}

QuboModel ising_to_qubo(const IsingModel& m) {
    // s = 2x - 1
    QuboModel q(m.num_variables());
    double offset = m.offset();
    for (std::size_t i = 0; i < m.num_variables(); ++i) {
        q.add_linear(i, 2.0 * m.linear(i));
        offset -= m.linear(i);
    }
    for (const auto& [k, a] : m.quadratic_terms()) {
        q.set_quadratic(k.first, k.second, 4.0 * a);
        q.add_linear(k.first, -2.0 * a);
        q.add_linear(k.second, -2.0 * a);
        offset += a;
    }
    q.set_offset(offset);
    return q;
}

Rescaled rescale(const IsingModel& model) {
    double max_h = 0.0;
    double max_j = 0.0;
    for (double a : model.linear_terms()) max_h = std::max(max_h, std::abs(a));
    for (const auto& [k, a] : model.quadratic_terms()) max_j = std::max(max_j, std::abs(a));

    double scale = 1.0;
    if (max_h > 0.0) scale = std::min(scale, 2.0 / max_h);
    if (max_j > 0.0) scale = std::min(scale, 1.0 / max_j);
    if (scale == 1.0) return {model, 1.0};

    IsingModel out(model.num_variables(), model.offset() * scale);
    for (std::size_t i = 0; i < model.num_variables(); ++i) out.set_linear(i, model.linear(i) * scale);
    for (const auto& [k, a] : model.quadratic_terms()) out.set_quadratic(k.first, k.second, a * scale);
    return {std::move(out), scale};
}

// ---------------------------------------------------------------------------
// Exhaustive search

template <VarType V>
GroundStates<V> brute_force_ground_state(const QuadraticModel<V>& model, double tol) {
    const std::size_t n = model.num_variables();
    if (n > kBruteForceLimit) {
        throw std::invalid_argument("brute force refused: " + std::to_string(n) + " variables exceeds limit of " +
                                    std::to_string(kBruteForceLimit));
    }
    const std::int8_t lo = V == VarType::Spin ? -1 : 0;
    const std::int8_t step = V == VarType::Spin ? 2 : 1;  // hi - lo

    std::vector<double> coupling(n * n, 0.0);
    for (const auto& [k, a] : model.quadratic_terms()) {
        coupling[k.first * n + k.second] += a;
        coupling[k.second * n + k.first] += a;
    }
    std::vector<std::int8_t> values(n, lo);
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) {
        double f = model.linear(i);
        for (std::size_t j = 0; j < n; ++j) f += coupling[i * n + j] * lo;
        field[i] = f;
    }
    SpinState probe(V, values);
    double e = energy(model, probe);

    // Candidates within a loose band are re-evaluated exactly at the end.
    constexpr double band = 1e-6;
    double best = e;
    std::vector<std::uint32_t> candidates{0};
    std::uint32_t code = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        auto i = static_cast<std::size_t>(std::countr_zero(k));
        code ^= (std::uint32_t{1} << i);
        int d = values[i] == lo ? step : -step;
        e += d * field[i];
        values[i] = static_cast<std::int8_t>(values[i] + d);
        const double* row = &coupling[i * n];
        for (std::size_t j = 0; j < n; ++j) field[j] += row[j] * d;
        if (e < best - band) {
            best = e;
            candidates.clear();
            candidates.push_back(code);
        } else if (e <= best + band) {
            if (e < best) best = e;
            candidates.push_back(code);
        }
    }

    GroundStates<V> out;
    out.energy = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, SpinState>> exact;
    exact.reserve(candidates.size());
    for (std::uint32_t c : candidates) {
        std::vector<std::int8_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (c >> i) & 1U ? static_cast<std::int8_t>(lo + step) : lo;
        SpinState s(V, std::move(v));
        double ex = energy(model, s);
        out.energy = std::min(out.energy, ex);
        exact.emplace_back(ex, std::move(s));
    }
    for (auto& [ex, s] : exact) {
        if (ex <= out.energy + tol) out.states.push_back(std::move(s));
    }
    std::sort(out.states.begin(), out.states.end());
    return out;
}

template GroundStates<VarType::Spin> brute_force_ground_state(const IsingModel&, double);
template GroundStates<VarType::Binary> brute_force_ground_state(const QuboModel&, double);

}  // namespace spinrev
