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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinrev {

/// Variable domain of a quadratic model: spins take values in {-1,+1},
/// binary variables in {0,1}.
enum class VarType : std::uint8_t { Spin, Binary };

std::string_view to_string(VarType v);

/// Assignment of values to the n variables of a model.
struct SpinState {
    VarType domain = VarType::Spin;
    std::vector<std::int8_t> values;

    SpinState() = default;
    SpinState(VarType d, std::vector<std::int8_t> v);

    std::size_t size() const { return values.size(); }
    std::int8_t operator[](std::size_t i) const { return values[i]; }

    /// '1' for +1 (or 1), '0' for -1 (or 0).
    std::string to_bitstring() const;
    static SpinState from_bitstring(std::string_view bits, VarType domain);

    SpinState to_binary() const;
    SpinState to_spin() const;

    friend bool operator==(const SpinState&, const SpinState&) = default;
    friend auto operator<=>(const SpinState& a, const SpinState& b) { return a.values <=> b.values; }
};

/// Indicator vector of the variables whose sign is reversed.
class SpinReversalMask {
  public:
    SpinReversalMask() = default;
    explicit SpinReversalMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
    explicit SpinReversalMask(std::vector<std::uint8_t> bits);

    static SpinReversalMask from_string(std::string_view bits);
    std::string to_string() const;

    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }
    std::size_t popcount() const;
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    SpinReversalMask operator^(const SpinReversalMask& other) const;

    friend bool operator==(const SpinReversalMask&, const SpinReversalMask&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

/// Canonical coupler key, first < second.
using Coupler = std::pair<std::size_t, std::size_t>;

/// H(x) = offset + sum_i a_i x_i + sum_{i<j} a_ij x_i x_j over n variables of
/// domain V. Linear weights are stored densely (absent means zero); couplers
/// sparsely under canonical keys.
template <VarType V>
class QuadraticModel {
  public:
    static constexpr VarType vartype = V;

    QuadraticModel() = default;
    explicit QuadraticModel(std::size_t n, double offset = 0.0) : linear_(n, 0.0), offset_(offset) {}

    std::size_t num_variables() const { return linear_.size(); }

    double linear(std::size_t i) const { return linear_.at(i); }
    void set_linear(std::size_t i, double value) { linear_.at(i) = value; }
    void add_linear(std::size_t i, double value) { linear_.at(i) += value; }
    const std::vector<double>& linear_terms() const { return linear_; }

    double quadratic(std::size_t i, std::size_t j) const;
    void set_quadratic(std::size_t i, std::size_t j, double value);
    void add_quadratic(std::size_t i, std::size_t j, double value);
    const std::map<Coupler, double>& quadratic_terms() const { return quadratic_; }

    double offset() const { return offset_; }
    void set_offset(double value) { offset_ = value; }

    /// True when every coefficient (offset included) is exactly zero.
    bool is_zero() const;

    friend bool operator==(const QuadraticModel&, const QuadraticModel&) = default;

  private:
    Coupler key(std::size_t i, std::size_t j) const;

    std::vector<double> linear_;
    std::map<Coupler, double> quadratic_;
    double offset_ = 0.0;
};

using IsingModel = QuadraticModel<VarType::Spin>;
using QuboModel = QuadraticModel<VarType::Binary>;

extern template class QuadraticModel<VarType::Spin>;
extern template class QuadraticModel<VarType::Binary>;

/// Coefficient-wise comparison with absent entries read as zero.
template <VarType V>
bool approx_equal(const QuadraticModel<V>& a, const QuadraticModel<V>& b, double tol = 1e-9);

template <VarType V>
double energy(const QuadraticModel<V>& model, const SpinState& state);

/// Reverses the spins selected by mask: a_i -> -a_i for masked i, and
/// a_ij -> -a_ij when exactly one endpoint is masked. Offset is unchanged.
IsingModel apply_spin_reversal(const IsingModel& model, const SpinReversalMask& mask);

/// Negates the masked entries of an Ising state.
SpinState transform_state(const SpinState& state, const SpinReversalMask& mask);

IsingModel qubo_to_ising(const QuboModel& q);
QuboModel ising_to_qubo(const IsingModel& m);

struct Rescaled {
    IsingModel model;
    double scale = 1.0;
};

/// Uniformly scales the model so that every a_i lies in [-2,2] and every a_ij
/// in [-1,1]. The scale never exceeds 1.
Rescaled rescale(const IsingModel& model);

template <VarType V>
struct GroundStates {
    double energy = 0.0;
    std::vector<SpinState> states;  // ascending lexicographic order
};

inline constexpr std::size_t kBruteForceLimit = 24;

/// Exhaustive minimisation over all 2^n assignments. Refuses n > 24.
template <VarType V>
GroundStates<V> brute_force_ground_state(const QuadraticModel<V>& model, double tol = 1e-9);

}  // namespace spinrev
