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

#include "spinrev/random.hpp"

#include <cmath>
#include <numbers>

namespace spinrev {

namespace {

// Box-Muller on two uniforms, u1 in (0, 1].
std::pair<double, double> box_muller(double u1, double u2) {
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

double hashed_normal(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = derive_seed(seed, keys);
    double u1 = 1.0 - to_unit(splitmix64(h));
    double u2 = to_unit(splitmix64(h ^ 0xD1B54A32D192ED03ULL));
    return box_muller(u1, u2).first;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    auto [a, b] = box_muller(u1, u2);
    spare_ = b;
    has_spare_ = true;
    return a;
}

}  // namespace spinrev
