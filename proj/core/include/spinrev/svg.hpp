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

#include <filesystem>
#include <string>
#include <vector>

#include "spinrev/chimera.hpp"
#include "spinrev/ising.hpp"

namespace spinrev {

/// Chimera layout with every in-use qubit coloured by its mask bit: blue for
/// reversed, red for kept, grey for idle. `mask` covers the in-use qubits in
/// ascending id order.
std::string layout_svg(const ChimeraTopology& topology, const Embedding& embedding, const SpinReversalMask& mask,
                       const std::string& title = "");
void render_layout(const ChimeraTopology& topology, const Embedding& embedding, const SpinReversalMask& mask,
                   const std::filesystem::path& path, const std::string& title = "");

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> error;  // empty or one half-width per point
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;

    std::string to_svg(int width = 720, int height = 440) const;
};

}  // namespace spinrev
