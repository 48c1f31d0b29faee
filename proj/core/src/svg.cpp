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

#include "spinrev/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spinrev/io.hpp"

namespace spinrev {

namespace {

constexpr const char* kReversed = "#1f4fd1";
constexpr const char* kKept = "#d12b1f";
constexpr const char* kIdle = "#c8c8c8";

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
    return s;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Tick spacing of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
    if (!(span > 0.0)) return 1.0;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double f = raw / mag;
    double nice = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

}  // namespace

std::string layout_svg(const ChimeraTopology& topology, const Embedding& embedding, const SpinReversalMask& mask,
                       const std::string& title) {
    auto used = embedding.used_qubits();
    if (mask.size() != used.size()) {
        throw std::invalid_argument("layout mask has " + std::to_string(mask.size()) + " bits for " +
                                    std::to_string(used.size()) + " in-use qubits");
    }
    std::vector<int> state(topology.qubit_count(), -1);
    for (std::size_t i = 0; i < used.size(); ++i) state[used[i]] = mask[i] ? 1 : 0;

    const std::size_t t = topology.shore();
    const double cell = 24.0 + 14.0 * static_cast<double>(t);
    const double margin = 20.0;
    const double top = title.empty() ? margin : margin + 22.0;
    const double width = 2 * margin + cell * static_cast<double>(topology.cols());
    const double height = top + margin + cell * static_cast<double>(topology.rows());

    auto pos = [&](std::size_t q) {
        auto c = topology.coord(q);
        double x0 = margin + cell * static_cast<double>(c.col);
        double y0 = top + cell * static_cast<double>(c.row);
        double step = (cell - 24.0) / static_cast<double>(t);
        double off = 12.0 + step * (static_cast<double>(c.k) + 0.5);
        return c.side == 0 ? std::pair{x0 + off, y0 + cell / 2.0} : std::pair{x0 + cell / 2.0, y0 + off};
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
        << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"" << fixed(width / 2, 1) << "\" y=\"" << fixed(margin + 8, 1)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
            << "</text>\n";
    }
    out << "<g stroke=\"#e0e0e0\" stroke-width=\"0.6\">\n";
    for (auto [a, b] : topology.edges()) {
        bool live = state[a] >= 0 && state[b] >= 0;
        if (live) continue;
        auto [x1, y1] = pos(a);
        auto [x2, y2] = pos(b);
        out << "<line x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1) << "\" x2=\"" << fixed(x2) << "\" y2=\""
            << fixed(y2) << "\"/>\n";
    }
    out << "</g>\n<g stroke=\"#555555\" stroke-width=\"1\">\n";
    for (auto [a, b] : topology.edges()) {
        if (state[a] < 0 || state[b] < 0) continue;
        auto [x1, y1] = pos(a);
        auto [x2, y2] = pos(b);
        out << "<line x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1) << "\" x2=\"" << fixed(x2) << "\" y2=\""
            << fixed(y2) << "\"/>\n";
    }
    out << "</g>\n<g>\n";
    for (std::size_t q = 0; q < topology.qubit_count(); ++q) {
        auto [x, y] = pos(q);
        const char* fill = state[q] < 0 ? kIdle : state[q] ? kReversed : kKept;
        out << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"" << (state[q] < 0 ? "3" : "5")
            << "\" fill=\"" << fill << "\"><title>q" << q << "</title></circle>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

void render_layout(const ChimeraTopology& topology, const Embedding& embedding, const SpinReversalMask& mask,
                   const std::filesystem::path& path, const std::string& title) {
    write_text_file(path, layout_svg(topology, embedding, mask, title));
}

std::string LineChart::to_svg(int width, int height) const {
    const double left = 70.0, right = 170.0, top = 40.0, bottom = 50.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || (!s.error.empty() && s.error.size() != s.y.size())) {
            throw std::invalid_argument("series '" + s.label + "' has mismatched lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double e = s.error.empty() ? 0.0 : s.error[i];
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i] - e);
            ymax = std::max(ymax, s.y[i] + e);
        }
    }
    if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << fixed(left + pw / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";

    out << "<g stroke=\"#eeeeee\">\n";
    double ys = nice_step(ymax - ymin, 6);
    std::vector<double> yticks;
    for (double y = std::ceil(ymin / ys) * ys; y <= ymax + 1e-12; y += ys) yticks.push_back(y);
    double xs = nice_step(xmax - xmin, 8);
    std::vector<double> xticks;
    for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-12; x += xs) xticks.push_back(x);
    for (double y : yticks) {
        out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(sy(y)) << "\" x2=\"" << fixed(left + pw)
            << "\" y2=\"" << fixed(sy(y)) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
        << fixed(ph) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    int digits_y = ys >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(ys)));
    int digits_x = xs >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(xs)));
    for (double y : yticks) {
        out << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(sy(y) + 4) << "\" text-anchor=\"end\">"
            << fixed(y, digits_y) << "</text>\n";
    }
    for (double x : xticks) {
        out << "<text x=\"" << fixed(sx(x)) << "\" y=\"" << fixed(top + ph + 16) << "\" text-anchor=\"middle\">"
            << fixed(x, digits_x) << "</text>\n";
    }
    out << "<text x=\"" << fixed(left + pw / 2, 1) << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(16," << fixed(top + ph / 2, 1)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % kPalette.size()];
        if (!s.error.empty()) {
            out << "<g stroke=\"" << colour << "\" stroke-opacity=\"0.6\">\n";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                double x = sx(s.x[i]);
                double lo = sy(s.y[i] - s.error[i]), hi = sy(s.y[i] + s.error[i]);
                out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(lo) << "\" x2=\"" << fixed(x) << "\" y2=\""
                    << fixed(hi) << "\"/>\n";
                out << "<line x1=\"" << fixed(x - 3) << "\" y1=\"" << fixed(lo) << "\" x2=\"" << fixed(x + 3)
                    << "\" y2=\"" << fixed(lo) << "\"/>\n";
                out << "<line x1=\"" << fixed(x - 3) << "\" y1=\"" << fixed(hi) << "\" x2=\"" << fixed(x + 3)
                    << "\" y2=\"" << fixed(hi) << "\"/>\n";
            }
            out << "</g>\n";
        }
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << (i ? " " : "") << fixed(sx(s.x[i])) << ',' << fixed(sy(s.y[i]));
        }
        out << "\"/>\n";
        double ly = top + 14.0 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << fixed(left + pw + 12) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\""
            << fixed(left + pw + 32) << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fixed(left + pw + 38) << "\" y=\"" << fixed(ly) << "\">" << escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace spinrev
