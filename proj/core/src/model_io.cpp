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

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "spinrev/io.hpp"

namespace spinrev {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

namespace {

template <VarType V>
std::string model_json(const QuadraticModel<V>& model, std::string_view metadata) {
    json doc;
    doc["kind"] = std::string(to_string(V));
    doc["n"] = model.num_variables();
    json lin = json::object();
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        if (model.linear(i) != 0.0) lin[std::to_string(i)] = model.linear(i);
    }
    doc["linear"] = std::move(lin);
    json quad = json::object();
    for (const auto& [k, a] : model.quadratic_terms()) {
        quad[std::to_string(k.first) + "," + std::to_string(k.second)] = a;
    }
    doc["quadratic"] = std::move(quad);
    doc["offset"] = model.offset();
    json meta = json::parse(metadata.empty() ? std::string_view("{}") : metadata);
    if (!meta.is_object()) throw std::invalid_argument("model metadata must be a JSON object");
    doc["metadata"] = std::move(meta);
    return doc.dump(1) + "\n";
}

std::size_t parse_index(const std::string& s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad variable index '" + s + "'");
    }
    return value;
}

template <VarType V>
QuadraticModel<V> model_from_doc(const json& doc) {
    auto n = doc.at("n").get<std::size_t>();
    QuadraticModel<V> m(n, doc.value("offset", 0.0));
    const json linear = doc.value("linear", json::object());
    const json quadratic = doc.value("quadratic", json::object());
    for (const auto& [k, v] : linear.items()) {
        auto i = parse_index(k);
        if (i >= n) throw std::invalid_argument("linear index " + k + " out of range");
        m.set_linear(i, v.template get<double>());
    }
    for (const auto& [k, v] : quadratic.items()) {
        auto comma = k.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("quadratic key '" + k + "' is not 'i,j'");
        auto i = parse_index(k.substr(0, comma));
        auto j = parse_index(k.substr(comma + 1));
        if (i >= n || j >= n) throw std::invalid_argument("quadratic key " + k + " out of range");
        m.add_quadratic(i, j, v.template get<double>());
    }
    return m;
}

}  // namespace

std::string to_json(const IsingModel& model, std::string_view metadata) { return model_json(model, metadata); }
std::string to_json(const QuboModel& model, std::string_view metadata) { return model_json(model, metadata); }

ModelFile model_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model JSON: ") + e.what());
    }
    ModelFile out;
    auto kind = doc.at("kind").get<std::string>();
    if (kind == "ising") {
        out.model = model_from_doc<VarType::Spin>(doc);
    } else if (kind == "qubo") {
        out.model = model_from_doc<VarType::Binary>(doc);
    } else {
        throw std::invalid_argument("unknown model kind '" + kind + "'");
    }
    if (doc.contains("metadata")) out.metadata = doc["metadata"].dump();
    return out;
}

IsingModel as_ising(const ModelFile& file) {
    if (const auto* m = std::get_if<IsingModel>(&file.model)) return *m;
    return qubo_to_ising(std::get<QuboModel>(file.model));
}

std::string mask_to_json(const SpinReversalMask& mask) {
    json doc;
    doc["length"] = mask.size();
    doc["popcount"] = mask.popcount();
    doc["bits"] = mask.to_string();
    return doc.dump(1) + "\n";
}

SpinReversalMask mask_from_json(std::string_view text) {
    auto doc = json::parse(text);
    auto mask = SpinReversalMask::from_string(doc.at("bits").get<std::string>());
    if (doc.contains("length") && doc["length"].get<std::size_t>() != mask.size()) {
        throw std::invalid_argument("mask length field disagrees with bits");
    }
    return mask;
}

}  // namespace spinrev
