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
#include <string_view>
#include <variant>

#include "spinrev/ising.hpp"

namespace spinrev {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed. Throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// Model document:
///   {"kind":"ising"|"qubo","n":N,"linear":{"i":v},"quadratic":{"i,j":v},
///    "offset":v,"metadata":{...}}
/// Only nonzero linear weights are written. `metadata` is JSON object text.
struct ModelFile {
    std::variant<IsingModel, QuboModel> model;
    std::string metadata = "{}";
};

std::string to_json(const IsingModel& model, std::string_view metadata = "{}");
std::string to_json(const QuboModel& model, std::string_view metadata = "{}");
ModelFile model_from_json(std::string_view text);

/// The document's model as an Ising model, converting from QUBO if needed.
IsingModel as_ising(const ModelFile& file);

/// {"length":n,"bits":"0101..."}
std::string mask_to_json(const SpinReversalMask& mask);
SpinReversalMask mask_from_json(std::string_view text);

}  // namespace spinrev
