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

#include "spinrev/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "oracles.hpp"

using namespace spinrev;

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-2.0), "-2");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    for (double v : {1.0 / 3.0, -0.015625, 123456.789, 6.02e23}) EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(ModelJson, IsingRoundTripIsExact) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        auto m = oracle::random_model(9, seed);
        auto file = model_from_json(to_json(m, R"({"origin":"test"})"));
        ASSERT_TRUE(std::holds_alternative<IsingModel>(file.model));
        EXPECT_EQ(std::get<IsingModel>(file.model), m);
        EXPECT_EQ(nlohmann::json::parse(file.metadata).at("origin"), "test");
    }
}

TEST(ModelJson, QuboDocumentLayout) {
    QuboModel q(3, 1.5);
    q.set_linear(1, -2.0);
    q.set_quadratic(2, 0, 0.25);
    auto doc = nlohmann::json::parse(to_json(q));
    EXPECT_EQ(doc.at("kind"), "qubo");
    EXPECT_EQ(doc.at("n"), 3);
    EXPECT_EQ(doc.at("linear").size(), 1U);
    EXPECT_EQ(doc.at("linear").at("1"), -2.0);
    EXPECT_EQ(doc.at("quadratic").at("0,2"), 0.25);
    EXPECT_EQ(doc.at("offset"), 1.5);
    auto back = model_from_json(doc.dump());
    EXPECT_EQ(std::get<QuboModel>(back.model), q);
    EXPECT_TRUE(approx_equal(as_ising(back), qubo_to_ising(q)));
}

TEST(ModelJson, RejectsMalformedDocuments) {
    EXPECT_ANY_THROW(model_from_json("{"));
    EXPECT_ANY_THROW(model_from_json(R"({"kind":"potts","n":2})"));
    EXPECT_ANY_THROW(model_from_json(R"({"kind":"ising","n":2,"quadratic":{"0,5":1}})"));
    EXPECT_ANY_THROW(model_from_json(R"({"kind":"ising","n":2,"quadratic":{"1,1":1}})"));
}

TEST(MaskJson, RoundTrip) {
    auto m = SpinReversalMask::from_string("1100101");
    auto doc = nlohmann::json::parse(mask_to_json(m));
    EXPECT_EQ(doc.at("length"), 7);
    EXPECT_EQ(doc.at("popcount"), 4);
    EXPECT_EQ(mask_from_json(mask_to_json(m)), m);
    EXPECT_ANY_THROW(mask_from_json(R"({"length":3,"bits":"01"})"));
}

TEST(TextFiles, CreateParentsAndReadBack) {
    auto dir = std::filesystem::temp_directory_path() / "spinrev_io_test";
    std::filesystem::remove_all(dir);
    auto path = dir / "a" / "b" / "x.txt";
    write_text_file(path, "hello\n");
    EXPECT_EQ(read_text_file(path), "hello\n");
    EXPECT_THROW(read_text_file(dir / "missing.txt"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
