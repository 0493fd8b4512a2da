// Copyright 2026 The ncwb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ncwb/fixtures.hpp"
#include "ncwb/io.hpp"

namespace ncwb {
namespace {

using io::json;

std::string error_text(const std::function<void()> &f, ErrorCode expected) {
    try {
        f();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), expected) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "no ncwb::Error thrown";
    return {};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(MatrixJson, RoundTripsExactly) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    Matrix z(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z(i, j) = Complex(g(rng), g(rng));
    const HermitianOperator h(0.5 * (z + z.adjoint()));
    const json j = json::parse(io::to_json(h).dump());
    const HermitianOperator back = io::operator_from_json(j);
    EXPECT_EQ(back.matrix(), h.matrix());
}

TEST(MatrixJson, AcceptsBareRealEntries) {
    const auto h = io::operator_from_json(json::parse("[[1, 0], [0, 0.5]]"));
    EXPECT_EQ(h.matrix()(1, 1), Complex(0.5, 0.0));
}

TEST(MatrixJson, ErrorsCarryPaths) {
    auto text = error_text([] { (void)io::operator_from_json(json::parse(R"({"dim": 2, "entries": [[1, 0]]})")); },
                           ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.dim"), std::string::npos) << text;
    text = error_text([] { (void)io::operator_from_json(json::parse(R"([[1, [0, 1]], [0, 1]])")); },
                      ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("symmetry"), std::string::npos) << text;
    text = error_text([] { (void)io::operator_from_json(json::parse(R"([[1, "x"], [0, 1]])")); },
                      ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$[0][1]"), std::string::npos) << text;
}

TEST(TheoryJson, RoundTrip) {
    const auto t = fair_coin_theory();
    const auto back = io::theory_from_json(json::parse(io::to_json(t).dump()));
    EXPECT_EQ(back.table(), t.table());
    ASSERT_EQ(back.measurements().size(), t.measurements().size());
    for (std::size_t m = 0; m < t.measurements().size(); ++m) {
        EXPECT_EQ(back.measurements()[m].label, t.measurements()[m].label);
        EXPECT_EQ(back.measurements()[m].sharp, t.measurements()[m].sharp);
    }
}

TEST(TheoryJson, TableIsOptionalButCheckedWhenGiven) {
    json j = io::to_json(fair_coin_theory());
    j.erase("table");
    EXPECT_EQ(io::theory_from_json(j).table(), fair_coin_theory().table());
    j = io::to_json(fair_coin_theory());
    j["table"][0][0] = {0.5, 0.5};
    const auto text = error_text([&] { (void)io::theory_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.table"), std::string::npos) << text;
}

TEST(TheoryJson, SharpFlagMustMatchEffects) {
    json j = io::to_json(fair_coin_theory());
    j["measurements"][1]["sharp"] = true;
    const auto text = error_text([&] { (void)io::theory_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.measurements[1].sharp"), std::string::npos) << text;
}

TEST(TheoryJson, MissingFieldsAreNamed) {
    json j = io::to_json(fair_coin_theory());
    j["preparations"][2].erase("rho");
    const auto text = error_text([&] { (void)io::theory_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.preparations[2]"), std::string::npos) << text;
    EXPECT_NE(text.find("rho"), std::string::npos) << text;
}

TEST(ModelJson, RoundTrip) {
    const auto m = fair_coin_model();
    const auto back = io::model_from_json(json::parse(io::to_json(m).dump()));
    EXPECT_EQ(back.responses(), m.responses());
    EXPECT_EQ(back.epistemic(), m.epistemic());
    EXPECT_EQ(back.ontic_states(), m.ontic_states());
}

TEST(ModelJson, ResponseSumViolationNamesEntry) {
    const auto j = io::read_file(std::string(NCWB_FIXTURES_DIR) + "/bad-model.response-sum.json");
    const auto text = error_text([&] { (void)io::model_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("M=coin, lambda=l1"), std::string::npos) << text;
}

TEST(ProblemJson, RoundTrip) {
    for (const auto &p : {coarse_grain_paradox_problem(), same_effect_twice_problem(true), trine_problem()}) {
        const auto back = io::problem_from_json(json::parse(io::to_json(p).dump()));
        EXPECT_EQ(back.effects().size(), p.effects().size());
        EXPECT_EQ(back.mode(), p.mode());
        EXPECT_EQ(back.refined(), p.refined());
        ASSERT_EQ(back.relations().size(), p.relations().size());
        for (std::size_t r = 0; r < p.relations().size(); ++r) {
            EXPECT_EQ(back.relations()[r].indices, p.relations()[r].indices);
            EXPECT_EQ(back.relations()[r].coeffs, p.relations()[r].coeffs);
        }
    }
}

TEST(ProblemJson, BadRelationsAreNamed) {
    json j = io::to_json(fair_coin_problem());
    j["relations"][0]["kind"] = "product";
    auto text = error_text([&] { (void)io::problem_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.relations[0].kind"), std::string::npos) << text;
    j = io::to_json(coarse_grain_paradox_problem());
    j["relations"][3]["indices"] = {4, 0, 2};
    text = error_text([&] { (void)io::problem_from_json(j); }, ErrorCode::SchemaViolation);
    EXPECT_NE(text.find("$.relations[3]"), std::string::npos) << text;
    j["mode"] = "quantum";
    (void)error_text([&] { (void)io::problem_from_json(j); }, ErrorCode::SchemaViolation);
}

TEST(Files, ParseErrorsAreReported) {
    const auto path = std::filesystem::temp_directory_path() / "ncwb_bad.json";
    std::ofstream(path) << "{ not json";
    (void)error_text([&] { (void)io::read_file(path.string()); }, ErrorCode::ParseError);
    (void)error_text([] { (void)io::read_file("/nonexistent/ncwb.json"); }, ErrorCode::ParseError);
}

TEST(Fixtures, ShippedFilesMatchRegeneration) {
    const auto set = fixture_set();
    for (const auto &[name, j] : set) {
        const auto path = std::filesystem::path(NCWB_FIXTURES_DIR) / name;
        ASSERT_TRUE(std::filesystem::exists(path)) << name;
        EXPECT_EQ(slurp(path), j.dump(2) + "\n") << name;
    }
    std::size_t shipped = 0;
    for (const auto &entry : std::filesystem::directory_iterator(NCWB_FIXTURES_DIR)) {
        shipped += entry.path().extension() == ".json" ? 1 : 0;
    }
    EXPECT_EQ(shipped, set.size());
}

TEST(Fixtures, LoadCleanly) {
    const std::string dir = NCWB_FIXTURES_DIR;
    for (const char *name : {"fair-coin.theory.json", "bit-flip.theory.json", "wigner-qutrit.theory.json"}) {
        EXPECT_NO_THROW((void)io::theory_from_json(io::read_file(dir + "/" + name))) << name;
    }
    for (const char *name : {"fair-coin.model.json", "bit-flip.extended-model.json", "wigner-qutrit.model.json"}) {
        EXPECT_NO_THROW((void)io::model_from_json(io::read_file(dir + "/" + name))) << name;
    }
    for (const char *name : {"fair-coin.problem.json", "cabello-nakamura.json", "same-effect-twice.json",
                             "coarse-grain-paradox.json", "trine.json", "pauli-projectors.json"}) {
        EXPECT_NO_THROW((void)io::problem_from_json(io::read_file(dir + "/" + name))) << name;
    }
}

TEST(ReportJson, CarriesVerdicts) {
    Report r;
    r.subject = "s";
    r.verdicts.push_back({"c", false, {"v"}, "d"});
    const json j = io::to_json(r);
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_EQ(j["verdicts"][0]["violations"][0], "v");
}

} // namespace
} // namespace ncwb
