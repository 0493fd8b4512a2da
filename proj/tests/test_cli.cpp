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

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "ncwb/cli.hpp"

namespace ncwb::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ncwb");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string &name) { return std::string(NCWB_FIXTURES_DIR) + "/" + name; }

// The JSON document printed after the human-readable report by `--json -`.
io::json json_output(const std::string &text) { return io::json::parse(text.substr(text.find("\n{") + 1)); }

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Cli, EveryDemoReproduces) {
    for (const auto &name : demo_names()) {
        const auto r = invoke({"demo", name});
        EXPECT_EQ(r.code, kExitPass) << name << "\n" << r.out;
        EXPECT_NE(r.out.find("REPRODUCED"), std::string::npos) << name;
    }
}

TEST(Cli, UnknownDemoIsUsageError) {
    const auto r = invoke({"demo", "no-such-demo"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("unknown demo"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(invoke({}).code, kExitUsage); }

TEST(Cli, CheckPassesOnFairCoin) {
    const auto r =
        invoke({"check", "--theory", fixture("fair-coin.theory.json"), "--model", fixture("fair-coin.model.json")});
    EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, CheckReportsSchemaViolation) {
    const auto r = invoke({"check", "--theory", fixture("fair-coin.theory.json"), "--model",
                           fixture("bad-model.response-sum.json")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("(M=coin, lambda=l1)"), std::string::npos) << r.err;
}

TEST(Cli, CheckListsBitFlipContextuality) {
    const auto r = invoke({"check", "--theory", fixture("bit-flip.theory.json"), "--model",
                           fixture("bit-flip.extended-model.json")});
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_NE(r.out.find("[FAIL] measurement noncontextuality"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("M ~ M'"), std::string::npos) << r.out;
}

TEST(Cli, CheckOnWignerFixtures) {
    const auto r = invoke({"check", "--theory", fixture("wigner-qutrit.theory.json"), "--model",
                           fixture("wigner-qutrit.model.json")});
    EXPECT_EQ(r.code, kExitPass) << r.out;
}

TEST(Cli, ParseErrorExitsTwo) {
    const auto bad = std::filesystem::temp_directory_path() / "ncwb_cli_bad.json";
    std::ofstream(bad) << "[1, 2";
    const auto r = invoke({"solve", "--problem", bad.string()});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("ParseError"), std::string::npos) << r.err;
}

TEST(Cli, SolveCabelloNakamuraInfeasible) {
    const auto r = invoke({"solve", "--problem", fixture("cabello-nakamura.json"), "--json", "-"});
    EXPECT_EQ(r.code, kExitPass);
    const auto j = json_output(r.out);
    EXPECT_FALSE(j["evidence"]["feasible"].get<bool>());
    EXPECT_EQ(j["evidence"]["infeasibility"]["candidates_rejected"].get<double>(), 64.0);
}

TEST(Cli, SolveCoarseGrainBothModes) {
    auto r = invoke({"solve", "--problem", fixture("coarse-grain-paradox.json"), "--mode", "s", "--json", "-"});
    auto j = json_output(r.out);
    ASSERT_TRUE(j["evidence"]["feasible"].get<bool>());
    ASSERT_EQ(j["evidence"]["count"].get<int>(), 1);
    EXPECT_NEAR(j["evidence"]["assignments"][0][4].get<double>(), 0.5, 1e-12);
    r = invoke({"solve", "--problem", fixture("coarse-grain-paradox.json"), "--mode", "d", "--json", "-"});
    j = json_output(r.out);
    EXPECT_FALSE(j["evidence"]["feasible"].get<bool>());
}

TEST(Cli, JsonOutputIsByteStable) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = (dir / "ncwb_a.json").string(), b = (dir / "ncwb_b.json").string();
    for (const char *demo : {"gleason", "wigner-qutrit", "ontic-extension"}) {
        ASSERT_EQ(invoke({"demo", demo, "--json", a}).code, kExitPass);
        ASSERT_EQ(invoke({"demo", demo, "--json", b}).code, kExitPass);
        EXPECT_EQ(slurp(a), slurp(b)) << demo;
        EXPECT_EQ(slurp(a).find("wall"), std::string::npos);
    }
}

TEST(Cli, ToleranceFlagAndEnvironment) {
    EXPECT_EQ(invoke({"demo", "trine", "--tol", "1e-6"}).code, kExitPass);
    EXPECT_EQ(invoke({"--tol", "-1", "demo", "trine"}).code, kExitUsage);
    ::setenv("NCWB_TOL", "1e-7", 1);
    EXPECT_EQ(invoke({"demo", "fair-coin"}).code, kExitPass);
    ::setenv("NCWB_TOL", "bogus", 1);
    EXPECT_EQ(invoke({"demo", "fair-coin"}).code, kExitUsage);
    ::unsetenv("NCWB_TOL");
}

TEST(Cli, DropZeroEffectsChangesReduction) {
    auto r = invoke({"demo", "naimark-pair", "--json", "-"});
    EXPECT_EQ(json_output(r.out)["evidence"]["second_reduction"].size(), 3U);
    r = invoke({"demo", "naimark-pair", "--drop-zero-effects", "--json", "-"});
    EXPECT_EQ(json_output(r.out)["evidence"]["second_reduction"].size(), 2U);
    EXPECT_EQ(r.code, kExitPass);
}

TEST(Cli, SeedIsRecorded) {
    const auto r = invoke({"demo", "p1-p2-check", "--seed", "42", "--json", "-"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(json_output(r.out)["evidence"]["seed"].get<int>(), 42);
}

} // namespace
} // namespace ncwb::cli
