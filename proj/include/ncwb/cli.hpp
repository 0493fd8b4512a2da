// Copyright 2026 The ncwb Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line driver: `demo`, `check`, `solve`, plus a hidden `fixtures`
 * command that regenerates the shipped JSON files.
 *
 * Exit codes: 0 pass or reproduced, 1 check failed, 2 usage, parse or schema error.
 */

#pragma once

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "ncwb/demos.hpp"
#include "ncwb/fixtures.hpp"
#include "ncwb/io.hpp"

namespace ncwb::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaViolation:
    case ErrorCode::UnknownDemo:
    case ErrorCode::InvalidArgument:
    case ErrorCode::LabelMismatch:
        return kExitUsage;
    default:
        return kExitFail;
    }
}

inline void print_report(std::ostream &out, const DemoReport &d) {
    const bool demo = d.kind == "demo";
    out << d.name << ": " << (d.reproduced() ? (demo ? "REPRODUCED" : "PASS") : (demo ? "FAILED" : "FAIL")) << "  ("
        << std::fixed
        << std::setprecision(2) << d.wall_time_ms << " ms)\n";
    out.unsetf(std::ios::floatfield);
    out << "  " << d.claim << "\n";
    if (!d.report.subject.empty()) out << "  subject: " << d.report.subject << "\n";
    for (const auto &v : d.report.verdicts) {
        out << "  [" << (v.passed ? "pass" : "FAIL") << "] " << v.check;
        if (!v.detail.empty()) out << ": " << v.detail;
        out << "\n";
        for (const auto &line : v.violations) out << "      - " << line << "\n";
    }
    for (const auto &note : d.report.scope_notes) out << "  note: " << note << "\n";
}

struct GlobalFlags {
    std::optional<double> tol;
    std::string json_path;
    std::uint64_t seed = 0;
    bool drop_zero = false;

    [[nodiscard]] DemoOptions options() const {
        DemoOptions o;
        if (tol) o.tol = Tolerances::scaled(*tol);
        o.seed = seed;
        o.drop_zero_effects = drop_zero;
        return o;
    }
};

inline int emit(const DemoReport &d, const GlobalFlags &g, std::ostream &out) {
    print_report(out, d);
    if (!g.json_path.empty()) {
        const std::string text = to_json(d).dump(2) + "\n";
        if (g.json_path == "-") {
            out << text;
        } else {
            std::ofstream f(g.json_path);
            if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + g.json_path + "'");
            f << text;
        }
    }
    return d.reproduced() ? kExitPass : kExitFail;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Noncontextuality workbench: operational theories, ontological models and value assignments"};
    app.name("ncwb");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--tol", g.tol, "Global tolerance (scales every threshold; default 1e-9)")->envname("NCWB_TOL");
    app.add_option("--json", g.json_path, "Write the machine-readable report to this path ('-' for stdout)");
    app.add_option("--seed", g.seed, "Seed for randomized demos");
    app.add_flag("--drop-zero-effects", g.drop_zero, "Drop zero effects when reducing joint measurements");

    std::string demo_name;
    auto *demo = app.add_subcommand("demo", "Run a named demonstration");
    demo->add_option("name", demo_name, "Demo name ('list' prints all)")->required();

    std::string theory_path, model_path;
    auto *check = app.add_subcommand("check", "Check a model against a theory");
    check->add_option("--theory", theory_path, "Theory JSON")->required();
    check->add_option("--model", model_path, "Model JSON")->required();

    std::string problem_path, mode;
    auto *solve = app.add_subcommand("solve", "Enumerate assignments of a problem");
    solve->add_option("--problem", problem_path, "Problem JSON")->required();
    solve->add_option("--mode", mode, "d (deterministic) or s (spectral); defaults to the file's mode")
        ->check(CLI::IsMember({"d", "s", "deterministic", "spectral"}));

    std::string fixtures_dir;
    auto *fixtures = app.add_subcommand("fixtures", "Regenerate the JSON fixtures");
    fixtures->add_option("--out", fixtures_dir, "Output directory")->required();
    fixtures->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const DemoOptions options = g.options();
        if (*demo) {
            if (demo_name == "list") {
                for (const auto &n : demo_names()) out << n << "\n";
                return kExitPass;
            }
            return emit(run_demo(demo_name, options), g, out);
        }
        if (*check) {
            const auto theory = io::theory_from_json(io::read_file(theory_path), options.tol);
            const auto model = io::model_from_json(io::read_file(model_path), options.tol);
            return emit(check_model(theory, model, options), g, out);
        }
        if (*solve) {
            auto problem = io::problem_from_json(io::read_file(problem_path), options.tol);
            if (!mode.empty()) problem.set_mode(io::mode_from_string(mode));
            return emit(solve_problem(problem, options), g, out);
        }
        if (*fixtures) {
            std::filesystem::create_directories(fixtures_dir);
            for (const auto &[name, j] : fixture_set()) {
                io::write_file((std::filesystem::path(fixtures_dir) / name).string(), j);
                out << "wrote " << name << "\n";
            }
            return kExitPass;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

} // namespace ncwb::cli
