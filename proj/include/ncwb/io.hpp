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
 * JSON encodings of operators, theories, ontological models, assignment
 * problems and reports.
 *
 * A matrix is {"dim": n, "entries": [[[re, im], ...], ...]} (row-major); a
 * bare entries array is accepted on input. Objects are emitted with sorted
 * keys, so output is byte-stable for identical inputs.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncwb/assign.hpp"
#include "ncwb/measurements.hpp"
#include "ncwb/ontology.hpp"
#include "ncwb/report.hpp"

namespace ncwb::io {

using json = nlohmann::json;

namespace detail {

inline const json &field(const json &j, const std::string &key, const std::string &path) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::SchemaViolation, path + ": missing field '" + key + "'");
    }
    return j.at(key);
}

template <typename T> T as(const json &j, const std::string &path) {
    try {
        return j.get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::SchemaViolation, path + ": " + e.what());
    }
}

inline std::vector<double> doubles(const json &j, const std::string &path) {
    if (!j.is_array()) throw Error(ErrorCode::SchemaViolation, path + ": expected an array of numbers");
    return as<std::vector<double>>(j, path);
}

/// Re-raises library errors with the JSON path prepended.
template <typename F> auto at_path(const std::string &path, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.code() == ErrorCode::SchemaViolation || e.code() == ErrorCode::ParseError) throw;
        throw Error(ErrorCode::SchemaViolation, path + ": " + e.what());
    }
}

} // namespace detail

inline json to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

inline json to_json(const HermitianOperator &h) { return to_json(h.matrix()); }

inline Matrix matrix_from_json(const json &j, const std::string &path) {
    const json &entries = j.is_object() ? detail::field(j, "entries", path) : j;
    const std::string epath = j.is_object() ? path + ".entries" : path;
    if (!entries.is_array() || entries.empty()) {
        throw Error(ErrorCode::SchemaViolation, epath + ": expected a nonempty array of rows");
    }
    const auto n = static_cast<Eigen::Index>(entries.size());
    if (j.is_object() && detail::as<Eigen::Index>(detail::field(j, "dim", path), path + ".dim") != n) {
        throw Error(ErrorCode::SchemaViolation, path + ".dim: does not match the number of rows");
    }
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json &row = entries[static_cast<std::size_t>(r)];
        const std::string rpath = epath + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw Error(ErrorCode::SchemaViolation, rpath + ": expected " + std::to_string(n) + " entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const json &z = row[static_cast<std::size_t>(c)];
            const std::string zpath = rpath + "[" + std::to_string(c) + "]";
            if (z.is_number()) {
                m(r, c) = detail::as<double>(z, zpath);
            } else if (z.is_array() && z.size() == 2) {
                m(r, c) = Complex(detail::as<double>(z[0], zpath), detail::as<double>(z[1], zpath));
            } else {
                throw Error(ErrorCode::SchemaViolation, zpath + ": expected [re, im]");
            }
        }
    }
    return m;
}

inline HermitianOperator operator_from_json(const json &j, const std::string &path = "$") {
    Matrix m = matrix_from_json(j, path);
    return detail::at_path(path, [&] { return HermitianOperator(std::move(m)); });
}

inline json to_json(const Povm &m) {
    json effects = json::array();
    for (const auto &e : m.effects()) effects.push_back(to_json(e.op()));
    return {{"effects", std::move(effects)}, {"outcomes", m.labels()}};
}

inline json to_json(const OperationalTheory &t) {
    json preps = json::array();
    for (const auto &p : t.preparations()) preps.push_back({{"label", p.label}, {"rho", to_json(p.rho.op())}});
    json meas = json::array();
    for (const auto &m : t.measurements()) {
        json e = to_json(m.povm);
        e["label"] = m.label;
        e["sharp"] = m.sharp;
        meas.push_back(std::move(e));
    }
    return {{"dim", t.dim()}, {"preparations", std::move(preps)}, {"measurements", std::move(meas)},
            {"table", t.table()}};
}

/**
 * Reads a theory. A missing table is recomputed with the Born rule; a given
 * table or sharpness flag must agree with the quantum objects.
 */
inline OperationalTheory theory_from_json(const json &j, const Tolerances &tol = kDefaultTolerances) {
    const int dim = detail::as<int>(detail::field(j, "dim", "$"), "$.dim");
    std::vector<Preparation> preps;
    const json &jp = detail::field(j, "preparations", "$");
    if (!jp.is_array()) throw Error(ErrorCode::SchemaViolation, "$.preparations: expected an array");
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const std::string path = "$.preparations[" + std::to_string(i) + "]";
        const auto label = detail::as<std::string>(detail::field(jp[i], "label", path), path + ".label");
        HermitianOperator h = operator_from_json(detail::field(jp[i], "rho", path), path + ".rho");
        if (h.dim() != dim) throw Error(ErrorCode::SchemaViolation, path + ".rho: dimension differs from $.dim");
        preps.push_back({label, detail::at_path(path + ".rho", [&] { return DensityOperator(h, tol); })});
    }
    std::vector<Measurement> meas;
    const json &jm = detail::field(j, "measurements", "$");
    if (!jm.is_array()) throw Error(ErrorCode::SchemaViolation, "$.measurements: expected an array");
    for (std::size_t i = 0; i < jm.size(); ++i) {
        const std::string path = "$.measurements[" + std::to_string(i) + "]";
        const auto label = detail::as<std::string>(detail::field(jm[i], "label", path), path + ".label");
        const json &je = detail::field(jm[i], "effects", path);
        if (!je.is_array()) throw Error(ErrorCode::SchemaViolation, path + ".effects: expected an array");
        std::vector<Effect> effects;
        for (std::size_t k = 0; k < je.size(); ++k) {
            const std::string epath = path + ".effects[" + std::to_string(k) + "]";
            HermitianOperator h = operator_from_json(je[k], epath);
            if (h.dim() != dim) throw Error(ErrorCode::SchemaViolation, epath + ": dimension differs from $.dim");
            effects.push_back(detail::at_path(epath, [&] { return Effect(h, tol.eig); }));
        }
        std::vector<std::string> outcomes;
        if (jm[i].contains("outcomes")) {
            outcomes = detail::as<std::vector<std::string>>(jm[i]["outcomes"], path + ".outcomes");
        }
        Povm povm = detail::at_path(path, [&] { return Povm(std::move(effects), std::move(outcomes), tol.sum); });
        const bool sharp = povm.is_sharp(tol.sum);
        if (jm[i].contains("sharp") && detail::as<bool>(jm[i]["sharp"], path + ".sharp") != sharp) {
            throw Error(ErrorCode::SchemaViolation,
                        path + ".sharp: flag disagrees with the effects (projective = " + (sharp ? "true" : "false") + ")");
        }
        meas.push_back({label, std::move(povm), sharp});
    }
    if (preps.empty() || meas.empty()) {
        throw Error(ErrorCode::SchemaViolation, "$: theory needs at least one preparation and one measurement");
    }
    if (!j.contains("table") || j["table"].is_null()) {
        return detail::at_path("$", [&] { return build_quantum_theory(std::move(preps), std::move(meas), tol); });
    }
    auto table = detail::as<OperationalTheory::Table>(j["table"], "$.table");
    return detail::at_path("$.table", [&] {
        return OperationalTheory(std::move(preps), std::move(meas), std::move(table), tol);
    });
}

inline json to_json(const OntologicalModel &m) {
    return {{"ontic_states", m.ontic_states()}, {"epistemic", m.epistemic()}, {"responses", m.responses()}};
}

inline OntologicalModel model_from_json(const json &j, const Tolerances &tol = kDefaultTolerances) {
    auto ontic = detail::as<std::vector<std::string>>(detail::field(j, "ontic_states", "$"), "$.ontic_states");
    auto epistemic = detail::as<std::map<std::string, std::vector<double>>>(detail::field(j, "epistemic", "$"),
                                                                            "$.epistemic");
    auto responses = detail::as<std::map<std::string, OntologicalModel::Responses>>(
        detail::field(j, "responses", "$"), "$.responses");
    return detail::at_path("$", [&] {
        return OntologicalModel(std::move(ontic), std::move(epistemic), std::move(responses), tol);
    });
}

inline std::string to_string(RelationKind k) {
    switch (k) {
    case RelationKind::povm: return "povm";
    case RelationKind::sum: return "sum";
    case RelationKind::scale: return "scale";
    }
    return "povm";
}

inline std::string to_string(AssignmentMode m) {
    return m == AssignmentMode::deterministic ? "deterministic" : "spectral";
}

inline AssignmentMode mode_from_string(const std::string &s) {
    if (s == "deterministic" || s == "d") return AssignmentMode::deterministic;
    if (s == "spectral" || s == "s") return AssignmentMode::spectral;
    throw Error(ErrorCode::SchemaViolation, "unknown mode '" + s + "' (expected deterministic|spectral|d|s)");
}

inline json to_json(const AssignmentProblem &p) {
    json effects = json::array();
    for (const auto &e : p.effects()) effects.push_back(to_json(e.op()));
    json rels = json::array();
    for (const auto &r : p.relations()) {
        json jr = {{"kind", to_string(r.kind)}, {"indices", r.indices}};
        if (r.kind != RelationKind::povm) jr["coeffs"] = r.coeffs;
        rels.push_back(std::move(jr));
    }
    json out = {{"effects", std::move(effects)}, {"relations", std::move(rels)}, {"mode", to_string(p.mode())}};
    if (p.refined()) out["refined"] = true;
    return out;
}

inline AssignmentProblem problem_from_json(const json &j, const Tolerances &tol = kDefaultTolerances) {
    const AssignmentMode mode =
        j.contains("mode") ? mode_from_string(detail::as<std::string>(j["mode"], "$.mode")) : AssignmentMode::deterministic;
    std::vector<Effect> effects;
    const json &je = detail::field(j, "effects", "$");
    if (!je.is_array() || je.empty()) throw Error(ErrorCode::SchemaViolation, "$.effects: expected a nonempty array");
    for (std::size_t i = 0; i < je.size(); ++i) {
        const std::string path = "$.effects[" + std::to_string(i) + "]";
        HermitianOperator h = operator_from_json(je[i], path);
        effects.push_back(detail::at_path(path, [&] { return Effect(h, tol.eig); }));
    }
    std::vector<Relation> rels;
    const json &jr = detail::field(j, "relations", "$");
    if (!jr.is_array()) throw Error(ErrorCode::SchemaViolation, "$.relations: expected an array");
    for (std::size_t i = 0; i < jr.size(); ++i) {
        const std::string path = "$.relations[" + std::to_string(i) + "]";
        const auto kind = detail::as<std::string>(detail::field(jr[i], "kind", path), path + ".kind");
        Relation r;
        if (kind == "povm") r.kind = RelationKind::povm;
        else if (kind == "sum") r.kind = RelationKind::sum;
        else if (kind == "scale") r.kind = RelationKind::scale;
        else throw Error(ErrorCode::SchemaViolation, path + ".kind: unknown relation kind '" + kind + "'");
        r.indices = detail::as<std::vector<std::size_t>>(detail::field(jr[i], "indices", path), path + ".indices");
        if (jr[i].contains("coeffs")) r.coeffs = detail::doubles(jr[i]["coeffs"], path + ".coeffs");
        rels.push_back(std::move(r));
    }
    AssignmentProblem p(mode, tol);
    for (std::size_t i = 0; i < effects.size(); ++i) {
        if (p.add_effect(effects[i]) != i) {
            throw Error(ErrorCode::SchemaViolation, "$.effects[" + std::to_string(i) + "]: duplicates an earlier effect");
        }
    }
    for (std::size_t i = 0; i < rels.size(); ++i) {
        detail::at_path("$.relations[" + std::to_string(i) + "]", [&] {
            p.add_relation(std::move(rels[i]));
            return 0;
        });
    }
    if (j.contains("refined")) p.set_refined(detail::as<bool>(j["refined"], "$.refined"));
    return p;
}

inline json to_json(const Verdict &v) {
    return {{"check", v.check}, {"passed", v.passed}, {"violations", v.violations}, {"detail", v.detail}};
}

inline json to_json(const Report &r) {
    json verdicts = json::array();
    for (const auto &v : r.verdicts) verdicts.push_back(to_json(v));
    return {{"subject", r.subject}, {"passed", r.passed()}, {"scope_notes", r.scope_notes}, {"verdicts", std::move(verdicts)}};
}

inline json to_json(const GleasonCertificate &c) {
    json out = {{"feasible", c.feasible},
                {"witness", c.witness == GleasonCertificate::Witness::none       ? "none"
                            : c.witness == GleasonCertificate::Witness::residual ? "residual"
                                                                                 : "positivity"},
                {"residual", c.residual},
                {"min_eigenvalue", c.min_eigenvalue},
                {"unique", c.unique}};
    if (c.rho) out["rho"] = to_json(*c.rho);
    if (c.bloch_norm) out["bloch_norm"] = *c.bloch_norm;
    return out;
}

inline json to_json(const std::vector<Assignment> &as, const VariableLayout &layout) {
    json out = json::array();
    for (const auto &a : as) out.push_back(a.values);
    return {{"count", as.size()}, {"variable_effect", layout.variable_effect}, {"assignments", std::move(out)}};
}

inline json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline void write_file(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace ncwb::io
