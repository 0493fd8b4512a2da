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
 * Value and probability assignments over finite sets of effects.
 *
 * An assignment problem lists distinct effects and the linear relations
 * among them that an ontic state's assignment must respect: POVM
 * memberships (values sum to 1), coarse-graining sums and scalar multiples.
 * Deterministic mode asks for 0/1 values; spectral mode asks for values drawn
 * from each effect's spectrum. Both are decided by exhaustive enumeration, so
 * an empty result is a certificate of infeasibility.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncwb/measurements.hpp"
#include "ncwb/report.hpp"

namespace ncwb {

enum class AssignmentMode { deterministic, spectral };

enum class RelationKind {
    /// Σ_i E_{indices[i]} = I, repetition allowed.
    povm,
    /// E_{indices[0]} = Σ_j coeffs[j] E_{indices[j+1]} (coeffs default to 1).
    sum,
    /// E_{indices[0]} = coeffs[0] E_{indices[1]}.
    scale,
};

struct Relation {
    RelationKind kind = RelationKind::povm;
    std::vector<std::size_t> indices;
    std::vector<double> coeffs;
};

inline constexpr std::size_t kMaxDeterministicVariables = 24;
inline constexpr std::size_t kMaxSpectralCandidates = 1'000'000;

class AssignmentProblem {
  public:
    explicit AssignmentProblem(AssignmentMode mode = AssignmentMode::deterministic,
                               const Tolerances &tol = kDefaultTolerances)
        : mode_(mode), tol_(tol) {}

    AssignmentProblem(std::vector<Effect> effects, std::vector<Relation> relations, AssignmentMode mode,
                      const Tolerances &tol = kDefaultTolerances)
        : mode_(mode), tol_(tol) {
        for (auto &e : effects) {
            const std::size_t before = effects_.size();
            if (add_effect(e) != before) {
                throw Error(ErrorCode::InvalidArgument,
                            "effect " + std::to_string(before) + " duplicates an earlier effect");
            }
        }
        for (auto &r : relations) add_relation(std::move(r));
    }

    /// Index of `e`, appending it unless an equal effect is already registered.
    std::size_t add_effect(const Effect &e) {
        if (!effects_.empty() && e.dim() != effects_.front().dim()) {
            throw Error(ErrorCode::DimensionMismatch, "effects must share a dimension");
        }
        for (std::size_t i = 0; i < effects_.size(); ++i) {
            if (approx_equal(effects_[i].op(), e.op(), tol_.dedup)) return i;
        }
        effects_.push_back(e);
        return effects_.size() - 1;
    }
    std::size_t add_effect(const HermitianOperator &h) { return add_effect(Effect(h)); }

    void add_relation(Relation r) {
        for (std::size_t i : r.indices) {
            if (i >= effects_.size()) throw Error(ErrorCode::InvalidArgument, "relation index out of range");
        }
        const int d = effects_.front().dim();
        Matrix lhs, rhs;
        switch (r.kind) {
        case RelationKind::povm:
            if (r.indices.empty()) throw Error(ErrorCode::InvalidArgument, "empty POVM relation");
            lhs = Matrix::Zero(d, d);
            for (std::size_t i : r.indices) lhs += effects_[i].matrix();
            rhs = Matrix::Identity(d, d);
            r.coeffs.clear();
            break;
        case RelationKind::sum:
            if (r.indices.size() < 2) throw Error(ErrorCode::InvalidArgument, "sum relation needs a target and parts");
            if (r.coeffs.empty()) r.coeffs.assign(r.indices.size() - 1, 1.0);
            if (r.coeffs.size() != r.indices.size() - 1) {
                throw Error(ErrorCode::InvalidArgument, "sum relation needs one coefficient per part");
            }
            lhs = effects_[r.indices[0]].matrix();
            rhs = Matrix::Zero(d, d);
            for (std::size_t j = 0; j < r.coeffs.size(); ++j) rhs += r.coeffs[j] * effects_[r.indices[j + 1]].matrix();
            break;
        case RelationKind::scale:
            if (r.indices.size() != 2 || r.coeffs.size() != 1) {
                throw Error(ErrorCode::InvalidArgument, "scale relation needs [target, source] and one factor");
            }
            lhs = effects_[r.indices[0]].matrix();
            rhs = r.coeffs[0] * effects_[r.indices[1]].matrix();
            break;
        }
        const double residue = max_abs(lhs - rhs);
        if (residue > tol_.sum) {
            throw Error(ErrorCode::InvalidArgument,
                        "registered relation does not hold at the operator level (residue " +
                            std::to_string(residue) + ")");
        }
        relations_.push_back(std::move(r));
    }

    /// Adds every effect of `m` (deduplicated) and its POVM relation; returns the indices.
    std::vector<std::size_t> add_povm(const Povm &m) {
        std::vector<std::size_t> idx;
        for (const auto &e : m.effects()) idx.push_back(add_effect(e));
        add_relation({RelationKind::povm, idx, {}});
        return idx;
    }

    [[nodiscard]] const std::vector<Effect> &effects() const noexcept { return effects_; }
    [[nodiscard]] const std::vector<Relation> &relations() const noexcept { return relations_; }
    [[nodiscard]] AssignmentMode mode() const noexcept { return mode_; }
    [[nodiscard]] const Tolerances &tolerances() const noexcept { return tol_; }
    void set_mode(AssignmentMode mode) noexcept { mode_ = mode; }

    /**
     * Refined reading of noncontextuality: equal effects share a value only
     * when they occur in different relations. Each occurrence becomes its own
     * variable and occurrences of one effect in distinct relations are then
     * identified. The refined notion is not fully formalized; this is the
     * reading under which the "same effect twice" rebuttal is reproduced.
     */
    [[nodiscard]] bool refined() const noexcept { return refined_; }
    void set_refined(bool refined) noexcept { refined_ = refined; }

  private:
    std::vector<Effect> effects_;
    std::vector<Relation> relations_;
    AssignmentMode mode_;
    Tolerances tol_;
    bool refined_ = false;
};

/// How relation occurrences map onto assignment variables.
struct VariableLayout {
    /// Effect index carried by each variable.
    std::vector<std::size_t> variable_effect;
    /// relation_vars[r][j] is the variable at position j of relation r.
    std::vector<std::vector<std::size_t>> relation_vars;

    [[nodiscard]] std::size_t size() const noexcept { return variable_effect.size(); }
};

inline VariableLayout variable_layout(const AssignmentProblem &p) {
    VariableLayout layout;
    const auto &rels = p.relations();
    if (!p.refined()) {
        for (std::size_t i = 0; i < p.effects().size(); ++i) layout.variable_effect.push_back(i);
        for (const auto &r : rels) layout.relation_vars.push_back(r.indices);
        return layout;
    }
    // One slot per occurrence, then one per effect that occurs nowhere.
    std::vector<std::pair<std::size_t, std::size_t>> slot_owner; // (relation, effect)
    std::vector<std::vector<std::size_t>> slots(rels.size());
    for (std::size_t r = 0; r < rels.size(); ++r) {
        for (std::size_t e : rels[r].indices) {
            slots[r].push_back(slot_owner.size());
            slot_owner.emplace_back(r, e);
        }
    }
    std::vector<bool> used(p.effects().size(), false);
    for (const auto &[r, e] : slot_owner) used[e] = true;
    for (std::size_t e = 0; e < used.size(); ++e) {
        if (!used[e]) slot_owner.emplace_back(rels.size(), e);
    }
    detail::UnionFind uf(slot_owner.size());
    for (std::size_t a = 0; a < slot_owner.size(); ++a) {
        for (std::size_t b = a + 1; b < slot_owner.size(); ++b) {
            if (slot_owner[a].second == slot_owner[b].second && slot_owner[a].first != slot_owner[b].first) {
                uf.unite(a, b);
            }
        }
    }
    std::map<std::size_t, std::size_t> root_to_var;
    std::vector<std::size_t> slot_var(slot_owner.size());
    for (std::size_t s = 0; s < slot_owner.size(); ++s) {
        const std::size_t root = uf.find(s);
        auto [it, inserted] = root_to_var.emplace(root, layout.variable_effect.size());
        if (inserted) layout.variable_effect.push_back(slot_owner[s].second);
        slot_var[s] = it->second;
    }
    for (std::size_t r = 0; r < rels.size(); ++r) {
        std::vector<std::size_t> vars;
        for (std::size_t s : slots[r]) vars.push_back(slot_var[s]);
        layout.relation_vars.push_back(std::move(vars));
    }
    return layout;
}

/// Values indexed by assignment variable (one per effect unless refined).
struct Assignment {
    std::vector<double> values;
    friend bool operator==(const Assignment &, const Assignment &) = default;
};

namespace detail {

inline bool relations_hold(const AssignmentProblem &p, const VariableLayout &layout, const std::vector<double> &w,
                           double tol) {
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        const Relation &rel = p.relations()[r];
        const auto &vars = layout.relation_vars[r];
        double lhs = 0.0, rhs = 0.0;
        switch (rel.kind) {
        case RelationKind::povm:
            for (std::size_t v : vars) lhs += w[v];
            rhs = 1.0;
            break;
        case RelationKind::sum:
        case RelationKind::scale:
            lhs = w[vars[0]];
            for (std::size_t j = 0; j < rel.coeffs.size(); ++j) rhs += rel.coeffs[j] * w[vars[j + 1]];
            break;
        }
        if (std::abs(lhs - rhs) > tol) return false;
    }
    return true;
}

} // namespace detail

/**
 * All 0/1 assignments satisfying every relation, in ascending order of the
 * candidate bitmask (bit i is variable i).
 */
inline std::vector<Assignment> enumerate_deterministic_assignments(const AssignmentProblem &p) {
    const VariableLayout layout = variable_layout(p);
    const std::size_t n = layout.size();
    if (n > kMaxDeterministicVariables) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " variables exceed the exhaustive bound of " +
                                             std::to_string(kMaxDeterministicVariables));
    }
    std::vector<Assignment> out;
    std::vector<double> w(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>((mask >> i) & 1U);
        if (detail::relations_hold(p, layout, w, p.tolerances().sum)) out.push_back({w});
    }
    return out;
}

/// Merged spectrum of every variable's effect, descending.
inline std::vector<std::vector<double>> variable_spectra(const AssignmentProblem &p, const VariableLayout &layout) {
    std::vector<std::vector<double>> spectra;
    std::vector<std::vector<double>> per_effect;
    for (const auto &e : p.effects()) per_effect.push_back(spectrum(e.op(), p.tolerances()));
    for (std::size_t e : layout.variable_effect) spectra.push_back(per_effect[e]);
    return spectra;
}

/**
 * All assignments with each value in its effect's merged spectrum that satisfy
 * every relation within τ_sum; mixed-radix order with variable 0 fastest.
 */
inline std::vector<Assignment> enumerate_spectral_assignments(const AssignmentProblem &p) {
    const VariableLayout layout = variable_layout(p);
    const auto spectra = variable_spectra(p, layout);
    const std::size_t n = layout.size();
    double candidates = 1.0;
    for (const auto &s : spectra) candidates *= static_cast<double>(s.size());
    if (candidates > static_cast<double>(kMaxSpectralCandidates)) {
        throw Error(ErrorCode::TooLarge, "spectral product space has " + std::to_string(candidates) + " candidates");
    }
    std::vector<Assignment> out;
    std::vector<std::size_t> digit(n, 0);
    std::vector<double> w(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) w[i] = spectra[i][digit[i]];
        if (detail::relations_hold(p, layout, w, p.tolerances().sum)) out.push_back({w});
        std::size_t i = 0;
        while (i < n && ++digit[i] == spectra[i].size()) digit[i++] = 0;
        if (i == n) break;
    }
    return out;
}

inline std::vector<Assignment> enumerate_assignments(const AssignmentProblem &p) {
    return p.mode() == AssignmentMode::deterministic ? enumerate_deterministic_assignments(p)
                                                     : enumerate_spectral_assignments(p);
}

namespace detail {

inline bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

inline std::optional<std::size_t> identity_index(const AssignmentProblem &p) {
    const int d = p.effects().empty() ? 0 : p.effects().front().dim();
    for (std::size_t i = 0; i < p.effects().size(); ++i) {
        if (max_abs(p.effects()[i].matrix() - Matrix::Identity(d, d)) <= p.tolerances().dedup) return i;
    }
    return std::nullopt;
}

inline double relation_gap(const Relation &rel, const std::vector<double> &w) {
    double lhs = 0.0, rhs = 0.0;
    if (rel.kind == RelationKind::povm) {
        for (std::size_t i : rel.indices) lhs += w[i];
        rhs = 1.0;
    } else {
        lhs = w[rel.indices[0]];
        for (std::size_t j = 0; j < rel.coeffs.size(); ++j) rhs += rel.coeffs[j] * w[rel.indices[j + 1]];
    }
    return std::abs(lhs - rhs);
}

inline void require_effect_indexed(const AssignmentProblem &p, const Assignment &v) {
    if (p.refined()) {
        throw Error(ErrorCode::InvalidArgument, "rule checks need one value per effect (refined layout given)");
    }
    if (v.values.size() != p.effects().size()) {
        throw Error(ErrorCode::DimensionMismatch, "assignment size differs from effect count");
    }
}

} // namespace detail

/**
 * Traditional valuation rules over projectors: 0/1 values, additivity on
 * registered sums of projectors (a resolution of the identity counts as a
 * sum equal to I), and v(I) = 1 when the identity is registered.
 */
inline Report check_ks_rules(const Assignment &v, const AssignmentProblem &p) {
    detail::require_effect_indexed(p, v);
    const double tol = p.tolerances().sum;
    for (std::size_t i = 0; i < p.effects().size(); ++i) {
        if (!is_projector(p.effects()[i].op(), tol)) {
            throw Error(ErrorCode::NotProjective, "effect " + std::to_string(i) + " is not a projector");
        }
    }
    Verdict ks1{"KS1 values in {0,1}", true, {}, ""};
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (!detail::near(v.values[i], 0.0, tol) && !detail::near(v.values[i], 1.0, tol)) {
            ks1.passed = false;
            ks1.violations.push_back("v(effect " + std::to_string(i) + ") = " + detail::fmt(v.values[i]));
        }
    }
    Verdict ks2{"KS2 additivity on projector sums", true, {}, ""};
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        const Relation &rel = p.relations()[r];
        if (rel.kind == RelationKind::scale) continue;
        const double gap = detail::relation_gap(rel, v.values);
        if (gap > tol) {
            ks2.passed = false;
            ks2.violations.push_back("relation " + std::to_string(r) +
                                     (rel.kind == RelationKind::povm ? " (resolution of identity)" : " (sum)") +
                                     " off by " + detail::fmt(gap));
        }
    }
    Verdict ks3{"KS3 v(I) = 1", true, {}, ""};
    if (auto id = detail::identity_index(p)) {
        if (!detail::near(v.values[*id], 1.0, tol)) {
            ks3.passed = false;
            ks3.violations.push_back("v(I) = " + detail::fmt(v.values[*id]));
        }
    } else {
        ks3.detail = "identity not registered; enforced through resolutions of identity";
    }
    Report r;
    r.subject = "KS valuation rules";
    r.verdicts = {std::move(ks1), std::move(ks2), std::move(ks3)};
    return r;
}

/**
 * Probability-assignment rules NC1–NC5 on the registered relations. NC5 is
 * checked in the direction a single assignment can witness: projectors
 * receive 0 or 1. The converse concerns the response function over all ontic
 * states and is covered by response_values_over_valuations().
 */
inline Report check_nc_rules(const Assignment &w, const AssignmentProblem &p) {
    detail::require_effect_indexed(p, w);
    const double tol = p.tolerances().sum;
    Verdict nc1{"NC1 values in [0,1]", true, {}, ""};
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        if (w.values[i] < -tol || w.values[i] > 1.0 + tol) {
            nc1.passed = false;
            nc1.violations.push_back("w(effect " + std::to_string(i) + ") = " + detail::fmt(w.values[i]));
        }
    }
    Verdict nc2{"NC2 additivity", true, {}, ""};
    Verdict nc3{"NC3 homogeneity", true, {}, ""};
    Verdict nc4{"NC4 unit normalization", true, {}, ""};
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        const Relation &rel = p.relations()[r];
        const double gap = detail::relation_gap(rel, w.values);
        if (gap <= tol) continue;
        Verdict &target = rel.kind == RelationKind::povm ? nc4 : rel.kind == RelationKind::scale ? nc3 : nc2;
        target.passed = false;
        target.violations.push_back("relation " + std::to_string(r) + " off by " + detail::fmt(gap));
    }
    if (auto id = detail::identity_index(p)) {
        if (!detail::near(w.values[*id], 1.0, tol)) {
            nc4.passed = false;
            nc4.violations.push_back("w(I) = " + detail::fmt(w.values[*id]));
        }
    }
    Verdict nc5{"NC5 projectors receive 0 or 1", true, {}, ""};
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        if (is_projector(p.effects()[i].op(), tol) && !detail::near(w.values[i], 0.0, tol) &&
            !detail::near(w.values[i], 1.0, tol)) {
            nc5.passed = false;
            nc5.violations.push_back("projector " + std::to_string(i) + " has w = " + detail::fmt(w.values[i]));
        }
    }
    Report r;
    r.subject = "NC1-NC5 probability-assignment rules";
    r.verdicts = {std::move(nc1), std::move(nc2), std::move(nc3), std::move(nc4), std::move(nc5)};
    return r;
}

/// NC1′ (values in the merged spectrum) and NC2′ (every registered linear relation).
inline Report check_spectral_rules(const Assignment &w, const AssignmentProblem &p) {
    detail::require_effect_indexed(p, w);
    const double tol = p.tolerances().sum;
    Verdict spec{"NC1' value in spectrum", true, {}, ""};
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const auto s = spectrum(p.effects()[i].op(), p.tolerances());
        const bool hit = std::any_of(s.begin(), s.end(), [&](double x) { return detail::near(x, w.values[i], tol); });
        if (!hit) {
            spec.passed = false;
            spec.violations.push_back("w(effect " + std::to_string(i) + ") = " + detail::fmt(w.values[i]) +
                                      " not in spectrum");
        }
    }
    Verdict lin{"NC2' convex-linearity", true, {}, ""};
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        const double gap = detail::relation_gap(p.relations()[r], w.values);
        if (gap > tol) {
            lin.passed = false;
            lin.violations.push_back("relation " + std::to_string(r) + " off by " + detail::fmt(gap));
        }
    }
    Report r;
    r.subject = "NC1'-NC2' spectral rules";
    r.verdicts = {std::move(spec), std::move(lin)};
    return r;
}

/// Either a density operator reproducing an assignment, or why none exists.
struct GleasonCertificate {
    enum class Witness { none, residual, positivity };

    bool feasible = false;
    Witness witness = Witness::none;
    /// Least-squares Hermitian solution (present whenever the linear system was solved).
    std::optional<HermitianOperator> rho;
    /// max |tr(ρE_i) − w_i| including the trace row.
    double residual = 0.0;
    /// Smallest eigenvalue of the least-squares solution.
    double min_eigenvalue = 0.0;
    /// The constraints pin ρ down uniquely (the effects plus I span all Hermitian operators).
    bool unique = false;
    /// |r| for r_i = tr(ρσ_i) when d = 2.
    std::optional<double> bloch_norm;
};

/// Orthonormal basis of the real space of d×d Hermitian matrices under tr(AB).
inline std::vector<Matrix> hermitian_basis(int d) {
    std::vector<Matrix> basis;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        Matrix m = Matrix::Zero(d, d);
        m(i, i) = 1.0;
        basis.push_back(std::move(m));
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix re = Matrix::Zero(d, d);
            re(i, j) = r;
            re(j, i) = r;
            basis.push_back(std::move(re));
            Matrix im = Matrix::Zero(d, d);
            im(i, j) = Complex(0.0, -r);
            im(j, i) = Complex(0.0, r);
            basis.push_back(std::move(im));
        }
    }
    return basis;
}

/**
 * Solves tr(ρE_i) = w_i together with tr ρ = 1 over Hermitian ρ (minimum-norm
 * least squares in an orthonormal Hermitian basis), then tests positivity.
 * When the constraints do not determine ρ uniquely only the minimum-norm
 * solution is tested, which the `unique` flag records.
 */
inline GleasonCertificate gleason_feasibility(const std::vector<Effect> &effects, const std::vector<double> &w,
                                              const Tolerances &tol = kDefaultTolerances) {
    if (effects.empty() || effects.size() != w.size()) {
        throw Error(ErrorCode::DimensionMismatch, "need one value per effect");
    }
    const int d = effects.front().dim();
    for (const auto &e : effects) {
        if (e.dim() != d) throw Error(ErrorCode::DimensionMismatch, "effects must share a dimension");
    }
    if (d > 8) throw Error(ErrorCode::DimensionMismatch, "dimension above 8 is not supported");

    const auto basis = hermitian_basis(d);
    const auto rows = static_cast<Eigen::Index>(effects.size() + 1);
    const auto cols = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd b(rows);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Matrix &bj = basis[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i + 1 < rows; ++i) {
            a(i, j) = (bj.cwiseProduct(effects[static_cast<std::size_t>(i)].matrix().transpose())).sum().real();
        }
        a(rows - 1, j) = bj.trace().real();
    }
    for (Eigen::Index i = 0; i + 1 < rows; ++i) b(i) = w[static_cast<std::size_t>(i)];
    b(rows - 1) = 1.0;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd x = cod.solve(b);

    GleasonCertificate cert;
    cert.unique = cod.rank() == cols;
    cert.residual = (a * x - b).cwiseAbs().maxCoeff();
    Matrix rho = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < cols; ++j) rho += x(j) * basis[static_cast<std::size_t>(j)];
    cert.rho.emplace(rho, 1e-6);
    cert.min_eigenvalue = eigenvalues(*cert.rho).minCoeff();
    if (d == 2) {
        const double rx = 2.0 * rho(0, 1).real();
        const double ry = -2.0 * rho(0, 1).imag();
        const double rz = (rho(0, 0) - rho(1, 1)).real();
        cert.bloch_norm = std::sqrt(rx * rx + ry * ry + rz * rz);
    }
    if (cert.residual > tol.sum) {
        cert.witness = GleasonCertificate::Witness::residual;
    } else if (cert.min_eigenvalue < -tol.psd) {
        cert.witness = GleasonCertificate::Witness::positivity;
    } else {
        cert.feasible = true;
    }
    return cert;
}

/**
 * w(E) = Σ_i s_i v(Π_i) for a 0/1 valuation of E's eigenspace projectors
 * (descending eigenvalue order) with exactly one projector valued 1.
 */
inline double response_from_projector_valuation(const Effect &e, const std::vector<int> &v,
                                                const Tolerances &tol = kDefaultTolerances) {
    const SpectralResolution res = spectral_decompose(e.op(), tol);
    if (v.size() != res.size()) {
        throw Error(ErrorCode::InvalidValuation, "valuation covers " + std::to_string(v.size()) +
                                                     " projectors, effect has " + std::to_string(res.size()));
    }
    int ones = 0;
    double w = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0 && v[i] != 1) throw Error(ErrorCode::InvalidValuation, "valuation entries must be 0 or 1");
        ones += v[i];
        w += res.eigenvalues[i] * v[i];
    }
    if (ones != 1) throw Error(ErrorCode::InvalidValuation, "exactly one projector must receive the value 1");
    return w;
}

/// w(E) for every admissible valuation of E's spectral projectors.
inline std::vector<double> response_values_over_valuations(const Effect &e,
                                                           const Tolerances &tol = kDefaultTolerances) {
    const std::size_t n = spectral_decompose(e.op(), tol).size();
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> v(n, 0);
        v[i] = 1;
        out.push_back(response_from_projector_valuation(e, v, tol));
    }
    return out;
}

/**
 * Keeps only effects E > ½I (minimum eigenvalue above ½ + τ_eig), which can
 * never occur twice in one POVM, and the relations that survive intact.
 */
inline AssignmentProblem filter_effects_above_half(const AssignmentProblem &p) {
    AssignmentProblem out(p.mode(), p.tolerances());
    out.set_refined(p.refined());
    std::vector<std::optional<std::size_t>> remap(p.effects().size());
    for (std::size_t i = 0; i < p.effects().size(); ++i) {
        if (eigenvalues(p.effects()[i].op()).minCoeff() > 0.5 + p.tolerances().eig) {
            remap[i] = out.add_effect(p.effects()[i]);
        }
    }
    for (const auto &rel : p.relations()) {
        Relation r{rel.kind, {}, rel.coeffs};
        bool intact = true;
        for (std::size_t i : rel.indices) {
            if (!remap[i]) {
                intact = false;
                break;
            }
            r.indices.push_back(*remap[i]);
        }
        if (intact) out.add_relation(std::move(r));
    }
    return out;
}

// Problem builders for the standard constructions.

inline HermitianOperator scalar(double s, int dim = 2) {
    return HermitianOperator(s * Matrix::Identity(dim, dim));
}

/// {½I, ½I}: one effect, used twice in a single POVM.
inline AssignmentProblem fair_coin_problem(AssignmentMode mode = AssignmentMode::deterministic) {
    AssignmentProblem p(mode);
    const std::size_t half = p.add_effect(scalar(0.5));
    p.add_relation({RelationKind::povm, {half, half}, {}});
    return p;
}

/// Rank-1 qubit projectors onto +z, +x and +y.
inline std::vector<HermitianOperator> cabello_nakamura_projectors() {
    using std::numbers::pi;
    return {HermitianOperator::projector(qubit_ket(0.0, 0.0)),
            HermitianOperator::projector(qubit_ket(pi / 2, 0.0)),
            HermitianOperator::projector(qubit_ket(pi / 2, pi / 2))};
}

/**
 * Three four-outcome POVMs {½A, ½(I−A), ½B, ½(I−B)} over pairs drawn from
 * three distinct rank-1 projectors; every effect occurs in exactly two of them.
 */
inline AssignmentProblem cabello_nakamura_problem(AssignmentMode mode = AssignmentMode::deterministic) {
    const auto proj = cabello_nakamura_projectors();
    AssignmentProblem p(mode);
    std::vector<std::size_t> half, comp;
    for (const auto &pr : proj) {
        half.push_back(p.add_effect(0.5 * pr));
        comp.push_back(p.add_effect(0.5 * (HermitianOperator::identity(2) - pr)));
    }
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        p.add_relation({RelationKind::povm, {half[a], comp[a], half[b], comp[b]}, {}});
    }
    return p;
}

/// {½I, ½I} together with {½I, ½Π₊z, ½Π₋z}.
inline AssignmentProblem same_effect_twice_problem(bool refined = false,
                                                   AssignmentMode mode = AssignmentMode::deterministic) {
    AssignmentProblem p(mode);
    p.set_refined(refined);
    const std::size_t half = p.add_effect(scalar(0.5));
    const std::size_t up = p.add_effect(0.5 * HermitianOperator::projector(basis_ket(2, 0)));
    const std::size_t down = p.add_effect(0.5 * HermitianOperator::projector(basis_ket(2, 1)));
    p.add_relation({RelationKind::povm, {half, half}, {}});
    p.add_relation({RelationKind::povm, {half, up, down}, {}});
    return p;
}

/**
 * {(p/2)I, ((1−p)/2)I, (q/2)I, ((1−q)/2)I} with both pairwise
 * coarse-grainings, which share the effect ½I.
 */
inline AssignmentProblem coarse_grain_paradox_problem(double prob = 1.0 / 3.0, double q = 0.25,
                                                      AssignmentMode mode = AssignmentMode::deterministic) {
    for (double x : {prob, q}) {
        if (!(x > 0.0 && x < 1.0) || x == 0.5) {
            throw Error(ErrorCode::InvalidArgument, "p and q must lie in (0, 1) and differ from 1/2");
        }
    }
    if (prob == q) throw Error(ErrorCode::InvalidArgument, "p and q must differ");
    AssignmentProblem p(mode);
    const std::size_t a = p.add_effect(scalar(prob / 2));
    const std::size_t b = p.add_effect(scalar((1 - prob) / 2));
    const std::size_t c = p.add_effect(scalar(q / 2));
    const std::size_t d = p.add_effect(scalar((1 - q) / 2));
    const std::size_t half = p.add_effect(scalar(0.5));
    p.add_relation({RelationKind::povm, {a, b, c, d}, {}});
    p.add_relation({RelationKind::povm, {half, c, d}, {}});
    p.add_relation({RelationKind::povm, {a, b, half}, {}});
    p.add_relation({RelationKind::sum, {half, a, b}, {}});
    p.add_relation({RelationKind::sum, {half, c, d}, {}});
    return p;
}

/// {(2/3)Π₁, (2/3)Π₂, (2/3)Π₃} for the trine projectors.
inline AssignmentProblem trine_problem(AssignmentMode mode = AssignmentMode::spectral) {
    AssignmentProblem p(mode);
    std::vector<std::size_t> idx;
    for (const auto &pr : trine_projectors()) idx.push_back(p.add_effect((2.0 / 3.0) * pr));
    p.add_relation({RelationKind::povm, idx, {}});
    return p;
}

/// Eigenprojectors of σx, σy, σz, in the order +x, −x, +y, −y, +z, −z.
inline std::vector<HermitianOperator> pauli_projectors() {
    using std::numbers::pi;
    return {HermitianOperator::projector(qubit_ket(pi / 2, 0.0)),
            HermitianOperator::projector(qubit_ket(pi / 2, pi)),
            HermitianOperator::projector(qubit_ket(pi / 2, pi / 2)),
            HermitianOperator::projector(qubit_ket(pi / 2, 3 * pi / 2)),
            HermitianOperator::projector(qubit_ket(0.0, 0.0)),
            HermitianOperator::projector(qubit_ket(pi, 0.0))};
}

/// The six Pauli eigenprojectors with one resolution of identity per basis.
inline AssignmentProblem pauli_projector_problem(AssignmentMode mode = AssignmentMode::deterministic) {
    AssignmentProblem p(mode);
    std::vector<std::size_t> idx;
    for (const auto &pr : pauli_projectors()) idx.push_back(p.add_effect(pr));
    for (std::size_t b = 0; b < 3; ++b) p.add_relation({RelationKind::povm, {idx[2 * b], idx[2 * b + 1]}, {}});
    return p;
}

} // namespace ncwb
