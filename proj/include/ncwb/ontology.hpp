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
 * Finite ontological models: empirical adequacy, outcome determinism,
 * preparation and measurement noncontextuality, and the ontological
 * extension that trades indeterministic responses for deterministic ones on
 * a uniformly distributed ancilla interval.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncwb/measurements.hpp"
#include "ncwb/report.hpp"

namespace ncwb {


/**
 * (Λ, μ, ξ) over a finite ontic space. Epistemic states are keyed by
 * preparation label, response functions by measurement label and stored as
 * responses[M][k][λ].
 */
class OntologicalModel {
  public:
    using Responses = std::vector<std::vector<double>>;

    OntologicalModel(std::vector<std::string> ontic_states,
                     std::map<std::string, std::vector<double>> epistemic,
                     std::map<std::string, Responses> responses,
                     const Tolerances &tol = kDefaultTolerances)
        : ontic_(std::move(ontic_states)), epistemic_(std::move(epistemic)),
          responses_(std::move(responses)) {
        validate(tol);
    }

    [[nodiscard]] const std::vector<std::string> &ontic_states() const noexcept { return ontic_; }
    [[nodiscard]] std::size_t ontic_count() const noexcept { return ontic_.size(); }
    [[nodiscard]] const std::map<std::string, std::vector<double>> &epistemic() const noexcept {
        return epistemic_;
    }
    [[nodiscard]] const std::map<std::string, Responses> &responses() const noexcept { return responses_; }

    [[nodiscard]] const std::vector<double> &mu(const std::string &prep) const {
        auto it = epistemic_.find(prep);
        if (it == epistemic_.end()) {
            throw Error(ErrorCode::LabelMismatch, "model has no epistemic state for preparation '" + prep + "'");
        }
        return it->second;
    }
    [[nodiscard]] const Responses &xi(const std::string &meas) const {
        auto it = responses_.find(meas);
        if (it == responses_.end()) {
            throw Error(ErrorCode::LabelMismatch, "model has no response functions for measurement '" + meas + "'");
        }
        return it->second;
    }

  private:
    void validate(const Tolerances &tol) const {
        const std::size_t n = ontic_.size();
        if (n == 0) throw Error(ErrorCode::SchemaViolation, "ontic_states is empty");
        if (std::set<std::string>(ontic_.begin(), ontic_.end()).size() != n) {
            throw Error(ErrorCode::SchemaViolation, "ontic_states contains duplicates");
        }
        for (const auto &[p, mu] : epistemic_) {
            if (mu.size() != n) {
                throw Error(ErrorCode::SchemaViolation, "epistemic[" + p + "] has " +
                                                            std::to_string(mu.size()) + " entries, expected " +
                                                            std::to_string(n));
            }
            const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
            if (std::abs(total - 1.0) > tol.sum) {
                throw Error(ErrorCode::SchemaViolation,
                            "epistemic[" + p + "] sums to " + detail::fmt(total));
            }
        }
        for (const auto &[m, xi] : responses_) {
            if (xi.empty()) throw Error(ErrorCode::SchemaViolation, "responses[" + m + "] has no outcomes");
            for (std::size_t k = 0; k < xi.size(); ++k) {
                if (xi[k].size() != n) {
                    throw Error(ErrorCode::SchemaViolation,
                                "responses[" + m + "][" + std::to_string(k) + "] has wrong length");
                }
                for (std::size_t l = 0; l < n; ++l) {
                    if (xi[k][l] < -tol.sum || xi[k][l] > 1.0 + tol.sum) {
                        throw Error(ErrorCode::SchemaViolation, "responses[" + m + "][" + std::to_string(k) +
                                                                    "][" + ontic_[l] + "] outside [0, 1]");
                    }
                }
            }
            for (std::size_t l = 0; l < n; ++l) {
                double total = 0.0;
                for (const auto &row : xi) total += row[l];
                if (std::abs(total - 1.0) > tol.sum) {
                    throw Error(ErrorCode::SchemaViolation, "responses at (M=" + m + ", lambda=" + ontic_[l] +
                                                                "): outcome probabilities sum to " +
                                                                detail::fmt(total));
                }
            }
        }
    }

    std::vector<std::string> ontic_;
    std::map<std::string, std::vector<double>> epistemic_;
    std::map<std::string, Responses> responses_;
};

namespace detail {

/// Σ_λ μ(λ) f(λ), in ontic order. Shared by base and extended predictions.
inline double weighted_sum(const std::vector<double> &mu, const std::vector<double> &f) {
    double acc = 0.0;
    for (std::size_t l = 0; l < mu.size(); ++l) acc += mu[l] * f[l];
    return acc;
}

inline void require_labels(const OntologicalModel &model, const OperationalTheory &theory) {
    for (const auto &p : theory.preparations()) (void)model.mu(p.label);
    for (const auto &m : theory.measurements()) {
        if (model.xi(m.label).size() != m.povm.size()) {
            throw Error(ErrorCode::LabelMismatch, "measurement '" + m.label + "' outcome count differs");
        }
    }
}

} // namespace detail

/// residual[m][p][k] = Σ_λ μ(λ|P) ξ(k|λ,M) − p(k|M,P).
inline OperationalTheory::Table adequacy_residuals(const OntologicalModel &model,
                                                   const OperationalTheory &theory) {
    detail::require_labels(model, theory);
    OperationalTheory::Table out;
    for (std::size_t m = 0; m < theory.measurements().size(); ++m) {
        const auto &xi = model.xi(theory.measurements()[m].label);
        std::vector<std::vector<double>> rows;
        for (std::size_t p = 0; p < theory.preparations().size(); ++p) {
            const auto &mu = model.mu(theory.preparations()[p].label);
            std::vector<double> r;
            for (std::size_t k = 0; k < xi.size(); ++k) {
                r.push_back(detail::weighted_sum(mu, xi[k]) - theory.p(m, p, k));
            }
            rows.push_back(std::move(r));
        }
        out.push_back(std::move(rows));
    }
    return out;
}

inline Report empirical_adequacy(const OntologicalModel &model, const OperationalTheory &theory,
                                 double tau = kDefaultTolerances.trace) {
    const auto res = adequacy_residuals(model, theory);
    Verdict v{"empirical adequacy", true, {}, ""};
    double worst = 0.0;
    for (std::size_t m = 0; m < res.size(); ++m) {
        for (std::size_t p = 0; p < res[m].size(); ++p) {
            for (std::size_t k = 0; k < res[m][p].size(); ++k) {
                const double r = std::abs(res[m][p][k]);
                worst = std::max(worst, r);
                if (r > tau) {
                    v.passed = false;
                    v.violations.push_back("(P=" + theory.preparations()[p].label +
                                           ", M=" + theory.measurements()[m].label +
                                           ", k=" + theory.measurements()[m].povm.labels()[k] +
                                           "): residual " + detail::fmt(res[m][p][k]));
                }
            }
        }
    }
    v.detail = "max |residual| = " + detail::fmt(worst);
    Report r;
    r.subject = "empirical adequacy";
    r.verdicts.push_back(std::move(v));
    return r;
}

inline bool is_outcome_deterministic(const OntologicalModel &model, const std::string &measurement,
                                     double tau = kDefaultTolerances.eig) {
    for (const auto &row : model.xi(measurement)) {
        for (double x : row) {
            if (std::min(std::abs(x), std::abs(1.0 - x)) > tau) return false;
        }
    }
    return true;
}

/// Options for operational-equivalence detection between measurements.
struct EquivalenceOptions {
    double tau_stats = kDefaultTolerances.stats;
    double tau_response = kDefaultTolerances.stats;
    /// Also treat outcome k of M and π(k) of M' as equivalent events whenever a
    /// permutation π aligns their statistics. Off by default: events are
    /// compared under the same outcome label.
    bool allow_outcome_permutation = false;
};

namespace detail {

inline bool rows_match(const OperationalTheory &t, std::size_t a, std::size_t b,
                       const std::vector<std::size_t> &perm, double tau) {
    for (std::size_t p = 0; p < t.preparations().size(); ++p) {
        for (std::size_t k = 0; k < perm.size(); ++k) {
            if (std::abs(t.p(a, p, k) - t.p(b, p, perm[k])) > tau) return false;
        }
    }
    return true;
}

inline double response_gap(const OntologicalModel::Responses &x, const OntologicalModel::Responses &y,
                           const std::vector<std::size_t> &perm) {
    double gap = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        for (std::size_t l = 0; l < x[k].size(); ++l) {
            gap = std::max(gap, std::abs(x[k][l] - y[perm[k]][l]));
        }
    }
    return gap;
}

inline std::string perm_text(const std::vector<std::size_t> &perm) {
    std::string s;
    for (std::size_t k : perm) s += (s.empty() ? "" : ",") + std::to_string(k);
    return "[" + s + "]";
}

} // namespace detail

/**
 * Groups measurements whose table rows agree for every listed preparation
 * and checks that members of a group have identical response functions.
 */
inline Report check_measurement_noncontextual(const OntologicalModel &model, const OperationalTheory &theory,
                                              const EquivalenceOptions &opt = {}) {
    detail::require_labels(model, theory);
    const auto &ms = theory.measurements();
    const std::size_t n = ms.size();

    detail::UnionFind uf(n);
    // (a, b, permutation) triples that identify events across a pair.
    std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>> links;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (ms[a].povm.size() != ms[b].povm.size()) continue;
            std::vector<std::size_t> perm(ms[a].povm.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                if (detail::rows_match(theory, a, b, perm, opt.tau_stats)) {
                    uf.unite(a, b);
                    links.emplace_back(a, b, perm);
                }
            } while (opt.allow_outcome_permutation && std::next_permutation(perm.begin(), perm.end()));
        }
    }

    Verdict v{"measurement noncontextuality", true, {}, ""};
    std::size_t pairs = 0;
    for (const auto &[a, b, perm] : links) {
        ++pairs;
        const double gap = detail::response_gap(model.xi(ms[a].label), model.xi(ms[b].label), perm);
        if (gap > opt.tau_response) {
            v.passed = false;
            std::string what = ms[a].label + " ~ " + ms[b].label;
            if (opt.allow_outcome_permutation) what += " under outcome map " + detail::perm_text(perm);
            v.violations.push_back(what + ": response functions differ by " + detail::fmt(gap));
        }
    }
    const auto classes = uf.nontrivial_classes();
    // Transitive closure can join measurements that were not directly compared.
    for (const auto &cls : classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            for (std::size_t j = i + 1; j < cls.size(); ++j) {
                const std::size_t a = cls[i], b = cls[j];
                const bool direct = std::any_of(links.begin(), links.end(), [&](const auto &l) {
                    return std::get<0>(l) == a && std::get<1>(l) == b;
                });
                if (direct || ms[a].povm.size() != ms[b].povm.size()) continue;
                std::vector<std::size_t> id(ms[a].povm.size());
                std::iota(id.begin(), id.end(), 0);
                ++pairs;
                const double gap = detail::response_gap(model.xi(ms[a].label), model.xi(ms[b].label), id);
                if (gap > opt.tau_response) {
                    v.passed = false;
                    v.violations.push_back(ms[a].label + " ~ " + ms[b].label +
                                           " (transitively): response functions differ by " + detail::fmt(gap));
                }
            }
        }
    }
    v.detail = std::to_string(classes.size()) + " nontrivial equivalence class(es), " + std::to_string(pairs) +
               " pair(s) compared";

    Report r;
    r.subject = "measurement noncontextuality";
    r.scope_notes.push_back("operational equivalence is judged relative to the listed preparations only");
    r.verdicts.push_back(std::move(v));
    return r;
}

/**
 * Groups preparations whose table columns agree for every listed
 * measurement and checks that members of a group have identical epistemic
 * states.
 */
inline Report check_preparation_noncontextual(const OntologicalModel &model, const OperationalTheory &theory,
                                              double tau_stats = kDefaultTolerances.stats,
                                              double tau_mu = kDefaultTolerances.stats) {
    detail::require_labels(model, theory);
    const auto &ps = theory.preparations();
    const std::size_t n = ps.size();
    auto same_stats = [&](std::size_t a, std::size_t b) {
        for (std::size_t m = 0; m < theory.measurements().size(); ++m) {
            for (std::size_t k = 0; k < theory.row(m, a).size(); ++k) {
                if (std::abs(theory.p(m, a, k) - theory.p(m, b, k)) > tau_stats) return false;
            }
        }
        return true;
    };
    detail::UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (same_stats(a, b)) uf.unite(a, b);
        }
    }
    Verdict v{"preparation noncontextuality", true, {}, ""};
    const auto classes = uf.nontrivial_classes();
    for (const auto &cls : classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            for (std::size_t j = i + 1; j < cls.size(); ++j) {
                const auto &x = model.mu(ps[cls[i]].label);
                const auto &y = model.mu(ps[cls[j]].label);
                double gap = 0.0;
                for (std::size_t l = 0; l < x.size(); ++l) gap = std::max(gap, std::abs(x[l] - y[l]));
                if (gap > tau_mu) {
                    v.passed = false;
                    v.violations.push_back(ps[cls[i]].label + " ~ " + ps[cls[j]].label +
                                           ": epistemic states differ by " + detail::fmt(gap));
                }
            }
        }
    }
    v.detail = std::to_string(classes.size()) + " nontrivial equivalence class(es)";
    Report r;
    r.subject = "preparation noncontextuality";
    r.scope_notes.push_back("operational equivalence is judged relative to the listed measurements only");
    r.verdicts.push_back(std::move(v));
    return r;
}

/**
 * Outcome determinism must coincide with sharpness. A sharp but
 * indeterministic measurement violates the "sharp ⇒ deterministic"
 * direction, an unsharp but deterministic one the converse.
 */
inline Report verify_determinism_iff_sharp(const OntologicalModel &model, const OperationalTheory &theory,
                                           double tau = kDefaultTolerances.eig) {
    detail::require_labels(model, theory);
    Verdict sharp_det{"sharp implies deterministic", true, {}, ""};
    Verdict det_sharp{"deterministic implies sharp", true, {}, ""};
    std::size_t n_sharp = 0;
    for (const auto &m : theory.measurements()) {
        const bool det = is_outcome_deterministic(model, m.label, tau);
        n_sharp += m.sharp ? 1 : 0;
        if (m.sharp && !det) {
            sharp_det.passed = false;
            sharp_det.violations.push_back(m.label + ": sharp but represented indeterministically");
        }
        if (!m.sharp && det) {
            det_sharp.passed = false;
            det_sharp.violations.push_back(m.label + ": unsharp but represented deterministically");
        }
    }
    sharp_det.detail = std::to_string(n_sharp) + " sharp measurement(s)";
    det_sharp.detail = std::to_string(theory.measurements().size() - n_sharp) + " unsharp measurement(s)";
    Report r;
    r.subject = "outcome determinism iff sharpness";
    r.verdicts.push_back(std::move(sharp_det));
    r.verdicts.push_back(std::move(det_sharp));
    return r;
}

/// Half-open subinterval [lower, lower + length) of the ancilla interval [0, 1].
struct Interval {
    double lower = 0.0;
    double length = 0.0;
    [[nodiscard]] double upper() const { return lower + length; }
};

/**
 * Outcome-deterministic responses on Λ_s × [0, 1]: for every base ontic state
 * each outcome owns one interval, and the intervals tile [0, 1]. Lengths are
 * stored rather than recomputed from cut points so that the measure of each
 * interval is the base response value to the last bit.
 */
class IntervalResponse {
  public:
    IntervalResponse() = default;
    explicit IntervalResponse(std::vector<std::vector<Interval>> cells, double tol = kDefaultTolerances.sum)
        : cells_(std::move(cells)) {
        for (std::size_t s = 0; s < cells_.size(); ++s) {
            auto sorted = cells_[s];
            std::sort(sorted.begin(), sorted.end(), [](const Interval &a, const Interval &b) {
                return a.lower < b.lower || (a.lower == b.lower && a.length < b.length);
            });
            double cursor = 0.0;
            for (const auto &iv : sorted) {
                if (iv.length < -tol || std::abs(iv.lower - cursor) > tol) {
                    throw Error(ErrorCode::ConstructionFailure,
                                "intervals at ontic index " + std::to_string(s) + " do not tile [0, 1]");
                }
                cursor = iv.upper();
            }
            if (std::abs(cursor - 1.0) > tol) {
                throw Error(ErrorCode::ConstructionFailure,
                            "intervals at ontic index " + std::to_string(s) + " end at " + detail::fmt(cursor));
            }
        }
    }

    [[nodiscard]] std::size_t ontic_count() const noexcept { return cells_.size(); }
    [[nodiscard]] std::size_t outcomes() const noexcept { return cells_.empty() ? 0 : cells_.front().size(); }
    [[nodiscard]] const Interval &interval(std::size_t k, std::size_t s) const { return cells_.at(s).at(k); }
    [[nodiscard]] double length(std::size_t k, std::size_t s) const { return interval(k, s).length; }
    [[nodiscard]] const std::vector<std::vector<Interval>> &cells() const noexcept { return cells_; }

    /// ξ(k | λ_s, λ_a) ∈ {0, 1}. The topmost interval is closed at 1.
    [[nodiscard]] int value(std::size_t k, std::size_t s, double a) const {
        const auto &row = cells_.at(s);
        const Interval &iv = row.at(k);
        if (iv.length <= 0.0) return 0;
        if (a >= iv.lower && a < iv.upper()) return 1;
        if (a >= iv.upper()) {
            // Points at or beyond the last cut belong to the topmost nonempty interval.
            for (const auto &other : row) {
                if (other.length > 0.0 && other.upper() > iv.upper()) return 0;
            }
            return a <= 1.0 ? 1 : 0;
        }
        return 0;
    }

    /// Outcome k of the result is outcome perm[k] of this response.
    [[nodiscard]] IntervalResponse relabelled(const std::vector<std::size_t> &perm) const {
        std::vector<std::vector<Interval>> out;
        for (const auto &row : cells_) {
            std::vector<Interval> r;
            for (std::size_t k : perm) r.push_back(row.at(k));
            out.push_back(std::move(r));
        }
        return IntervalResponse(std::move(out));
    }

  private:
    std::vector<std::vector<Interval>> cells_;
};

/// Lebesgue measure of {λ_a : ξ_x(k|λ_s,λ_a) ≠ ξ_y(k|λ_s,λ_a)}.
inline double disagreement_measure(const IntervalResponse &x, const IntervalResponse &y, std::size_t k,
                                   std::size_t s) {
    const Interval &a = x.interval(k, s);
    const Interval &b = y.interval(k, s);
    const double overlap = std::max(0.0, std::min(a.upper(), b.upper()) - std::max(a.lower, b.lower));
    return a.length + b.length - 2.0 * overlap;
}

/// Base ontic states times a uniform ancilla on [0, 1], with interval responses.
struct ExtendedModel {
    std::vector<std::string> ontic_states;
    std::map<std::string, std::vector<double>> epistemic;
    std::map<std::string, IntervalResponse> responses;

    [[nodiscard]] const IntervalResponse &response(const std::string &m) const {
        auto it = responses.find(m);
        if (it == responses.end()) {
            throw Error(ErrorCode::LabelMismatch, "extended model has no measurement '" + m + "'");
        }
        return it->second;
    }
};

/// Cut points ω_k(λ_s) = Σ_{j≤k} ξ(j|λ_s,M); outcome k owns [ω_{k−1}, ω_k).
inline IntervalResponse interval_response(const OntologicalModel::Responses &xi) {
    const std::size_t n = xi.front().size();
    std::vector<std::vector<Interval>> cells(n);
    for (std::size_t s = 0; s < n; ++s) {
        double omega = 0.0;
        for (const auto &row : xi) {
            cells[s].push_back({omega, row[s]});
            omega += row[s];
        }
    }
    return IntervalResponse(std::move(cells));
}

inline ExtendedModel ontic_extend(const OntologicalModel &model, const std::string &measurement) {
    ExtendedModel ext{model.ontic_states(), model.epistemic(), {}};
    ext.responses.emplace(measurement, interval_response(model.xi(measurement)));
    return ext;
}

/// Extends every measurement of the model.
inline ExtendedModel ontic_extend(const OntologicalModel &model) {
    ExtendedModel ext{model.ontic_states(), model.epistemic(), {}};
    for (const auto &[label, xi] : model.responses()) ext.responses.emplace(label, interval_response(xi));
    return ext;
}

/**
 * Residuals of the extended model, integrating over the ancilla in closed
 * form: Σ_{λ_s} μ(λ_s|P)·|interval(k, λ_s)| − p(k|M,P), for the extended
 * measurements only (same indexing as the theory, absent rows left empty).
 */
inline OperationalTheory::Table extended_residuals(const ExtendedModel &ext, const OperationalTheory &theory) {
    OperationalTheory::Table out(theory.measurements().size());
    for (const auto &[label, resp] : ext.responses) {
        const auto m = theory.measurement_index(label);
        if (!m) throw Error(ErrorCode::LabelMismatch, "theory has no measurement '" + label + "'");
        if (resp.outcomes() != theory.measurements()[*m].povm.size()) {
            throw Error(ErrorCode::LabelMismatch, "outcome count differs for '" + label + "'");
        }
        for (std::size_t p = 0; p < theory.preparations().size(); ++p) {
            auto it = ext.epistemic.find(theory.preparations()[p].label);
            if (it == ext.epistemic.end()) {
                throw Error(ErrorCode::LabelMismatch, "no epistemic state for '" + theory.preparations()[p].label + "'");
            }
            std::vector<double> r;
            for (std::size_t k = 0; k < resp.outcomes(); ++k) {
                std::vector<double> lengths;
                for (std::size_t s = 0; s < resp.ontic_count(); ++s) lengths.push_back(resp.length(k, s));
                r.push_back(detail::weighted_sum(it->second, lengths) - theory.p(*m, p, k));
            }
            out[*m].push_back(std::move(r));
        }
    }
    return out;
}

inline Report extended_adequacy(const ExtendedModel &ext, const OperationalTheory &theory,
                                double tau = kDefaultTolerances.trace) {
    const auto res = extended_residuals(ext, theory);
    Verdict v{"extended empirical adequacy", true, {}, ""};
    double worst = 0.0;
    for (std::size_t m = 0; m < res.size(); ++m) {
        for (std::size_t p = 0; p < res[m].size(); ++p) {
            for (std::size_t k = 0; k < res[m][p].size(); ++k) {
                worst = std::max(worst, std::abs(res[m][p][k]));
                if (std::abs(res[m][p][k]) > tau) {
                    v.passed = false;
                    v.violations.push_back("(P=" + theory.preparations()[p].label + ", M=" +
                                           theory.measurements()[m].label + ", k=" + std::to_string(k) +
                                           "): residual " + detail::fmt(res[m][p][k]));
                }
            }
        }
    }
    v.detail = "max |residual| = " + detail::fmt(worst);
    Report r;
    r.subject = "extended empirical adequacy";
    r.verdicts.push_back(std::move(v));
    return r;
}

/**
 * Exact finite rendering of an extended model: each base ontic state is split
 * into the ancilla cells between consecutive cut points of all extended
 * measurements, weighted by cell length.
 */
inline OntologicalModel discretize(const ExtendedModel &ext) {
    std::vector<std::string> ontic;
    std::vector<std::pair<std::size_t, std::pair<double, double>>> cells;
    for (std::size_t s = 0; s < ext.ontic_states.size(); ++s) {
        std::set<double> cuts{0.0, 1.0};
        for (const auto &[label, resp] : ext.responses) {
            for (std::size_t k = 0; k < resp.outcomes(); ++k) {
                const auto &iv = resp.interval(k, s);
                if (iv.lower > 0.0 && iv.lower < 1.0) cuts.insert(iv.lower);
                if (iv.upper() > 0.0 && iv.upper() < 1.0) cuts.insert(iv.upper());
            }
        }
        for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
            const double lo = *it, hi = *std::next(it);
            if (hi - lo <= 0.0) continue;
            ontic.push_back(ext.ontic_states[s] + "|[" + detail::fmt(lo) + "," + detail::fmt(hi) + ")");
            cells.push_back({s, {lo, hi}});
        }
    }
    std::map<std::string, std::vector<double>> epistemic;
    for (const auto &[p, mu] : ext.epistemic) {
        std::vector<double> w;
        for (const auto &[s, cell] : cells) w.push_back(mu[s] * (cell.second - cell.first));
        epistemic.emplace(p, std::move(w));
    }
    std::map<std::string, OntologicalModel::Responses> responses;
    for (const auto &[label, resp] : ext.responses) {
        OntologicalModel::Responses xi(resp.outcomes());
        for (const auto &[s, cell] : cells) {
            const double mid = 0.5 * (cell.first + cell.second);
            for (std::size_t k = 0; k < resp.outcomes(); ++k) {
                xi[k].push_back(static_cast<double>(resp.value(k, s, mid)));
            }
        }
        responses.emplace(label, std::move(xi));
    }
    return OntologicalModel(std::move(ontic), std::move(epistemic), std::move(responses));
}

/// Fair-coin measurement M and its bit-flipped twin M′ on one system preparation.
inline OperationalTheory fair_coin_pair_theory() {
    const auto half = HermitianOperator((0.5) * Matrix::Identity(2, 2));
    const Povm coin = Povm::from_operators({half, half});
    return build_quantum_theory({{"P", DensityOperator::maximally_mixed(2)}},
                                {{"M", coin, false}, {"M'", coin, false}});
}

/// One ontic state with ξ(·|s, M) = ξ(·|s, M′) = (½, ½).
inline OntologicalModel fair_coin_pair_model() {
    return OntologicalModel({"s"}, {{"P", {1.0}}}, {{"M", {{0.5}, {0.5}}}, {"M'", {{0.5}, {0.5}}}});
}

/// Deterministic extension of M, with M′ given the relabelled extension.
inline ExtendedModel bit_flip_extension() {
    ExtendedModel ext = ontic_extend(fair_coin_pair_model(), "M");
    ext.responses.emplace("M'", ext.response("M").relabelled({1, 0}));
    return ext;
}

/**
 * The bit-flip demonstration: M and M′ (M with its outcomes swapped) share
 * the system-level responses (½, ½), yet the deterministic extension of M′
 * is the relabelled extension of M, and the two disagree almost everywhere
 * on the ancilla.
 */
inline Report appendix_c_demo(const Tolerances &tol = kDefaultTolerances) {
    const OperationalTheory theory = fair_coin_pair_theory();
    const OntologicalModel system = fair_coin_pair_model();

    Report r;
    r.subject = "bit-flipped fair coin: extension breaks equivalence";

    Verdict same{"system-level responses equal", true, {}, ""};
    const double gap = detail::response_gap(system.xi("M"), system.xi("M'"), {0, 1});
    same.passed = gap <= tol.stats && empirical_adequacy(system, theory, tol.trace).passed() &&
                  check_measurement_noncontextual(system, theory).passed();
    same.detail = "xi(.|s,M) = xi(.|s,M') = (1/2, 1/2)";
    if (!same.passed) same.violations.push_back("system responses differ by " + detail::fmt(gap));

    const ExtendedModel ext = bit_flip_extension();

    Verdict deterministic{"extended responses outcome-deterministic", true, {}, ""};
    for (const auto &[label, resp] : ext.responses) {
        for (double a : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
            int total = 0;
            for (std::size_t k = 0; k < resp.outcomes(); ++k) total += resp.value(k, 0, a);
            if (total != 1) {
                deterministic.passed = false;
                deterministic.violations.push_back(label + " at lambda_a=" + detail::fmt(a));
            }
        }
    }

    Verdict differ{"extended responses differ on a full-measure set", true, {}, ""};
    for (std::size_t k = 0; k < 2; ++k) {
        const double measure = disagreement_measure(ext.response("M"), ext.response("M'"), k, 0);
        differ.detail += "outcome " + std::to_string(k) + ": measure " + detail::fmt(measure) + "; ";
        if (std::abs(measure - 1.0) > tol.sum) {
            differ.passed = false;
            differ.violations.push_back("outcome " + std::to_string(k) + " disagrees only on measure " +
                                        detail::fmt(measure));
        }
    }

    Verdict adequate_m{"extension of M adequate", true, {}, ""};
    Verdict adequate_mp{"extension of M' adequate", true, {}, ""};
    for (auto [label, verdict] : {std::pair{"M", &adequate_m}, std::pair{"M'", &adequate_mp}}) {
        ExtendedModel single{ext.ontic_states, ext.epistemic, {{label, ext.response(label)}}};
        const Report a = extended_adequacy(single, theory, tol.trace);
        verdict->passed = a.passed();
        verdict->detail = a.verdicts.front().detail;
        verdict->violations = a.verdicts.front().violations;
    }

    Verdict contextual{"extended model fails measurement noncontextuality", true, {}, ""};
    const Report nc = check_measurement_noncontextual(discretize(ext), theory, {tol.stats, tol.stats, false});
    contextual.passed = !nc.passed();
    contextual.detail = "finite cell rendering of the extension: ";
    for (const auto &line : nc.verdicts.front().violations) contextual.detail += line + "; ";
    if (!contextual.passed) contextual.violations.push_back("extended model unexpectedly noncontextual");

    r.verdicts.push_back(std::move(same));
    r.verdicts.push_back(std::move(deterministic));
    r.verdicts.push_back(std::move(differ));
    r.verdicts.push_back(std::move(adequate_m));
    r.verdicts.push_back(std::move(adequate_mp));
    r.verdicts.push_back(std::move(contextual));
    return r;
}

} // namespace ncwb
