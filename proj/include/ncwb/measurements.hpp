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
 * POVM algebra (post-processing, coarse-graining, convex mixtures, Naimark
 * extension and reduction) and finite quantum operational theories.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncwb/operator.hpp"
#include "ncwb/report.hpp"

namespace ncwb {

/// Ordered list of effects summing to the identity, with outcome labels.
class Povm {
  public:
    explicit Povm(std::vector<Effect> effects, std::vector<std::string> labels = {},
                  double tol = kDefaultTolerances.sum)
        : effects_(std::move(effects)), labels_(std::move(labels)) {
        if (effects_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "a POVM needs at least one effect");
        }
        if (labels_.empty()) {
            for (std::size_t k = 0; k < effects_.size(); ++k) {
                labels_.push_back(std::to_string(k));
            }
        }
        if (labels_.size() != effects_.size()) {
            throw Error(ErrorCode::InvalidArgument, "label count differs from effect count");
        }
        if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
            throw Error(ErrorCode::InvalidArgument, "outcome labels must be distinct");
        }
        const int d = effects_.front().dim();
        Matrix total = Matrix::Zero(d, d);
        for (const auto &e : effects_) {
            if (e.dim() != d) {
                throw Error(ErrorCode::DimensionMismatch, "POVM effects of differing dimension");
            }
            total += e.matrix();
        }
        const double residue = max_abs(total - Matrix::Identity(d, d));
        if (residue > tol) {
            throw Error(ErrorCode::OutOfRange,
                        "effects do not sum to identity (residue " + std::to_string(residue) + ")");
        }
    }

    /// Convenience: builds effects from operators.
    static Povm from_operators(const std::vector<HermitianOperator> &ops,
                               std::vector<std::string> labels = {}) {
        std::vector<Effect> effects;
        effects.reserve(ops.size());
        for (const auto &op : ops) {
            effects.emplace_back(op);
        }
        return Povm(std::move(effects), std::move(labels));
    }

    /// Projective measurement in the orthonormal basis given by the columns of `basis`.
    static Povm from_basis(const Matrix &basis) {
        std::vector<HermitianOperator> ops;
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            ops.push_back(HermitianOperator::projector(basis.col(k)));
        }
        return from_operators(ops);
    }

    [[nodiscard]] std::size_t size() const noexcept { return effects_.size(); }
    [[nodiscard]] int dim() const noexcept { return effects_.front().dim(); }
    [[nodiscard]] const Effect &effect(std::size_t k) const { return effects_.at(k); }
    [[nodiscard]] const std::vector<Effect> &effects() const noexcept { return effects_; }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }

    [[nodiscard]] bool is_sharp(double tol = kDefaultTolerances.sum) const {
        return std::all_of(effects_.begin(), effects_.end(),
                           [tol](const Effect &e) { return is_projector(e.op(), tol); });
    }

  private:
    std::vector<Effect> effects_;
    std::vector<std::string> labels_;
};

/// Elementwise comparison of two POVMs with the same outcome count.
inline double povm_distance(const Povm &a, const Povm &b) {
    if (a.size() != b.size() || a.dim() != b.dim()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, distance(a.effect(k).op(), b.effect(k).op()));
    }
    return worst;
}

/// Conditional distribution s(j|k): rows are outputs j, columns inputs k.
class StochasticMap {
  public:
    explicit StochasticMap(Eigen::MatrixXd rows, double tol = kDefaultTolerances.sum)
        : rows_(std::move(rows)) {
        if (rows_.rows() < 1 || rows_.cols() < 1) {
            throw Error(ErrorCode::NotStochastic, "empty stochastic map");
        }
        if (rows_.minCoeff() < -tol || rows_.maxCoeff() > 1.0 + tol) {
            throw Error(ErrorCode::NotStochastic, "entry outside [0, 1]");
        }
        for (Eigen::Index k = 0; k < rows_.cols(); ++k) {
            if (std::abs(rows_.col(k).sum() - 1.0) > tol) {
                throw Error(ErrorCode::NotStochastic,
                            "column " + std::to_string(k) + " does not sum to 1");
            }
        }
    }

    static StochasticMap identity(std::size_t n) {
        return StochasticMap(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                       static_cast<Eigen::Index>(n)));
    }

    [[nodiscard]] std::size_t outputs() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
    [[nodiscard]] std::size_t inputs() const noexcept { return static_cast<std::size_t>(rows_.cols()); }
    [[nodiscard]] double operator()(std::size_t j, std::size_t k) const {
        return rows_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    [[nodiscard]] const Eigen::MatrixXd &matrix() const noexcept { return rows_; }

    /// (t ∘ s)(j|k) = Σ_m t(j|m) s(m|k): apply `this` first, then `after`.
    [[nodiscard]] StochasticMap then(const StochasticMap &after) const {
        if (after.inputs() != outputs()) {
            throw Error(ErrorCode::DimensionMismatch, "stochastic maps do not compose");
        }
        return StochasticMap(after.rows_ * rows_);
    }

  private:
    Eigen::MatrixXd rows_;
};

/// E'_j = Σ_k s(j|k) E_k.
inline Povm post_process(const Povm &m, const StochasticMap &s) {
    if (s.inputs() != m.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "stochastic map has " + std::to_string(s.inputs()) + " inputs, POVM has " +
                        std::to_string(m.size()) + " outcomes");
    }
    const int d = m.dim();
    std::vector<Effect> out;
    for (std::size_t j = 0; j < s.outputs(); ++j) {
        Matrix e = Matrix::Zero(d, d);
        for (std::size_t k = 0; k < m.size(); ++k) {
            e += s(j, k) * m.effect(k).matrix();
        }
        out.emplace_back(HermitianOperator(std::move(e)));
    }
    return Povm(std::move(out));
}

/// Indicator stochastic map sending every outcome in block b to output b.
inline StochasticMap partition_map(std::size_t outcomes,
                                   const std::vector<std::vector<std::size_t>> &partition) {
    std::vector<int> owner(outcomes, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        if (partition[b].empty()) {
            throw Error(ErrorCode::InvalidPartition, "empty block " + std::to_string(b));
        }
        for (std::size_t k : partition[b]) {
            if (k >= outcomes) {
                throw Error(ErrorCode::InvalidPartition, "outcome index out of range");
            }
            if (owner[k] != -1) {
                throw Error(ErrorCode::InvalidPartition,
                            "outcome " + std::to_string(k) + " appears in two blocks");
            }
            owner[k] = static_cast<int>(b);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
        throw Error(ErrorCode::InvalidPartition, "partition does not cover every outcome");
    }
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(partition.size()),
                                                 static_cast<Eigen::Index>(outcomes));
    for (std::size_t k = 0; k < outcomes; ++k) {
        rows(owner[k], static_cast<Eigen::Index>(k)) = 1.0;
    }
    return StochasticMap(std::move(rows));
}

/**
 * Coarse-graining by blocks of outcome indices. The block effect is the plain
 * sum Σ_{k∈S} E_k; block labels join the member labels with '+'.
 */
inline Povm coarse_grain(const Povm &m, const std::vector<std::vector<std::size_t>> &partition) {
    const StochasticMap s = partition_map(m.size(), partition);
    const int d = m.dim();
    std::vector<Effect> out;
    std::vector<std::string> labels;
    for (const auto &block : partition) {
        Matrix e = Matrix::Zero(d, d);
        std::string label;
        for (std::size_t k : block) {
            e += m.effect(k).matrix();
            label += (label.empty() ? "" : "+") + m.labels()[k];
        }
        out.emplace_back(HermitianOperator(std::move(e)));
        labels.push_back(std::move(label));
    }
    return Povm(std::move(out), std::move(labels));
}

/// Coarse-graining by blocks of outcome labels.
inline Povm coarse_grain(const Povm &m, const std::vector<std::vector<std::string>> &blocks) {
    std::vector<std::vector<std::size_t>> partition;
    for (const auto &block : blocks) {
        std::vector<std::size_t> idx;
        for (const auto &label : block) {
            auto it = std::find(m.labels().begin(), m.labels().end(), label);
            if (it == m.labels().end()) {
                throw Error(ErrorCode::InvalidPartition, "unknown outcome label '" + label + "'");
            }
            idx.push_back(static_cast<std::size_t>(it - m.labels().begin()));
        }
        partition.push_back(std::move(idx));
    }
    return coarse_grain(m, partition);
}

/// G_k = Σ_a w_a E_k^(a) over POVMs sharing dimension and labels.
inline Povm convex_mix(const std::vector<Povm> &ms, const std::vector<double> &w,
                       double tol = kDefaultTolerances.sum) {
    if (ms.empty() || ms.size() != w.size()) {
        throw Error(ErrorCode::WeightError, "need one weight per POVM");
    }
    if (*std::min_element(w.begin(), w.end()) < 0.0 ||
        std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) > tol) {
        throw Error(ErrorCode::WeightError, "weights must be nonnegative and sum to 1");
    }
    for (const auto &m : ms) {
        if (m.dim() != ms.front().dim() || m.size() != ms.front().size()) {
            throw Error(ErrorCode::DimensionMismatch, "mixed POVMs differ in dimension or outcome count");
        }
        if (m.labels() != ms.front().labels()) {
            throw Error(ErrorCode::DimensionMismatch, "mixed POVMs differ in outcome labels");
        }
    }
    const int d = ms.front().dim();
    std::vector<Effect> out;
    for (std::size_t k = 0; k < ms.front().size(); ++k) {
        Matrix g = Matrix::Zero(d, d);
        for (std::size_t a = 0; a < ms.size(); ++a) {
            g += w[a] * ms[a].effect(k).matrix();
        }
        out.emplace_back(HermitianOperator(std::move(g)));
    }
    return Povm(std::move(out), ms.front().labels());
}

/**
 * Partial trace of (I_s ⊗ ρ_a)·X over the ancilla. Index convention: the
 * system index varies slowest, i.e. row (i, a) is i * ancilla_dim + a.
 */
inline Matrix trace_out_ancilla(const Matrix &joint, const Matrix &rho_a, int system_dim) {
    const int da = static_cast<int>(rho_a.rows());
    if (joint.rows() != static_cast<Eigen::Index>(system_dim) * da) {
        throw Error(ErrorCode::DimensionMismatch, "joint dimension is not system_dim * ancilla_dim");
    }
    Matrix out = Matrix::Zero(system_dim, system_dim);
    for (int i = 0; i < system_dim; ++i) {
        for (int j = 0; j < system_dim; ++j) {
            Complex acc = 0.0;
            for (int a = 0; a < da; ++a) {
                for (int b = 0; b < da; ++b) {
                    acc += rho_a(a, b) * joint(i * da + b, j * da + a);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

/**
 * Effective system POVM of a joint measurement with the ancilla prepared in
 * ρ_a. Zero effects are kept unless `drop_zero_effects` is set.
 */
inline Povm reduce(const Povm &joint, const DensityOperator &rho_a, bool drop_zero_effects = false,
                   double tol = kDefaultTolerances.sum) {
    const int da = rho_a.dim();
    if (joint.dim() % da != 0) {
        throw Error(ErrorCode::DimensionMismatch, "ancilla dimension does not divide joint dimension");
    }
    const int ds = joint.dim() / da;
    std::vector<Effect> out;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < joint.size(); ++k) {
        Matrix e = trace_out_ancilla(joint.effect(k).matrix(), rho_a.matrix(), ds);
        if (drop_zero_effects && max_abs(e) < tol) {
            continue;
        }
        out.emplace_back(HermitianOperator(std::move(e)));
        labels.push_back(joint.labels()[k]);
    }
    return Povm(std::move(out), std::move(labels));
}

/// A projective measurement on system ⊗ ancilla together with an ancilla state.
struct NaimarkExtension {
    DensityOperator ancilla_state;
    Povm joint_pvm;
    int system_dim;
    int ancilla_dim;

    [[nodiscard]] Povm reduced(bool drop_zero_effects = false) const {
        return reduce(joint_pvm, ancilla_state, drop_zero_effects);
    }

    /// Max-norm distance between the reduction and `target`; infinity if
    /// outcome counts differ or the joint measurement is not projective.
    [[nodiscard]] double residue(const Povm &target, bool drop_zero_effects = false,
                                 double tol = kDefaultTolerances.sum) const {
        if (!joint_pvm.is_sharp(tol)) {
            return std::numeric_limits<double>::infinity();
        }
        return povm_distance(reduced(drop_zero_effects), target);
    }
};

/// The two distinct extensions of the fair-coin POVM {I/2, I/2}.
inline std::pair<NaimarkExtension, NaimarkExtension> fair_coin_naimark_pair() {
    const auto trine = trine_projectors();
    Matrix pi_sa = Matrix::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
        const Vector a = basis_ket(3, i);
        pi_sa += kron(trine[static_cast<std::size_t>(i)].matrix(), a * a.adjoint());
    }
    const Matrix id6 = Matrix::Identity(6, 6);
    NaimarkExtension first{
        DensityOperator::maximally_mixed(3),
        Povm::from_operators({HermitianOperator(pi_sa), HermitianOperator(id6 - pi_sa)}),
        2, 3};

    std::vector<HermitianOperator> ancilla_pvm;
    for (int i = 0; i < 3; ++i) {
        const Vector a = basis_ket(3, i);
        ancilla_pvm.emplace_back(kron(Matrix::Identity(2, 2), Matrix(a * a.adjoint())));
    }
    Matrix sigma = Matrix::Zero(3, 3);
    sigma(0, 0) = 0.5;
    sigma(1, 1) = 0.5;
    NaimarkExtension second{DensityOperator(std::move(sigma)), Povm::from_operators(ancilla_pvm),
                            2, 3};
    return {std::move(first), std::move(second)};
}

/**
 * Isometric dilation V|ψ⟩ = Σ_k (√E_k|ψ⟩) ⊗ |k⟩, completed to a unitary U on
 * system ⊗ ancilla with U(|ψ⟩⊗|0⟩) = V|ψ⟩. The joint PVM is
 * Π_k = U†(I ⊗ |k⟩⟨k|)U and the ancilla starts in |0⟩⟨0|.
 */
inline NaimarkExtension naimark_extend(const Povm &m, double tol = kDefaultTolerances.sum) {
    const int d = m.dim();
    const int n = static_cast<int>(m.size());
    const int big = d * n;

    Matrix iso = Matrix::Zero(big, d);
    for (int k = 0; k < n; ++k) {
        const Matrix root = psd_sqrt(m.effect(static_cast<std::size_t>(k)).op());
        for (int i = 0; i < d; ++i) {
            iso.row(i * n + k) = root.row(i);
        }
    }

    // Orthonormal complement of the isometry's range.
    Eigen::HouseholderQR<Matrix> qr(iso);
    const Matrix q = qr.householderQ() * Matrix::Identity(big, big);
    Matrix u = Matrix::Zero(big, big);
    int next = d;
    for (int col = 0; col < big; ++col) {
        if (col % n == 0) {
            u.col(col) = iso.col(col / n);
        } else {
            u.col(col) = q.col(next++);
        }
    }
    if (max_abs(u.adjoint() * u - Matrix::Identity(big, big)) > tol) {
        throw Error(ErrorCode::NumericalFailure, "dilation is not unitary within tolerance");
    }

    std::vector<HermitianOperator> pvm;
    for (int k = 0; k < n; ++k) {
        const Vector a = basis_ket(n, k);
        const Matrix proj = kron(Matrix::Identity(d, d), Matrix(a * a.adjoint()));
        pvm.emplace_back(u.adjoint() * proj * u);
    }
    NaimarkExtension ext{DensityOperator::pure(basis_ket(n, 0)), Povm::from_operators(pvm, m.labels()),
                         d, n};
    const double res = ext.residue(m);
    if (!(res <= tol)) {
        throw Error(ErrorCode::NumericalFailure, "dilation reconstruction residue " + std::to_string(res));
    }
    return ext;
}

/**
 * A sharp measurement plus a two-output post-processing whose first output
 * (j₀ = 0) realizes a given effect: s(j₀|i) = s_i over its spectral resolution.
 */
struct SpectralRealization {
    Povm pvm;
    StochasticMap map;
    std::size_t distinguished_outcome = 0;
    /// Some s_i lies strictly inside (0, 1): the post-processing is intrinsically random.
    bool intrinsically_random = false;
};

inline SpectralRealization spectral_realization(const Effect &e,
                                                const Tolerances &tol = kDefaultTolerances) {
    const SpectralResolution res = spectral_decompose(e.op(), tol);
    const auto n = static_cast<Eigen::Index>(res.size());
    Eigen::MatrixXd rows(2, n);
    bool random = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = std::clamp(res.eigenvalues[static_cast<std::size_t>(i)], 0.0, 1.0);
        rows(0, i) = s;
        rows(1, i) = 1.0 - s;
        random = random || (s > tol.eig && s < 1.0 - tol.eig);
    }
    return {Povm::from_operators(res.projectors), StochasticMap(std::move(rows)), 0, random};
}

struct Preparation {
    std::string label;
    DensityOperator rho;
};

struct Measurement {
    std::string label;
    Povm povm;
    bool sharp = false;
};

/**
 * Finite preparations, finite measurements and the outcome table
 * p(k|M,P), stored as table[m][p][k].
 */
class OperationalTheory {
  public:
    using Table = std::vector<std::vector<std::vector<double>>>;

    OperationalTheory(std::vector<Preparation> preparations, std::vector<Measurement> measurements,
                      Table table, const Tolerances &tol = kDefaultTolerances)
        : preparations_(std::move(preparations)), measurements_(std::move(measurements)),
          table_(std::move(table)) {
        validate(tol);
    }

    [[nodiscard]] int dim() const { return preparations_.front().rho.dim(); }
    [[nodiscard]] const std::vector<Preparation> &preparations() const noexcept { return preparations_; }
    [[nodiscard]] const std::vector<Measurement> &measurements() const noexcept { return measurements_; }
    [[nodiscard]] const Table &table() const noexcept { return table_; }
    [[nodiscard]] double p(std::size_t m, std::size_t prep, std::size_t k) const {
        return table_.at(m).at(prep).at(k);
    }
    [[nodiscard]] const std::vector<double> &row(std::size_t m, std::size_t prep) const {
        return table_.at(m).at(prep);
    }

    [[nodiscard]] std::optional<std::size_t> preparation_index(const std::string &label) const {
        for (std::size_t i = 0; i < preparations_.size(); ++i) {
            if (preparations_[i].label == label) return i;
        }
        return std::nullopt;
    }
    [[nodiscard]] std::optional<std::size_t> measurement_index(const std::string &label) const {
        for (std::size_t i = 0; i < measurements_.size(); ++i) {
            if (measurements_[i].label == label) return i;
        }
        return std::nullopt;
    }

  private:
    void validate(const Tolerances &tol) const {
        if (preparations_.empty() || measurements_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "theory needs preparations and measurements");
        }
        const int d = preparations_.front().rho.dim();
        std::set<std::string> seen;
        for (const auto &p : preparations_) {
            if (p.rho.dim() != d) throw Error(ErrorCode::DimensionMismatch, "preparation " + p.label);
            if (!seen.insert(p.label).second) {
                throw Error(ErrorCode::InvalidArgument, "duplicate preparation label " + p.label);
            }
        }
        seen.clear();
        for (const auto &m : measurements_) {
            if (m.povm.dim() != d) throw Error(ErrorCode::DimensionMismatch, "measurement " + m.label);
            if (!seen.insert(m.label).second) {
                throw Error(ErrorCode::InvalidArgument, "duplicate measurement label " + m.label);
            }
        }
        if (table_.size() != measurements_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "table has wrong number of measurement rows");
        }
        for (std::size_t m = 0; m < measurements_.size(); ++m) {
            if (table_[m].size() != preparations_.size()) {
                throw Error(ErrorCode::DimensionMismatch, "table rows for " + measurements_[m].label);
            }
            for (std::size_t p = 0; p < preparations_.size(); ++p) {
                const auto &r = table_[m][p];
                const std::string where = "(" + measurements_[m].label + ", " + preparations_[p].label + ")";
                if (r.size() != measurements_[m].povm.size()) {
                    throw Error(ErrorCode::DimensionMismatch, "table entry " + where + " outcome count");
                }
                double total = 0.0;
                for (std::size_t k = 0; k < r.size(); ++k) {
                    if (r[k] < -tol.trace || r[k] > 1.0 + tol.trace) {
                        throw Error(ErrorCode::OutOfRange, "table entry " + where + " outside [0, 1]");
                    }
                    const double q = born(preparations_[p].rho, measurements_[m].povm.effect(k), tol.trace);
                    if (std::abs(q - r[k]) > tol.trace) {
                        throw Error(ErrorCode::OutOfRange, "table entry " + where + " disagrees with Born rule");
                    }
                    total += r[k];
                }
                if (std::abs(total - 1.0) > tol.sum) {
                    throw Error(ErrorCode::OutOfRange, "table entry " + where + " does not sum to 1");
                }
            }
        }
    }

    std::vector<Preparation> preparations_;
    std::vector<Measurement> measurements_;
    Table table_;
};

/// Born table for labelled preparations and measurements; `sharp` flags are recomputed.
inline OperationalTheory build_quantum_theory(std::vector<Preparation> preps,
                                              std::vector<Measurement> meas,
                                              const Tolerances &tol = kDefaultTolerances) {
    if (preps.empty() || meas.empty()) {
        throw Error(ErrorCode::InvalidArgument, "theory needs preparations and measurements");
    }
    const int d = preps.front().rho.dim();
    OperationalTheory::Table table;
    for (auto &m : meas) {
        if (m.povm.dim() != d) {
            throw Error(ErrorCode::DimensionMismatch, "measurement " + m.label + " has wrong dimension");
        }
        m.sharp = m.povm.is_sharp(tol.sum);
        std::vector<std::vector<double>> rows;
        for (const auto &p : preps) {
            if (p.rho.dim() != d) {
                throw Error(ErrorCode::DimensionMismatch, "preparation " + p.label + " has wrong dimension");
            }
            std::vector<double> r;
            for (const auto &e : m.povm.effects()) {
                r.push_back(born(p.rho, e, tol.trace));
            }
            rows.push_back(std::move(r));
        }
        table.push_back(std::move(rows));
    }
    return OperationalTheory(std::move(preps), std::move(meas), std::move(table), tol);
}

/// Unlabelled variant: preparations "P0", "P1", ...; measurements "M0", "M1", ...
inline OperationalTheory build_quantum_theory(const std::vector<DensityOperator> &states,
                                              const std::vector<Povm> &povms,
                                              const Tolerances &tol = kDefaultTolerances) {
    std::vector<Preparation> preps;
    for (std::size_t i = 0; i < states.size(); ++i) {
        preps.push_back({"P" + std::to_string(i), states[i]});
    }
    std::vector<Measurement> meas;
    for (std::size_t i = 0; i < povms.size(); ++i) {
        meas.push_back({"M" + std::to_string(i), povms[i], false});
    }
    return build_quantum_theory(std::move(preps), std::move(meas), tol);
}

/**
 * Checks the two preconditions used for deriving determinism of sharp
 * measurements: every outcome of every sharp measurement has a preparation
 * making it certain, and the uniform mixtures over outcomes of those
 * certifying preparations agree on every listed measurement.
 */
inline Report verify_p1(const OperationalTheory &theory, double tau = kDefaultTolerances.stats) {
    Report report;
    report.subject = "P1: certainty preparations for sharp measurements";
    report.scope_notes.push_back(
        "indistinguishability of mixtures is checked against the listed measurements only");

    Verdict certainty{"outcome certainty", true, {}, ""};
    // Per sharp measurement: the statistics of the uniform mixture over outcomes.
    std::vector<std::pair<std::size_t, std::vector<double>>> mixtures;
    for (std::size_t m = 0; m < theory.measurements().size(); ++m) {
        const auto &meas = theory.measurements()[m];
        if (!meas.sharp) continue;
        bool complete = true;
        std::vector<std::vector<std::size_t>> certifiers(meas.povm.size());
        for (std::size_t k = 0; k < meas.povm.size(); ++k) {
            for (std::size_t p = 0; p < theory.preparations().size(); ++p) {
                if (theory.p(m, p, k) >= 1.0 - tau) certifiers[k].push_back(p);
            }
            if (certifiers[k].empty()) {
                complete = false;
                certainty.passed = false;
                certainty.violations.push_back("(" + meas.label + ", " + meas.povm.labels()[k] +
                                               "): no preparation makes this outcome certain");
            }
        }
        if (!complete) continue;

        std::vector<double> stats;
        for (std::size_t m2 = 0; m2 < theory.measurements().size(); ++m2) {
            for (std::size_t k2 = 0; k2 < theory.measurements()[m2].povm.size(); ++k2) {
                double acc = 0.0;
                for (const auto &cert : certifiers) {
                    double inner = 0.0;
                    for (std::size_t p : cert) inner += theory.p(m2, p, k2);
                    acc += inner / static_cast<double>(cert.size());
                }
                stats.push_back(acc / static_cast<double>(certifiers.size()));
            }
        }
        mixtures.emplace_back(m, std::move(stats));
    }

    Verdict mixing{"mixture indistinguishability", true, {}, ""};
    for (std::size_t a = 0; a < mixtures.size(); ++a) {
        for (std::size_t b = a + 1; b < mixtures.size(); ++b) {
            double gap = 0.0;
            for (std::size_t i = 0; i < mixtures[a].second.size(); ++i) {
                gap = std::max(gap, std::abs(mixtures[a].second[i] - mixtures[b].second[i]));
            }
            if (gap > tau) {
                mixing.passed = false;
                mixing.violations.push_back(theory.measurements()[mixtures[a].first].label + " vs " +
                                            theory.measurements()[mixtures[b].first].label +
                                            ": mixtures differ by " + std::to_string(gap));
            }
        }
    }
    mixing.detail = std::to_string(mixtures.size()) + " sharp measurement(s) compared";
    report.verdicts.push_back(std::move(certainty));
    report.verdicts.push_back(std::move(mixing));
    return report;
}

} // namespace ncwb
