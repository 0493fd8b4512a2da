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
 * Discrete Wigner representation of a single qutrit and the noncontextual
 * ontological model it induces on the stabilizer fragment.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ncwb/assign.hpp"
#include "ncwb/measurements.hpp"
#include "ncwb/ontology.hpp"

namespace ncwb::wigner {

inline constexpr int kDim = 3;
inline constexpr int kPoints = kDim * kDim;

/// A point (q, p) of the discrete phase space Z₃ × Z₃.
struct PhasePoint {
    int q = 0;
    int p = 0;

    [[nodiscard]] int index() const { return kDim * q + p; }
    [[nodiscard]] std::string label() const { return "(" + std::to_string(q) + "," + std::to_string(p) + ")"; }
    static PhasePoint from_index(int i) { return {i / kDim, i % kDim}; }
};

using PhaseSpaceFunction = std::array<double, kPoints>;

inline Complex omega_power(int k) {
    const int m = ((k % kDim) + kDim) % kDim;
    return std::polar(1.0, 2.0 * std::numbers::pi * m / kDim);
}

/// Shift X|j⟩ = |j+1⟩.
inline Matrix shift() {
    Matrix x = Matrix::Zero(kDim, kDim);
    for (int j = 0; j < kDim; ++j) x((j + 1) % kDim, j) = 1.0;
    return x;
}

/// Clock Z|j⟩ = ω^j|j⟩.
inline Matrix clock() {
    Matrix z = Matrix::Zero(kDim, kDim);
    for (int j = 0; j < kDim; ++j) z(j, j) = omega_power(j);
    return z;
}

/// Parity P|j⟩ = |−j⟩, the phase-point operator at the origin.
inline Matrix parity() {
    Matrix par = Matrix::Zero(kDim, kDim);
    for (int j = 0; j < kDim; ++j) par((kDim - j) % kDim, j) = 1.0;
    return par;
}

inline Matrix matrix_power(const Matrix &m, int n) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < n; ++i) out = out * m;
    return out;
}

/**
 * The nine operators A(q, p) = D(q, p) P D(q, p)† with D(q, p) = Z^p X^q.
 * The phase of the displacement cancels under conjugation, so no choice of
 * symmetric ordering is needed.
 */
class PhasePointOperatorSet {
  public:
    PhasePointOperatorSet() {
        const Matrix x = shift(), z = clock(), par = parity();
        for (int i = 0; i < kPoints; ++i) {
            const PhasePoint u = PhasePoint::from_index(i);
            const Matrix disp = matrix_power(z, u.p) * matrix_power(x, u.q);
            ops_.emplace_back(disp * par * disp.adjoint());
        }
        verify();
    }

    [[nodiscard]] const HermitianOperator &at(const PhasePoint &u) const { return ops_.at(static_cast<std::size_t>(u.index())); }
    [[nodiscard]] const std::vector<HermitianOperator> &all() const noexcept { return ops_; }

  private:
    void verify() const {
        const double tol = kDefaultTolerances.trace;
        Matrix total = Matrix::Zero(kDim, kDim);
        for (std::size_t a = 0; a < ops_.size(); ++a) {
            if (std::abs(ops_[a].trace() - 1.0) > tol) {
                throw Error(ErrorCode::ConstructionFailure, "phase-point operator trace differs from 1");
            }
            for (std::size_t b = 0; b < ops_.size(); ++b) {
                const double expected = a == b ? kDim : 0.0;
                if (std::abs(hs_inner(ops_[a], ops_[b]) - expected) > tol) {
                    throw Error(ErrorCode::ConstructionFailure, "phase-point operators are not orthogonal");
                }
            }
            total += ops_[a].matrix();
        }
        if (max_abs(total - kDim * Matrix::Identity(kDim, kDim)) > kDefaultTolerances.sum) {
            throw Error(ErrorCode::ConstructionFailure, "phase-point operators do not sum to 3I");
        }
    }

    std::vector<HermitianOperator> ops_;
};

inline const PhasePointOperatorSet &phase_point_operators() {
    static const PhasePointOperatorSet set;
    return set;
}

/// W_ρ(u) = tr(ρ A(u)) / 3.
inline PhaseSpaceFunction wigner_distribution(const DensityOperator &rho) {
    if (rho.dim() != kDim) throw Error(ErrorCode::DimensionMismatch, "Wigner representation needs a qutrit");
    PhaseSpaceFunction w{};
    for (int i = 0; i < kPoints; ++i) {
        w[static_cast<std::size_t>(i)] = hs_inner(rho.op(), phase_point_operators().at(PhasePoint::from_index(i))) / kDim;
    }
    return w;
}

/// ξ_E(u) = tr(E A(u)).
inline PhaseSpaceFunction wigner_response(const Effect &e) {
    if (e.dim() != kDim) throw Error(ErrorCode::DimensionMismatch, "Wigner representation needs a qutrit");
    PhaseSpaceFunction f{};
    for (int i = 0; i < kPoints; ++i) {
        f[static_cast<std::size_t>(i)] = hs_inner(e.op(), phase_point_operators().at(PhasePoint::from_index(i)));
    }
    return f;
}

/// Stabilizer basis names: eigenbases of Z, X, XZ and XZ².
inline const std::array<std::string, 4> &basis_names() {
    static const std::array<std::string, 4> names{"Z", "X", "XZ", "XZ2"};
    return names;
}

/**
 * Columns are the eigenvectors of the basis' Weyl operator, column k having
 * eigenvalue ω^k. Basis 0 is Z; basis 1 + s is X·Z^s.
 */
inline Matrix stabilizer_basis(int basis) {
    Matrix out = Matrix::Zero(kDim, kDim);
    if (basis == 0) return Matrix::Identity(kDim, kDim);
    const int s = basis - 1;
    for (int k = 0; k < kDim; ++k) {
        // (X Z^s)|v⟩ = ω^k|v⟩  ⇔  c_{j+1} = ω^{s j − k} c_j.
        Complex c = 1.0 / std::sqrt(static_cast<double>(kDim));
        for (int j = 0; j < kDim; ++j) {
            out(j, k) = c;
            c *= omega_power(s * j - k);
        }
    }
    return out;
}

/// The "strange" state (|1⟩ − |2⟩)/√2, outside the stabilizer polytope.
inline DensityOperator strange_state() {
    Vector v = Vector::Zero(kDim);
    v(1) = 1.0;
    v(2) = -1.0;
    return DensityOperator::pure(v);
}

/**
 * Preparations: the 12 stabilizer states and I/3. Measurements: the 4 Pauli
 * basis PVMs and the 6 pairwise equal mixtures of them, outcomes aligned by
 * eigenvalue index.
 */
inline OperationalTheory stabilizer_fragment() {
    std::vector<Preparation> preps;
    std::vector<Povm> pvms;
    for (int b = 0; b < 4; ++b) {
        const Matrix basis = stabilizer_basis(b);
        for (int k = 0; k < kDim; ++k) {
            preps.push_back({basis_names()[static_cast<std::size_t>(b)] + ":" + std::to_string(k),
                             DensityOperator::pure(basis.col(k))});
        }
        pvms.push_back(Povm::from_basis(basis));
    }
    preps.push_back({"I/3", DensityOperator::maximally_mixed(kDim)});

    std::vector<Measurement> meas;
    for (int b = 0; b < 4; ++b) meas.push_back({basis_names()[static_cast<std::size_t>(b)], pvms[static_cast<std::size_t>(b)], true});
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            meas.push_back({basis_names()[static_cast<std::size_t>(a)] + "+" + basis_names()[static_cast<std::size_t>(b)],
                            convex_mix({pvms[static_cast<std::size_t>(a)], pvms[static_cast<std::size_t>(b)]}, {0.5, 0.5}),
                            false});
        }
    }
    return build_quantum_theory(std::move(preps), std::move(meas));
}

/// Λ = the nine phase points, μ = Wigner distributions, ξ = Wigner responses.
inline OntologicalModel wigner_model(const OperationalTheory &theory) {
    std::vector<std::string> ontic;
    for (int i = 0; i < kPoints; ++i) ontic.push_back(PhasePoint::from_index(i).label());
    std::map<std::string, std::vector<double>> epistemic;
    for (const auto &p : theory.preparations()) {
        const auto w = wigner_distribution(p.rho);
        epistemic.emplace(p.label, std::vector<double>(w.begin(), w.end()));
    }
    std::map<std::string, OntologicalModel::Responses> responses;
    for (const auto &m : theory.measurements()) {
        OntologicalModel::Responses xi;
        for (const auto &e : m.povm.effects()) {
            const auto f = wigner_response(e);
            xi.emplace_back(f.begin(), f.end());
        }
        responses.emplace(m.label, std::move(xi));
    }
    return OntologicalModel(std::move(ontic), std::move(epistemic), std::move(responses));
}

/**
 * Builds the fragment and its Wigner model and runs every check: positivity
 * of μ and ξ, adequacy, both noncontextuality checks, determinism iff
 * sharpness, the certainty-preparation property, intrinsic randomness of
 * the unsharp effects, and negativity of a non-stabilizer state.
 */
inline Report verify_subtheory_noncontextual_model(const Tolerances &tol = kDefaultTolerances) {
    const OperationalTheory theory = stabilizer_fragment();
    const OntologicalModel model = wigner_model(theory);

    Report r;
    r.subject = "qutrit stabilizer fragment: Wigner model is noncontextual";
    r.scope_notes.push_back(
        "unsharp measurements are the pairwise equal mixtures of the four Pauli basis PVMs");

    Verdict mu_pos{"epistemic states nonnegative", true, {}, ""};
    double min_mu = 1.0;
    for (const auto &[label, mu] : model.epistemic()) {
        for (std::size_t l = 0; l < mu.size(); ++l) {
            min_mu = std::min(min_mu, mu[l]);
            if (mu[l] < -tol.trace) mu_pos.violations.push_back(label + " at " + model.ontic_states()[l]);
        }
    }
    mu_pos.passed = mu_pos.violations.empty();
    mu_pos.detail = "min mu = " + detail::fmt(min_mu);

    Verdict xi_range{"response functions in [0,1]", true, {}, ""};
    for (const auto &[label, xi] : model.responses()) {
        for (std::size_t k = 0; k < xi.size(); ++k) {
            for (std::size_t l = 0; l < xi[k].size(); ++l) {
                if (xi[k][l] < -tol.trace || xi[k][l] > 1.0 + tol.trace) {
                    xi_range.violations.push_back(label + "[" + std::to_string(k) + "] at " + model.ontic_states()[l]);
                }
            }
        }
    }
    xi_range.passed = xi_range.violations.empty();

    r.verdicts.push_back(std::move(mu_pos));
    r.verdicts.push_back(std::move(xi_range));
    r.absorb(empirical_adequacy(model, theory, tol.trace));
    r.absorb(check_measurement_noncontextual(model, theory, {tol.stats, tol.stats, false}));
    r.absorb(check_preparation_noncontextual(model, theory, tol.stats, tol.stats));

    // Equivalences implied by the listed procedures: each basis mixed uniformly
    // is the preparation I/3, and each PVM coarse-grains to the trivial measurement.
    Verdict prep_mix{"preparation noncontextuality over basis mixtures", true, {}, ""};
    const auto &mu_flat = model.mu("I/3");
    double prep_gap = 0.0;
    for (const auto &name : basis_names()) {
        std::vector<double> avg(kPoints, 0.0);
        Matrix rho = Matrix::Zero(kDim, kDim);
        for (int k = 0; k < kDim; ++k) {
            const std::string label = name + ":" + std::to_string(k);
            const auto &mu = model.mu(label);
            for (int l = 0; l < kPoints; ++l) avg[static_cast<std::size_t>(l)] += mu[static_cast<std::size_t>(l)] / kDim;
            rho += theory.preparations()[*theory.preparation_index(label)].rho.matrix() / kDim;
        }
        if (max_abs(rho - Matrix::Identity(kDim, kDim) / kDim) > tol.stats) {
            prep_mix.passed = false;
            prep_mix.violations.push_back(name + " mixture is not I/3");
        }
        for (int l = 0; l < kPoints; ++l) {
            const double g = std::abs(avg[static_cast<std::size_t>(l)] - mu_flat[static_cast<std::size_t>(l)]);
            prep_gap = std::max(prep_gap, g);
            if (g > tol.stats) {
                prep_mix.passed = false;
                prep_mix.violations.push_back(name + " mixture differs from I/3 at " + model.ontic_states()[static_cast<std::size_t>(l)]);
            }
        }
    }
    prep_mix.detail = "4 decompositions of I/3, max |mu gap| = " + detail::fmt(prep_gap);

    Verdict meas_triv{"measurement noncontextuality over trivial coarse-grainings", true, {}, ""};
    double meas_gap = 0.0;
    for (const auto &m : theory.measurements()) {
        const auto &xi = model.xi(m.label);
        for (int l = 0; l < kPoints; ++l) {
            double total = 0.0;
            for (const auto &row : xi) total += row[static_cast<std::size_t>(l)];
            meas_gap = std::max(meas_gap, std::abs(total - 1.0));
            if (std::abs(total - 1.0) > tol.stats) {
                meas_triv.passed = false;
                meas_triv.violations.push_back(m.label + " at " + model.ontic_states()[static_cast<std::size_t>(l)]);
            }
        }
    }
    meas_triv.detail = "10 realizations of {I}, max |sum xi - 1| = " + detail::fmt(meas_gap);
    r.verdicts.push_back(std::move(prep_mix));
    r.verdicts.push_back(std::move(meas_triv));

    r.absorb(verify_determinism_iff_sharp(model, theory, tol.eig));
    r.absorb(verify_p1(theory, tol.stats), "P1");

    Verdict p2{"P2: unsharp effects need intrinsically random post-processing", true, {}, ""};
    for (const auto &m : theory.measurements()) {
        if (m.sharp) continue;
        for (std::size_t k = 0; k < m.povm.size(); ++k) {
            if (!spectral_realization(m.povm.effect(k), tol).intrinsically_random) {
                p2.passed = false;
                p2.violations.push_back(m.label + "[" + m.povm.labels()[k] + "]");
            }
        }
    }
    r.verdicts.push_back(std::move(p2));

    Verdict magic{"non-stabilizer state has negative quasiprobability", true, {}, ""};
    const auto w = wigner_distribution(strange_state());
    const double min_w = *std::min_element(w.begin(), w.end());
    magic.passed = min_w < -tol.trace;
    magic.detail = "min W = " + detail::fmt(min_w) + " for (|1> - |2>)/sqrt(2)";
    r.verdicts.push_back(std::move(magic));
    return r;
}

} // namespace ncwb::wigner
