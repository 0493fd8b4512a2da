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
 * Dense complex Hermitian operators: effects, density operators, spectral
 * resolutions and Born-rule probabilities.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncwb/core.hpp"

namespace ncwb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest absolute entry of a complex matrix.
inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/**
 * A d×d complex Hermitian matrix. Construction checks conjugate symmetry
 * within `tol` and then symmetrizes exactly, so downstream eigensolvers see
 * a matrix that is Hermitian to the last bit.
 */
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m, double tol = kDefaultTolerances.herm)
        : m_(std::move(m)) {
        if (m_.rows() < 1 || m_.rows() != m_.cols()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "operator must be square with dim >= 1");
        }
        const double asym = max_abs(m_ - m_.adjoint());
        if (!(asym <= tol)) {
            throw Error(ErrorCode::NotHermitian,
                        "conjugate-symmetry residue " + std::to_string(asym));
        }
        m_ = 0.5 * (m_ + m_.adjoint()).eval();
    }

    static HermitianOperator identity(int dim) {
        return HermitianOperator(Matrix::Identity(dim, dim));
    }
    static HermitianOperator zero(int dim) {
        return HermitianOperator(Matrix::Zero(dim, dim));
    }
    static HermitianOperator diagonal(std::span<const double> values) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                                static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
        }
        return HermitianOperator(std::move(m));
    }
    static HermitianOperator diagonal(std::initializer_list<double> values) {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }
    /// |ψ⟩⟨ψ| for the normalized direction of `ket`.
    static HermitianOperator projector(const Vector &ket) {
        const double n = ket.norm();
        if (!(n > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "zero vector has no projector");
        }
        const Vector v = ket / n;
        return HermitianOperator(v * v.adjoint());
    }

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(m_.rows()); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(int i, int j) const { return m_(i, j); }
    [[nodiscard]] double trace() const { return m_.trace().real(); }

    friend HermitianOperator operator+(const HermitianOperator &a,
                                       const HermitianOperator &b) {
        require_same_dim(a, b);
        return HermitianOperator(a.m_ + b.m_);
    }
    friend HermitianOperator operator-(const HermitianOperator &a,
                                       const HermitianOperator &b) {
        require_same_dim(a, b);
        return HermitianOperator(a.m_ - b.m_);
    }
    friend HermitianOperator operator*(double s, const HermitianOperator &a) {
        return HermitianOperator(s * a.m_);
    }

    static void require_same_dim(const HermitianOperator &a, const HermitianOperator &b) {
        if (a.dim() != b.dim()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
        }
    }

  private:
    Matrix m_;
};

/// Max-norm distance between two operators of equal dimension.
inline double distance(const HermitianOperator &a, const HermitianOperator &b) {
    HermitianOperator::require_same_dim(a, b);
    return max_abs(a.matrix() - b.matrix());
}

inline bool approx_equal(const HermitianOperator &a, const HermitianOperator &b,
                         double tol = kDefaultTolerances.dedup) {
    return a.dim() == b.dim() && distance(a, b) <= tol;
}

/// Ascending eigenvalues.
inline Eigen::VectorXd eigenvalues(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

inline bool is_effect(const HermitianOperator &e, double tol = kDefaultTolerances.eig) {
    const Eigen::VectorXd ev = eigenvalues(e);
    return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

inline bool is_projector(const HermitianOperator &e, double tol = kDefaultTolerances.sum) {
    return max_abs(e.matrix() * e.matrix() - e.matrix()) <= tol;
}

inline bool is_density(const HermitianOperator &rho, const Tolerances &tol = kDefaultTolerances) {
    return eigenvalues(rho).minCoeff() >= -tol.eig && std::abs(rho.trace() - 1.0) <= tol.trace;
}

/// An operator E with 0 ≤ E ≤ I.
class Effect {
  public:
    explicit Effect(HermitianOperator op, double tol = kDefaultTolerances.eig)
        : op_(std::move(op)) {
        if (!is_effect(op_, tol)) {
            throw Error(ErrorCode::OutOfRange, "operator is not an effect (0 <= E <= I violated)");
        }
    }
    explicit Effect(Matrix m) : Effect(HermitianOperator(std::move(m))) {}

    [[nodiscard]] const HermitianOperator &op() const noexcept { return op_; }
    [[nodiscard]] int dim() const noexcept { return op_.dim(); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return op_.matrix(); }

  private:
    HermitianOperator op_;
};

/// A positive semidefinite operator of unit trace.
class DensityOperator {
  public:
    explicit DensityOperator(HermitianOperator op, const Tolerances &tol = kDefaultTolerances)
        : op_(std::move(op)) {
        if (!is_density(op_, tol)) {
            throw Error(ErrorCode::OutOfRange, "operator is not a density operator");
        }
    }
    explicit DensityOperator(Matrix m) : DensityOperator(HermitianOperator(std::move(m))) {}

    static DensityOperator pure(const Vector &ket) {
        return DensityOperator(HermitianOperator::projector(ket));
    }
    static DensityOperator maximally_mixed(int dim) {
        return DensityOperator(HermitianOperator((1.0 / dim) * Matrix::Identity(dim, dim)));
    }

    [[nodiscard]] const HermitianOperator &op() const noexcept { return op_; }
    [[nodiscard]] int dim() const noexcept { return op_.dim(); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return op_.matrix(); }

  private:
    HermitianOperator op_;
};

/// E = Σ_i s_i Π_i with distinct s_i, listed in descending order.
struct SpectralResolution {
    std::vector<double> eigenvalues;
    std::vector<HermitianOperator> projectors;

    [[nodiscard]] std::size_t size() const noexcept { return eigenvalues.size(); }

    [[nodiscard]] HermitianOperator reconstruct() const {
        Matrix m = Matrix::Zero(projectors.front().dim(), projectors.front().dim());
        for (std::size_t i = 0; i < size(); ++i) {
            m += eigenvalues[i] * projectors[i].matrix();
        }
        return HermitianOperator(std::move(m));
    }
};

/**
 * Eigenspace projectors of `h`. Eigenvalues whose consecutive gaps are below
 * `degen` are merged into one cluster; the cluster's eigenvalue is the mean
 * and its projector is Σ|v⟩⟨v| over the cluster's eigenvectors.
 */
inline SpectralResolution spectral_decompose(const HermitianOperator &h,
                                             const Tolerances &tol = kDefaultTolerances) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd &ev = solver.eigenvalues();
    const Matrix &vecs = solver.eigenvectors();
    const int d = h.dim();

    SpectralResolution out;
    double spread = 0.0;
    int start = 0;
    for (int i = 1; i <= d; ++i) {
        if (i < d && ev(i) - ev(i - 1) < tol.degen) {
            continue;
        }
        spread = std::max(spread, ev(i - 1) - ev(start));
        const auto block = vecs.middleCols(start, i - start);
        out.eigenvalues.push_back(ev.segment(start, i - start).mean());
        out.projectors.emplace_back(block * block.adjoint());
        start = i;
    }
    std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
    std::reverse(out.projectors.begin(), out.projectors.end());

    Matrix total = Matrix::Zero(d, d);
    for (const auto &p : out.projectors) {
        total += p.matrix();
    }
    if (max_abs(total - Matrix::Identity(d, d)) > tol.sum ||
        distance(out.reconstruct(), h) > tol.sum + spread) {
        throw Error(ErrorCode::NumericalFailure, "spectral reconstruction residue above tolerance");
    }
    return out;
}

/// Merged spectrum of `h`, descending.
inline std::vector<double> spectrum(const HermitianOperator &h,
                                    const Tolerances &tol = kDefaultTolerances) {
    return spectral_decompose(h, tol).eigenvalues;
}

/// tr(AB), the Hilbert-Schmidt inner product on Hermitian operators.
inline double hs_inner(const HermitianOperator &a, const HermitianOperator &b,
                       double tol = kDefaultTolerances.trace) {
    HermitianOperator::require_same_dim(a, b);
    const Complex t = (a.matrix().cwiseProduct(b.matrix().transpose())).sum();
    if (std::abs(t.imag()) > tol) {
        throw Error(ErrorCode::NumericalFailure, "imaginary trace residue in hs_inner");
    }
    return t.real();
}

/**
 * tr(ρE). The imaginary residue is discarded; values within `tol` outside
 * [0, 1] are clamped, anything further out is an error.
 */
inline double born(const DensityOperator &rho, const Effect &e,
                   double tol = kDefaultTolerances.trace) {
    if (rho.dim() != e.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and effect dimensions differ");
    }
    const double p = (rho.matrix().cwiseProduct(e.matrix().transpose())).sum().real();
    if (p < -tol || p > 1.0 + tol) {
        throw Error(ErrorCode::OutOfRange, "Born probability " + std::to_string(p));
    }
    return std::clamp(p, 0.0, 1.0);
}

/// Kronecker product with `a` as the slow (left) factor.
inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline HermitianOperator kron(const HermitianOperator &a, const HermitianOperator &b) {
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

/// Computational basis vector |i⟩ of dimension d.
inline Vector basis_ket(int dim, int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

/// Positive square root of a positive semidefinite operator.
inline Matrix psd_sqrt(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Pure qubit state with Bloch vector (sinθ cosφ, sinθ sinφ, cosθ).
inline Vector qubit_ket(double theta, double phi) {
    Vector v(2);
    v(0) = std::cos(theta / 2);
    v(1) = std::polar(std::sin(theta / 2), phi);
    return v;
}

/// The three qubit projectors spaced 120° apart on the equator of the Bloch sphere.
inline std::vector<HermitianOperator> trine_projectors() {
    std::vector<HermitianOperator> out;
    for (int i = 0; i < 3; ++i) {
        out.push_back(HermitianOperator::projector(
            qubit_ket(std::numbers::pi / 2, 2.0 * std::numbers::pi * i / 3.0)));
    }
    return out;
}

} // namespace ncwb
