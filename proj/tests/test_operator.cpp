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


#include <random>

#include <gtest/gtest.h>

#include "ncwb/operator.hpp"

namespace ncwb {
namespace {

Matrix random_hermitian(std::mt19937_64 &rng, int d) {
    std::normal_distribution<double> g;
    Matrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
    }
    return 0.5 * (z + z.adjoint());
}

TEST(HermitianOperator, RejectsNonHermitianInput) {
    Matrix m{{1.0, 2.0}, {0.0, 1.0}};
    try {
        HermitianOperator h(m);
        FAIL() << "accepted a non-Hermitian matrix";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(HermitianOperator, RejectsNonSquareInput) {
    try {
        HermitianOperator h(Matrix::Zero(2, 3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(HermitianOperator, SymmetrizesSmallAsymmetry) {
    Matrix m{{1.0, Complex(0.5, 1e-12)}, {Complex(0.5, 0.0), 0.0}};
    HermitianOperator h(m);
    EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermitianOperator, ArithmeticChecksDimensions) {
    EXPECT_THROW((void)(HermitianOperator::identity(2) + HermitianOperator::identity(3)), Error);
    const auto h = 0.25 * HermitianOperator::identity(2) + HermitianOperator::diagonal({0.5, 0.0});
    EXPECT_DOUBLE_EQ(h(0, 0).real(), 0.75);
    EXPECT_DOUBLE_EQ(h(1, 1).real(), 0.25);
}

TEST(Effect, EnforcesOperatorBounds) {
    EXPECT_NO_THROW(Effect(HermitianOperator::diagonal({1.0, 0.0})));
    try {
        Effect e(HermitianOperator::diagonal({1.1, 0.0}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
    EXPECT_THROW(Effect(HermitianOperator::diagonal({0.5, -0.01})), Error);
}

TEST(DensityOperator, RequiresUnitTraceAndPositivity) {
    EXPECT_NO_THROW(DensityOperator::maximally_mixed(3));
    EXPECT_THROW(DensityOperator(HermitianOperator::diagonal({0.6, 0.6})), Error);
    EXPECT_THROW(DensityOperator(HermitianOperator::diagonal({1.2, -0.2})), Error);
}

TEST(Spectral, ResolvesDegenerateDiagonal) {
    const auto res = spectral_decompose(HermitianOperator::diagonal({0.2, 0.5, 0.5}));
    ASSERT_EQ(res.size(), 2U);
    EXPECT_NEAR(res.eigenvalues[0], 0.5, 1e-12);
    EXPECT_NEAR(res.eigenvalues[1], 0.2, 1e-12);
    EXPECT_NEAR(res.projectors[0].trace(), 2.0, 1e-12);
    EXPECT_NEAR(res.projectors[1].trace(), 1.0, 1e-12);
    EXPECT_NEAR(res.projectors[1](0, 0).real(), 1.0, 1e-12);
}

TEST(Spectral, MergesEigenvaluesWithinDegeneracyGap) {
    const auto res = spectral_decompose(HermitianOperator::diagonal({0.3, 0.3 + 1e-9}));
    ASSERT_EQ(res.size(), 1U);
    EXPECT_NEAR(res.eigenvalues[0], 0.3, 1e-8);
    const auto split = spectral_decompose(HermitianOperator::diagonal({0.3, 0.3 + 1e-6}));
    EXPECT_EQ(split.size(), 2U);
}

TEST(Spectral, ReconstructsRandomOperators) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 5;
        const HermitianOperator h(random_hermitian(rng, d));
        const auto res = spectral_decompose(h);
        EXPECT_LE(distance(res.reconstruct(), h), 1e-9);
        for (std::size_t i = 0; i + 1 < res.size(); ++i) EXPECT_GT(res.eigenvalues[i], res.eigenvalues[i + 1]);
        for (const auto &p : res.projectors) {
            EXPECT_LE(max_abs(p.matrix() * p.matrix() - p.matrix()), 1e-9);
        }
    }
}

TEST(Born, MatchesHandComputedTrace) {
    // ρ = |+⟩⟨+|, E = diag(1, 0): tr(ρE) = 1/2.
    const DensityOperator plus = DensityOperator::pure(Vector{{1.0, 1.0}});
    EXPECT_NEAR(born(plus, Effect(HermitianOperator::diagonal({1.0, 0.0}))), 0.5, 1e-15);
    const DensityOperator rho(Matrix{{0.7, Complex(0.1, -0.2)}, {Complex(0.1, 0.2), 0.3}});
    const Effect e(Matrix{{0.5, Complex(0.0, 0.25)}, {Complex(0.0, -0.25), 0.5}});
    // 0.7*0.5 + 0.3*0.5 + 2 Re(ρ01 E10) = 0.5 + 2 Re((0.1-0.2i)(-0.25i)) = 0.5 + 2(-0.05) = 0.4
    EXPECT_NEAR(born(rho, e), 0.4, 1e-15);
}

TEST(Born, DimensionMismatchIsReported) {
    try {
        (void)born(DensityOperator::maximally_mixed(2), Effect(HermitianOperator::identity(3)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Kron, FollowsSystemMajorIndexing) {
    const Matrix a{{1.0, 2.0}, {3.0, 4.0}};
    const Matrix b{{0.0, 5.0, 0.0}, {6.0, 7.0, 0.0}, {0.0, 0.0, 8.0}};
    const Matrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) EXPECT_EQ(k(3 * i + x, 3 * j + y), a(i, j) * b(x, y));
}

TEST(Trine, ProjectorsSumToThreeHalvesIdentity) {
    const auto t = trine_projectors();
    ASSERT_EQ(t.size(), 3U);
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto &p : t) sum += p.matrix();
    EXPECT_LE(max_abs(sum - 1.5 * Matrix::Identity(2, 2)), 1e-12);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(is_projector(t[i]));
        for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(hs_inner(t[i], t[j]), 0.25, 1e-12);
    }
}

TEST(PsdSqrt, SquaresBack) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix z = random_hermitian(rng, 3);
        const HermitianOperator p(z * z);
        const Matrix r = psd_sqrt(p);
        EXPECT_LE(max_abs(r * r - p.matrix()), 1e-9);
    }
}

TEST(Predicates, ProjectorAndEffect) {
    EXPECT_TRUE(is_projector(HermitianOperator::projector(qubit_ket(0.3, 1.1))));
    EXPECT_FALSE(is_projector(HermitianOperator::diagonal({0.5, 0.5})));
    EXPECT_TRUE(is_effect(HermitianOperator::diagonal({0.5, 0.5})));
    EXPECT_FALSE(is_effect(HermitianOperator::diagonal({1.5, 0.5})));
}

} // namespace
} // namespace ncwb
