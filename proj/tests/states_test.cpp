// Copyright 2026 The entcrit Authors
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

#include "entcrit/states.hpp"

#include <gtest/gtest.h>

#include "entcrit/criteria.hpp"
#include "matchers.hpp"

using namespace entcrit;

TEST(States, Singlet) {
    const DensityMatrix s = singlet();
    EXPECT_MATRIX_NEAR(s.matrix(), oracle::singlet_projector(), 1e-15);
    EXPECT_NEAR(s.purity(), 1.0, 1e-14);
    EXPECT_MATRIX_NEAR(partial_trace(s, Subsystem::A), identity(2) / 2.0, 1e-15);
    // sigma_i (x) sigma_i all average to -1.
    for (const auto& p : {oracle::pauli_x(), oracle::pauli_y(), oracle::pauli_z()}) {
        EXPECT_NEAR(oracle::trace_of_product(s.matrix(), oracle::kron(p, p)).real(), -1.0, 1e-14);
    }
}

TEST(States, NoisySinglet) {
    oracle::Mat noise = oracle::Mat::Zero(4, 4);
    noise(0, 0) = 2.0 / 3.0;
    noise(1, 1) = 1.0 / 3.0;
    EXPECT_MATRIX_NEAR(noisy_singlet(0.0).matrix(), noise, 1e-15);
    EXPECT_MATRIX_NEAR(noisy_singlet(1.0).matrix(), oracle::singlet_projector(), 1e-15);
    for (double p : {0.1, 0.25, 0.5, 0.9}) {
        EXPECT_MATRIX_NEAR(noisy_singlet(p).matrix(), p * oracle::singlet_projector() + (1 - p) * noise, 1e-15);
    }
    EXPECT_THROW(noisy_singlet(-0.1), std::invalid_argument);
    EXPECT_THROW(noisy_singlet(1.1), std::invalid_argument);
}

TEST(States, TilesVectorsAreOrthonormalProducts) {
    const auto v = tiles_vectors();
    ASSERT_EQ(v.size(), 5u);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            EXPECT_NEAR(std::abs(v[i].dot(v[j])), i == j ? 1.0 : 0.0, 1e-14);
        }
        // Product vectors have a rank-one reduced state.
        const oracle::Mat reduced = oracle::partial_trace(v[i] * v[i].adjoint(), 3, 3, true);
        EXPECT_NEAR(oracle::trace(reduced * reduced).real(), 1.0, 1e-14);
    }
}

TEST(States, TilesBoundEntangled) {
    const DensityMatrix be = tiles_rho_be();
    EXPECT_NEAR(be.matrix().trace().real(), 1.0, 1e-14);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> solver(oracle::partial_transpose_b(be.matrix(), 3, 3));
    EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-12);
    EXPECT_FALSE(ppt_check(be).detected);
    EXPECT_TRUE(ccn_check(be).detected);
    EXPECT_TRUE(ccn_check(tiles_state(0.95)).detected);
    EXPECT_FALSE(ppt_check(tiles_state(0.95)).detected);
    EXPECT_FALSE(ccn_check(tiles_state(0.5)).detected);
    EXPECT_MATRIX_NEAR(tiles_state(0.0).matrix(), oracle::Mat::Identity(9, 9) / 9.0, 1e-15);
    EXPECT_MATRIX_NEAR(tiles_state(1.0).matrix(), be.matrix(), 1e-15);
}

TEST(States, FamiliesAreAffine) {
    for (const StateFamily& f : {noisy_singlet_family(), tiles_family()}) {
        const ComplexMatrix r0 = f.generator(f.p_min).matrix();
        const ComplexMatrix r1 = f.generator(f.p_max).matrix();
        for (double p : {0.2, 0.37, 0.81}) {
            EXPECT_MATRIX_NEAR(f.generator(p).matrix(), (1 - p) * r0 + p * r1, 1e-14);
        }
        EXPECT_EQ(f.generator(0.5).dims(), f.dims);
    }
    EXPECT_MATRIX_NEAR(tiles_family().generator(0.3).matrix(), tiles_state(0.3).matrix(), 1e-15);
}

TEST(States, MaxEntangled) {
    for (Index d : {2, 3, 4}) {
        const ComplexVector v = max_entangled(d);
        EXPECT_NEAR(v.norm(), 1.0, 1e-15);
        const oracle::Mat reduced = oracle::partial_trace(v * v.adjoint(), d, d, true);
        EXPECT_MATRIX_NEAR(reduced, oracle::Mat::Identity(d, d) / static_cast<double>(d), 1e-15);
    }
    EXPECT_THROW(max_entangled(1), std::invalid_argument);
}

TEST(States, RandomDensity) {
    const DensityMatrix a = random_density(Dims{2, 3}, 3, 11);
    const DensityMatrix b = random_density(Dims{2, 3}, 3, 11);
    EXPECT_EQ(max_abs(a.matrix() - b.matrix()), 0.0);
    EXPECT_GT(max_abs(a.matrix() - random_density(Dims{2, 3}, 3, 12).matrix()), 1e-3);
    for (Index rank : {1, 2, 4, 6}) {
        const DensityMatrix r = random_density(Dims{2, 3}, rank, 5);
        const RealVector ev = eigenvalues_hermitian(r.matrix());
        Index nonzero = 0;
        for (Index i = 0; i < ev.size(); ++i) nonzero += ev(i) > 1e-10 ? 1 : 0;
        EXPECT_EQ(nonzero, rank);
    }
    EXPECT_EQ(random_density(3, 2, 1).dims(), (Dims{3, 1}));
    EXPECT_THROW(random_density(Dims{2, 2}, 0, 1), std::invalid_argument);
    EXPECT_THROW(random_density(Dims{2, 2}, 5, 1), std::invalid_argument);
}

TEST(States, RandomSeparableIsPptAndValid) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DensityMatrix r = random_separable(2, 3, 1 + static_cast<Index>(seed % 5), seed);
        EXPECT_TRUE(is_density_matrix(r.matrix(), r.dims()).valid);
        Eigen::SelfAdjointEigenSolver<oracle::Mat> solver(oracle::partial_transpose_b(r.matrix(), 2, 3));
        EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-12);
    }
    EXPECT_EQ(max_abs(random_separable(3, 3, 4, 9).matrix() - random_separable(3, 3, 4, 9).matrix()), 0.0);
    EXPECT_THROW(random_separable(2, 2, 0, 1), std::invalid_argument);
}

TEST(States, HaarUnitary) {
    for (Index d : {1, 2, 3, 5}) {
        const ComplexMatrix u = haar_unitary(d, 17);
        EXPECT_MATRIX_NEAR(u * u.adjoint(), oracle::Mat::Identity(d, d), 1e-13);
        EXPECT_EQ(max_abs(u - haar_unitary(d, 17)), 0.0);
    }
    EXPECT_THROW(haar_unitary(0, 1), std::invalid_argument);
}

TEST(States, RngIsPortable) {
    // First draw of mt19937_64 seeded with 5489 is fixed by the standard.
    Rng rng(5489);
    EXPECT_EQ(rng.uniform(), static_cast<double>(14514284786278117030ull >> 11) * 0x1.0p-53);
    Rng a(3), b(3);
    for (int i = 0; i < 100; ++i) {
        const Index k = a.integer(2, 4);
        EXPECT_GE(k, 2);
        EXPECT_LE(k, 4);
        EXPECT_EQ(b.integer(2, 4), k);
    }
    double sum = 0.0, sq = 0.0;
    Rng n(1);
    constexpr int kDraws = 20000;
    for (int i = 0; i < kDraws; ++i) {
        const double x = n.normal();
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / kDraws, 0.0, 0.05);
    EXPECT_NEAR(sq / kDraws, 1.0, 0.05);
}
