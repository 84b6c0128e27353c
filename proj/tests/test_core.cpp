// Copyright 2026 The mxforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "mxforge/mxforge.hpp"
#include "test_support.hpp"

using namespace mxforge;
using mxtest::Rng;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix half(std::initializer_list<std::initializer_list<Complex>> rows) { return 0.5 * ComplexMatrix(rows); }

const ComplexMatrix kE0 = half({{1, 1}, {1, 1}});
const ComplexMatrix kE1 = half({{1, -1}, {-1, 1}});

}  // namespace

TEST(ComplexMatrix, RejectsBadShapes) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
    EXPECT_THROW((ComplexMatrix{{1, 2}, {3}}), Error);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex{std::nan(""), 0.0}}), Error);
    try {
        ComplexMatrix(2, 2, std::vector<Complex>(5));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Adjoint, Examples) {
    EXPECT_EQ(adjoint(ComplexMatrix::identity(3)), ComplexMatrix::identity(3));
    const ComplexMatrix sy{{0, I}, {-I, 0}};
    EXPECT_EQ(adjoint(sy), sy);
    const ComplexMatrix row{{1.0, 2.0 * I}};
    const ComplexMatrix col{{1.0}, {-2.0 * I}};
    EXPECT_EQ(adjoint(row), col);
}

TEST(Adjoint, IsInvolution) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const auto m = mxtest::random_matrix(mxtest::pick(rng, 1, 5), mxtest::pick(rng, 1, 5), rng);
        EXPECT_EQ(adjoint(adjoint(m)), m);
        EXPECT_EQ(adjoint(m), mxtest::naive_adjoint(m));
    }
}

TEST(Matmul, Examples) {
    Rng rng(2);
    const auto x = mxtest::random_matrix(2, 3, rng);
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), x), x);
    EXPECT_LE(max_abs(matmul(kE0, kE1)), 0.0);
    const auto a = mxtest::random_matrix(3, 3, rng), b = mxtest::random_matrix(3, 3, rng);
    EXPECT_LE(mxtest::max_diff(matmul(a, b), mxtest::naive_matmul(a, b)), 1e-14);
    try {
        matmul(a, x);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Matmul, Associative) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t p = mxtest::pick(rng, 1, 5), q = mxtest::pick(rng, 1, 5), r = mxtest::pick(rng, 1, 5),
                          s = mxtest::pick(rng, 1, 5);
        const auto a = mxtest::random_matrix(p, q, rng), b = mxtest::random_matrix(q, r, rng),
                   c = mxtest::random_matrix(r, s, rng);
        EXPECT_LE(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))), 1e-12);
    }
}

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(ComplexMatrix::identity(3)), Complex(1.0));
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix{{1, 1}, {1, -1}}) - Complex(-2.0)), 0.0, 1e-15);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        const auto m = mxtest::random_matrix(4, 4, rng);
        const Complex oracle = mxtest::cofactor_det(m);
        EXPECT_LE(std::abs(determinant(m) - oracle), 1e-10 * std::abs(oracle));
    }
    EXPECT_THROW(determinant(ComplexMatrix(2, 3)), Error);
}

TEST(Determinant, SingularIsZero) {
    const ComplexMatrix m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    EXPECT_LE(std::abs(determinant(m)), 1e-14);
}

TEST(Determinant, Multiplicative) {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const auto a = mxtest::random_matrix(4, 4, rng), b = mxtest::random_matrix(4, 4, rng);
        const Complex lhs = determinant(matmul(a, b));
        const Complex rhs = determinant(a) * determinant(b);
        EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::abs(rhs));
    }
}

TEST(Tensor, Examples) {
    Rng rng(6);
    const auto b = mxtest::random_matrix(2, 3, rng);
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), b), direct_sum(b, b));
    const auto u = mxtest::random_matrix(3, 3, rng), a = mxtest::random_matrix(2, 2, rng);
    const Complex lhs = determinant(tensor(u, a));
    Complex rhs = determinant(a) * determinant(a) * determinant(a);
    rhs *= determinant(u) * determinant(u);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
    EXPECT_EQ(tensor(u, a), left_tangle(u, {a, a, a}));
    EXPECT_EQ(tensor(u, a), mxtest::reference_left_tangle(u, {a, a, a}));
}

TEST(DirectSum, Examples) {
    const Complex a{1.5, -2.0}, b{0.0, 3.0};
    const std::vector<Complex> diag{a, b};
    EXPECT_EQ(direct_sum(ComplexMatrix::scalar(a), ComplexMatrix::scalar(b)), ComplexMatrix::diagonal(diag));
    Rng rng(7);
    const auto u = mxtest::random_unitary(3, rng), v = mxtest::random_unitary(2, rng);
    EXPECT_TRUE(is_unitary(direct_sum(u, v)));
    const auto x = mxtest::random_matrix(2, 2, rng), y = mxtest::random_matrix(2, 2, rng);
    EXPECT_EQ(direct_sum(x, y), left_tangle(ComplexMatrix::identity(2), {x, y}));
}

TEST(IsUnitary, Examples) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_TRUE(is_unitary(r * ComplexMatrix{{1, 1}, {1, -1}}));
    EXPECT_FALSE(is_unitary(ComplexMatrix{{1, 1}, {1, -1}}));
    EXPECT_TRUE(is_unitary(half({{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {-1, 1, 1, 1}})));
    EXPECT_FALSE(is_unitary(ComplexMatrix(2, 3)));
}

TEST(IsUnitary, RandomGramSchmidt) {
    Rng rng(8);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto u = mxtest::random_unitary(n, rng);
        EXPECT_LE(mxtest::unitary_defect(u), 1e-12);
        EXPECT_TRUE(is_unitary(u));
    }
}

TEST(Tolerance, Ordering) {
    EXPECT_NO_THROW(ToleranceConfig{}.check());
    EXPECT_THROW((ToleranceConfig{1e-12, 1e-9}.check()), Error);
    EXPECT_THROW((ToleranceConfig{1.5, 1e-12}.check()), Error);
}

TEST(Fourier, Entries) {
    const auto f = fourier_matrix(5);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t s = 0; s < 5; ++s)
            EXPECT_LE(std::abs(f(r, s) - mxtest::root(5, static_cast<long>(r * s))), 1e-15);
    EXPECT_TRUE(is_unitary((1.0 / std::sqrt(5.0)) * f));
    EXPECT_EQ(root_of_unity(4, 1), I);
    EXPECT_EQ(root_of_unity(2, 1), Complex(-1.0));
}

TEST(Circulant, RowsShiftRight) {
    const auto c = circulant({1.0, 2.0, 3.0});
    const ComplexMatrix expected{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}};
    EXPECT_EQ(c, expected);
}

TEST(HermitianEigen, ReconstructsInput) {
    Rng rng(9);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto a = mxtest::random_matrix(n, n, rng);
        const ComplexMatrix h = a + adjoint(a);
        const auto eig = hermitian_eigen(h);
        ComplexMatrix d(n, n);
        for (std::size_t k = 0; k < n; ++k) d(k, k) = eig.values[k];
        EXPECT_LE(max_abs_diff(eig.vectors * d * adjoint(eig.vectors), h), 1e-10);
        EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
        // Trace is the eigenvalue sum.
        double sum = 0.0;
        for (double v : eig.values) sum += v;
        EXPECT_NEAR(sum, trace(h).real(), 1e-10);
    }
}
