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
const ComplexMatrix kE0 = 0.5 * ComplexMatrix{{1, 1}, {1, 1}};
const ComplexMatrix kE1 = 0.5 * ComplexMatrix{{1, -1}, {-1, 1}};
const ComplexMatrix kAllOnes3 = (1.0 / 3.0) * ComplexMatrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

// Independent axiom check written against the raw matrices.
double axiom_defect(const std::vector<ComplexMatrix> &ps) {
    const std::size_t n = ps.front().rows();
    double worst = 0.0;
    ComplexMatrix sum(n, n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        sum += ps[i];
        worst = std::max(worst, mxtest::max_diff(mxtest::naive_matmul(ps[i], ps[i]), ps[i]));
        worst = std::max(worst, mxtest::max_diff(mxtest::naive_adjoint(ps[i]), ps[i]));
        for (std::size_t j = 0; j < ps.size(); ++j)
            if (i != j) worst = std::max(worst, max_abs(mxtest::naive_matmul(ps[i], ps[j])));
    }
    return std::max(worst, mxtest::max_diff(sum, ComplexMatrix::identity(n)));
}

std::size_t trace_rank(const ComplexMatrix &e) { return static_cast<std::size_t>(std::lround(trace(e).real())); }

}  // namespace

TEST(Validate, Examples) {
    EXPECT_NO_THROW(CosiSet::validate({kE0, kE1}));
    const ComplexMatrix q0 = 0.5 * ComplexMatrix{{1, I}, {-I, 1}};
    const ComplexMatrix q1 = 0.5 * ComplexMatrix{{1, -I}, {I, 1}};
    EXPECT_NO_THROW(CosiSet::validate({q0, q1}));
    EXPECT_EQ(code_of([] { CosiSet::validate({kE0, kE0}); }), ErrorCode::NotOrthogonal);
}

TEST(Validate, ReportsEachAxiom) {
    EXPECT_EQ(code_of([] { CosiSet::validate({2.0 * kE0, kE1}); }), ErrorCode::NotIdempotent);
    const ComplexMatrix skewed{{1, 1}, {0, 0}};  // idempotent, not self-adjoint
    EXPECT_EQ(code_of([&] { CosiSet::validate({skewed, ComplexMatrix::identity(2) - skewed}); }),
              ErrorCode::NotSelfAdjoint);
    EXPECT_EQ(code_of([] { CosiSet::validate({kE0}); }), ErrorCode::NotComplete);
    EXPECT_EQ(code_of([] { CosiSet::validate({kE0, ComplexMatrix::identity(3)}); }), ErrorCode::DimensionMismatch);
    try {
        CosiSet::validate({kE0});
    } catch (const Error &e) {
        EXPECT_GT(e.residual(), 0.4);
    }
}

TEST(FromUnitaryColumns, Examples) {
    const auto f3 = from_unitary_columns((1.0 / std::sqrt(3.0)) * fourier_matrix(3));
    EXPECT_LE(max_abs_diff(f3[0], kAllOnes3), 1e-15);
    // Column 1 is (1, w, w^2)/sqrt 3, so E(r, s) = w^{r - s} / 3.
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s)
            EXPECT_LE(std::abs(f3[1](r, s) - mxtest::root(3, static_cast<long>(r) - static_cast<long>(s)) / 3.0),
                      1e-15);

    const auto id = from_unitary_columns(ComplexMatrix::identity(4));
    for (std::size_t j = 0; j < 4; ++j) {
        ComplexMatrix unit(4, 4);
        unit(j, j) = 1.0;
        EXPECT_EQ(id[j], unit);
    }
    const double r2 = 1.0 / std::sqrt(2.0);
    const ComplexMatrix t = left_tangle(r2 * ComplexMatrix{{1, -1}, {1, 1}},
                                        {r2 * ComplexMatrix{{1, 1}, {1, -1}}, r2 * ComplexMatrix{{1, 1}, {I, -I}}});
    EXPECT_EQ(from_unitary_columns(t).size(), 4u);
    EXPECT_THROW(from_unitary_columns(ComplexMatrix{{1, 1}, {1, -1}}), Error);
}

TEST(FromUnitaryColumns, SumsToIdentity) {
    Rng rng(21);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto set = from_unitary_columns(mxtest::random_unitary(n, rng));
        ComplexMatrix sum(n, n);
        for (const auto &e : set) sum += e;
        EXPECT_LE(max_abs_diff(sum, ComplexMatrix::identity(n)), 1e-12);
        EXPECT_LE(axiom_defect(set.projectors()), 1e-9);
    }
}

TEST(FourierCosi, Examples) {
    const auto f5 = fourier_cosi(5);
    for (long j = 0; j < 5; ++j) {
        const ComplexMatrix closed = 0.2 * circulant({1.0, mxtest::root(5, 4 * j), mxtest::root(5, 3 * j),
                                                      mxtest::root(5, 2 * j), mxtest::root(5, j)});
        EXPECT_LE(max_abs_diff(f5[static_cast<std::size_t>(j)], closed), 1e-12);
    }
    const auto f1 = fourier_cosi(1);
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0], ComplexMatrix{{1.0}});
    const auto f6 = fourier_cosi(6);
    EXPECT_LE(max_abs_diff(f6[0], (1.0 / 6.0) * circulant({1, 1, 1, 1, 1, 1})), 1e-12);
}

TEST(FourierCosi, AxiomsHold) {
    for (std::size_t n = 1; n <= 9; ++n) EXPECT_LE(axiom_defect(fourier_cosi(n).projectors()), 1e-12);
}

TEST(Merge, Examples) {
    const auto f5 = fourier_cosi(5);
    const auto m5 = merge(f5, {{0}, {1, 4}, {2, 3}});
    EXPECT_EQ(m5.size(), 3u);
    for (const auto &e : m5)
        for (const auto &z : e.entries()) EXPECT_LE(std::abs(z.imag()), 1e-12);

    const auto same = merge(f5, {{0}, {1}, {2}, {3}, {4}});
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(same[j], f5[j]);

    const auto m6 = merge(fourier_cosi(6), {{0}, {1, 5}, {3}, {2, 4}});
    EXPECT_EQ(m6.size(), 4u);
    EXPECT_LE(axiom_defect(m6.projectors()), 1e-12);
}

TEST(Merge, BadPartitions) {
    const auto f3 = fourier_cosi(3);
    EXPECT_EQ(code_of([&] { merge(f3, {{0}, {1}}); }), ErrorCode::BadPartition);
    EXPECT_EQ(code_of([&] { merge(f3, {{0, 1}, {1, 2}}); }), ErrorCode::BadPartition);
    EXPECT_EQ(code_of([&] { merge(f3, {{0, 1, 2, 3}}); }), ErrorCode::BadPartition);
    EXPECT_EQ(code_of([&] { merge(f3, {{0, 1, 2}, {}}); }), ErrorCode::BadPartition);
}

TEST(Merge, RandomPartitionsStayCosi) {
    Rng rng(22);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = mxtest::pick(rng, 1, 8);
        const std::size_t groups = mxtest::pick(rng, 1, n);
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<std::vector<std::size_t>> partition(groups);
        for (std::size_t i = 0; i < n; ++i) partition[i < groups ? i : mxtest::pick(rng, 0, groups - 1)].push_back(idx[i]);
        const auto merged = merge(fourier_cosi(n), partition);
        EXPECT_EQ(merged.size(), groups);
        EXPECT_LE(axiom_defect(merged.projectors()), 1e-9);
        // Rank of a merged projector is the size of its group.
        for (std::size_t g = 0; g < groups; ++g) EXPECT_EQ(trace_rank(merged[g]), partition[g].size());
    }
}

TEST(MergeConjugates, Examples) {
    const auto m5 = merge_conjugates(fourier_cosi(5));
    const double th = 2.0 * std::numbers::pi / 5.0;
    std::vector<Complex> row;
    for (int j = 0; j < 5; ++j) row.emplace_back(0.4 * std::cos(j * th));
    EXPECT_LE(max_abs_diff(m5[1], circulant(row)), 1e-12);

    const auto m6 = merge_conjugates(fourier_cosi(6));
    EXPECT_LE(max_abs_diff(m6[1], (1.0 / 6.0) * circulant({2, 1, -1, -2, -1, 1})), 1e-12);

    const auto f2 = fourier_cosi(2);
    const auto m2 = merge_conjugates(f2);
    ASSERT_EQ(m2.size(), 2u);
    EXPECT_LE(max_abs_diff(m2[0], f2[0]), 0.0);
    EXPECT_LE(max_abs_diff(m2[1], f2[1]), 0.0);

    EXPECT_EQ(code_of([] { merge_conjugates(CosiSet::validate({kE1, kE0})); }), ErrorCode::NotFourier);
}

TEST(MergeConjugates, RealOutputs) {
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto m = merge_conjugates(fourier_cosi(n));
        EXPECT_EQ(m.size(), n / 2 + 1);
        double imag = 0.0;
        for (const auto &e : m)
            for (const auto &z : e.entries()) imag = std::max(imag, std::abs(z.imag()));
        EXPECT_LE(imag, 1e-12) << "n=" << n;
        EXPECT_LE(axiom_defect(m.projectors()), 1e-9);
    }
}

TEST(Complete, Examples) {
    const auto c = complete({kE0});
    ASSERT_EQ(c.size(), 2u);
    EXPECT_LE(max_abs_diff(c[1], kE1), 1e-15);

    const auto full = complete({kE0, kE1});
    EXPECT_EQ(full.size(), 2u);

    const auto c3 = complete({kAllOnes3});
    ASSERT_EQ(c3.size(), 2u);
    EXPECT_EQ(trace_rank(c3[1]), 2u);
    EXPECT_EQ(projector_rank(c3[1]), 2u);
}

TEST(Rank1Split, Examples) {
    const auto one = rank1_split(kE0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_LE(max_abs_diff(one[0], kE0), 1e-12);

    const auto two = rank1_split(ComplexMatrix::identity(2));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_LE(max_abs_diff(two[0] + two[1], ComplexMatrix::identity(2)), 1e-12);
    EXPECT_LE(max_abs(matmul(two[0], two[1])), 1e-12);

    const ComplexMatrix rest = ComplexMatrix::identity(3) - kAllOnes3;
    const auto pieces = rank1_split(rest);
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_LE(mxtest::max_diff(pieces[0] + pieces[1], rest), 1e-10);
    EXPECT_LE(max_abs(mxtest::naive_matmul(pieces[0], pieces[1])), 1e-10);
    for (const auto &p : pieces) EXPECT_EQ(trace_rank(p), 1u);

    EXPECT_EQ(code_of([] { rank1_split(ComplexMatrix{{1, 1}, {0, 0}}); }), ErrorCode::NotIdempotent);
}

TEST(Rank1Split, RandomProjectors) {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = mxtest::pick(rng, 1, 6);
        const std::size_t r = mxtest::pick(rng, 0, n);
        const auto u = mxtest::random_unitary(n, rng);
        ComplexMatrix e(n, n);
        for (std::size_t j = 0; j < r; ++j) e += outer_projector(u.column(j));
        const auto pieces = rank1_split(e);
        ASSERT_EQ(pieces.size(), r);
        ComplexMatrix sum(n, n);
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            sum += pieces[i];
            for (std::size_t j = i + 1; j < pieces.size(); ++j)
                EXPECT_LE(max_abs(mxtest::naive_matmul(pieces[i], pieces[j])), 1e-10);
        }
        EXPECT_LE(mxtest::max_diff(sum, e), 1e-10);
    }
}

TEST(RotationCosi, Examples) {
    const auto r = rotation_cosi(-std::numbers::pi / 4.0);
    EXPECT_LE(max_abs_diff(r[0], kE0), 1e-15);
    EXPECT_LE(max_abs_diff(r[1], kE1), 1e-15);
    const auto z = rotation_cosi(0.0);
    EXPECT_EQ(z[0], (ComplexMatrix{{1, 0}, {0, 0}}));
    EXPECT_EQ(z[1], (ComplexMatrix{{0, 0}, {0, 1}}));
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        const auto s = rotation_cosi(mxtest::uniform(rng, -10.0, 10.0));
        EXPECT_LE(max_abs_diff(s[0] + s[1], ComplexMatrix::identity(2)), 1e-15);
    }
}
