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

const ComplexMatrix kE0 = 0.5 * ComplexMatrix{{1, 1}, {1, 1}};
const ComplexMatrix kE1 = 0.5 * ComplexMatrix{{1, -1}, {-1, 1}};

CosiSet example_one() { return CosiSet::validate({kE0, kE1}); }

// Brute-force zeta straight from the definition, using the cofactor oracle.
double oracle_zeta(const std::vector<ComplexMatrix> &v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            ComplexMatrix d = v[a];
            d -= v[b];
            best = std::min(best, std::abs(mxtest::cofactor_det(d)));
        }
    return 0.5 * std::pow(best, 1.0 / static_cast<double>(v.front().rows()));
}

}  // namespace

TEST(Quality, DiagRootExamples) {
    const struct {
        std::size_t n;
        double zeta;
        double rate;
    } cases[] = {{4, 0.70710678, 0.5}, {8, 0.38268343, 0.75}, {16, 0.19509032, 1.0}};
    for (const auto &c : cases) {
        const auto v = build_diag_root_constellation(fourier_cosi(2), c.n);
        const auto rep = quality(v);
        EXPECT_NEAR(rep.zeta, c.zeta, 1e-6) << c.n;
        EXPECT_NEAR(rep.rate, c.rate, 1e-15) << c.n;
        EXPECT_TRUE(rep.full_diversity);
        EXPECT_NEAR(rep.zeta, oracle_zeta(v.members()), 1e-12);
    }
}

TEST(Quality, DuplicateMemberAndErrors) {
    const auto u = ComplexMatrix::identity(2);
    const Constellation v({u, -1.0 * u, u});
    const auto rep = quality(v);
    EXPECT_FALSE(rep.full_diversity);
    EXPECT_EQ(rep.zeta, 0.0);
    EXPECT_EQ(rep.argmin, (std::pair<std::size_t, std::size_t>{0, 2}));
    EXPECT_FALSE(v.distinct());
    EXPECT_THROW(quality(Constellation({u})), Error);
    EXPECT_THROW(Constellation({}), Error);
    EXPECT_THROW(Constellation({u, ComplexMatrix::identity(3)}), Error);
    EXPECT_THROW(Constellation({u, 2.0 * u}), Error);
}

TEST(Quality, TiesGoToLowestPair) {
    // The four diagonal-root members are equally spaced, so several pairs tie.
    const auto v = build_diag_root_constellation(example_one(), 4);
    EXPECT_EQ(quality(v).argmin, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Quality, InvariantUnderCommonUnitary) {
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = mxtest::pick(rng, 2, 5);
        const auto v = build_diag_root_constellation(fourier_cosi(n), mxtest::pick(rng, 2, 9));
        const auto w = mxtest::random_unitary(v.antennas(), rng);
        std::vector<ComplexMatrix> left, right;
        for (const auto &m : v.members()) {
            left.push_back(matmul(w, m));
            right.push_back(matmul(m, w));
        }
        const double z = quality(v).zeta;
        EXPECT_NEAR(quality(Constellation(left)).zeta, z, 1e-12);
        EXPECT_NEAR(quality(Constellation(right)).zeta, z, 1e-12);
    }
}

TEST(Chord, Examples) {
    EXPECT_NEAR(chord(std::numbers::pi), 2.0, 1e-15);
    EXPECT_EQ(chord(0.0), 0.0);
    for (long n = 2; n <= 12; ++n)
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                const double theta = 2.0 * std::numbers::pi * double(j - i) / double(n);
                EXPECT_NEAR(std::abs(mxtest::root(n, i) - mxtest::root(n, j)), chord(theta), 1e-14);
                EXPECT_NEAR(chord(theta), 2.0 * std::abs(std::sin(std::numbers::pi * double(j - i) / double(n))), 1e-14);
            }
}

TEST(Chord, SampledAgainstDefinition) {
    Rng rng(72);
    double worst = 0.0;
    for (int t = 0; t < 1000000; ++t) {
        const double theta = mxtest::uniform(rng, -20.0, 20.0);
        worst = std::max(worst, std::abs(chord(theta) - std::abs(1.0 - std::polar(1.0, theta))));
    }
    EXPECT_LE(worst, 1e-15);
}

TEST(BuildDiagRoot, Examples) {
    const auto v4 = build_diag_root_constellation(example_one(), 4);
    EXPECT_EQ(v4.size(), 4u);
    EXPECT_EQ(v4.antennas(), 4u);
    EXPECT_NEAR(quality(v4).zeta, std::sin(std::numbers::pi / 4.0), 1e-12);

    const auto v2 = build_diag_root_constellation(example_one(), 2);
    EXPECT_EQ(v2.size(), 2u);
    EXPECT_NEAR(quality(v2).zeta, 1.0, 1e-12);

    const auto v3 = build_diag_root_constellation(fourier_cosi(3), 3);
    EXPECT_EQ(v3.size(), 3u);
    // |det(G(a) - G(b))| = |a - b|^9 for the block circulant with all alphas equal.
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) {
            ComplexMatrix d = v3[a];
            d -= v3[b];
            const double chord_ab = std::abs(mxtest::root(3, long(a)) - mxtest::root(3, long(b)));
            EXPECT_NEAR(std::abs(mxtest::cofactor_det(d)), std::pow(chord_ab, 9.0), 1e-9);
        }
}

TEST(BuildDiagRoot, MeasuredMatchesSine) {
    for (std::size_t n = 2; n <= 16; ++n) {
        const auto rep = quality(build_diag_root_constellation(example_one(), n));
        EXPECT_NEAR(rep.zeta, predicted_quality(n), 1e-9) << n;
        EXPECT_TRUE(rep.full_diversity);
    }
}

TEST(BlockDeterminantLaw, RandomAlphas) {
    Rng rng(73);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = mxtest::pick(rng, 1, 5);
        std::vector<Complex> alphas(n);
        double prod = 1.0;
        for (auto &a : alphas) {
            a = mxtest::unimodular(rng) * (t % 2 ? 1.0 : mxtest::uniform(rng, 0.5, 1.5));
            prod *= std::abs(a);
        }
        PhaseGrid grid = PhaseGrid::columns(alphas);
        if (t % 2 == 0) {
            // Non-unimodular alphas: assemble the block circulant directly.
            const auto set = fourier_cosi(n);
            const auto sq = circulant_square(n);
            ComplexMatrix g(n * n, n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g.set_block(i * n, j * n, alphas[j] * set[sq(i, j)]);
            EXPECT_NEAR(std::abs(determinant(g)), std::pow(prod, double(n)), 1e-9 * std::pow(prod, double(n)));
        } else {
            const auto g = block_latin_unitary(fourier_cosi(n), circulant_square(n), grid);
            EXPECT_NEAR(std::abs(determinant(g)), 1.0, 1e-9);
        }
    }
}

TEST(Rate, Examples) {
    const auto v = [](std::size_t l) {
        std::vector<ComplexMatrix> m(l, ComplexMatrix::identity(4));
        return Constellation(m);
    };
    EXPECT_DOUBLE_EQ(rate(v(4)), 0.5);
    EXPECT_DOUBLE_EQ(rate(v(8)), 0.75);
    EXPECT_DOUBLE_EQ(rate(v(16)), 1.0);
}

TEST(PredictedQuality, Examples) {
    EXPECT_NEAR(predicted_quality(4), 0.7071067811, 1e-10);
    EXPECT_NEAR(predicted_quality(2), 1.0, 1e-15);
    EXPECT_NEAR(predicted_quality(16), 0.1950903220, 1e-10);
    EXPECT_THROW(predicted_quality(1), Error);
}

TEST(Derangements, Counts) {
    EXPECT_EQ(derangements(2).size(), 1u);
    EXPECT_EQ(derangements(3).size(), 2u);
    EXPECT_EQ(derangements(4).size(), 9u);
    EXPECT_EQ(derangements(5).size(), 44u);
    for (const auto &p : derangements(4))
        for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NE(p[i], i);
}

TEST(DerangementLift, SmallBases) {
    Rng rng(74);
    const auto base2 = build_diag_root_constellation(example_one(), 2).members();
    const auto l2 = derangement_lift(base2, mxtest::random_unitary(2, rng));
    EXPECT_EQ(l2.lifted.size(), 1u);
    EXPECT_FALSE(l2.measured_zeta.has_value());

    const auto base3 = build_diag_root_constellation(example_one(), 3).members();
    const auto l3 = derangement_lift(base3, mxtest::random_unitary(3, rng));
    EXPECT_EQ(l3.lifted.size(), 2u);
    EXPECT_EQ(l3.lifted.antennas(), 12u);
    ASSERT_TRUE(l3.measured_zeta.has_value());
    EXPECT_NEAR(*l3.measured_zeta, oracle_zeta(l3.lifted.members()), 1e-12);
    EXPECT_NEAR(*l3.base_zeta, oracle_zeta(base3), 1e-12);

    const auto base4 = build_diag_root_constellation(example_one(), 4).members();
    const auto l4 = derangement_lift(base4, mxtest::random_unitary(4, rng));
    EXPECT_EQ(l4.lifted.size(), 9u);
    EXPECT_NEAR(*l4.measured_zeta, oracle_zeta(l4.lifted.members()), 1e-9);

    EXPECT_THROW(derangement_lift(base3, mxtest::random_unitary(2, rng)), Error);
    EXPECT_THROW(derangement_lift(base3, 2.0 * ComplexMatrix::identity(3)), Error);
}

TEST(ShufflerLift, PreservesQuality) {
    Rng rng(75);
    for (int t = 0; t < 20; ++t) {
        const std::size_t k = mxtest::pick(rng, 2, 4);
        const auto us = build_diag_root_constellation(fourier_cosi(k), mxtest::pick(rng, 2, 8));
        const std::size_t m = mxtest::pick(rng, 1, 3);
        std::vector<ComplexMatrix> tangles;
        for (std::size_t i = 0; i < us.antennas(); ++i) tangles.push_back(mxtest::random_unitary(m, rng));
        const auto rep = shuffler_lift(us, tangles);
        ASSERT_TRUE(rep.measured_zeta.has_value());
        EXPECT_NEAR(*rep.measured_zeta, *rep.base_zeta, 1e-9);
        EXPECT_EQ(rep.lifted.antennas(), us.antennas() * m);
    }
}

TEST(ShufflerLift, IdentityTanglesAndSingleMember) {
    const auto us = build_diag_root_constellation(fourier_cosi(2), 4);
    const auto rep = shuffler_lift(us, std::vector<ComplexMatrix>(4, ComplexMatrix::identity(2)));
    for (std::size_t i = 0; i < us.size(); ++i) EXPECT_EQ(rep.lifted[i], tensor(us[i], ComplexMatrix::identity(2)));
    EXPECT_NEAR(*rep.measured_zeta, *rep.base_zeta, 1e-12);

    const Constellation single({us[0]});
    const auto one = shuffler_lift(single, std::vector<ComplexMatrix>(4, ComplexMatrix::identity(2)));
    EXPECT_EQ(one.lifted.size(), 1u);
    EXPECT_FALSE(one.measured_zeta.has_value());
    EXPECT_THROW(quality(one.lifted), Error);
}
