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

// Generators and independent reference implementations for the tests.
// Nothing here calls into the library's numerical routines except the
// ComplexMatrix container itself.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "mxforge/core.hpp"
#include "mxforge/laurent.hpp"

namespace mxtest {

using mxforge::Complex;
using mxforge::ComplexMatrix;
using Rng = std::mt19937_64;

inline Complex gaussian(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

inline double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t pick(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Complex unimodular(Rng &rng) { return std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi)); }

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng &rng) {
    ComplexMatrix m(r, c);
    for (auto &z : m.entries()) z = gaussian(rng);
    return m;
}

/// Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(std::size_t n, Rng &rng) {
    ComplexMatrix q = random_matrix(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, p);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

inline ComplexMatrix naive_matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix &a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

inline double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

inline double unitary_defect(const ComplexMatrix &m) {
    const ComplexMatrix g = naive_matmul(m, naive_adjoint(m));
    double d = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) d = std::max(d, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return d;
}

/// Laplace expansion memoised over the set of used columns; O(n 2^n).
inline Complex cofactor_det(const ComplexMatrix &m) {
    const std::size_t n = m.rows();
    std::vector<Complex> dp(std::size_t{1} << n, 0.0);
    dp[0] = 1.0;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask] == Complex{}) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row == n) continue;
        int free_before = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (mask & (std::size_t{1} << c)) continue;
            const double sign = (free_before % 2 == 0) ? 1.0 : -1.0;
            dp[mask | (std::size_t{1} << c)] += sign * m(row, c) * dp[mask];
            ++free_before;
        }
    }
    return dp.back();
}

/// Block (i, j) of the left tangle product written out directly.
inline ComplexMatrix reference_left_tangle(const ComplexMatrix &u, const std::vector<ComplexMatrix> &a) {
    const std::size_t m = a[0].rows(), n = a[0].cols();
    ComplexMatrix out(u.rows() * m, u.cols() * n);
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < n; ++s) out(i * m + r, j * n + s) = a[j](r, s) * u(i, j);
    return out;
}

inline ComplexMatrix reference_right_tangle(const std::vector<ComplexMatrix> &a, const ComplexMatrix &u) {
    const std::size_t m = a[0].rows(), n = a[0].cols();
    ComplexMatrix out(u.rows() * m, u.cols() * n);
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < n; ++s) out(i * m + r, j * n + s) = a[i](r, s) * u(i, j);
    return out;
}

inline Complex root(long n, long j) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
}

/// Unnormalised Fourier matrix with rows 1..m-1 permuted: a dephased
/// Butson matrix of type exactly m.
inline ComplexMatrix dephased_fourier(std::size_t m, Rng &rng) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    ComplexMatrix f(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) f(r, s) = root(static_cast<long>(m), static_cast<long>(perm[r] * s));
    return f;
}

/// Dephased 4 x 4 Hadamard [[1,1,1,1],[1,1,-1,-1],[1,-1,x,-x],[1,-1,-x,x]]
/// with x a primitive q-th root of unity (q even or q = 1 gives type lcm(2, q)).
inline ComplexMatrix dephased_four(long q) {
    const Complex x = root(q, 1);
    return ComplexMatrix{{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, x, -x}, {1, -1, -x, x}};
}

/// Smallest p such that every entry of m is a p-th root of unity, by brute force.
inline int entry_root_order(const ComplexMatrix &m, int pmax = 64) {
    for (int p = 1; p <= pmax; ++p) {
        bool ok = true;
        for (const auto &z : m.entries()) {
            if (std::abs(std::pow(z, p) - 1.0) > 1e-8) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return 0;
}

/// Coefficient-convolution reference for products of Laurent matrices.
inline mxforge::LaurentMatrix reference_laurent_mul(const mxforge::LaurentMatrix &p, const mxforge::LaurentMatrix &q) {
    mxforge::LaurentMatrix out(p.rows(), q.cols(), p.nvars());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            for (std::size_t k = 0; k < p.cols(); ++k)
                for (const auto &[e1, c1] : p(i, k).terms())
                    for (const auto &[e2, c2] : q(k, j).terms()) {
                        std::vector<int> e(e1.size());
                        for (std::size_t v = 0; v < e.size(); ++v) e[v] = e1[v] + e2[v];
                        out(i, j).add_term(mxforge::ExponentVector(std::move(e)), c1 * c2);
                    }
    return out;
}

}  // namespace mxtest
