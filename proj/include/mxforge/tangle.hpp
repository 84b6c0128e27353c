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

// Matrix tangle products.
//
// Left product (U; A_1..A_k), U of size t x k, tangles m x n:
//   block (i, j) = A_j * u_ij, result tm x kn.
// Right product (A_1..A_k; U), U of size k x t:
//   block (i, j) = A_i * u_ij, result km x tn.
//
// Both accept scalar (ComplexMatrix) or polynomial (LaurentMatrix) operands.
// For polynomial operands the output lives over the union of the variables,
// identified by position: an operand over fewer variables is padded.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "mxforge/core.hpp"
#include "mxforge/hadamard_checks.hpp"
#include "mxforge/laurent.hpp"

namespace mxforge {

enum class Side { Left, Right };

inline const char *to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace detail {

inline std::size_t nvars_of(const ComplexMatrix &) { return 0; }
inline std::size_t nvars_of(const LaurentMatrix &m) { return m.nvars(); }

inline const ComplexMatrix &aligned(const ComplexMatrix &m, std::size_t) { return m; }
inline LaurentMatrix aligned(const LaurentMatrix &m, std::size_t nvars) { return m.padded(nvars); }

inline ComplexMatrix blank_like(const ComplexMatrix &, std::size_t rows, std::size_t cols, std::size_t) {
    return ComplexMatrix(rows, cols);
}
inline LaurentMatrix blank_like(const LaurentMatrix &, std::size_t rows, std::size_t cols, std::size_t nvars) {
    return LaurentMatrix(rows, cols, nvars);
}

inline ComplexMatrix scaled_block(const ComplexMatrix &a, const ComplexMatrix &u, std::size_t i, std::size_t j) {
    return u(i, j) * a;
}
inline LaurentMatrix scaled_block(const LaurentMatrix &a, const LaurentMatrix &u, std::size_t i, std::size_t j) {
    LaurentMatrix out = a;
    out.scale(u(i, j));
    return out;
}

template <class Matrix>
void require_uniform(const std::vector<Matrix> &tangles) {
    if (tangles.empty()) throw Error(ErrorCode::CountMismatch, "no tangles given");
    for (const auto &a : tangles) {
        if (a.rows() != tangles.front().rows() || a.cols() != tangles.front().cols()) {
            throw Error(ErrorCode::ShapeMismatch, "tangles must share one shape");
        }
    }
}

template <class Matrix>
Matrix tangle_impl(Side side, const Matrix &u_in, const std::vector<Matrix> &tangles_in) {
    require_uniform(tangles_in);
    const std::size_t expected = side == Side::Left ? u_in.cols() : u_in.rows();
    if (tangles_in.size() != expected) {
        throw Error(ErrorCode::CountMismatch, std::string(to_string(side)) + " tangle with shuffler " +
                                                  std::to_string(u_in.rows()) + "x" + std::to_string(u_in.cols()) +
                                                  " needs " + std::to_string(expected) + " tangles, got " +
                                                  std::to_string(tangles_in.size()));
    }
    std::size_t nv = nvars_of(u_in);
    for (const auto &a : tangles_in) nv = std::max(nv, nvars_of(a));
    const auto u = aligned(u_in, nv);
    std::vector<Matrix> tangles;
    tangles.reserve(tangles_in.size());
    for (const auto &a : tangles_in) tangles.push_back(aligned(a, nv));

    const std::size_t m = tangles.front().rows();
    const std::size_t n = tangles.front().cols();
    Matrix out = blank_like(u_in, u.rows() * m, u.cols() * n, nv);
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const Matrix &a = side == Side::Left ? tangles[j] : tangles[i];
            out.set_block(i * m, j * n, scaled_block(a, u, i, j));
        }
    }
    return out;
}

}  // namespace detail

inline ComplexMatrix left_tangle(const ComplexMatrix &u, const std::vector<ComplexMatrix> &tangles) {
    return detail::tangle_impl(Side::Left, u, tangles);
}
inline ComplexMatrix right_tangle(const std::vector<ComplexMatrix> &tangles, const ComplexMatrix &u) {
    return detail::tangle_impl(Side::Right, u, tangles);
}
inline LaurentMatrix left_tangle(const LaurentMatrix &u, const std::vector<LaurentMatrix> &tangles,
                                 const ToleranceConfig &cfg = {}) {
    auto out = detail::tangle_impl(Side::Left, u, tangles);
    out.prune(cfg.prune_tol);
    return out;
}
inline LaurentMatrix right_tangle(const std::vector<LaurentMatrix> &tangles, const LaurentMatrix &u,
                                  const ToleranceConfig &cfg = {}) {
    auto out = detail::tangle_impl(Side::Right, u, tangles);
    out.prune(cfg.prune_tol);
    return out;
}

/// Repeats the given tangles cyclically until there are `count` of them.
template <class Matrix>
std::vector<Matrix> cycle_tangles(const std::vector<Matrix> &tangles, std::size_t count) {
    if (tangles.empty()) throw Error(ErrorCode::CountMismatch, "no tangles to repeat");
    std::vector<Matrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(tangles[i % tangles.size()]);
    return out;
}

template <class Matrix>
struct TangleSpec {
    Side side = Side::Left;
    Matrix shuffler;
    std::vector<Matrix> tangles;
};

template <class Matrix>
Matrix tangle_product(const TangleSpec<Matrix> &spec) {
    return detail::tangle_impl(spec.side, spec.shuffler, spec.tangles);
}

struct LinearityReport {
    double scalar_residual = 0.0;         // a(U;A) = (U;aA) = (aU;A)
    double shuffler_sum_residual = 0.0;   // (U+V;A) = (U;A) + (V;A)
    double tangle_sum_residual = 0.0;     // (U;A) + (U;B) = (U;A+B)
    double single_slot_residual = 0.0;    // (U;A_1+B_1,A_2..) vs (U;A_1,A_2..) + (U;B_1,A_2..)
    bool holds = false;                   // first three identities within tolerance
};

/// Checks the linearity identities of the tangle product on the given
/// inputs, and reports how far the single-slot sum is from being linear
/// (generally it is not, since the untouched tangles are counted twice).
inline LinearityReport linearity_check(const ComplexMatrix &u, const ComplexMatrix &v, Complex alpha,
                                       const std::vector<ComplexMatrix> &a, const std::vector<ComplexMatrix> &b,
                                       Side side = Side::Left, double tol = 1e-12) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || a.size() != b.size()) {
        throw Error(ErrorCode::ShapeMismatch, "linearity_check: incompatible operands");
    }
    auto prod = [side](const ComplexMatrix &s, const std::vector<ComplexMatrix> &t) {
        return detail::tangle_impl(side, s, t);
    };
    auto scaled = [](const std::vector<ComplexMatrix> &t, Complex s) {
        std::vector<ComplexMatrix> out;
        for (const auto &x : t) out.push_back(s * x);
        return out;
    };
    std::vector<ComplexMatrix> sum_ab;
    for (std::size_t i = 0; i < a.size(); ++i) sum_ab.push_back(a[i] + b[i]);
    std::vector<ComplexMatrix> slot = a;
    slot.front() = a.front() + b.front();
    std::vector<ComplexMatrix> swapped_first = a;
    swapped_first.front() = b.front();

    const ComplexMatrix base = prod(u, a);
    LinearityReport rep;
    rep.scalar_residual = std::max(max_abs_diff(alpha * base, prod(u, scaled(a, alpha))),
                                   max_abs_diff(alpha * base, prod(alpha * u, a)));
    rep.shuffler_sum_residual = max_abs_diff(prod(u + v, a), base + prod(v, a));
    rep.tangle_sum_residual = max_abs_diff(base + prod(u, b), prod(u, sum_ab));
    rep.single_slot_residual = max_abs_diff(prod(u, slot), base + prod(u, swapped_first));
    const double scale = std::max({1.0, max_abs(base), max_abs(prod(u, b))});
    rep.holds = rep.scalar_residual <= tol * scale && rep.shuffler_sum_residual <= tol * scale &&
                rep.tangle_sum_residual <= tol * scale;
    return rep;
}

/// det(A_1) ... det(A_k) det(U)^n for k x k U and n x n tangles; equals the
/// determinant of either the left or the right tangle product.
inline Complex det_predict(const ComplexMatrix &u, const std::vector<ComplexMatrix> &tangles) {
    if (!u.is_square()) throw Error(ErrorCode::NonSquare, "det_predict: shuffler must be square");
    detail::require_uniform(tangles);
    if (tangles.size() != u.rows()) throw Error(ErrorCode::CountMismatch, "det_predict: tangle count differs from k");
    if (!tangles.front().is_square()) throw Error(ErrorCode::NonSquare, "det_predict: tangles must be square");
    const std::size_t n = tangles.front().rows();
    Complex prod = std::pow(determinant(u), static_cast<double>(n));
    // Integer power keeps exactness for real negative determinants.
    {
        Complex du = determinant(u);
        Complex p = 1.0;
        for (std::size_t i = 0; i < n; ++i) p *= du;
        prod = p;
    }
    for (const auto &a : tangles) prod *= determinant(a);
    return prod;
}

struct TensorFactors {
    ComplexMatrix outer;  // p x q
    ComplexMatrix inner;  // m x n
};

/// Factor M = outer (x) inner for the given m x n blocking, if one exists.
/// The largest block is the reference; its largest entry is the pivot used
/// to read off the proportionality constants.
inline std::optional<TensorFactors> is_block_tensor(const ComplexMatrix &mat, std::size_t m, std::size_t n,
                                                    const ToleranceConfig &cfg = {}) {
    if (m == 0 || n == 0 || mat.rows() % m != 0 || mat.cols() % n != 0) {
        throw Error(ErrorCode::BadBlocking, std::to_string(m) + "x" + std::to_string(n) + " blocks do not tile " +
                                                std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()));
    }
    const std::size_t p = mat.rows() / m;
    const std::size_t q = mat.cols() / n;
    std::size_t ref_i = 0, ref_j = 0;
    double ref_norm = -1.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            const double nrm = max_abs(mat.block(i * m, j * n, m, n));
            if (nrm > ref_norm) {
                ref_norm = nrm;
                ref_i = i;
                ref_j = j;
            }
        }
    }
    if (ref_norm <= cfg.verify_tol) return std::nullopt;
    const ComplexMatrix inner = mat.block(ref_i * m, ref_j * n, m, n);
    std::size_t pr = 0, pc = 0;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (std::abs(inner(r, c)) > std::abs(inner(pr, pc))) {
                pr = r;
                pc = c;
            }
    ComplexMatrix outer(p, q);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            const ComplexMatrix blk = mat.block(i * m, j * n, m, n);
            outer(i, j) = blk(pr, pc) / inner(pr, pc);
            if (max_abs_diff(blk, outer(i, j) * inner) > cfg.verify_tol) return std::nullopt;
        }
    }
    return TensorFactors{std::move(outer), inner};
}

enum class Property { Unitary, Paraunitary, Hadamard };

inline const char *to_string(Property p) {
    switch (p) {
        case Property::Unitary: return "unitary";
        case Property::Paraunitary: return "paraunitary";
        case Property::Hadamard: return "hadamard";
    }
    return "?";
}

/// Distance of `m` from having the property; Hadamard uses the detected scale.
inline double property_residual(Property prop, const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
    switch (prop) {
        case Property::Unitary: return unitary_residual(m);
        case Property::Paraunitary: return paraunitary_residual(LaurentMatrix::constant(m, 0), cfg);
        case Property::Hadamard: {
            const auto rep = verify_hadamard(m, cfg);
            return std::max(rep.modulus_residual, rep.gram_residual);
        }
    }
    return std::numeric_limits<double>::infinity();
}

inline double property_residual(Property prop, const LaurentMatrix &m, const ToleranceConfig &cfg = {}) {
    if (prop != Property::Paraunitary) {
        throw Error(ErrorCode::InvalidArgument, "polynomial operands only support the paraunitary property");
    }
    return paraunitary_residual(m, cfg);
}

template <class Matrix>
struct PreservationReport {
    Property property;
    std::vector<double> constituent_residuals;  // shuffler first, then tangles
    double product_residual;
    bool preserved;
    std::optional<int> predicted_butson;  // lcm of the constituents' types
    std::optional<int> product_butson;
    Matrix product;
};

/// Builds the tangle product after confirming every constituent has the
/// property, and reports how well the product keeps it.
template <class Matrix>
PreservationReport<Matrix> preservation_suite(Property prop, const TangleSpec<Matrix> &spec,
                                              const ToleranceConfig &cfg = {}) {
    std::vector<double> residuals;
    residuals.push_back(property_residual(prop, spec.shuffler, cfg));
    for (const auto &a : spec.tangles) residuals.push_back(property_residual(prop, a, cfg));
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        if (residuals[i] > cfg.verify_tol) {
            throw Error(ErrorCode::ConstituentViolation,
                        std::string(i == 0 ? "shuffler" : "tangle " + std::to_string(i - 1)) + " is not " + to_string(prop),
                        residuals[i]);
        }
    }
    Matrix product = tangle_product(spec);
    if constexpr (std::is_same_v<Matrix, LaurentMatrix>) product.prune(cfg.prune_tol);
    const double res = property_residual(prop, product, cfg);
    PreservationReport<Matrix> rep{prop, std::move(residuals), res, res <= cfg.verify_tol, std::nullopt, std::nullopt,
                                   std::move(product)};
    if constexpr (std::is_same_v<Matrix, ComplexMatrix>) {
        if (prop == Property::Hadamard) {
            std::optional<int> lcm_type = verify_hadamard(spec.shuffler, cfg).butson_p;
            for (const auto &a : spec.tangles) {
                const auto p = verify_hadamard(a, cfg).butson_p;
                lcm_type = (lcm_type && p) ? std::optional<int>(std::lcm(*lcm_type, *p)) : std::nullopt;
            }
            rep.predicted_butson = lcm_type;
            rep.product_butson = verify_hadamard(rep.product, cfg).butson_p;
        }
    }
    return rep;
}

enum class ShufflerSource {
    Seeds,  // shufflers are always drawn from the seeds
    Pool,   // shufflers are drawn from the current level
};

struct SeriesPolicy {
    Side side = Side::Left;
    ShufflerSource shufflers = ShufflerSource::Seeds;
    std::size_t width = 4;  // products kept per level; 0 keeps every candidate
    std::uint64_t seed = 0;
};

/// Level 0 is the seeds. Each further level forms tangle products of ordered
/// pairs of distinct matrices from the previous level (repeated cyclically to
/// the shuffler size), with every admissible shuffler. When more candidates
/// exist than `width`, a seeded sample is kept in enumeration order.
inline std::vector<std::vector<ComplexMatrix>> grow_series(const std::vector<ComplexMatrix> &seeds, Property prop,
                                                           const SeriesPolicy &policy, std::size_t depth,
                                                           const ToleranceConfig &cfg = {}) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const double r = property_residual(prop, seeds[i], cfg);
        if (r > cfg.verify_tol) {
            throw Error(ErrorCode::ConstituentViolation, "seed " + std::to_string(i) + " is not " + to_string(prop), r);
        }
    }
    std::vector<std::vector<ComplexMatrix>> levels{seeds};
    for (std::size_t level = 1; level <= depth; ++level) {
        const auto &pool = levels.back();
        if (pool.size() < 2) throw Error(ErrorCode::PolicyExhausted, "fewer than two matrices to entangle");
        const auto &shufflers = policy.shufflers == ShufflerSource::Seeds ? seeds : pool;

        struct Candidate {
            std::size_t shuffler, first, second;
        };
        std::vector<Candidate> candidates;
        for (std::size_t s = 0; s < shufflers.size(); ++s) {
            if (!shufflers[s].is_square()) continue;
            for (std::size_t i = 0; i < pool.size(); ++i)
                for (std::size_t j = 0; j < pool.size(); ++j)
                    if (i != j) candidates.push_back({s, i, j});
        }
        if (candidates.empty()) throw Error(ErrorCode::PolicyExhausted, "no square shuffler available");
        if (policy.width != 0 && policy.width < candidates.size()) {
            std::vector<std::size_t> idx(candidates.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::mt19937_64 rng(policy.seed + level);
            std::shuffle(idx.begin(), idx.end(), rng);
            idx.resize(policy.width);
            std::sort(idx.begin(), idx.end());
            std::vector<Candidate> kept;
            for (auto k : idx) kept.push_back(candidates[k]);
            candidates = std::move(kept);
        }
        std::vector<ComplexMatrix> next;
        next.reserve(candidates.size());
        for (const auto &c : candidates) {
            const ComplexMatrix &u = shufflers[c.shuffler];
            const auto tangles = cycle_tangles(std::vector<ComplexMatrix>{pool[c.first], pool[c.second]}, u.rows());
            next.push_back(detail::tangle_impl(policy.side, u, tangles));
        }
        levels.push_back(std::move(next));
    }
    return levels;
}

}  // namespace mxforge
