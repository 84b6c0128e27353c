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

// Complete orthogonal symmetric idempotent (COSI) sets: self-adjoint
// projectors E_1..E_k with E_i E_j = 0 for i != j and E_1 + ... + E_k = I.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "mxforge/core.hpp"
#include "mxforge/spectral.hpp"

namespace mxforge {

namespace detail {

inline std::string fmt_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

inline void require_square_same_dim(std::span<const ComplexMatrix> mats) {
    if (mats.empty()) throw Error(ErrorCode::InvalidArgument, "empty projector list");
    const std::size_t n = mats.front().rows();
    for (const auto &m : mats) {
        if (!m.is_square()) throw Error(ErrorCode::NonSquare, "projectors must be square");
        if (m.rows() != n) throw Error(ErrorCode::DimensionMismatch, "projectors must share one dimension");
    }
}

inline ComplexMatrix sum_of(std::span<const ComplexMatrix> mats) {
    ComplexMatrix acc(mats.front().rows(), mats.front().cols());
    for (const auto &m : mats) acc += m;
    return acc;
}

/// Checks idempotence, self-adjointness and pairwise orthogonality in that
/// order, throwing on the first violation.
inline void check_orthogonal_projectors(std::span<const ComplexMatrix> mats, const ToleranceConfig &cfg) {
    require_square_same_dim(mats);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const double r = max_abs_diff(matmul(mats[i], mats[i]), mats[i]);
        if (r > cfg.verify_tol) {
            throw Error(ErrorCode::NotIdempotent,
                        "E_" + std::to_string(i) + "^2 != E_" + std::to_string(i) + " (residual " + fmt_residual(r) + ")",
                        r);
        }
    }
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const double r = self_adjoint_residual(mats[i]);
        if (r > cfg.verify_tol) {
            throw Error(ErrorCode::NotSelfAdjoint,
                        "E_" + std::to_string(i) + " is not self-adjoint (residual " + fmt_residual(r) + ")", r);
        }
    }
    for (std::size_t i = 0; i < mats.size(); ++i) {
        for (std::size_t j = 0; j < mats.size(); ++j) {
            if (i == j) continue;
            const double r = max_abs(matmul(mats[i], mats[j]));
            if (r > cfg.verify_tol) {
                throw Error(ErrorCode::NotOrthogonal,
                            "E_" + std::to_string(i) + " E_" + std::to_string(j) + " != 0 (residual " +
                                fmt_residual(r) + ")",
                            r);
            }
        }
    }
}

}  // namespace detail

/// A validated COSI set. Only constructible through `validate` and the
/// factory functions below, so every instance satisfies all four axioms.
class CosiSet {
   public:
    /// Throws NotIdempotent, NotSelfAdjoint, NotOrthogonal or NotComplete for
    /// the first violated axiom, carrying its residual norm.
    static CosiSet validate(std::vector<ComplexMatrix> candidate, const ToleranceConfig &cfg = {}) {
        detail::check_orthogonal_projectors(candidate, cfg);
        const std::size_t n = candidate.front().rows();
        const double r = max_abs_diff(detail::sum_of(candidate), ComplexMatrix::identity(n));
        if (r > cfg.verify_tol) {
            throw Error(ErrorCode::NotComplete, "sum of projectors != I (residual " + detail::fmt_residual(r) + ")", r);
        }
        return CosiSet(std::move(candidate));
    }

    std::size_t dim() const noexcept { return projectors_.front().rows(); }
    std::size_t size() const noexcept { return projectors_.size(); }
    const ComplexMatrix &operator[](std::size_t i) const { return projectors_.at(i); }
    const std::vector<ComplexMatrix> &projectors() const noexcept { return projectors_; }
    auto begin() const noexcept { return projectors_.begin(); }
    auto end() const noexcept { return projectors_.end(); }

   private:
    explicit CosiSet(std::vector<ComplexMatrix> p) : projectors_(std::move(p)) {}
    std::vector<ComplexMatrix> projectors_;
};

/// Number of eigenvalues above 1/2; exact for matrices with spectrum in {0, 1}.
inline std::size_t projector_rank(const ComplexMatrix &e) {
    const auto eig = hermitian_eigen(e);
    return static_cast<std::size_t>(std::count_if(eig.values.begin(), eig.values.end(), [](double x) { return x > 0.5; }));
}

/// u u* for a column vector u.
inline ComplexMatrix outer_projector(const ComplexMatrix &u) { return matmul(u, adjoint(u)); }

/// E_i = u_i u_i* for the columns u_i of a unitary U.
inline CosiSet from_unitary_columns(const ComplexMatrix &u, const ToleranceConfig &cfg = {}) {
    const double r = unitary_residual(u);
    if (r > cfg.verify_tol) throw Error(ErrorCode::NotUnitary, "from_unitary_columns: input is not unitary", r);
    std::vector<ComplexMatrix> proj;
    proj.reserve(u.cols());
    for (std::size_t j = 0; j < u.cols(); ++j) proj.push_back(outer_projector(u.column(j)));
    return CosiSet::validate(std::move(proj), cfg);
}

/// Projector j of the normalised n-point Fourier basis:
/// E_j(r, s) = w^{(r - s) j} / n, i.e. (1/n) circ(1, w^{-j}, w^{-2j}, ...).
inline ComplexMatrix fourier_projector(std::size_t n, std::size_t j) {
    const long nn = static_cast<long>(n);
    ComplexMatrix e(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            e(r, s) = root_of_unity(nn, (static_cast<long>(r) - static_cast<long>(s)) * static_cast<long>(j)) /
                      static_cast<double>(n);
    return e;
}

inline CosiSet fourier_cosi(std::size_t n, const ToleranceConfig &cfg = {}) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "fourier_cosi: n must be positive");
    std::vector<ComplexMatrix> proj;
    proj.reserve(n);
    for (std::size_t j = 0; j < n; ++j) proj.push_back(fourier_projector(n, j));
    return CosiSet::validate(std::move(proj), cfg);
}

/// Sums the projectors of each group. Groups must cover 0..k-1 disjointly;
/// the output keeps the group order given.
inline CosiSet merge(const CosiSet &set, const std::vector<std::vector<std::size_t>> &partition,
                     const ToleranceConfig &cfg = {}) {
    std::vector<int> seen(set.size(), 0);
    for (const auto &group : partition) {
        if (group.empty()) throw Error(ErrorCode::BadPartition, "empty group");
        for (std::size_t idx : group) {
            if (idx >= set.size()) throw Error(ErrorCode::BadPartition, "index " + std::to_string(idx) + " out of range");
            if (seen[idx]++) throw Error(ErrorCode::BadPartition, "index " + std::to_string(idx) + " used twice");
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " not covered");
    }
    std::vector<ComplexMatrix> merged;
    merged.reserve(partition.size());
    for (const auto &group : partition) {
        ComplexMatrix acc(set.dim(), set.dim());
        for (std::size_t idx : group) acc += set[idx];
        merged.push_back(std::move(acc));
    }
    return CosiSet::validate(std::move(merged), cfg);
}

/// Groups {0}, {1, n-1}, {2, n-2}, ... (and {n/2} for even n) of a Fourier COSI.
inline std::vector<std::vector<std::size_t>> conjugate_partition(std::size_t n) {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t j = 0; 2 * j <= n; ++j) {
        const std::size_t partner = (n - j) % n;
        if (partner == j) {
            groups.push_back({j});
        } else if (j < partner) {
            groups.push_back({j, partner});
        }
    }
    return groups;
}

/// Pairs projector j with n - j so every merged projector is real.
inline CosiSet merge_conjugates(const CosiSet &set, const ToleranceConfig &cfg = {}) {
    const std::size_t n = set.dim();
    if (set.size() != n) throw Error(ErrorCode::NotFourier, "set size differs from dimension");
    for (std::size_t j = 0; j < n; ++j) {
        const double r = max_abs_diff(set[j], fourier_projector(n, j));
        if (r > cfg.verify_tol) {
            throw Error(ErrorCode::NotFourier, "projector " + std::to_string(j) + " is not the Fourier projector", r);
        }
    }
    std::vector<ComplexMatrix> merged;
    for (const auto &group : conjugate_partition(n)) {
        ComplexMatrix acc(n, n);
        for (std::size_t idx : group) acc += set[idx];
        for (auto &z : acc.entries()) {
            if (std::abs(z.imag()) < cfg.prune_tol) z = z.real();
        }
        merged.push_back(std::move(acc));
    }
    return CosiSet::validate(std::move(merged), cfg);
}

/// Appends I - sum(E_i) when it is nonzero.
inline CosiSet complete(std::vector<ComplexMatrix> partial, const ToleranceConfig &cfg = {}) {
    detail::check_orthogonal_projectors(partial, cfg);
    const std::size_t n = partial.front().rows();
    ComplexMatrix rest = ComplexMatrix::identity(n) - detail::sum_of(partial);
    if (max_abs(rest) > cfg.verify_tol) partial.push_back(std::move(rest));
    return CosiSet::validate(std::move(partial), cfg);
}

/// Splits a self-adjoint idempotent into rank(E) orthogonal rank-1
/// projectors, taken from the eigenvectors of eigenvalue ~1.
inline std::vector<ComplexMatrix> rank1_split(const ComplexMatrix &e, const ToleranceConfig &cfg = {}) {
    if (!e.is_square()) throw Error(ErrorCode::NonSquare, "rank1_split: non-square input");
    const double idem = max_abs_diff(matmul(e, e), e);
    if (idem > cfg.verify_tol) throw Error(ErrorCode::NotIdempotent, "rank1_split: E^2 != E", idem);
    const double sa = self_adjoint_residual(e);
    if (sa > cfg.verify_tol) throw Error(ErrorCode::NotIdempotent, "rank1_split: E is not self-adjoint", sa);

    const auto eig = hermitian_eigen(e);
    std::vector<ComplexMatrix> pieces;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] > 0.5) pieces.push_back(outer_projector(eig.vectors.column(k)));
    }
    return pieces;
}

/// {E_1, I - E_1} with E_1 the projector onto (cos t, -sin t).
inline CosiSet rotation_cosi(double theta, const ToleranceConfig &cfg = {}) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix e1{{c * c, -c * s}, {-s * c, s * s}};
    ComplexMatrix e2 = ComplexMatrix::identity(2) - e1;
    return CosiSet::validate({std::move(e1), std::move(e2)}, cfg);
}

}  // namespace mxforge
