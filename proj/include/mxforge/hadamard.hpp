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

// Hadamard constructions built on COSI sets and tangle products.

#pragma once

#include <cmath>
#include <vector>

#include "mxforge/builders.hpp"
#include "mxforge/cosi.hpp"
#include "mxforge/hadamard_checks.hpp"
#include "mxforge/tangle.hpp"

namespace mxforge {

namespace detail {

inline HadamardReport require_hadamard(const ComplexMatrix &m, const char *what, const ToleranceConfig &cfg) {
    auto rep = verify_hadamard(m, cfg);
    if (!rep.is_hadamard) {
        throw Error(ErrorCode::NotHadamard, std::string(what) + " is not Hadamard",
                    std::max(rep.modulus_residual, rep.gram_residual));
    }
    return rep;
}

}  // namespace detail

/// n x n Hadamard H -> self-adjoint n^2 x n^2 Hadamard of the same Butson
/// type, via the COSI of the columns of H / sqrt(n) in reverse circulant form.
inline ComplexMatrix symmetric_hadamard_square(const ComplexMatrix &h, const ToleranceConfig &cfg = {}) {
    const auto rep = detail::require_hadamard(h, "symmetric_hadamard_square input", cfg);
    const double n = static_cast<double>(rep.order);
    const ComplexMatrix g = (rep.scale / std::sqrt(n)) * h;
    const CosiSet set = from_unitary_columns(g, cfg);
    return n * block_latin_unitary(set, reverse_circulant_square(rep.order), std::nullopt, cfg);
}

enum class DoublingMode { Symmetric, Skew };

/// Variant 1: (U; A, A^T), 2: (U; A^T, A), 3: (A, A^T; U), 4: (A^T, A; U).
/// A is n x n and U is 2 x 2, both Hadamard with the mode's property.
inline ComplexMatrix tangle_double(const ComplexMatrix &a, const ComplexMatrix &u, DoublingMode mode, int variant,
                                   const ToleranceConfig &cfg = {}) {
    if (variant < 1 || variant > 4) throw Error(ErrorCode::InvalidArgument, "variant must be 1..4");
    if (u.rows() != 2 || u.cols() != 2) throw Error(ErrorCode::ShapeMismatch, "shuffler must be 2x2");
    const auto ra = detail::require_hadamard(a, "A", cfg);
    const auto ru = detail::require_hadamard(u, "U", cfg);
    const char *name = mode == DoublingMode::Symmetric ? "symmetric" : "skew";
    const bool a_ok = mode == DoublingMode::Symmetric ? ra.symmetric : ra.skew;
    const bool u_ok = mode == DoublingMode::Symmetric ? ru.symmetric : ru.skew;
    if (!a_ok) throw Error(ErrorCode::ModeViolation, std::string("A is not ") + name);
    if (!u_ok) throw Error(ErrorCode::ModeViolation, std::string("U is not ") + name);

    const ComplexMatrix at = transpose(a);
    switch (variant) {
        case 1: return left_tangle(u, {a, at});
        case 2: return left_tangle(u, {at, a});
        case 3: return right_tangle({a, at}, u);
        default: return right_tangle({at, a}, u);
    }
}

/// The 4 x 4 skew Hadamard family in three free angles, with
/// a4 = a1 + a2, a5 = -a1 - a3, a6 = a2 - a3.
inline ComplexMatrix skew4_family(double a1, double a2, double a3) {
    const double a4 = a1 + a2;
    const double a5 = -a1 - a3;
    const double a6 = a2 - a3;
    auto e = [](double t) { return std::polar(1.0, t); };
    return ComplexMatrix{{1.0, e(a1), -e(-a2), -e(-a3)},
                         {-e(-a1), 1.0, -e(-a4), e(a5)},
                         {e(a2), e(a4), 1.0, e(a6)},
                         {e(a3), -e(-a5), -e(-a6), 1.0}};
}

/// Level 0 is {A, B}; level l + 1 is {(A, B; U), (B, A; U)} with U taken
/// cyclically from `shufflers`. With A = B this is the Sylvester series.
inline std::vector<std::vector<ComplexMatrix>> sylvester_tangle_series(const ComplexMatrix &seed_a,
                                                                       const ComplexMatrix &seed_b,
                                                                       const std::vector<ComplexMatrix> &shufflers,
                                                                       std::size_t depth,
                                                                       const ToleranceConfig &cfg = {}) {
    detail::require_hadamard(seed_a, "seed A", cfg);
    detail::require_hadamard(seed_b, "seed B", cfg);
    if (seed_a.rows() != seed_b.rows() || seed_a.cols() != seed_b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "seeds differ in shape");
    }
    if (depth > 0 && shufflers.empty()) throw Error(ErrorCode::InvalidArgument, "no shufflers given");
    for (const auto &u : shufflers) {
        if (u.rows() != 2 || u.cols() != 2) throw Error(ErrorCode::ShapeMismatch, "shufflers must be 2x2");
        detail::require_hadamard(u, "shuffler", cfg);
    }
    std::vector<std::vector<ComplexMatrix>> levels{{seed_a, seed_b}};
    for (std::size_t l = 0; l < depth; ++l) {
        const auto &prev = levels.back();
        const ComplexMatrix &u = shufflers[l % shufflers.size()];
        levels.push_back({right_tangle({prev[0], prev[1]}, u), right_tangle({prev[1], prev[0]}, u)});
    }
    return levels;
}

/// Largest deviation of |<b_i, c_j>| from 1/sqrt(n) over all pairs of
/// distinct bases. Bases are the columns of the given unitaries.
inline double mub_residual(const std::vector<ComplexMatrix> &bases, const ToleranceConfig &cfg = {}) {
    if (bases.empty()) throw Error(ErrorCode::InvalidArgument, "no bases given");
    const std::size_t n = bases.front().rows();
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i].rows() != n || bases[i].cols() != n) {
            throw Error(ErrorCode::DimensionMismatch, "basis " + std::to_string(i) + " has the wrong size");
        }
        const double r = unitary_residual(bases[i]);
        if (r > cfg.verify_tol) throw Error(ErrorCode::NotUnitary, "basis " + std::to_string(i) + " is not unitary", r);
    }
    const double target = 1.0 / std::sqrt(static_cast<double>(n));
    double worst = 0.0;
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            const ComplexMatrix cross = matmul(adjoint(bases[i]), bases[j]);
            for (const auto &z : cross.entries()) worst = std::max(worst, std::abs(std::abs(z) - target));
        }
    return worst;
}

inline bool mub_check(const std::vector<ComplexMatrix> &bases, const ToleranceConfig &cfg = {}) {
    return mub_residual(bases, cfg) <= cfg.verify_tol;
}

}  // namespace mxforge
