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

#pragma once

#include <numeric>
#include <optional>

#include "mxforge/core.hpp"

namespace mxforge {

inline constexpr int kDefaultButsonSearchLimit = 64;

struct HadamardReport {
    std::size_t order = 0;
    double scale = 0.0;  // entries of scale * M are unimodular when is_hadamard
    bool is_hadamard = false;
    std::optional<int> butson_p;
    bool symmetric = false;  // self-adjoint
    bool skew = false;       // scale * M - I is anti-self-adjoint
    double modulus_residual = std::numeric_limits<double>::infinity();
    double gram_residual = std::numeric_limits<double>::infinity();
};

inline double skew_residual(const ComplexMatrix &m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    // (M - I) + (M - I)^* = M + M^* - 2I
    return max_abs_diff(m + adjoint(m), 2.0 * ComplexMatrix::identity(m.rows()));
}

inline bool is_skew(const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
    return skew_residual(m) <= cfg.verify_tol;
}

/// Angular distance from z's argument to the nearest p-th root of unity.
inline double root_angle_distance(Complex z, int p) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double a = std::arg(z);
    const double k = std::round(a * p / two_pi);
    return std::abs(a - k * two_pi / p);
}

namespace detail {

inline std::optional<int> smallest_root_order(const ComplexMatrix &unimodular, int pmax, double angle_tol) {
    for (int p = 1; p <= pmax; ++p) {
        bool ok = true;
        for (const auto &z : unimodular.entries()) {
            if (root_angle_distance(z, p) > angle_tol) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

}  // namespace detail

/// Detects the scale from the modulus of the (0,0) entry, then checks that
/// scale*M has unimodular entries and (scale*M)(scale*M)^* = n I.
inline HadamardReport verify_hadamard(const ComplexMatrix &m, const ToleranceConfig &cfg = {},
                                      int pmax = kDefaultButsonSearchLimit) {
    HadamardReport rep;
    rep.order = m.rows();
    if (!m.is_square()) return rep;
    const double first = std::abs(m(0, 0));
    if (first <= cfg.prune_tol) return rep;
    rep.scale = 1.0 / first;
    const ComplexMatrix h = rep.scale * m;
    rep.modulus_residual = 0.0;
    for (const auto &z : h.entries()) rep.modulus_residual = std::max(rep.modulus_residual, std::abs(std::abs(z) - 1.0));
    rep.gram_residual =
        max_abs_diff(matmul(h, adjoint(h)), static_cast<double>(rep.order) * ComplexMatrix::identity(rep.order));
    rep.is_hadamard = rep.modulus_residual <= cfg.verify_tol && rep.gram_residual <= cfg.verify_tol;
    rep.symmetric = is_self_adjoint(h, cfg);
    rep.skew = is_skew(h, cfg);
    if (rep.is_hadamard) rep.butson_p = detail::smallest_root_order(h, pmax, 10.0 * cfg.verify_tol);
    return rep;
}

/// Smallest p <= pmax such that every scaled entry is a p-th root of unity.
inline std::optional<int> butson_type(const ComplexMatrix &m, int pmax = kDefaultButsonSearchLimit,
                                      const ToleranceConfig &cfg = {}) {
    const auto rep = verify_hadamard(m, cfg, pmax);
    if (!rep.is_hadamard) {
        throw Error(ErrorCode::NotHadamard, "butson_type: input is not Hadamard",
                    std::max(rep.modulus_residual, rep.gram_residual));
    }
    return rep.butson_p;
}

}  // namespace mxforge
