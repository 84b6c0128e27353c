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

// Unitary space-time constellations and their diversity quality
//   zeta = 1/2 min_{l != m} |det(V_l - V_m)|^{1/M}.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mxforge/builders.hpp"
#include "mxforge/cosi.hpp"
#include "mxforge/tangle.hpp"

namespace mxforge {

class Constellation {
   public:
    /// Throws NotUnitary or SizeMismatch. Repeated members are allowed; they
    /// simply make the constellation lose full diversity.
    Constellation(std::vector<ComplexMatrix> members, std::string label = {}, const ToleranceConfig &cfg = {})
        : members_(std::move(members)), label_(std::move(label)) {
        if (members_.empty()) throw Error(ErrorCode::TooFew, "constellation has no members");
        const std::size_t m = members_.front().rows();
        for (std::size_t i = 0; i < members_.size(); ++i) {
            const auto &v = members_[i];
            if (v.rows() != m || v.cols() != m) {
                throw Error(ErrorCode::SizeMismatch, "member " + std::to_string(i) + " is not " + std::to_string(m) +
                                                         "x" + std::to_string(m));
            }
            const double r = unitary_residual(v);
            if (r > cfg.verify_tol) throw Error(ErrorCode::NotUnitary, "member " + std::to_string(i) + " is not unitary", r);
        }
    }

    std::size_t antennas() const noexcept { return members_.front().rows(); }  // M
    std::size_t size() const noexcept { return members_.size(); }              // L
    const ComplexMatrix &operator[](std::size_t i) const { return members_.at(i); }
    const std::vector<ComplexMatrix> &members() const noexcept { return members_; }
    const std::string &label() const noexcept { return label_; }

    /// True when every pair differs somewhere by more than verify_tol.
    bool distinct(const ToleranceConfig &cfg = {}) const {
        for (std::size_t i = 0; i < members_.size(); ++i)
            for (std::size_t j = i + 1; j < members_.size(); ++j)
                if (max_abs_diff(members_[i], members_[j]) <= cfg.verify_tol) return false;
        return true;
    }

   private:
    std::vector<ComplexMatrix> members_;
    std::string label_;
};

/// R = log2(L) / M.
inline double rate(const Constellation &v) {
    return std::log2(static_cast<double>(v.size())) / static_cast<double>(v.antennas());
}

struct QualityReport {
    double zeta = 0.0;
    std::pair<std::size_t, std::size_t> argmin{0, 1};
    double min_abs_det = 0.0;
    bool full_diversity = false;
    double rate = 0.0;
};

/// Exhaustive pairwise scan; ties go to the lexicographically first pair.
inline QualityReport quality(const Constellation &v, const ToleranceConfig &cfg = {}) {
    if (v.size() < 2) throw Error(ErrorCode::TooFew, "quality needs at least two members");
    QualityReport rep;
    rep.min_abs_det = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < v.size(); ++l) {
        for (std::size_t m = l + 1; m < v.size(); ++m) {
            const double d = std::abs(determinant(v[l] - v[m]));
            if (d < rep.min_abs_det) {
                rep.min_abs_det = d;
                rep.argmin = {l, m};
            }
        }
    }
    rep.zeta = 0.5 * std::pow(rep.min_abs_det, 1.0 / static_cast<double>(v.antennas()));
    rep.full_diversity = rep.min_abs_det > cfg.verify_tol;
    rep.rate = rate(v);
    return rep;
}

/// |1 - e^{i theta}|.
inline double chord(double theta) { return 2.0 * std::abs(std::sin(0.5 * theta)); }

/// sin(pi / n), the quality of the n-th root diagonal constellation.
inline double predicted_quality(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "predicted_quality needs n >= 2");
    return std::sin(std::numbers::pi / static_cast<double>(n));
}

/// Member t (t = 0..nroots-1) is the block circulant matrix of the COSI set
/// with every block column scaled by w^t, w = e^{2 pi i / nroots}.
inline Constellation build_diag_root_constellation(const CosiSet &set, std::size_t nroots,
                                                   const ToleranceConfig &cfg = {}) {
    if (nroots < 1) throw Error(ErrorCode::SizeMismatch, "nroots must be positive");
    const LatinSquare square = circulant_square(set.size());
    std::vector<ComplexMatrix> members;
    members.reserve(nroots);
    for (std::size_t t = 0; t < nroots; ++t) {
        const std::vector<Complex> alphas(set.size(),
                                          root_of_unity(static_cast<long>(nroots), static_cast<long>(t)));
        members.push_back(block_latin_unitary(set, square, PhaseGrid::columns(alphas), cfg));
    }
    return Constellation(std::move(members), "diag-root n=" + std::to_string(nroots), cfg);
}

/// Permutations of 0..k-1 without fixed points, in lexicographic order.
inline std::vector<std::vector<std::size_t>> derangements(std::size_t k) {
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) ok = p[i] != i;
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

struct LiftReport {
    Constellation lifted;
    std::optional<double> base_zeta;      // quality of the constellation being lifted
    std::optional<double> measured_zeta;  // quality of the lift, when it has two or more members
};

namespace detail {

inline std::optional<double> zeta_if_defined(const Constellation &v, const ToleranceConfig &cfg) {
    if (v.size() < 2) return std::nullopt;
    return quality(v, cfg).zeta;
}

}  // namespace detail

/// Members (U; A_{s(1)}, ..., A_{s(k)}) over all derangements s of the base.
inline LiftReport derangement_lift(const std::vector<ComplexMatrix> &base, const ComplexMatrix &u,
                                   const ToleranceConfig &cfg = {}) {
    const Constellation base_set(base, "base", cfg);
    const double r = unitary_residual(u);
    if (r > cfg.verify_tol) throw Error(ErrorCode::NotUnitary, "shuffler is not unitary", r);
    if (u.rows() != base.size()) throw Error(ErrorCode::CountMismatch, "shuffler order differs from base size");
    std::vector<ComplexMatrix> members;
    for (const auto &perm : derangements(base.size())) {
        std::vector<ComplexMatrix> tangles;
        for (auto idx : perm) tangles.push_back(base[idx]);
        members.push_back(left_tangle(u, tangles));
    }
    Constellation lifted(std::move(members), "derangement lift", cfg);
    auto measured = detail::zeta_if_defined(lifted, cfg);
    return {std::move(lifted), detail::zeta_if_defined(base_set, cfg), measured};
}

/// Members (U_i; A_1, ..., A_k) for each shuffler U_i of `shufflers`.
inline LiftReport shuffler_lift(const Constellation &shufflers, const std::vector<ComplexMatrix> &tangles,
                                const ToleranceConfig &cfg = {}) {
    for (std::size_t i = 0; i < tangles.size(); ++i) {
        const double r = unitary_residual(tangles[i]);
        if (r > cfg.verify_tol) throw Error(ErrorCode::NotUnitary, "tangle " + std::to_string(i) + " is not unitary", r);
    }
    std::vector<ComplexMatrix> members;
    for (const auto &u : shufflers.members()) members.push_back(left_tangle(u, tangles));
    Constellation lifted(std::move(members), "shuffler lift", cfg);
    auto measured = detail::zeta_if_defined(lifted, cfg);
    return {std::move(lifted), detail::zeta_if_defined(shufflers, cfg), measured};
}

}  // namespace mxforge
