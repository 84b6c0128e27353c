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

// Unitary, paraunitary and symmetric-unitary matrices assembled from COSI sets.

#pragma once

#include <optional>
#include <sstream>
#include <string_view>
#include <variant>
#include <vector>

#include "mxforge/cosi.hpp"
#include "mxforge/laurent.hpp"

namespace mxforge {

/// k x k grid over {0..k-1} with every symbol once per row and per column.
class LatinSquare {
   public:
    static LatinSquare from_grid(std::vector<std::vector<std::size_t>> grid) {
        const std::size_t k = grid.size();
        if (k == 0) throw Error(ErrorCode::InvalidArgument, "latin square must be non-empty");
        for (const auto &row : grid) {
            if (row.size() != k) throw Error(ErrorCode::InvalidArgument, "latin square must be k x k");
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<bool> in_row(k), in_col(k);
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t a = grid[i][j];
                const std::size_t b = grid[j][i];
                if (a >= k || b >= k) throw Error(ErrorCode::InvalidArgument, "latin square symbol out of range");
                if (in_row[a]) throw Error(ErrorCode::InvalidArgument, "symbol repeated in row " + std::to_string(i));
                if (in_col[b]) throw Error(ErrorCode::InvalidArgument, "symbol repeated in column " + std::to_string(i));
                in_row[a] = in_col[b] = true;
            }
        }
        return LatinSquare(std::move(grid));
    }

    /// Parses "0 1;1 0": rows separated by ';', symbols by whitespace.
    static LatinSquare parse(std::string_view text) {
        std::vector<std::vector<std::size_t>> grid;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t end = std::min(text.find(';', start), text.size());
            std::istringstream row_stream{std::string(text.substr(start, end - start))};
            std::vector<std::size_t> row;
            long v = 0;
            while (row_stream >> v) {
                if (v < 0) throw Error(ErrorCode::ParseError, "negative latin square symbol");
                row.push_back(static_cast<std::size_t>(v));
            }
            if (!row_stream.eof()) throw Error(ErrorCode::ParseError, "bad latin square text: " + std::string(text));
            if (!row.empty()) grid.push_back(std::move(row));
            start = end + 1;
        }
        return from_grid(std::move(grid));
    }

    std::size_t order() const noexcept { return grid_.size(); }
    std::size_t operator()(std::size_t i, std::size_t j) const { return grid_[i][j]; }
    const std::vector<std::vector<std::size_t>> &grid() const noexcept { return grid_; }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < order(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (grid_[i][j] != grid_[j][i]) return false;
        return true;
    }

    std::string to_text() const {
        std::string out;
        for (std::size_t i = 0; i < order(); ++i) {
            if (i) out += ';';
            for (std::size_t j = 0; j < order(); ++j) {
                if (j) out += ' ';
                out += std::to_string(grid_[i][j]);
            }
        }
        return out;
    }

   private:
    explicit LatinSquare(std::vector<std::vector<std::size_t>> g) : grid_(std::move(g)) {}
    std::vector<std::vector<std::size_t>> grid_;
};

/// Row i is the first row shifted right by i: grid(i, j) = (j - i) mod k.
inline LatinSquare circulant_square(std::size_t k) {
    std::vector<std::vector<std::size_t>> g(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g[i][j] = (j + k - i) % k;
    return LatinSquare::from_grid(std::move(g));
}

/// grid(i, j) = (i + j) mod k; symmetric.
inline LatinSquare reverse_circulant_square(std::size_t k) {
    std::vector<std::vector<std::size_t>> g(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g[i][j] = (i + j) % k;
    return LatinSquare::from_grid(std::move(g));
}

/// Scalars attached to the blocks of a Latin arrangement.
struct PhaseGrid {
    ComplexMatrix phases;

    static PhaseGrid ones(std::size_t k) {
        PhaseGrid g{ComplexMatrix(k, k)};
        for (auto &z : g.phases.entries()) z = 1.0;
        return g;
    }
    /// Column j of every block row carries alpha_j.
    static PhaseGrid columns(std::span<const Complex> alphas) {
        const std::size_t k = alphas.size();
        PhaseGrid g{ComplexMatrix(k, k)};
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) g.phases(i, j) = alphas[j];
        return g;
    }
    std::size_t order() const noexcept { return phases.rows(); }
};

struct Monomial {
    ExponentVector exps;
    Complex coef = 1.0;
};

/// Monomials attached to the blocks of a Latin arrangement.
class MonomialGrid {
   public:
    MonomialGrid(std::size_t order, std::size_t nvars)
        : order_(order), nvars_(nvars), cells_(order * order, Monomial{ExponentVector(nvars), 1.0}) {}

    /// Block (i, j) carries its own variable z_{i k + j}.
    static MonomialGrid distinct_variables(std::size_t k) {
        MonomialGrid g(k, k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) g.at(i, j).exps = ExponentVector::unit(k * k, i * k + j);
        return g;
    }

    std::size_t order() const noexcept { return order_; }
    std::size_t nvars() const noexcept { return nvars_; }
    Monomial &at(std::size_t i, std::size_t j) { return cells_.at(i * order_ + j); }
    const Monomial &at(std::size_t i, std::size_t j) const { return cells_.at(i * order_ + j); }

   private:
    std::size_t order_;
    std::size_t nvars_;
    std::vector<Monomial> cells_;
};

/// Block (i, j) is E_{square(i, j)} * phases(i, j). Unitary whenever the
/// phases are unimodular.
inline ComplexMatrix block_latin_unitary(const CosiSet &set, const LatinSquare &square,
                                         const std::optional<PhaseGrid> &phases = std::nullopt,
                                         const ToleranceConfig &cfg = {}) {
    const std::size_t k = square.order();
    if (k != set.size()) {
        throw Error(ErrorCode::OrderMismatch, "latin square order " + std::to_string(k) + " for COSI set of size " +
                                                  std::to_string(set.size()));
    }
    const PhaseGrid grid = phases.value_or(PhaseGrid::ones(k));
    if (grid.order() != k || !grid.phases.is_square()) throw Error(ErrorCode::OrderMismatch, "phase grid order differs");
    for (const auto &z : grid.phases.entries()) {
        if (std::abs(std::abs(z) - 1.0) > cfg.verify_tol) {
            throw Error(ErrorCode::NonUnitPhase, "phase of modulus " + std::to_string(std::abs(z)),
                        std::abs(std::abs(z) - 1.0));
        }
    }
    const std::size_t n = set.dim();
    ComplexMatrix g(n * k, n * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g.set_block(i * n, j * n, grid.phases(i, j) * set[square(i, j)]);
    return g;
}

/// Paraunitary analogue of block_latin_unitary with monomials on the blocks.
inline LaurentMatrix block_latin_laurent(const CosiSet &set, const LatinSquare &square, const MonomialGrid &monomials,
                                         const ToleranceConfig &cfg = {}) {
    const std::size_t k = square.order();
    if (k != set.size() || monomials.order() != k) {
        throw Error(ErrorCode::OrderMismatch, "latin square, monomial grid and COSI set sizes differ");
    }
    const std::size_t n = set.dim();
    LaurentMatrix g(n * k, n * k, monomials.nvars());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Monomial &m = monomials.at(i, j);
            if (m.exps.size() != monomials.nvars()) {
                throw Error(ErrorCode::VariableCountMismatch, "monomial exponent length differs from grid");
            }
            if (std::abs(std::abs(m.coef) - 1.0) > cfg.verify_tol) {
                throw Error(ErrorCode::NonUnitPhase, "monomial coefficient is not unimodular",
                            std::abs(std::abs(m.coef) - 1.0));
            }
            g.set_block(i * n, j * n, LaurentMatrix::monomial(m.coef * set[square(i, j)], m.exps));
        }
    }
    g.prune(cfg.prune_tol);
    return g;
}

/// True iff para_adjoint(G) == G coefficientwise.
inline bool is_para_self_adjoint(const LaurentMatrix &g, const ToleranceConfig &cfg = {}) {
    if (!g.is_square()) return false;
    return max_coefficient_diff(para_adjoint(g), g) <= cfg.verify_tol;
}

/// Builds the block Latin matrix and checks whether it equals its para-adjoint.
inline bool reverse_symmetric_check(const CosiSet &set, const LatinSquare &square, const MonomialGrid &monomials,
                                    const ToleranceConfig &cfg = {}) {
    return is_para_self_adjoint(block_latin_laurent(set, square, monomials, cfg), cfg);
}

/// sum_j sign_j E_j z^{t_j}
struct SignedSingleVar {
    std::vector<int> signs;
    std::vector<int> exps;
};
/// sum_j E_j z_j over k variables
struct MultiVar {};
/// sum_j e^{i theta_j} E_j z^{t_j}
struct Phased {
    std::vector<double> thetas;
    std::vector<int> exps;
};
using CosiPolyMode = std::variant<SignedSingleVar, MultiVar, Phased>;

inline LaurentMatrix cosi_poly(const CosiSet &set, const CosiPolyMode &mode, const ToleranceConfig &cfg = {}) {
    const std::size_t k = set.size();
    const std::size_t n = set.dim();
    auto require_len = [k](std::size_t len, const char *what) {
        if (len != k) {
            throw Error(ErrorCode::ArityMismatch, std::string(what) + " has length " + std::to_string(len) +
                                                      " for a COSI set of size " + std::to_string(k));
        }
    };
    LaurentMatrix out = std::visit(
        [&](const auto &m) -> LaurentMatrix {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, SignedSingleVar>) {
                require_len(m.signs.size(), "signs");
                require_len(m.exps.size(), "exps");
                LaurentMatrix acc(n, n, 1);
                for (std::size_t j = 0; j < k; ++j) {
                    if (m.signs[j] != 1 && m.signs[j] != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
                    acc += LaurentMatrix::monomial(static_cast<double>(m.signs[j]) * set[j], ExponentVector{m.exps[j]});
                }
                return acc;
            } else if constexpr (std::is_same_v<M, MultiVar>) {
                LaurentMatrix acc(n, n, k);
                for (std::size_t j = 0; j < k; ++j) acc += LaurentMatrix::monomial(set[j], ExponentVector::unit(k, j));
                return acc;
            } else {
                require_len(m.thetas.size(), "thetas");
                require_len(m.exps.size(), "exps");
                LaurentMatrix acc(n, n, 1);
                for (std::size_t j = 0; j < k; ++j)
                    acc += LaurentMatrix::monomial(std::polar(1.0, m.thetas[j]) * set[j], ExponentVector{m.exps[j]});
                return acc;
            }
        },
        mode);
    out.prune(cfg.prune_tol);
    return out;
}

/// I - 2E: self-adjoint, unitary, with eigenvalue -1 of multiplicity rank(E).
inline ComplexMatrix symmetric_unitary_from_idempotent(const ComplexMatrix &e, const ToleranceConfig &cfg = {}) {
    if (!e.is_square()) throw Error(ErrorCode::NonSquare, "idempotent must be square");
    const double idem = max_abs_diff(matmul(e, e), e);
    if (idem > cfg.verify_tol) throw Error(ErrorCode::NotIdempotent, "E^2 != E", idem);
    const double sa = self_adjoint_residual(e);
    if (sa > cfg.verify_tol) throw Error(ErrorCode::NotIdempotent, "E is not self-adjoint", sa);
    return ComplexMatrix::identity(e.rows()) - 2.0 * e;
}

/// Level 0 is U = (E1 E2; E2 E1); level m+1 uses the COSI
/// {(I - U_m)/2, (I + U_m)/2}. Sizes double at each level.
inline std::vector<ComplexMatrix> nott_series(const ComplexMatrix &e1, const ComplexMatrix &e2, std::size_t depth,
                                              const ToleranceConfig &cfg = {}) {
    if (depth == 0) throw Error(ErrorCode::InvalidArgument, "nott_series: depth must be positive");
    const LatinSquare swap = LatinSquare::from_grid({{0, 1}, {1, 0}});
    auto as_cosi = [&](ComplexMatrix a, ComplexMatrix b) {
        try {
            return CosiSet::validate({std::move(a), std::move(b)}, cfg);
        } catch (const Error &err) {
            throw Error(ErrorCode::NotCosi, err.what(), err.residual());
        }
    };
    std::vector<ComplexMatrix> levels;
    levels.push_back(block_latin_unitary(as_cosi(e1, e2), swap, std::nullopt, cfg));
    while (levels.size() < depth) {
        const ComplexMatrix &u = levels.back();
        const ComplexMatrix id = ComplexMatrix::identity(u.rows());
        levels.push_back(block_latin_unitary(as_cosi(0.5 * (id - u), 0.5 * (id + u)), swap, std::nullopt, cfg));
    }
    return levels;
}

struct FilterStage {
    double theta = 0.0;
    int first_exp = 0;
    int second_exp = 1;
};

/// Product over stages of E_1(theta) z^{a} + E_2(theta) z^{b} with
/// {E_1, E_2} = rotation_cosi(theta); a 1-D real paraunitary polyphase matrix.
inline LaurentMatrix filterbank_cascade(std::span<const FilterStage> stages, const ToleranceConfig &cfg = {}) {
    if (stages.empty()) throw Error(ErrorCode::InvalidArgument, "filterbank_cascade needs at least one stage");
    LaurentMatrix acc = LaurentMatrix::identity(2, 1);
    for (const auto &st : stages) {
        const auto factor = cosi_poly(rotation_cosi(st.theta, cfg), SignedSingleVar{{1, 1}, {st.first_exp, st.second_exp}}, cfg);
        acc = laurent_mul(acc, factor, cfg);
    }
    return acc;
}

}  // namespace mxforge
