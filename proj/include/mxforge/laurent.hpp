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

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "mxforge/core.hpp"

namespace mxforge {

/// Exponents of a Laurent monomial z_1^e_1 ... z_k^e_k; negative entries allowed.
struct ExponentVector {
    std::vector<int> exps;

    ExponentVector() = default;
    explicit ExponentVector(std::size_t nvars) : exps(nvars, 0) {}
    ExponentVector(std::initializer_list<int> e) : exps(e) {}
    explicit ExponentVector(std::vector<int> e) : exps(std::move(e)) {}

    std::size_t size() const noexcept { return exps.size(); }
    int operator[](std::size_t i) const { return exps[i]; }

    static ExponentVector unit(std::size_t nvars, std::size_t var, int power = 1) {
        ExponentVector e(nvars);
        e.exps[var] = power;
        return e;
    }

    ExponentVector negated() const {
        ExponentVector out(*this);
        for (auto &x : out.exps) x = -x;
        return out;
    }

    ExponentVector padded(std::size_t nvars) const {
        ExponentVector out(*this);
        out.exps.resize(std::max(nvars, exps.size()), 0);
        return out;
    }

    friend ExponentVector operator+(const ExponentVector &a, const ExponentVector &b) {
        ExponentVector out(a);
        for (std::size_t i = 0; i < b.exps.size(); ++i) out.exps[i] += b.exps[i];
        return out;
    }
    friend bool operator==(const ExponentVector &a, const ExponentVector &b) { return a.exps == b.exps; }
    friend bool operator<(const ExponentVector &a, const ExponentVector &b) { return a.exps < b.exps; }
};

/// Sparse finite Laurent polynomial in a fixed number of commuting variables.
class LaurentPolynomial {
   public:
    using TermMap = std::map<ExponentVector, Complex>;

    explicit LaurentPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentPolynomial constant(std::size_t nvars, Complex c) {
        LaurentPolynomial p(nvars);
        p.add_term(ExponentVector(nvars), c);
        return p;
    }

    static LaurentPolynomial monomial(const ExponentVector &e, Complex c = 1.0) {
        LaurentPolynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const ExponentVector &e, Complex c) {
        if (e.size() != nvars_) {
            throw Error(ErrorCode::VariableCountMismatch, "exponent vector length " + std::to_string(e.size()) +
                                                              " for " + std::to_string(nvars_) + " variables");
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(ErrorCode::InvalidArgument, "non-finite Laurent coefficient");
        }
        if (c == Complex{}) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }

    Complex coefficient(const ExponentVector &e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Complex{} : it->second;
    }

    void prune(double tol) {
        std::erase_if(terms_, [tol](const auto &kv) { return std::abs(kv.second) < tol; });
    }

    LaurentPolynomial padded(std::size_t nvars) const {
        if (nvars < nvars_) throw Error(ErrorCode::VariableCountMismatch, "cannot drop variables");
        LaurentPolynomial out(nvars);
        for (const auto &[e, c] : terms_) out.terms_.emplace(e.padded(nvars), c);
        return out;
    }

    /// Conjugates coefficients and inverts every variable.
    LaurentPolynomial para_conjugate() const {
        LaurentPolynomial out(nvars_);
        for (const auto &[e, c] : terms_) out.terms_.emplace(e.negated(), std::conj(c));
        return out;
    }

    Complex evaluate(std::span<const Complex> point) const {
        if (point.size() != nvars_) {
            throw Error(ErrorCode::ArityMismatch, "evaluation point has " + std::to_string(point.size()) +
                                                      " coordinates for " + std::to_string(nvars_) + " variables");
        }
        Complex sum{};
        for (const auto &[e, c] : terms_) {
            Complex term = c;
            for (std::size_t v = 0; v < nvars_; ++v) {
                if (e[v] != 0) term *= std::pow(point[v], e[v]);
            }
            sum += term;
        }
        return sum;
    }

    LaurentPolynomial &operator+=(const LaurentPolynomial &o) {
        require_same_vars(o);
        for (const auto &[e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial &operator*=(Complex s) {
        if (s == Complex{}) {
            terms_.clear();
            return *this;
        }
        for (auto &kv : terms_) kv.second *= s;
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial &b) { return a += b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial &a, const LaurentPolynomial &b) {
        a.require_same_vars(b);
        LaurentPolynomial out(a.nvars_);
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }
    friend LaurentPolynomial operator*(Complex s, LaurentPolynomial p) { return p *= s; }

   private:
    void require_same_vars(const LaurentPolynomial &o) const {
        if (o.nvars_ != nvars_) throw Error(ErrorCode::VariableCountMismatch, "polynomials over different variables");
    }

    std::size_t nvars_;
    TermMap terms_;
};

/// Matrix whose entries are Laurent polynomials over `nvars` variables.
class LaurentMatrix {
   public:
    LaurentMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPolynomial(nvars)) {
        if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
    }

    /// The constant matrix C, i.e. C * z^0.
    static LaurentMatrix constant(const ComplexMatrix &c, std::size_t nvars) {
        return monomial(c, ExponentVector(nvars));
    }

    /// C * z^e.
    static LaurentMatrix monomial(const ComplexMatrix &c, const ExponentVector &e) {
        LaurentMatrix out(c.rows(), c.cols(), e.size());
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) out(i, j).add_term(e, c(i, j));
        return out;
    }

    static LaurentMatrix identity(std::size_t n, std::size_t nvars) {
        return constant(ComplexMatrix::identity(n), nvars);
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nvars() const noexcept { return nvars_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    LaurentPolynomial &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const LaurentPolynomial &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// All exponent vectors occurring in any entry, ordered.
    std::set<ExponentVector> support() const {
        std::set<ExponentVector> out;
        for (const auto &p : data_)
            for (const auto &kv : p.terms()) out.insert(kv.first);
        return out;
    }

    /// Coefficient matrix of the monomial z^e.
    ComplexMatrix coefficient(const ExponentVector &e) const {
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).coefficient(e);
        return out;
    }

    void prune(double tol) {
        for (auto &p : data_) p.prune(tol);
    }

    /// Same matrix viewed over `nvars` >= nvars() variables; new variables are appended.
    LaurentMatrix padded(std::size_t nvars) const {
        if (nvars == nvars_) return *this;
        LaurentMatrix out(rows_, cols_, nvars);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].padded(nvars);
        return out;
    }

    void set_block(std::size_t r0, std::size_t c0, const LaurentMatrix &b) {
        if (b.nvars_ != nvars_) throw Error(ErrorCode::VariableCountMismatch, "set_block: variable count differs");
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    LaurentMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
        LaurentMatrix out(nr, nc, nvars_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    LaurentMatrix &operator+=(const LaurentMatrix &o) {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
        if (o.nvars_ != nvars_) throw Error(ErrorCode::VariableCountMismatch, "variable count differs");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    LaurentMatrix &scale(const LaurentPolynomial &s) {
        for (auto &p : data_) p = s * p;
        return *this;
    }

    friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix &b) { return a += b; }

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t nvars_;
    std::vector<LaurentPolynomial> data_;
};

/// P^*(z^{-1}): transpose, conjugate coefficients, negate exponents.
inline LaurentMatrix para_adjoint(const LaurentMatrix &p) {
    LaurentMatrix out(p.cols(), p.rows(), p.nvars());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) out(j, i) = p(i, j).para_conjugate();
    return out;
}

inline LaurentMatrix laurent_mul(const LaurentMatrix &p, const LaurentMatrix &q, const ToleranceConfig &cfg = {}) {
    if (p.cols() != q.rows()) throw Error(ErrorCode::DimensionMismatch, "laurent_mul: inner dimensions differ");
    if (p.nvars() != q.nvars()) throw Error(ErrorCode::VariableCountMismatch, "laurent_mul: variable counts differ");
    LaurentMatrix out(p.rows(), q.cols(), p.nvars());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < q.cols(); ++j) {
            LaurentPolynomial acc(p.nvars());
            for (std::size_t k = 0; k < p.cols(); ++k) {
                if (p(i, k).is_zero() || q(k, j).is_zero()) continue;
                for (const auto &[ea, ca] : p(i, k).terms())
                    for (const auto &[eb, cb] : q(k, j).terms()) acc.add_term(ea + eb, ca * cb);
            }
            acc.prune(cfg.prune_tol);
            out(i, j) = std::move(acc);
        }
    }
    return out;
}

inline ComplexMatrix laurent_eval(const LaurentMatrix &p, std::span<const Complex> point) {
    if (point.size() != p.nvars()) {
        throw Error(ErrorCode::ArityMismatch, "laurent_eval: point has " + std::to_string(point.size()) +
                                                  " coordinates for " + std::to_string(p.nvars()) + " variables");
    }
    ComplexMatrix out(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = p(i, j).evaluate(point);
    return out;
}

/// Largest coefficient modulus of P - Q over the union of supports.
inline double max_coefficient_diff(const LaurentMatrix &p, const LaurentMatrix &q) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
    if (p.nvars() != q.nvars()) throw Error(ErrorCode::VariableCountMismatch, "variable count differs");
    double best = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            for (const auto &[e, c] : p(i, j).terms()) best = std::max(best, std::abs(c - q(i, j).coefficient(e)));
            for (const auto &[e, c] : q(i, j).terms())
                if (p(i, j).coefficient(e) == Complex{}) best = std::max(best, std::abs(c));
        }
    }
    return best;
}

/// Largest coefficient modulus of P P~ - I; +inf when P is not square.
inline double paraunitary_residual(const LaurentMatrix &p, const ToleranceConfig &cfg = {}) {
    if (!p.is_square()) return std::numeric_limits<double>::infinity();
    return max_coefficient_diff(laurent_mul(p, para_adjoint(p), cfg), LaurentMatrix::identity(p.rows(), p.nvars()));
}

inline bool is_paraunitary(const LaurentMatrix &p, const ToleranceConfig &cfg = {}) {
    return paraunitary_residual(p, cfg) <= cfg.verify_tol;
}

}  // namespace mxforge
