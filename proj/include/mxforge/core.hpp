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
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mxforge {

using Complex = std::complex<double>;

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    DimensionMismatch,
    NonSquare,
    VariableCountMismatch,
    ArityMismatch,
    NotIdempotent,
    NotSelfAdjoint,
    NotOrthogonal,
    NotComplete,
    NotUnitary,
    NotCosi,
    BadPartition,
    NotFourier,
    OrderMismatch,
    NonUnitPhase,
    CountMismatch,
    ShapeMismatch,
    BadBlocking,
    ConstituentViolation,
    PolicyExhausted,
    NotHadamard,
    ModeViolation,
    TooFew,
    SizeMismatch,
    UnknownExample,
};

inline const char *to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::VariableCountMismatch: return "VariableCountMismatch";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::NotIdempotent: return "NotIdempotent";
        case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotComplete: return "NotComplete";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NotCosi: return "NotCosi";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::NotFourier: return "NotFourier";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::NonUnitPhase: return "NonUnitPhase";
        case ErrorCode::CountMismatch: return "CountMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::BadBlocking: return "BadBlocking";
        case ErrorCode::ConstituentViolation: return "ConstituentViolation";
        case ErrorCode::PolicyExhausted: return "PolicyExhausted";
        case ErrorCode::NotHadamard: return "NotHadamard";
        case ErrorCode::ModeViolation: return "ModeViolation";
        case ErrorCode::TooFew: return "TooFew";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::UnknownExample: return "UnknownExample";
    }
    return "Unknown";
}

/// Every failure raised by the library. `residual()` carries the offending
/// norm for numerical checks and is zero for structural errors.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, double residual = 0.0)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), residual_(residual) {}

    ErrorCode code() const noexcept { return code_; }
    double residual() const noexcept { return residual_; }

   private:
    ErrorCode code_;
    double residual_;
};

struct ToleranceConfig {
    double verify_tol = 1e-9;
    double prune_tol = 1e-12;

    void check() const {
        if (!(0.0 < prune_tol && prune_tol < verify_tol && verify_tol < 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "tolerances must satisfy 0 < prune_tol < verify_tol < 1");
        }
    }
};

/// Dense row-major matrix of binary64 complex scalars.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        check_shape();
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        check_shape();
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
        }
        check_finite();
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        check_shape();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix scalar(Complex value) { return ComplexMatrix(1, 1, {value}); }

    static ComplexMatrix diagonal(std::span<const Complex> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) {
            throw Error(ErrorCode::DimensionMismatch, "block out of range");
        }
        ComplexMatrix out(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix &b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
            throw Error(ErrorCode::DimensionMismatch, "block out of range");
        }
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    ComplexMatrix column(std::size_t j) const { return block(0, j, rows_, 1); }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix &operator*=(Complex s) {
        for (auto &x : data_) x *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
    }

   private:
    void check_shape() const {
        if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
    }
    void check_finite() const {
        if (!all_finite()) throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
    void require_same_shape(const ComplexMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

inline ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matmul: " + std::to_string(a.rows()) + "x" +
                                                      std::to_string(a.cols()) + " times " +
                                                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }

inline Complex trace(const ComplexMatrix &m) {
    if (!m.is_square()) throw Error(ErrorCode::NonSquare, "trace of non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// LU with partial pivoting. Triangular inputs reduce to the exact diagonal
/// product since no elimination is performed below a zero sub-column.
inline Complex determinant(const ComplexMatrix &m) {
    if (!m.is_square()) throw Error(ErrorCode::NonSquare, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    ComplexMatrix lu = m;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            det = -det;
        }
        const Complex p = lu(col, col);
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) / p;
            if (f == Complex{}) continue;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return det;
}

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
inline ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c) out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    return out;
}

inline ComplexMatrix direct_sum(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

inline double max_abs(const ComplexMatrix &m) {
    double best = 0.0;
    for (const auto &z : m.entries()) best = std::max(best, std::abs(z));
    return best;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "max_abs_diff: shape mismatch");
    }
    double best = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
    return best;
}

/// max |M M* - I|; +inf for non-square input.
inline double unitary_residual(const ComplexMatrix &m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    return max_abs_diff(matmul(m, adjoint(m)), ComplexMatrix::identity(m.rows()));
}

inline bool is_unitary(const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
    return unitary_residual(m) <= cfg.verify_tol;
}

inline double self_adjoint_residual(const ComplexMatrix &m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    return max_abs_diff(m, adjoint(m));
}

inline bool is_self_adjoint(const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
    return self_adjoint_residual(m) <= cfg.verify_tol;
}

/// exp(2*pi*i*j/n), exact at the four quadrant points.
inline Complex root_of_unity(long n, long j) {
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "root_of_unity: order must be positive");
    long r = ((j % n) + n) % n;
    if ((4 * r) % n == 0) {
        switch ((4 * r) / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

/// Unnormalised Fourier matrix F(r,s) = w^(r s), w = exp(2 pi i / n).
inline ComplexMatrix fourier_matrix(std::size_t n) {
    ComplexMatrix f(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) f(r, s) = root_of_unity(static_cast<long>(n), static_cast<long>(r * s));
    return f;
}

/// circ(a_1,...,a_k): row i is the first row cyclically shifted right by i.
inline ComplexMatrix circulant(std::span<const Complex> first_row) {
    const std::size_t k = first_row.size();
    ComplexMatrix out(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) out(r, s) = first_row[(s + k - r) % k];
    return out;
}

inline ComplexMatrix circulant(std::initializer_list<Complex> first_row) {
    return circulant(std::span<const Complex>(first_row.begin(), first_row.size()));
}

}  // namespace mxforge
