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
#include <vector>

#include "mxforge/core.hpp"

namespace mxforge {

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Each rotation first rephases column q so that the
/// pivot a(p,q) is real, then applies the real symmetric Jacobi rotation.
inline HermitianEigen hermitian_eigen(const ComplexMatrix &m, int max_sweeps = 100) {
    if (!m.is_square()) throw Error(ErrorCode::NonSquare, "hermitian_eigen: non-square input");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    // Symmetrise away round-off so the iteration sees an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(max_abs(a), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= 1e-300) continue;
                const Complex phase = a(p, q) / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // W = D G with D = diag(.., 1, .., e^{-i phi}, ..), G the real rotation.
                const Complex wpp = c;
                const Complex wpq = s;
                const Complex wqp = -s * std::conj(phase);
                const Complex wqq = c * std::conj(phase);

                for (std::size_t r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = arp * wpp + arq * wqp;
                    a(r, q) = arp * wpq + arq * wqq;
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = vrp * wpp + vrq * wqp;
                    v(r, q) = vrp * wpq + vrq * wqq;
                }
                for (std::size_t c2 = 0; c2 < n; ++c2) {
                    const Complex apc = a(p, c2);
                    const Complex aqc = a(q, c2);
                    a(p, c2) = std::conj(wpp) * apc + std::conj(wqp) * aqc;
                    a(q, c2) = std::conj(wpq) * apc + std::conj(wqq) * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

}  // namespace mxforge
