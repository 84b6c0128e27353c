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

// Named worked examples. Each one carries its input matrices separately
// from the construction, so that the inputs can be replaced (for instance
// by a corrupted copy) and the checks rerun.

#pragma once

#include <algorithm>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mxforge/mxforge.hpp"

namespace mxforge::cli {

struct NamedMatrix {
    std::string name;
    ComplexMatrix value;
};

struct ExampleCheck {
    std::string name;
    bool pass;
    double residual;  // NaN when the check is boolean
    std::string detail;
};

struct ExampleOutcome {
    std::vector<ExampleCheck> checks;
    std::vector<std::pair<std::string, std::string>> artifacts;  // file stem, JSON text

    bool passed() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
    }
    void expect(std::string name, double residual, double tol) {
        checks.push_back({std::move(name), residual <= tol, residual, {}});
    }
    void expect_true(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::numeric_limits<double>::quiet_NaN(), std::move(detail)});
    }
};

using ExampleInputs = std::vector<NamedMatrix>;

struct Example {
    std::string name;
    std::string summary;
    std::function<ExampleInputs()> inputs;
    std::function<void(const ExampleInputs &, const ToleranceConfig &, ExampleOutcome &)> body;
};

namespace detail {

inline constexpr double kExact = 1e-12;

inline const ComplexMatrix &input(const ExampleInputs &in, const std::string &name) {
    for (const auto &m : in)
        if (m.name == name) return m.value;
    throw Error(ErrorCode::InvalidArgument, "example input '" + name + "' missing");
}

inline ComplexMatrix half(std::initializer_list<std::initializer_list<Complex>> rows) { return 0.5 * ComplexMatrix(rows); }

inline Complex w3(long j) { return root_of_unity(3, j); }

inline void check_hadamard(ExampleOutcome &out, const std::string &label, const ComplexMatrix &m,
                           std::optional<int> butson, const ToleranceConfig &cfg) {
    const auto rep = verify_hadamard(m, cfg);
    out.expect(label + " is Hadamard", std::max(rep.modulus_residual, rep.gram_residual), cfg.verify_tol);
    if (butson) {
        out.expect_true(label + " has Butson type " + std::to_string(*butson), rep.butson_p == butson,
                        rep.butson_p ? "detected " + std::to_string(*rep.butson_p) : "no type detected");
    }
}

inline ComplexMatrix sylvester_reference(std::size_t order) {
    ComplexMatrix w{{1.0}};
    while (w.rows() < order) {
        const std::size_t n = w.rows();
        ComplexMatrix next(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                next(i, j) = w(i, j);
                next(i, j + n) = w(i, j);
                next(i + n, j) = w(i, j);
                next(i + n, j + n) = -w(i, j);
            }
        w = std::move(next);
    }
    return w;
}

inline ComplexMatrix real_circ(std::initializer_list<double> row, double scale) {
    std::vector<Complex> r;
    for (double x : row) r.emplace_back(scale * x, 0.0);
    return circulant(r);
}

inline void example_one(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const auto set = CosiSet::validate({input(in, "E0"), input(in, "E1")}, cfg);
    const auto swap = LatinSquare::parse("0 1;1 0");
    const ComplexMatrix h = block_latin_unitary(set, swap, std::nullopt, cfg);
    out.expect("H matches the printed matrix", max_abs_diff(h, half({{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {-1, 1, 1, 1}})),
               kExact);
    out.expect("H is unitary", unitary_residual(h), cfg.verify_tol);
    check_hadamard(out, "2H", 2.0 * h, 2, cfg);
    out.expect_true("H is entangled for 2x2 blocks", !is_block_tensor(h, 2, 2, cfg).has_value());
    const auto w = block_latin_laurent(set, swap, MonomialGrid::distinct_variables(2), cfg);
    out.expect("W(x, y, z, t) is paraunitary", paraunitary_residual(w, cfg), cfg.verify_tol);
    out.artifacts.emplace_back("H", to_json_text(h));
    out.artifacts.emplace_back("W", to_json_text(w));
}

inline void example_two(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const auto set = CosiSet::validate({input(in, "Q0"), input(in, "Q1")}, cfg);
    const auto q = block_latin_laurent(set, LatinSquare::parse("0 1;1 0"), MonomialGrid::distinct_variables(2), cfg);
    out.expect("Q is paraunitary", paraunitary_residual(q, cfg), cfg.verify_tol);
    const std::vector<Complex> ones(4, 1.0);
    const ComplexMatrix h = 2.0 * laurent_eval(q, ones);
    const Complex i{0.0, 1.0};
    const ComplexMatrix printed{{1.0, i, 1.0, -i}, {-i, 1.0, i, 1.0}, {1.0, -i, 1.0, i}, {i, 1.0, -i, 1.0}};
    out.expect("2Q(1,1,1,1) matches the printed matrix", max_abs_diff(h, printed), kExact);
    check_hadamard(out, "2Q(1,1,1,1)", h, 4, cfg);
    out.artifacts.emplace_back("Q", to_json_text(q));
    out.artifacts.emplace_back("H", to_json_text(h));
}

inline void example_three(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix &u = input(in, "U");
    const ComplexMatrix t = left_tangle(u, {input(in, "A"), input(in, "B")});
    const Complex i{0.0, 1.0};
    const ComplexMatrix printed = 0.5 * ComplexMatrix{{1.0, 1.0, -1.0, -1.0}, {1.0, -1.0, -i, i}, {1.0, 1.0, 1.0, 1.0},
                                                      {1.0, -1.0, i, -i}};
    out.expect("(U;A,B) matches the printed matrix", max_abs_diff(t, printed), kExact);
    out.expect("(U;A,B) is unitary", unitary_residual(t), cfg.verify_tol);
    check_hadamard(out, "2(U;A,B)", 2.0 * t, 4, cfg);
    const auto set = from_unitary_columns(t, cfg);
    const auto g = block_latin_laurent(set, circulant_square(4), MonomialGrid::distinct_variables(4), cfg);
    out.expect("16-variable block circulant is paraunitary", paraunitary_residual(g, cfg), cfg.verify_tol);
    const auto sum = cosi_poly(set, MultiVar{}, cfg);
    out.expect("F1 a1 + ... + F4 a4 is paraunitary", paraunitary_residual(sum, cfg), cfg.verify_tol);
    out.artifacts.emplace_back("T", to_json_text(t));
}

inline void example_fourier5(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const auto set = from_unitary_columns(input(in, "G"), cfg);
    double worst = 0.0;
    for (long j = 0; j < 5; ++j) {
        const ComplexMatrix closed = 0.2 * circulant({1.0, root_of_unity(5, 4 * j), root_of_unity(5, 3 * j),
                                                      root_of_unity(5, 2 * j), root_of_unity(5, j)});
        worst = std::max(worst, max_abs_diff(set[static_cast<std::size_t>(j)], closed));
    }
    out.expect("E_i = (1/5) circ(1, w^4i, w^3i, w^2i, w^i)", worst, kExact);
    const auto merged = merge(set, {{0}, {1, 4}, {2, 3}}, cfg);
    const double t = 2.0 * std::numbers::pi / 5.0;
    auto c = [](double x) { return std::cos(x); };
    out.expect("E1' = (2/5) circ(1, cos t, cos 2t, cos 3t, cos 4t)",
               max_abs_diff(merged[1], real_circ({1, c(t), c(2 * t), c(3 * t), c(4 * t)}, 0.4)), kExact);
    out.expect("E2' = (2/5) circ(1, cos 2t, cos 4t, cos t, cos 3t)",
               max_abs_diff(merged[2], real_circ({1, c(2 * t), c(4 * t), c(t), c(3 * t)}, 0.4)), kExact);
    const ComplexMatrix g = block_latin_unitary(merged, reverse_circulant_square(3), std::nullopt, cfg);
    double imag = 0.0;
    for (const auto &z : g.entries()) imag = std::max(imag, std::abs(z.imag()));
    out.expect("reverse circulant 15x15 is unitary", unitary_residual(g), cfg.verify_tol);
    out.expect("reverse circulant 15x15 is real", imag, kExact);
    out.expect("reverse circulant 15x15 is symmetric", self_adjoint_residual(g), kExact);
    out.artifacts.emplace_back("S", to_json_text(merged));
    out.artifacts.emplace_back("G", to_json_text(g));
}

inline void example_fourier6(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const auto set = from_unitary_columns(input(in, "G"), cfg);
    const auto s = merge(set, {{0}, {1, 5}, {3}, {2, 4}}, cfg);
    const double k = 1.0 / 6.0;
    out.expect("E0 = (1/6) circ(1,1,1,1,1,1)", max_abs_diff(s[0], real_circ({1, 1, 1, 1, 1, 1}, k)), kExact);
    out.expect("E1' = (1/6) circ(2,1,-1,-2,-1,1)", max_abs_diff(s[1], real_circ({2, 1, -1, -2, -1, 1}, k)), kExact);
    out.expect("E3 = (1/6) circ(1,-1,1,-1,1,-1)", max_abs_diff(s[2], real_circ({1, -1, 1, -1, 1, -1}, k)), kExact);
    out.expect("E2' = (1/6) circ(2,-1,-1,2,-1,-1)", max_abs_diff(s[3], real_circ({2, -1, -1, 2, -1, -1}, k)), kExact);
    out.artifacts.emplace_back("S", to_json_text(s));
}

inline void example_nott(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const auto levels = nott_series(input(in, "E1"), input(in, "E2"), 4, cfg);
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto &u = levels[l];
        const std::string tag = "level " + std::to_string(l) + " (" + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + ")";
        out.expect_true(tag + " has the expected order", u.rows() == (std::size_t{4} << l));
        out.expect(tag + " is self-adjoint", self_adjoint_residual(u), cfg.verify_tol);
        out.expect(tag + " is unitary", unitary_residual(u), cfg.verify_tol);
        out.expect(tag + " squares to I",
                   max_abs_diff(matmul(u, u), ComplexMatrix::identity(u.rows())), cfg.verify_tol);
    }
    out.artifacts.emplace_back("U3", to_json_text(levels.back()));
}

inline void example_pauli(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const std::vector<std::pair<std::string, ComplexMatrix>> sigma{
        {"sx", input(in, "sx")}, {"sy", input(in, "sy")}, {"sz", input(in, "sz")}};
    std::vector<std::size_t> p{0, 1, 2};
    std::vector<ComplexMatrix> products;
    do {
        const ComplexMatrix t = left_tangle(sigma[p[0]].second, {sigma[p[1]].second, sigma[p[2]].second});
        const std::string tag =
            "(" + sigma[p[0]].first + ";" + sigma[p[1]].first + "," + sigma[p[2]].first + ")";
        out.expect(tag + " is unitary", unitary_residual(t), cfg.verify_tol);
        out.expect_true(tag + " is entangled", !is_block_tensor(t, 2, 2, cfg).has_value());
        out.artifacts.emplace_back(sigma[p[0]].first + "_" + sigma[p[1]].first + "_" + sigma[p[2]].first,
                                   to_json_text(t));
        products.push_back(t);
    } while (std::next_permutation(p.begin(), p.end()));
    const ComplexMatrix big = left_tangle(sigma[0].second, {products[0], products[1]});
    out.expect("8x8 (sx; P1, P2) is unitary", unitary_residual(big), cfg.verify_tol);
    out.expect_true("8x8 (sx; P1, P2) is entangled", !is_block_tensor(big, 4, 4, cfg).has_value());
}

inline void example_unbiased2(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix &u = input(in, "U");
    const ComplexMatrix g = right_tangle({input(in, "A"), input(in, "B")}, u);
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix printed{{r, r}, {Complex{0.0, r}, Complex{0.0, -r}}};
    out.expect("G = (A,B;U) matches the printed matrix", max_abs_diff(g, printed), kExact);
    out.expect("{U, G, I} cross moduli equal 1/sqrt(2)", mub_residual({u, g, ComplexMatrix::identity(2)}, cfg), kExact);
    out.artifacts.emplace_back("G", to_json_text(g));
}

inline void example_unbiased3(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix &u = input(in, "U");
    const ComplexMatrix &one = input(in, "A");
    const ComplexMatrix u1 = right_tangle({one, input(in, "B1"), input(in, "C1")}, u);
    const ComplexMatrix u2 = right_tangle({one, input(in, "B2"), input(in, "C2")}, u);
    out.expect("{U, U1, U2, I} cross moduli equal 1/sqrt(3)",
               mub_residual({u, u1, u2, ComplexMatrix::identity(3)}, cfg), kExact);
    out.artifacts.emplace_back("U1", to_json_text(u1));
    out.artifacts.emplace_back("U2", to_json_text(u2));
}

inline void example_hadsymm9(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix l = symmetric_hadamard_square(input(in, "H"), cfg);
    const double t = 1.0 / 3.0;
    const ComplexMatrix e1{{t, t, t}, {t, t, t}, {t, t, t}};
    const ComplexMatrix e2 = t * ComplexMatrix{{1.0, w3(2), w3(1)}, {w3(1), 1.0, w3(2)}, {w3(2), w3(1), 1.0}};
    const ComplexMatrix e3 = t * ComplexMatrix{{1.0, w3(1), w3(2)}, {w3(2), 1.0, w3(1)}, {w3(1), w3(2), 1.0}};
    const ComplexMatrix *grid[3][3] = {{&e1, &e2, &e3}, {&e2, &e3, &e1}, {&e3, &e1, &e2}};
    ComplexMatrix k(9, 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) k.set_block(3 * i, 3 * j, *grid[i][j]);
    out.expect("L = 3K", max_abs_diff(l, 3.0 * k), kExact);
    out.expect("L is self-adjoint", self_adjoint_residual(l), kExact);
    out.expect("L L* = 9 I", max_abs_diff(matmul(l, adjoint(l)), 9.0 * ComplexMatrix::identity(9)), cfg.verify_tol);
    check_hadamard(out, "L", l, 3, cfg);
    out.artifacts.emplace_back("L", to_json_text(l));
}

inline void example_skew46(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix &a = input(in, "alphas");
    if (a.rows() != 1 || a.cols() != 3) throw Error(ErrorCode::ShapeMismatch, "alphas must be 1x3");
    double imag = 0.0;
    for (const auto &z : a.entries()) imag = std::max(imag, std::abs(z.imag()));
    out.expect("angles are real", imag, kExact);
    const ComplexMatrix h = skew4_family(a(0, 0).real(), a(0, 1).real(), a(0, 2).real());
    const ComplexMatrix printed{{1.0, w3(1), -w3(1), -1.0},
                                {-w3(2), 1.0, -1.0, w3(2)},
                                {w3(2), 1.0, 1.0, w3(2)},
                                {1.0, -w3(1), -w3(1), 1.0}};
    out.expect("H matches the printed matrix", max_abs_diff(h, printed), kExact);
    out.expect("H + H* = 2I", skew_residual(h), cfg.verify_tol);
    check_hadamard(out, "H", h, 6, cfg);
    out.artifacts.emplace_back("H", to_json_text(h));
}

inline void example_walsh(const ExampleInputs &in, const ToleranceConfig &cfg, ExampleOutcome &out) {
    const ComplexMatrix &h2 = input(in, "H2");
    const auto levels = sylvester_tangle_series(h2, h2, {h2}, 3, cfg);
    for (std::size_t l = 1; l < levels.size(); ++l) {
        const auto &m = levels[l][0];
        const std::string tag = "level " + std::to_string(l) + " (" + std::to_string(m.rows()) + "x" +
                                std::to_string(m.rows()) + ")";
        out.expect(tag + " equals the Walsh matrix", max_abs_diff(m, sylvester_reference(m.rows())), kExact);
        out.expect(tag + " pair agrees", max_abs_diff(m, levels[l][1]), kExact);
        check_hadamard(out, tag, m, 2, cfg);
    }
    out.artifacts.emplace_back("W16", to_json_text(levels.back()[0]));
}

}  // namespace detail

inline const std::vector<Example> &example_registry() {
    using detail::half;
    static const std::vector<Example> registry = [] {
        const double r2 = 1.0 / std::sqrt(2.0);
        const double r3 = 1.0 / std::sqrt(3.0);
        const Complex i{0.0, 1.0};
        std::vector<Example> ex;
        ex.push_back({"one", "entangled 4x4 unitary from the COSI {E0, E1}",
                      [] {
                          return ExampleInputs{{"E0", half({{1, 1}, {1, 1}})}, {"E1", half({{1, -1}, {-1, 1}})}};
                      },
                      detail::example_one});
        ex.push_back({"two", "paraunitary Q(x,y,z,t) and a complex Hadamard H(4,4)",
                      [i] {
                          return ExampleInputs{{"Q0", half({{1, i}, {-i, 1}})}, {"Q1", half({{1, -i}, {i, 1}})}};
                      },
                      detail::example_two});
        ex.push_back({"three", "tangle product (U;A,B) giving H(4,4)",
                      [r2, i] {
                          return ExampleInputs{{"U", r2 * ComplexMatrix{{1, -1}, {1, 1}}},
                                               {"A", r2 * ComplexMatrix{{1, 1}, {1, -1}}},
                                               {"B", r2 * ComplexMatrix{{1, 1}, {i, -i}}}};
                      },
                      detail::example_three});
        ex.push_back({"fourier5", "Fourier-5 COSI and its real merged form",
                      [] { return ExampleInputs{{"G", (1.0 / std::sqrt(5.0)) * fourier_matrix(5)}}; },
                      detail::example_fourier5});
        ex.push_back({"fourier6", "Fourier-6 COSI merged to a real COSI",
                      [] { return ExampleInputs{{"G", (1.0 / std::sqrt(6.0)) * fourier_matrix(6)}}; },
                      detail::example_fourier6});
        ex.push_back({"nott", "series of symmetric unitary matrices of orders 4, 8, 16, 32",
                      [] {
                          return ExampleInputs{{"E1", half({{1, 1}, {1, 1}})}, {"E2", half({{1, -1}, {-1, 1}})}};
                      },
                      detail::example_nott});
        ex.push_back({"pauli", "entangled unitaries from the Pauli matrices",
                      [i] {
                          return ExampleInputs{{"sx", ComplexMatrix{{0, 1}, {1, 0}}},
                                               {"sy", ComplexMatrix{{0, i}, {-i, 0}}},
                                               {"sz", ComplexMatrix{{1, 0}, {0, -1}}}};
                      },
                      detail::example_pauli});
        ex.push_back({"unbiased2", "three mutually unbiased bases of C^2",
                      [r2, i] {
                          return ExampleInputs{{"U", r2 * ComplexMatrix{{1, 1}, {1, -1}}},
                                               {"A", ComplexMatrix{{1.0}}},
                                               {"B", ComplexMatrix{{i}}}};
                      },
                      detail::example_unbiased2});
        ex.push_back({"unbiased3", "four mutually unbiased bases of C^3",
                      [r3] {
                          const Complex w = detail::w3(1), w2 = detail::w3(2);
                          return ExampleInputs{{"U", r3 * fourier_matrix(3)}, {"A", ComplexMatrix{{1.0}}},
                                               {"B1", ComplexMatrix{{w}}},     {"C1", ComplexMatrix{{w}}},
                                               {"B2", ComplexMatrix{{w2}}},    {"C2", ComplexMatrix{{w2}}}};
                      },
                      detail::example_unbiased3});
        ex.push_back({"hadsymm9", "symmetric Butson H(9,3) from Fourier-3",
                      [] { return ExampleInputs{{"H", fourier_matrix(3)}}; }, detail::example_hadsymm9});
        ex.push_back({"skew46", "complex skew Hadamard H(4,6)",
                      [] {
                          const double pi = std::numbers::pi;
                          return ExampleInputs{{"alphas", ComplexMatrix{{2 * pi / 3, 4 * pi / 3, 2 * pi}}}};
                      },
                      detail::example_skew46});
        ex.push_back({"walsh", "Walsh matrices of orders 4, 8, 16 by tangle products",
                      [] { return ExampleInputs{{"H2", ComplexMatrix{{1, 1}, {1, -1}}}}; }, detail::example_walsh});
        return ex;
    }();
    return registry;
}

inline const Example &find_example(const std::string &name) {
    for (const auto &e : example_registry())
        if (e.name == name) return e;
    throw Error(ErrorCode::UnknownExample, "no example named '" + name + "'");
}

/// Runs the construction; a library error during it becomes a failed check.
inline ExampleOutcome run_example(const Example &ex, const ExampleInputs &inputs, const ToleranceConfig &cfg = {}) {
    ExampleOutcome out;
    try {
        ex.body(inputs, cfg, out);
    } catch (const Error &err) {
        out.checks.push_back({"construction", false, err.residual(), err.what()});
    }
    return out;
}

}  // namespace mxforge::cli
