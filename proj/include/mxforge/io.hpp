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

// JSON files for matrices, Laurent matrices, COSI sets and tangle specs.
//
//   {"kind":"complex-matrix","rows":R,"cols":C,"data":[[[re,im],...],...]}
//   {"kind":"laurent-matrix","rows":R,"cols":C,"nvars":V,
//    "data":[[[{"exps":[...],"coef":[re,im]},...],...],...]}
//   {"kind":"cosi-set","dim":N,"projectors":[<complex-matrix>,...]}
//   {"kind":"tangle-spec","side":"left"|"right","shuffler":<matrix>,"tangles":[<matrix>,...]}
//
// Numbers are written with 17 significant digits so a write/read cycle is
// exact.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mxforge/cosi.hpp"
#include "mxforge/laurent.hpp"
#include "mxforge/tangle.hpp"

namespace mxforge {

using Json = nlohmann::json;

namespace detail {

inline void put_number(std::string &out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

inline void put_complex(std::string &out, Complex z) {
    out += '[';
    put_number(out, z.real());
    out += ',';
    put_number(out, z.imag());
    out += ']';
}

inline void put_matrix(std::string &out, const ComplexMatrix &m) {
    out += "{\"kind\":\"complex-matrix\",\"rows\":" + std::to_string(m.rows()) +
           ",\"cols\":" + std::to_string(m.cols()) + ",\"data\":[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            put_complex(out, m(i, j));
        }
        out += ']';
    }
    out += "]}";
}

inline void put_laurent(std::string &out, const LaurentMatrix &m) {
    out += "{\"kind\":\"laurent-matrix\",\"rows\":" + std::to_string(m.rows()) +
           ",\"cols\":" + std::to_string(m.cols()) + ",\"nvars\":" + std::to_string(m.nvars()) + ",\"data\":[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += '[';
            bool first = true;
            for (const auto &[e, c] : m(i, j).terms()) {
                if (!first) out += ',';
                first = false;
                out += "{\"exps\":[";
                for (std::size_t v = 0; v < e.size(); ++v) {
                    if (v) out += ',';
                    out += std::to_string(e[v]);
                }
                out += "],\"coef\":";
                put_complex(out, c);
                out += '}';
            }
            out += ']';
        }
        out += ']';
    }
    out += "]}";
}

inline const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline void expect_kind(const Json &j, const char *kind) {
    const Json &k = field(j, "kind");
    if (!k.is_string() || k.get<std::string>() != kind) {
        throw Error(ErrorCode::ParseError, std::string("expected kind '") + kind + "'");
    }
}

inline std::size_t get_size(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

inline Complex get_complex(const Json &j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::ParseError, "complex entries are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline void expect_array(const Json &j, std::size_t n, const char *what) {
    if (!j.is_array() || j.size() != n) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be an array of length " + std::to_string(n));
    }
}

}  // namespace detail

inline std::string to_json_text(const ComplexMatrix &m) {
    std::string out;
    detail::put_matrix(out, m);
    return out + "\n";
}

inline std::string to_json_text(const LaurentMatrix &m) {
    std::string out;
    detail::put_laurent(out, m);
    return out + "\n";
}

inline std::string to_json_text(const CosiSet &set) {
    std::string out = "{\"kind\":\"cosi-set\",\"dim\":" + std::to_string(set.dim()) + ",\"projectors\":[\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out += ",\n";
        detail::put_matrix(out, set[i]);
    }
    return out + "]}\n";
}

template <class Matrix>
std::string to_json_text(const TangleSpec<Matrix> &spec) {
    std::string out = std::string("{\"kind\":\"tangle-spec\",\"side\":\"") + to_string(spec.side) + "\",\"shuffler\":";
    auto put = [&out](const Matrix &m) {
        if constexpr (std::is_same_v<Matrix, ComplexMatrix>) {
            detail::put_matrix(out, m);
        } else {
            detail::put_laurent(out, m);
        }
    };
    put(spec.shuffler);
    out += ",\"tangles\":[\n";
    for (std::size_t i = 0; i < spec.tangles.size(); ++i) {
        if (i) out += ",\n";
        put(spec.tangles[i]);
    }
    return out + "]}\n";
}

inline ComplexMatrix complex_matrix_from_json(const Json &j) {
    detail::expect_kind(j, "complex-matrix");
    const std::size_t rows = detail::get_size(j, "rows");
    const std::size_t cols = detail::get_size(j, "cols");
    const Json &data = detail::field(j, "data");
    detail::expect_array(data, rows, "data");
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto &row : data) {
        detail::expect_array(row, cols, "matrix row");
        for (const auto &z : row) entries.push_back(detail::get_complex(z));
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

inline LaurentMatrix laurent_matrix_from_json(const Json &j) {
    detail::expect_kind(j, "laurent-matrix");
    const std::size_t rows = detail::get_size(j, "rows");
    const std::size_t cols = detail::get_size(j, "cols");
    const std::size_t nvars = detail::get_size(j, "nvars");
    const Json &data = detail::field(j, "data");
    detail::expect_array(data, rows, "data");
    LaurentMatrix out(rows, cols, nvars);
    for (std::size_t r = 0; r < rows; ++r) {
        detail::expect_array(data[r], cols, "matrix row");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json &cell = data[r][c];
            if (!cell.is_array()) throw Error(ErrorCode::ParseError, "polynomial entries are term arrays");
            for (const auto &term : cell) {
                const Json &exps = detail::field(term, "exps");
                detail::expect_array(exps, nvars, "exps");
                std::vector<int> e;
                for (const auto &x : exps) {
                    if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "exponents must be integers");
                    e.push_back(x.get<int>());
                }
                out(r, c).add_term(ExponentVector(std::move(e)), detail::get_complex(detail::field(term, "coef")));
            }
        }
    }
    return out;
}

inline CosiSet cosi_from_json(const Json &j, const ToleranceConfig &cfg = {}) {
    detail::expect_kind(j, "cosi-set");
    const Json &list = detail::field(j, "projectors");
    if (!list.is_array() || list.empty()) throw Error(ErrorCode::ParseError, "projectors must be a non-empty array");
    std::vector<ComplexMatrix> proj;
    for (const auto &p : list) proj.push_back(complex_matrix_from_json(p));
    const std::size_t dim = detail::get_size(j, "dim");
    if (proj.front().rows() != dim) throw Error(ErrorCode::ParseError, "dim differs from projector size");
    return CosiSet::validate(std::move(proj), cfg);
}

using AnyTangleSpec = std::variant<TangleSpec<ComplexMatrix>, TangleSpec<LaurentMatrix>>;

inline AnyTangleSpec tangle_spec_from_json(const Json &j) {
    detail::expect_kind(j, "tangle-spec");
    const Json &side_field = detail::field(j, "side");
    if (!side_field.is_string()) throw Error(ErrorCode::ParseError, "side must be a string");
    const std::string side_text = side_field.get<std::string>();
    if (side_text != "left" && side_text != "right") throw Error(ErrorCode::ParseError, "side must be left or right");
    const Side side = side_text == "left" ? Side::Left : Side::Right;
    const Json &shuffler = detail::field(j, "shuffler");
    const Json &tangles = detail::field(j, "tangles");
    if (!tangles.is_array() || tangles.empty()) throw Error(ErrorCode::ParseError, "tangles must be a non-empty array");

    bool polynomial = detail::field(shuffler, "kind") == "laurent-matrix";
    for (const auto &t : tangles) polynomial = polynomial || detail::field(t, "kind") == "laurent-matrix";
    auto as_laurent = [](const Json &m) {
        return detail::field(m, "kind") == "laurent-matrix" ? laurent_matrix_from_json(m)
                                                             : LaurentMatrix::constant(complex_matrix_from_json(m), 0);
    };
    if (polynomial) {
        TangleSpec<LaurentMatrix> spec{side, as_laurent(shuffler), {}};
        for (const auto &t : tangles) spec.tangles.push_back(as_laurent(t));
        return spec;
    }
    TangleSpec<ComplexMatrix> spec{side, complex_matrix_from_json(shuffler), {}};
    for (const auto &t : tangles) spec.tangles.push_back(complex_matrix_from_json(t));
    return spec;
}

inline Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline Json read_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

inline ComplexMatrix read_complex_matrix(const std::string &path) { return complex_matrix_from_json(read_json_file(path)); }
inline LaurentMatrix read_laurent_matrix(const std::string &path) { return laurent_matrix_from_json(read_json_file(path)); }
inline CosiSet read_cosi(const std::string &path, const ToleranceConfig &cfg = {}) {
    return cosi_from_json(read_json_file(path), cfg);
}

}  // namespace mxforge
