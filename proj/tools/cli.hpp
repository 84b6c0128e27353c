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

// mxforge <cosi|build|tangle|hadamard|constellation|verify|example> ...
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
// Reports go to stdout, or to --report PATH together with a JSON sidecar
// next to it (same stem, .json extension).

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "examples.hpp"
#include "mxforge/mxforge.hpp"

namespace mxforge::cli {

struct CommandResult {
    int exit_code = 0;
    std::optional<std::string> report_path;
};

/// Error codes that mean "the input does not have the property" rather than
/// "the request was malformed".
inline bool is_verification_failure(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotIdempotent:
        case ErrorCode::NotSelfAdjoint:
        case ErrorCode::NotOrthogonal:
        case ErrorCode::NotComplete:
        case ErrorCode::NotUnitary:
        case ErrorCode::NotCosi:
        case ErrorCode::NotFourier:
        case ErrorCode::NotHadamard:
        case ErrorCode::ModeViolation:
        case ErrorCode::ConstituentViolation:
        case ErrorCode::NonUnitPhase: return true;
        default: return false;
    }
}

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

class Report {
   public:
    void line(const std::string &s) { text_ += s + "\n"; }

    template <class T>
    void value(const std::string &key, const T &v) {
        record_[key] = v;
        if constexpr (std::is_same_v<T, bool>) {
            line(key + ": " + (v ? "yes" : "no"));
        } else if constexpr (std::is_floating_point_v<T>) {
            line(key + ": " + fmt(v));
        } else if constexpr (std::is_arithmetic_v<T>) {
            line(key + ": " + std::to_string(v));
        } else {
            line(key + ": " + std::string(v));
        }
    }

    /// A pass/fail line; any failure makes the command exit 1.
    void check(const std::string &name, bool pass, double residual = std::numeric_limits<double>::quiet_NaN(),
               const std::string &detail = {}) {
        ok_ = ok_ && pass;
        std::string s = std::string(pass ? "[ok]   " : "[FAIL] ") + name;
        Json c{{"name", name}, {"pass", pass}};
        if (!std::isnan(residual)) {
            s += " (residual " + fmt(residual) + ")";
            c["residual"] = residual;
        }
        if (!detail.empty()) {
            s += ": " + detail;
            c["detail"] = detail;
        }
        record_["checks"].push_back(c);
        line(s);
    }

    void fail(const Error &err) {
        ok_ = false;
        record_["error"] = {{"code", to_string(err.code())}, {"message", err.what()}, {"residual", err.residual()}};
        line(std::string("[FAIL] ") + err.what());
    }

    Json &record() { return record_; }
    bool ok() const { return ok_; }
    const std::string &text() const { return text_; }

   private:
    std::string text_;
    Json record_ = Json::object();
    bool ok_ = true;
};

struct Globals {
    double tol = ToleranceConfig{}.verify_tol;
    std::uint64_t seed = 0;
    std::string output;
    std::string report;

    ToleranceConfig cfg() const {
        ToleranceConfig c;
        c.verify_tol = tol;
        if (c.prune_tol >= tol) c.prune_tol = tol * 1e-3;
        c.check();
        return c;
    }
};

namespace detail {

inline CosiSet cosi_source(const std::string &src, const ToleranceConfig &cfg) {
    auto after = [&](const char *prefix) -> std::optional<std::string> {
        const std::string p(prefix);
        if (src.rfind(p, 0) == 0) return src.substr(p.size());
        return std::nullopt;
    };
    try {
        if (auto n = after("fourier:")) return fourier_cosi(std::stoul(*n), cfg);
        if (auto t = after("rotation:")) return rotation_cosi(std::stod(*t), cfg);
    } catch (const std::logic_error &) {
        throw Error(ErrorCode::ParseError, "bad COSI source '" + src + "'");
    }
    if (auto f = after("columns:")) return from_unitary_columns(read_complex_matrix(*f), cfg);
    return read_cosi(src, cfg);
}

inline bool is_laurent_file(const Json &j) { return j.is_object() && j.value("kind", "") == "laurent-matrix"; }

inline LaurentMatrix as_laurent(const Json &j) {
    return is_laurent_file(j) ? laurent_matrix_from_json(j) : LaurentMatrix::constant(complex_matrix_from_json(j), 0);
}

inline std::vector<std::vector<std::size_t>> parse_groups(const std::string &text) {
    std::vector<std::vector<std::size_t>> groups;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::stringstream cells(row);
        std::vector<std::size_t> g;
        long long x;
        while (cells >> x) {
            if (x < 0) throw Error(ErrorCode::ParseError, "negative index in groups");
            g.push_back(static_cast<std::size_t>(x));
        }
        if (!cells.eof()) throw Error(ErrorCode::ParseError, "groups must be integers, e.g. \"0;1 4;2 3\"");
        groups.push_back(std::move(g));
    }
    return groups;
}

inline std::string sidecar_path(const std::string &report) {
    std::filesystem::path p(report);
    std::filesystem::path s = p;
    s.replace_extension(".json");
    if (s == p) s = p.string() + ".json";
    return s.string();
}

inline void write_artifact(const Globals &g, Report &rep, const std::string &text) {
    if (g.output.empty()) return;
    write_text_file(g.output, text);
    rep.record()["output"] = g.output;
    rep.line("wrote " + g.output);
}

inline void write_members(const std::string &dir, const std::vector<ComplexMatrix> &members, Report &rep,
                          const std::string &stem = "member") {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < members.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%s_%03zu.json", stem.c_str(), i);
        write_text_file((std::filesystem::path(dir) / name).string(), to_json_text(members[i]));
    }
    rep.record()["output"] = dir;
    rep.line("wrote " + std::to_string(members.size()) + " matrices to " + dir);
}

inline std::vector<ComplexMatrix> read_all(const std::vector<std::string> &files) {
    std::vector<ComplexMatrix> out;
    for (const auto &f : files) out.push_back(read_complex_matrix(f));
    return out;
}

inline void report_hadamard(Report &rep, const HadamardReport &h) {
    rep.value("order", h.order);
    rep.value("scale", h.scale);
    rep.value("symmetric", h.symmetric);
    rep.value("skew", h.skew);
    rep.value("modulus_residual", h.modulus_residual);
    rep.value("gram_residual", h.gram_residual);
    if (h.butson_p) {
        rep.value("butson_p", *h.butson_p);
    } else {
        rep.record()["butson_p"] = nullptr;
        rep.line("butson_p: none");
    }
    rep.check("Hadamard", h.is_hadamard, std::max(h.modulus_residual, h.gram_residual));
}

inline void report_quality(Report &rep, const QualityReport &q, const Constellation &v) {
    rep.value("L", v.size());
    rep.value("M", v.antennas());
    rep.value("rate", q.rate);
    rep.value("zeta", q.zeta);
    rep.value("min_abs_det", q.min_abs_det);
    rep.record()["argmin"] = {q.argmin.first, q.argmin.second};
    rep.line("argmin: (" + std::to_string(q.argmin.first) + ", " + std::to_string(q.argmin.second) + ")");
    rep.value("full_diversity", q.full_diversity);
}

inline std::optional<Property> parse_property(const std::string &s) {
    if (s == "unitary") return Property::Unitary;
    if (s == "paraunitary") return Property::Paraunitary;
    if (s == "hadamard") return Property::Hadamard;
    return std::nullopt;
}

}  // namespace detail

/// Parses and executes one command. `args` excludes the program name.
inline CommandResult run(const std::vector<std::string> &args, std::ostream &out = std::cout,
                         std::ostream &err = std::cerr) {
    CLI::App app{"mxforge: unitary, paraunitary and Hadamard matrix constructions", "mxforge"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "verification tolerance (default 1e-9)");
    app.add_option("--seed", g.seed, "seed for randomised choices (default 0)");
    app.add_option("-o,--output", g.output, "output file or directory");
    app.add_option("--report", g.report, "write the report here plus a .json sidecar");

    Report rep;
    std::function<void(const ToleranceConfig &)> action;
    auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &help) {
        auto *s = parent->add_subcommand(name, help);
        return s;
    };

    // cosi
    auto *cosi = app.add_subcommand("cosi", "complete orthogonal symmetric idempotent sets");
    cosi->require_subcommand(1);
    std::string source;
    std::string groups;
    std::vector<std::string> files;
    auto describe_set = [&](const CosiSet &set) {
        rep.value("dim", set.dim());
        rep.value("size", set.size());
        Json ranks = Json::array();
        std::string text = "ranks:";
        for (const auto &e : set) {
            const auto r = projector_rank(e);
            ranks.push_back(r);
            text += " " + std::to_string(r);
        }
        rep.record()["ranks"] = ranks;
        rep.line(text);
    };
    {
        auto *s = leaf(cosi, "make", "build a COSI set from fourier:N, rotation:THETA, columns:FILE or a file");
        s->add_option("source", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = detail::cosi_source(source, cfg);
                describe_set(set);
                rep.check("COSI axioms", true);
                detail::write_artifact(g, rep, to_json_text(set));
            };
        });
        s = leaf(cosi, "validate", "check the four COSI axioms of a cosi-set file");
        s->add_option("file", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = read_cosi(source, cfg);
                describe_set(set);
                rep.check("COSI axioms", true);
            };
        });
        s = leaf(cosi, "merge", "sum groups of projectors, e.g. --groups \"0;1 4;2 3\"");
        s->add_option("source", source)->required();
        s->add_option("--groups", groups)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = merge(detail::cosi_source(source, cfg), detail::parse_groups(groups), cfg);
                describe_set(set);
                rep.check("COSI axioms", true);
                detail::write_artifact(g, rep, to_json_text(set));
            };
        });
        s = leaf(cosi, "merge-conjugates", "pair projector j with n-j of a Fourier COSI set");
        s->add_option("source", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = merge_conjugates(detail::cosi_source(source, cfg), cfg);
                describe_set(set);
                double imag = 0.0;
                for (const auto &e : set)
                    for (const auto &z : e.entries()) imag = std::max(imag, std::abs(z.imag()));
                rep.check("real projectors", imag <= cfg.verify_tol, imag);
                detail::write_artifact(g, rep, to_json_text(set));
            };
        });
        s = leaf(cosi, "complete", "append I - sum(E) to orthogonal projectors given as matrix files");
        s->add_option("files", files)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = complete(detail::read_all(files), cfg);
                describe_set(set);
                rep.check("COSI axioms", true);
                detail::write_artifact(g, rep, to_json_text(set));
            };
        });
        s = leaf(cosi, "split", "split a projector file into rank-1 projectors (written to -o DIR)");
        s->add_option("file", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto pieces = rank1_split(read_complex_matrix(source), cfg);
                rep.value("rank", pieces.size());
                if (!g.output.empty()) detail::write_members(g.output, pieces, rep, "piece");
            };
        });
    }

    // build
    auto *build = app.add_subcommand("build", "unitary and paraunitary builders");
    build->require_subcommand(1);
    std::string square_text;
    bool circ = false, reverse = false;
    std::string phases_file;
    std::string mode;
    std::vector<int> signs, exps;
    std::vector<double> thetas;
    std::size_t depth = 1;
    {
        auto pick_square = [&](std::size_t k) {
            if (!square_text.empty()) return LatinSquare::parse(square_text);
            if (reverse) return reverse_circulant_square(k);
            return circulant_square(k);
        };
        auto *s = leaf(build, "latin", "block Latin-square unitary from a COSI set");
        s->add_option("--cosi", source)->required();
        auto *sq = s->add_option("--square", square_text, "Latin square rows, e.g. \"0 1;1 0\"");
        auto *ci = s->add_flag("--circulant", circ, "circulant arrangement (default)");
        auto *rv = s->add_flag("--reverse", reverse, "reverse circulant arrangement");
        sq->excludes(ci)->excludes(rv);
        ci->excludes(rv);
        s->add_option("--phases", phases_file, "k x k matrix file of unimodular block phases");
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = detail::cosi_source(source, cfg);
                std::optional<PhaseGrid> phases;
                if (!phases_file.empty()) phases = PhaseGrid{read_complex_matrix(phases_file)};
                const auto m = block_latin_unitary(set, pick_square(set.size()), phases, cfg);
                rep.value("rows", m.rows());
                rep.check("unitary", is_unitary(m, cfg), unitary_residual(m));
                rep.value("self_adjoint", is_self_adjoint(m, cfg));
                detail::write_artifact(g, rep, to_json_text(m));
            };
        });
        s = leaf(build, "laurent", "block Latin-square paraunitary with one variable per block");
        s->add_option("--cosi", source)->required();
        auto *sq2 = s->add_option("--square", square_text);
        auto *rv2 = s->add_flag("--reverse", reverse);
        sq2->excludes(rv2);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = detail::cosi_source(source, cfg);
                const auto m = block_latin_laurent(set, pick_square(set.size()),
                                                   MonomialGrid::distinct_variables(set.size()), cfg);
                rep.value("rows", m.rows());
                rep.value("nvars", m.nvars());
                rep.check("paraunitary", is_paraunitary(m, cfg), paraunitary_residual(m, cfg));
                detail::write_artifact(g, rep, to_json_text(m));
            };
        });
        s = leaf(build, "poly", "sum of projectors times monomials");
        s->add_option("--cosi", source)->required();
        s->add_option("--mode", mode, "signed | multi | phased")
            ->required()
            ->check(CLI::IsMember({"signed", "multi", "phased"}));
        s->add_option("--signs", signs, "signs for mode signed, e.g. 1,-1")->delimiter(',');
        s->add_option("--exps", exps, "exponents t_j for modes signed/phased")->delimiter(',');
        s->add_option("--thetas", thetas, "phases for mode phased")->delimiter(',');
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = detail::cosi_source(source, cfg);
                const std::size_t k = set.size();
                auto or_default = [k](std::vector<int> v, auto gen) {
                    if (v.empty())
                        for (std::size_t j = 0; j < k; ++j) v.push_back(gen(j));
                    return v;
                };
                CosiPolyMode m = MultiVar{};
                if (mode == "signed") {
                    m = SignedSingleVar{or_default(signs, [](std::size_t) { return 1; }),
                                        or_default(exps, [](std::size_t j) { return static_cast<int>(j); })};
                } else if (mode == "phased") {
                    std::vector<double> th = thetas;
                    if (th.empty()) th.assign(k, 0.0);
                    m = Phased{th, or_default(exps, [](std::size_t j) { return static_cast<int>(j); })};
                }
                const auto p = cosi_poly(set, m, cfg);
                rep.value("nvars", p.nvars());
                rep.check("paraunitary", is_paraunitary(p, cfg), paraunitary_residual(p, cfg));
                detail::write_artifact(g, rep, to_json_text(p));
            };
        });
        s = leaf(build, "symmetric", "I - 2E from a self-adjoint idempotent file");
        s->add_option("file", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto e = read_complex_matrix(source);
                const auto u = symmetric_unitary_from_idempotent(e, cfg);
                rep.value("rank_E", projector_rank(e));
                rep.check("unitary", is_unitary(u, cfg), unitary_residual(u));
                rep.check("self-adjoint", is_self_adjoint(u, cfg), self_adjoint_residual(u));
                detail::write_artifact(g, rep, to_json_text(u));
            };
        });
        s = leaf(build, "nott", "series of symmetric unitaries from a two-element COSI set");
        s->add_option("--cosi", source)->required();
        s->add_option("--depth", depth)->check(CLI::PositiveNumber);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto set = detail::cosi_source(source, cfg);
                if (set.size() != 2) throw Error(ErrorCode::InvalidArgument, "nott needs a two-element COSI set");
                const auto levels = nott_series(set[0], set[1], depth, cfg);
                for (std::size_t l = 0; l < levels.size(); ++l) {
                    const auto &u = levels[l];
                    const double r = std::max({unitary_residual(u), self_adjoint_residual(u)});
                    rep.check("level " + std::to_string(l) + " (" + std::to_string(u.rows()) +
                                  ") symmetric unitary",
                              r <= cfg.verify_tol, r);
                }
                if (!g.output.empty()) detail::write_members(g.output, levels, rep, "level");
            };
        });
        s = leaf(build, "filterbank", "2-channel real paraunitary cascade, one rotation per stage");
        s->add_option("--thetas", thetas)->required()->delimiter(',');
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                std::vector<FilterStage> stages;
                for (double t : thetas) stages.push_back({t, 0, 1});
                const auto p = filterbank_cascade(stages, cfg);
                rep.value("stages", stages.size());
                rep.check("paraunitary", is_paraunitary(p, cfg), paraunitary_residual(p, cfg));
                detail::write_artifact(g, rep, to_json_text(p));
            };
        });
    }

    // tangle
    auto *tangle = app.add_subcommand("tangle", "matrix tangle products");
    tangle->require_subcommand(1);
    std::string shuffler;
    std::vector<std::string> tangles;
    bool cycle = false;
    std::string property = "unitary";
    std::size_t width = 4;
    std::string side = "left";
    std::string shuffler_source = "seeds";
    std::vector<std::size_t> blocks;
    {
        auto product_cmd = [&](Side sd) {
            return [&, sd] {
                action = [&, sd](const ToleranceConfig &cfg) {
                    const Json uj = read_json_file(shuffler);
                    std::vector<Json> tj;
                    for (const auto &f : tangles) tj.push_back(read_json_file(f));
                    bool poly = detail::is_laurent_file(uj);
                    for (const auto &j : tj) poly = poly || detail::is_laurent_file(j);
                    if (poly) {
                        TangleSpec<LaurentMatrix> spec{sd, detail::as_laurent(uj), {}};
                        for (const auto &j : tj) spec.tangles.push_back(detail::as_laurent(j));
                        const std::size_t need = sd == Side::Left ? spec.shuffler.cols() : spec.shuffler.rows();
                        if (cycle) spec.tangles = cycle_tangles(spec.tangles, need);
                        auto p = tangle_product(spec);
                        p.prune(cfg.prune_tol);
                        rep.value("rows", p.rows());
                        rep.value("cols", p.cols());
                        rep.value("nvars", p.nvars());
                        if (p.rows() == p.cols()) rep.value("paraunitary", is_paraunitary(p, cfg));
                        detail::write_artifact(g, rep, to_json_text(p));
                    } else {
                        TangleSpec<ComplexMatrix> spec{sd, complex_matrix_from_json(uj), {}};
                        for (const auto &j : tj) spec.tangles.push_back(complex_matrix_from_json(j));
                        const std::size_t need = sd == Side::Left ? spec.shuffler.cols() : spec.shuffler.rows();
                        if (cycle) spec.tangles = cycle_tangles(spec.tangles, need);
                        const auto p = tangle_product(spec);
                        rep.value("rows", p.rows());
                        rep.value("cols", p.cols());
                        if (p.is_square()) {
                            rep.value("unitary", is_unitary(p, cfg));
                            rep.value("hadamard", verify_hadamard(p, cfg).is_hadamard);
                        }
                        detail::write_artifact(g, rep, to_json_text(p));
                    }
                };
            };
        };
        for (auto [name, sd] : {std::pair{"left", Side::Left}, std::pair{"right", Side::Right}}) {
            auto *s = leaf(tangle, name, std::string(name) + " tangle product");
            s->add_option("--shuffler", shuffler)->required();
            s->add_option("--tangles", tangles)->required();
            s->add_flag("--cycle", cycle, "repeat the tangles cyclically to the required count");
            s->callback(product_cmd(sd));
        }
        auto *s = leaf(tangle, "det-check", "compare det(T) with det(A_1)...det(A_k) det(U)^n for a tangle-spec");
        s->add_option("spec", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto any = tangle_spec_from_json(read_json_file(source));
                const auto *spec = std::get_if<TangleSpec<ComplexMatrix>>(&any);
                if (!spec) throw Error(ErrorCode::InvalidArgument, "det-check needs scalar matrices");
                const Complex predicted = det_predict(spec->shuffler, spec->tangles);
                const Complex direct = determinant(tangle_product(*spec));
                const double rel = std::abs(predicted - direct) / std::max(1.0, std::abs(direct));
                rep.record()["predicted"] = {predicted.real(), predicted.imag()};
                rep.record()["direct"] = {direct.real(), direct.imag()};
                rep.line("predicted: " + fmt(predicted.real()) + " + " + fmt(predicted.imag()) + "i");
                rep.line("direct:    " + fmt(direct.real()) + " + " + fmt(direct.imag()) + "i");
                rep.check("determinant law", rel <= cfg.verify_tol, rel);
            };
        });
        s = leaf(tangle, "preserve", "check that a tangle-spec keeps a property");
        s->add_option("spec", source)->required();
        s->add_option("--property", property)->check(CLI::IsMember({"unitary", "paraunitary", "hadamard"}));
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto prop = *detail::parse_property(property);
                const auto any = tangle_spec_from_json(read_json_file(source));
                auto emit = [&](const auto &r) {
                    rep.value("product_residual", r.product_residual);
                    if (r.predicted_butson) rep.value("predicted_butson", *r.predicted_butson);
                    if (r.product_butson) rep.value("product_butson", *r.product_butson);
                    rep.check(std::string("product is ") + to_string(prop), r.preserved, r.product_residual);
                    if (r.predicted_butson && r.product_butson && *r.predicted_butson != *r.product_butson) {
                        rep.line("note: Butson type of the product divides the lcm of the constituents' types");
                    }
                    detail::write_artifact(g, rep, to_json_text(r.product));
                };
                if (const auto *c = std::get_if<TangleSpec<ComplexMatrix>>(&any)) {
                    emit(preservation_suite(prop, *c, cfg));
                } else {
                    emit(preservation_suite(prop, std::get<TangleSpec<LaurentMatrix>>(any), cfg));
                }
            };
        });
        s = leaf(tangle, "series", "grow a series of tangle products from seed matrices (written to -o DIR)");
        s->add_option("seeds", files)->required();
        s->add_option("--property", property)->check(CLI::IsMember({"unitary", "hadamard"}));
        s->add_option("--depth", depth);
        s->add_option("--width", width, "products kept per level, 0 keeps all");
        s->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
        s->add_option("--shufflers", shuffler_source)->check(CLI::IsMember({"seeds", "pool"}));
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                SeriesPolicy pol;
                pol.side = side == "left" ? Side::Left : Side::Right;
                pol.shufflers = shuffler_source == "seeds" ? ShufflerSource::Seeds : ShufflerSource::Pool;
                pol.width = width;
                pol.seed = g.seed;
                const auto prop = *detail::parse_property(property);
                const auto levels = grow_series(detail::read_all(files), prop, pol, depth, cfg);
                for (std::size_t l = 0; l < levels.size(); ++l) {
                    double worst = 0.0;
                    for (const auto &m : levels[l]) worst = std::max(worst, property_residual(prop, m, cfg));
                    rep.check("level " + std::to_string(l) + ": " + std::to_string(levels[l].size()) + " matrices of order " +
                                  std::to_string(levels[l].front().rows()) + " are " + to_string(prop),
                              worst <= cfg.verify_tol, worst);
                    if (!g.output.empty()) {
                        detail::write_members(g.output, levels[l], rep, "level" + std::to_string(l));
                    }
                }
            };
        });
        s = leaf(tangle, "separable", "test whether a matrix is a tensor product for an m,n blocking");
        s->add_option("file", source)->required();
        s->add_option("--blocks", blocks, "block size m,n")->required()->delimiter(',')->expected(2);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto f = is_block_tensor(read_complex_matrix(source), blocks[0], blocks[1], cfg);
                rep.value("separable", f.has_value());
                if (f && !g.output.empty()) {
                    write_text_file(g.output, to_json_text(f->outer) + to_json_text(f->inner));
                }
            };
        });
    }

    // hadamard
    auto *had = app.add_subcommand("hadamard", "Hadamard checks and constructions");
    had->require_subcommand(1);
    std::vector<double> alphas;
    std::string dmode = "skew";
    int variant = 1;
    std::size_t rounds = 1;
    {
        auto *s = leaf(had, "verify", "verify a Hadamard matrix and report its Butson type");
        s->add_option("file", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                detail::report_hadamard(rep, verify_hadamard(read_complex_matrix(source), cfg));
            };
        });
        s = leaf(had, "sym-square", "n x n Hadamard -> symmetric n^2 x n^2 Hadamard");
        s->add_option("file", source)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto l = symmetric_hadamard_square(read_complex_matrix(source), cfg);
                detail::report_hadamard(rep, verify_hadamard(l, cfg));
                rep.check("self-adjoint", is_self_adjoint(l, cfg), self_adjoint_residual(l));
                detail::write_artifact(g, rep, to_json_text(l));
            };
        });
        s = leaf(had, "skew4", "4x4 complex skew Hadamard from three angles");
        s->add_option("--alphas", alphas)->required()->delimiter(',')->expected(3);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto h = skew4_family(alphas[0], alphas[1], alphas[2]);
                const auto r = verify_hadamard(h, cfg);
                detail::report_hadamard(rep, r);
                rep.check("skew", r.skew, skew_residual(h));
                detail::write_artifact(g, rep, to_json_text(h));
            };
        });
        s = leaf(had, "mub", "check that unitary matrices give mutually unbiased bases");
        s->add_option("files", files)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto bases = detail::read_all(files);
                const double r = mub_residual(bases, cfg);
                rep.value("bases", bases.size());
                rep.check("mutually unbiased", r <= cfg.verify_tol, r);
            };
        });
        s = leaf(had, "double", "double a symmetric or skew Hadamard matrix with a 2x2 shuffler");
        s->add_option("file", source)->required();
        s->add_option("--shuffler", shuffler)->required();
        s->add_option("--mode", dmode)->check(CLI::IsMember({"symmetric", "skew"}));
        s->add_option("--variant", variant)->check(CLI::Range(1, 4));
        s->add_option("--rounds", rounds)->check(CLI::PositiveNumber);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto md = dmode == "skew" ? DoublingMode::Skew : DoublingMode::Symmetric;
                const auto u = read_complex_matrix(shuffler);
                ComplexMatrix a = read_complex_matrix(source);
                for (std::size_t r = 0; r < rounds; ++r) {
                    a = tangle_double(a, u, md, variant, cfg);
                    const auto h = verify_hadamard(a, cfg);
                    rep.check("round " + std::to_string(r + 1) + " (" + std::to_string(a.rows()) + ") is Hadamard and " +
                                  dmode,
                              h.is_hadamard && (md == DoublingMode::Skew ? h.skew : h.symmetric));
                }
                detail::write_artifact(g, rep, to_json_text(a));
            };
        });
    }

    // constellation
    auto *con = app.add_subcommand("constellation", "unitary space-time constellations");
    con->require_subcommand(1);
    std::size_t nroots = 0;
    std::string lift_mode;
    std::vector<std::string> shuffler_files;
    {
        auto *s = leaf(con, "build", "n-th root diagonal constellation from a COSI set (members to -o DIR)");
        s->add_option("--cosi", source)->required();
        s->add_option("--n", nroots)->required()->check(CLI::PositiveNumber);
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const auto v = build_diag_root_constellation(detail::cosi_source(source, cfg), nroots, cfg);
                rep.value("L", v.size());
                rep.value("M", v.antennas());
                rep.value("rate", rate(v));
                if (nroots >= 2) rep.value("predicted_zeta", predicted_quality(nroots));
                if (!g.output.empty()) detail::write_members(g.output, v.members(), rep);
            };
        });
        s = leaf(con, "quality", "diversity quality of a set of unitary matrix files");
        s->add_option("files", files)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                const Constellation v(detail::read_all(files), "files", cfg);
                detail::report_quality(rep, quality(v, cfg), v);
            };
        });
        s = leaf(con, "lift", "derangement lift (--shuffler U --tangles A..) or shuffler lift (--shufflers U.. --tangles A..)");
        s->add_option("--mode", lift_mode)->required()->check(CLI::IsMember({"derangement", "shuffler"}));
        s->add_option("--shuffler", shuffler);
        s->add_option("--shufflers", shuffler_files);
        s->add_option("--tangles", tangles)->required();
        s->callback([&] {
            action = [&](const ToleranceConfig &cfg) {
                std::optional<LiftReport> lr;
                if (lift_mode == "derangement") {
                    if (shuffler.empty()) throw Error(ErrorCode::InvalidArgument, "derangement lift needs --shuffler");
                    lr = derangement_lift(detail::read_all(tangles), read_complex_matrix(shuffler), cfg);
                } else {
                    if (shuffler_files.empty()) throw Error(ErrorCode::InvalidArgument, "shuffler lift needs --shufflers");
                    lr = shuffler_lift(Constellation(detail::read_all(shuffler_files), "shufflers", cfg),
                                       detail::read_all(tangles), cfg);
                }
                rep.value("L", lr->lifted.size());
                rep.value("M", lr->lifted.antennas());
                if (lr->base_zeta) rep.value("base_zeta", *lr->base_zeta);
                if (lr->measured_zeta) rep.value("measured_zeta", *lr->measured_zeta);
                if (lr->base_zeta && lr->measured_zeta) {
                    rep.value("zeta_preserved", std::abs(*lr->base_zeta - *lr->measured_zeta) <= cfg.verify_tol);
                }
                if (!g.output.empty()) detail::write_members(g.output, lr->lifted.members(), rep);
            };
        });
    }

    // verify
    auto *ver = app.add_subcommand("verify", "check one property of a matrix or COSI file");
    std::string vprop;
    ver->add_option("--property", vprop)
        ->required()
        ->check(CLI::IsMember({"unitary", "paraunitary", "hadamard", "cosi", "skew", "symmetric"}));
    ver->add_option("file", source)->required();
    ver->callback([&] {
        action = [&](const ToleranceConfig &cfg) {
            rep.value("property", vprop);
            if (vprop == "cosi") {
                const auto set = read_cosi(source, cfg);
                rep.check("COSI axioms", true);
                rep.value("size", set.size());
                return;
            }
            const Json j = read_json_file(source);
            if (vprop == "paraunitary") {
                const auto p = detail::as_laurent(j);
                const double r = paraunitary_residual(p, cfg);
                rep.check("paraunitary", r <= cfg.verify_tol, r);
                return;
            }
            const auto m = complex_matrix_from_json(j);
            if (vprop == "unitary") {
                rep.check("unitary", is_unitary(m, cfg), unitary_residual(m));
            } else if (vprop == "hadamard") {
                detail::report_hadamard(rep, verify_hadamard(m, cfg));
            } else if (vprop == "skew") {
                rep.check("skew (M + M* = 2I)", is_skew(m, cfg), skew_residual(m));
            } else {
                rep.check("symmetric (M = M*)", is_self_adjoint(m, cfg), self_adjoint_residual(m));
            }
        };
    });

    // example
    auto *exa = app.add_subcommand("example", "run a named worked example");
    std::string ex_name;
    bool list = false;
    std::vector<std::string> overrides;
    exa->add_option("name", ex_name);
    exa->add_flag("--list", list, "list the available examples");
    exa->add_option("--input", overrides, "replace an input: NAME=FILE");
    exa->callback([&] {
        action = [&](const ToleranceConfig &cfg) {
            if (list || ex_name.empty()) {
                Json names = Json::array();
                for (const auto &e : example_registry()) {
                    rep.line(e.name + "  " + e.summary);
                    names.push_back(e.name);
                }
                rep.record()["examples"] = names;
                return;
            }
            const Example &e = find_example(ex_name);
            ExampleInputs inputs = e.inputs();
            for (const auto &o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--input expects NAME=FILE");
                const std::string key = o.substr(0, eq);
                auto it = std::find_if(inputs.begin(), inputs.end(), [&](const auto &m) { return m.name == key; });
                if (it == inputs.end()) throw Error(ErrorCode::InvalidArgument, "example has no input '" + key + "'");
                it->value = read_complex_matrix(o.substr(eq + 1));
            }
            rep.value("example", e.name);
            rep.line(e.summary);
            const auto outcome = run_example(e, inputs, cfg);
            for (const auto &c : outcome.checks) rep.check(c.name, c.pass, c.residual, c.detail);
            if (!g.output.empty()) {
                std::filesystem::create_directories(g.output);
                for (const auto &in : inputs) {
                    write_text_file((std::filesystem::path(g.output) / ("input_" + in.name + ".json")).string(),
                                    to_json_text(in.value));
                }
                for (const auto &[stem, text] : outcome.artifacts) {
                    write_text_file((std::filesystem::path(g.output) / (stem + ".json")).string(), text);
                }
                rep.record()["output"] = g.output;
                rep.line("wrote inputs and " + std::to_string(outcome.artifacts.size()) + " artifacts to " + g.output);
            }
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return {0, std::nullopt};
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return {0, std::nullopt};
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return {2, std::nullopt};
    }
    if (!action) {
        err << "error: no command given\n\n" << app.help("", CLI::AppFormatMode::All);
        return {2, std::nullopt};
    }

    int code = 0;
    try {
        action(g.cfg());
        code = rep.ok() ? 0 : 1;
    } catch (const Error &e) {
        rep.fail(e);
        if (is_verification_failure(e.code())) {
            code = 1;
        } else {
            err << "error: " << e.what() << "\n";
            code = 2;
        }
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return {2, std::nullopt};
    }
    rep.record()["exit_code"] = code;

    CommandResult result{code, std::nullopt};
    if (g.report.empty()) {
        out << rep.text();
    } else {
        try {
            write_text_file(g.report, rep.text());
            write_text_file(detail::sidecar_path(g.report), rep.record().dump(2) + "\n");
            result.report_path = g.report;
        } catch (const Error &e) {
            err << "error: " << e.what() << "\n";
            return {2, std::nullopt};
        }
    }
    return result;
}

}  // namespace mxforge::cli
