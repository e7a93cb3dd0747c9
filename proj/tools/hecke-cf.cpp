/*
   Copyright 2025 The hecke-cf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "hecke/grammar.hpp"
#include "hecke/io.hpp"
#include "hecke/natural_ext.hpp"
#include "hecke/rosen.hpp"
#include "hecke/symbolic.hpp"
#include "hecke/transfer.hpp"

using namespace hecke;

namespace {

constexpr int exit_domain = 2;
constexpr int exit_limit = 3;
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;

const char* const trace_note = "approximation under trace identification";

struct Output {
    Json json;
    std::string text;
    std::vector<std::vector<std::string>> csv;  // first row is the header
    std::vector<std::string> comments;
};

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

/* Imaginary parts at rounding level are dropped; real beta gives a real operator. */
std::string num(Complex z)
{
    if (std::abs(z.imag()) <= 1e-13 * (1 + std::abs(z.real()))) return num(z.real());
    std::string im = num(std::abs(z.imag()));
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

Json cjson(Complex z)
{
    if (std::abs(z.imag()) <= 1e-13 * (1 + std::abs(z.real()))) z.imag(0);
    return Json::array({z.real(), z.imag()});
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    } else {
        rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
    }
}

void emit(const Output& out, const std::string& format)
{
    if (format == "json") {
        std::cout << out.json.dump(2) << "\n";
    } else if (format == "csv") {
        for (const std::string& c : out.comments) std::cout << "# " << c << "\n";
        std::vector<std::vector<std::string>> rows = out.csv;
        if (rows.empty()) {
            rows.push_back({"key", "value"});
            flatten(out.json, "", rows);
        }
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i]);
            std::cout << "\n";
        }
    } else {
        std::cout << out.text;
        if (!out.text.empty() && out.text.back() != '\n') std::cout << "\n";
    }
}

struct Common {
    int q = 0;
    std::string format = "text";
    int precision = 0;
};

std::string interval_text(const Real& x, int prec)
{
    Interval iv = x.interval(prec);
    return "[" + decimal(Real(x.q(), iv.lo), 12) + ", " + decimal(Real(x.q(), iv.hi), 12) + "]";
}

CFExpansion cf_input(const std::string& s, int q, std::size_t max_digits)
{
    std::size_t i = s.find_first_not_of(" \t");
    if (i != std::string::npos && s[i] == '[') {
        CFExpansion e = parse_cf(s, q);
        if (is_regular(e)) {
            e.kind = CFKind::regular;
            return e;
        }
        return rewrite_to_regular(e).result;
    }
    return expand(parse_value(s, q), CFKind::regular, max_digits);
}

std::string ordering_name(std::strong_ordering o)
{
    if (o < 0) return "less";
    if (o > 0) return "greater";
    return "equal";
}

std::string tail_name(TailPolicy t)
{
    switch (t) {
    case TailPolicy::hurwitz: return "hurwitz";
    case TailPolicy::direct: return "direct";
    default: return "automatic";
    }
}

TailPolicy parse_tail(const std::string& s)
{
    if (s == "hurwitz") return TailPolicy::hurwitz;
    if (s == "direct") return TailPolicy::direct;
    if (s == "auto" || s == "automatic") return TailPolicy::automatic;
    throw DomainError("unknown tail policy '" + s + "'");
}

/* "a:b:step" with exact decimal arithmetic so the grid does not drift. */
std::vector<double> beta_grid(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("beta grid must be lo:hi:step");
    Q lo = parse_value(parts[0], 3).field_value().rational_value();
    Q hi = parse_value(parts[1], 3).field_value().rational_value();
    Q step = parse_value(parts[2], 3).field_value().rational_value();
    if (step <= 0) throw DomainError("beta grid step must be positive");
    if (hi < lo) throw DomainError("beta grid is empty");
    std::vector<double> out;
    for (Q b = lo; b <= hi; b += step) {
        out.push_back(b.get_d());
        if (out.size() > 100000) throw TruncationError("beta grid has more than 100000 points");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nearest lambda_q-multiple continued fractions for Hecke triangle groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Common co;
    app.add_option("--q", co.q, "Hecke index q >= 3")->required();
    app.add_option("--format", co.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--precision", co.precision, "Interval precision in bits (default HECKE_CF_PRECISION or 128)");

    std::function<Output()> run;

    // expand
    std::string value, kind = "regular";
    std::size_t max_digits = default_max_digits;
    auto* c_expand = app.add_subcommand("expand", "Regular or dual regular expansion of a value");
    c_expand->add_option("--value", value, "Value, e.g. \"-l/2\", \"1/3\", \"[0; (3)*]\"")->required();
    c_expand->add_option("--kind", kind, "regular or dual_regular");
    c_expand->add_option("--max-digits", max_digits, "Digit limit before truncation");
    c_expand->callback([&] {
        run = [&] {
            Real x = parse_value(value, co.q);
            CFKind k = parse_kind(kind);
            if (k == CFKind::raw) throw DomainError("expansion kind must be regular or dual_regular");
            CFExpansion e = expand(x, k, max_digits);
            Output o;
            o.json = {{"value", to_json(x, co.precision)}, {"expansion", to_json(e)}};
            o.text = e.str();
            return o;
        };
    });

    // check
    std::string cf_text;
    auto* c_check = app.add_subcommand("check", "Forbidden-block scan of a CF literal");
    c_check->add_option("--cf", cf_text, "CF literal \"[a0; d1, ..., (p1, ...)*]\"")->required();
    c_check->callback([&] {
        run = [&] {
            CFExpansion e = parse_cf(cf_text, co.q);
            bool reg = is_regular(e), dual = is_dual_regular(e);
            std::size_t n = e.digits.size() + (e.periodic() ? 2 * e.period.size() + max_block_length(co.q) : 0);
            std::optional<BlockMatch> b = first_forbidden(co.q, e.prefix(n));
            Output o;
            o.json = {{"cf", to_json(e)}, {"regular", reg}, {"dual_regular", dual}, {"block", nullptr}};
            std::string text = std::string(reg ? "regular" : "not regular");
            if (b) {
                o.json["block"] = {{"type", block_name(b->type)}, {"position", b->pos + 1}, {"length", b->len},
                                   {"sign", b->sign}};
                text += ": " + block_name(b->type) + " at digit " + std::to_string(b->pos + 1);
            }
            o.text = text + "\n" + (dual ? "dual regular" : "not dual regular");
            return o;
        };
    });

    // rewrite
    std::size_t max_steps = 200000;
    auto* c_rewrite = app.add_subcommand("rewrite", "Rewrite a CF literal into its regular form");
    c_rewrite->add_option("--cf", cf_text, "CF literal")->required();
    c_rewrite->add_option("--max-steps", max_steps, "Rewriting step limit");
    c_rewrite->callback([&] {
        run = [&] {
            RewriteTrace t = rewrite_to_regular(parse_cf(cf_text, co.q), max_steps);
            Output o;
            o.json = to_json(t);
            std::string text;
            for (const RewriteStep& s : t.steps) {
                text += s.rule + " at " + std::to_string(s.position) + ":";
                for (Digit d : s.window) text += " " + std::to_string(d);
                text += "\n";
            }
            o.text = text + t.result.str();
            o.csv.push_back({"step", "rule", "position", "cascade"});
            for (std::size_t i = 0; i < t.steps.size(); ++i)
                o.csv.push_back({std::to_string(i), t.steps[i].rule, std::to_string(t.steps[i].position),
                                 t.steps[i].cascade ? "1" : "0"});
            return o;
        };
    });

    // compare
    std::string xs, ys;
    auto* c_compare = app.add_subcommand("compare", "Order and G_q-equivalence of two points");
    c_compare->add_option("--x", xs, "First value or CF literal")->required();
    c_compare->add_option("--y", ys, "Second value or CF literal")->required();
    c_compare->add_option("--max-digits", max_digits, "Digit limit before truncation");
    c_compare->callback([&] {
        run = [&] {
            CFExpansion x = cf_input(xs, co.q, max_digits), y = cf_input(ys, co.q, max_digits);
            if (x.truncated || y.truncated)
                throw TruncationError("expansion truncated before a period was found");
            std::string order = ordering_name(lex_compare(x, y));
            std::string eq = equivalence_name(group_equivalent(x, y));
            Output o;
            o.json = {{"x", to_json(x)}, {"y", to_json(y)}, {"order", order}, {"equivalence", eq}};
            o.text = x.str() + " vs " + y.str() + "\norder: " + order + "\n" + eq;
            return o;
        };
    });

    // convergents
    std::size_t count = 10;
    auto* c_conv = app.add_subcommand("convergents", "Convergents p_k/q_k of the regular expansion");
    c_conv->add_option("--value", value, "Value or CF literal")->required();
    c_conv->add_option("--n", count, "Number of digits after a0");
    c_conv->add_option("--max-digits", max_digits, "Digit limit before truncation");
    c_conv->callback([&] {
        run = [&] {
            CFExpansion e = cf_input(value, co.q, std::max(max_digits, count));
            std::size_t n = count;
            if (e.finite()) n = std::min(n, e.digits.size());
            Output o;
            o.json = {{"expansion", to_json(e)}, {"convergents", Json::array()}};
            o.csv.push_back({"k", "p", "q", "value"});
            for (std::size_t k = 0; const Convergent& c : convergents(e, n)) {
                std::string v = c.q.is_zero() ? "inf" : decimal(Real(c.p) / Real(c.q), 20);
                o.json["convergents"].push_back({{"k", k}, {"p", c.p.str()}, {"q", c.q.str()}, {"value", v}});
                o.csv.push_back({std::to_string(k), c.p.str(), c.q.str(), v});
                o.text += std::to_string(k) + ": " + c.p.str() + " / " + c.q.str() + " = " + v + "\n";
                ++k;
            }
            return o;
        };
    });

    // constants
    auto* c_const = app.add_subcommand("constants", "lambda_q, h_q, kappa_q, r_q, R_q");
    c_const->callback([&] {
        run = [&] {
            const HeckeConstants& c = constants(co.q);
            int prec = co.precision > 0 ? co.precision : default_precision();
            Output o;
            Real lam(c.lambda);
            o.json = {{"q", co.q},
                      {"lambda", to_json(lam, prec)},
                      {"h", c.h},
                      {"kappa", c.kappa},
                      {"r", to_json(c.r, prec)},
                      {"R", to_json(c.R, prec)}};
            o.csv.push_back({"name", "exact", "lo", "hi"});
            for (auto [name, x] : {std::pair<const char*, const Real*>{"lambda", &lam}, {"r", &c.r}, {"R", &c.R}}) {
                Interval iv = x->interval(prec);
                o.text += std::string(name) + " = " + x->str() + " in " + interval_text(*x, prec) + "\n";
                o.csv.push_back({name, x->str(), decimal(Real(co.q, iv.lo), 30), decimal(Real(co.q, iv.hi), 30)});
            }
            o.text += "h = " + std::to_string(c.h) + "\nkappa = " + std::to_string(c.kappa);
            o.csv.push_back({"h", std::to_string(c.h), "", ""});
            o.csv.push_back({"kappa", std::to_string(c.kappa), "", ""});
            return o;
        };
    });

    // partition
    std::string map = "f";
    Digit cutoff = 8;
    auto* c_part = app.add_subcommand("partition", "Markov partition of f or f*");
    c_part->add_option("--map", map, "f or fstar");
    c_part->add_option("--cutoff", cutoff, "Largest explicit digit M");
    c_part->callback([&] {
        run = [&] {
            MarkovPartition p = build_partition(co.q, parse_map(map), cutoff);
            Output o;
            o.json = to_json(p, co.precision);
            o.csv.push_back({"label", "lo", "hi", "image"});
            for (std::size_t i = 0; i < p.cells.size(); ++i) {
                std::string img;
                for (std::size_t k : p.images[i]) img += (img.empty() ? "" : " ") + p.cells[k].label.str();
                o.csv.push_back({p.cells[i].label.str(), p.cells[i].lo.str(), p.cells[i].hi.str(), img});
                o.text += p.cells[i].label.str() + "  [" + decimal(p.cells[i].lo, 10) + ", " +
                          decimal(p.cells[i].hi, 10) + "]  -> " + img + "\n";
            }
            for (const std::string& n : p.notes) o.text += "note: " + n + "\n";
            return o;
        };
    });

    // matrix
    bool published = false, dot = false;
    auto* c_matrix = app.add_subcommand("matrix", "Transition matrix of the Markov partition");
    c_matrix->add_option("--map", map, "f or fstar");
    c_matrix->add_option("--cutoff", cutoff, "Largest explicit digit M");
    c_matrix->add_flag("--published", published, "Literal reading of the published tables");
    c_matrix->add_flag("--dot", dot, "GraphViz output");
    c_matrix->callback([&] {
        run = [&] {
            TransitionMatrix m = published ? published_matrix(co.q, parse_map(map), cutoff)
                                           : transition_matrix(co.q, parse_map(map), cutoff);
            Output o;
            o.json = to_json(m);
            std::vector<std::string> head{""};
            for (const Symbol& s : m.alphabet) head.push_back(s.str());
            o.csv.push_back(head);
            std::size_t width = 0;
            for (const Symbol& s : m.alphabet) width = std::max(width, s.str().size());
            for (std::size_t i = 0; i < m.alphabet.size(); ++i) {
                std::vector<std::string> row{m.alphabet[i].str()};
                std::string label = m.alphabet[i].str();
                std::string line = label + std::string(width - label.size() + 1, ' ');
                for (char c : m.adj[i]) {
                    row.push_back(c ? "1" : "0");
                    line += c ? '1' : '.';
                }
                o.csv.push_back(row);
                o.text += line + "\n";
            }
            if (dot) o.text = to_dot(m);
            return o;
        };
    });

    // encode
    std::size_t steps = 20;
    std::string side = "none";
    auto* c_encode = app.add_subcommand("encode", "Partition itinerary of a point");
    c_encode->add_option("--value", value, "Value or CF literal")->required();
    c_encode->add_option("--map", map, "f or fstar");
    c_encode->add_option("--n", steps, "Number of steps");
    c_encode->add_option("--side", side, "Boundary side: none, left, right")
        ->check(CLI::IsMember({"none", "left", "right"}));
    c_encode->add_option("--cutoff", cutoff, "Largest explicit digit M");
    c_encode->callback([&] {
        run = [&] {
            MarkovPartition p = build_partition(co.q, parse_map(map), cutoff);
            Side sd = side == "left" ? Side::left : side == "right" ? Side::right : Side::none;
            Encoding e = encode(p, parse_value(value, co.q), steps, sd);
            Decoded d = decode(p, e);
            Output o;
            o.json = to_json(e);
            o.json["decoded"] = {{"lo", to_json(d.lo, co.precision)}, {"hi", to_json(d.hi, co.precision)}};
            std::string syms, digs;
            for (const Symbol& s : e.symbols) syms += (syms.empty() ? "" : " ") + s.str();
            for (Digit x : e.digits) digs += (digs.empty() ? "" : " ") + std::to_string(x);
            o.text = "symbols: " + syms + "\ndigits: " + digs + "\ncell: [" + decimal(d.lo, 15) + ", " +
                     decimal(d.hi, 15) + "]";
            o.csv.push_back({"step", "symbol", "digit"});
            for (std::size_t i = 0; i < e.symbols.size(); ++i)
                o.csv.push_back({std::to_string(i), e.symbols[i].str(), std::to_string(e.digits[i])});
            return o;
        };
    });

    // reduce
    std::string wm, wp;
    auto* c_reduce = app.add_subcommand("reduce", "Reduce a geodesic into the natural extension domain");
    c_reduce->add_option("--omega-minus", wm, "Past endpoint")->required();
    c_reduce->add_option("--omega-plus", wp, "Future endpoint")->required();
    c_reduce->callback([&] {
        run = [&] {
            Reduction r = reduce_geodesic(parse_value(wm, co.q), parse_value(wp, co.q));
            Output o;
            o.json = to_json(r, co.precision);
            o.text = "g = " + r.word.str() + "\nmatrix = [[" + r.g.a.str() + ", " + r.g.b.str() + "], [" +
                     r.g.c.str() + ", " + r.g.d.str() + "]]\nbranch: " + r.branch + " (case " + r.attempted +
                     ")\nomega_minus' = " + decimal(r.omega_minus, 15) + "\nomega_plus' = " +
                     decimal(r.omega_plus, 15);
            return o;
        };
    });

    // spectrum
    double beta = 1.0;
    std::size_t order = 16;
    Digit n_max = 10000;
    std::string tail = "auto";
    std::size_t show = 6;
    auto* c_spec = app.add_subcommand("spectrum", "Leading spectrum of the truncated transfer operator");
    c_spec->add_option("--beta", beta, "Real beta > 1/2");
    c_spec->add_option("--order", order, "Taylor degree per disc");
    c_spec->add_option("--cutoff", n_max, "Digit cutoff for direct summation");
    c_spec->add_option("--tail", tail, "auto, hurwitz or direct");
    c_spec->add_option("--eigenvalues", show, "Number of eigenvalues in json/text output");
    c_spec->callback([&] {
        run = [&] {
            DiscSystem s = disc_system(co.q);
            OperatorMatrix m = assemble(s, beta, {order, n_max, parse_tail(tail)});
            std::vector<Complex> ev = spectrum(m);
            Complex lead = leading_eigenvalue(m), det = fredholm_det(m);
            Output o;
            o.comments.push_back(std::string("det: ") + trace_note);
            o.csv = {{"beta", "lambda_max", "det", "error_bound"}, {num(beta), num(lead), num(det), num(m.error_bound)}};
            Json evs = Json::array();
            o.text = "beta = " + num(beta) + "\nlambda_max = " + num(lead) + "\ndet(1 - L) = " + num(det) +
                     "  (" + trace_note + ")\nerror_bound = " + num(m.error_bound) + "\neigenvalues:";
            for (std::size_t i = 0; i < std::min(show, ev.size()); ++i) {
                evs.push_back(cjson(ev[i]));
                o.text += "\n  " + num(ev[i]);
            }
            o.json = {{"q", co.q},
                      {"beta", beta},
                      {"order", order},
                      {"dimension", m.dim},
                      {"tail", tail_name(m.tail)},
                      {"digit_cutoff", m.n_max},
                      {"lambda_max", cjson(lead)},
                      {"det", cjson(det)},
                      {"trace", cjson(trace(m))},
                      {"error_bound", m.error_bound},
                      {"eigenvalues", evs},
                      {"note", trace_note}};
            return o;
        };
    });

    // zeta
    std::string grid;
    int terms = 12;
    auto* c_zeta = app.add_subcommand("zeta", "Selberg zeta approximation on a beta grid");
    c_zeta->add_option("--beta-grid", grid, "lo:hi:step");
    c_zeta->add_option("--beta", beta, "Single real beta > 1/2");
    c_zeta->add_option("--order", order, "Taylor degree per disc");
    c_zeta->add_option("--cutoff", n_max, "Digit cutoff for direct summation");
    c_zeta->add_option("--tail", tail, "auto, hurwitz or direct");
    c_zeta->add_option("--terms", terms, "Largest shift K in the product over k = 0..K");
    c_zeta->callback([&] {
        run = [&] {
            DiscSystem s = disc_system(co.q);
            std::vector<double> betas = grid.empty() ? std::vector<double>{beta} : beta_grid(grid);
            AssemblyOptions opt{order, n_max, parse_tail(tail)};
            Output o;
            o.comments.push_back(std::string("det, zeta: ") + trace_note);
            o.csv.push_back({"beta", "lambda_max", "det", "zeta", "error_bound"});
            o.json = {{"q", co.q}, {"order", order}, {"note", trace_note}, {"rows", Json::array()}};
            o.text = "# " + std::string(trace_note) + "\nbeta lambda_max det zeta error_bound\n";
            for (double b : betas) {
                std::vector<std::string> row{num(b)};
                try {
                    OperatorMatrix m = assemble(s, b, opt);
                    Complex lead = leading_eigenvalue(m), det = fredholm_det(m);
                    ZetaValue z = selberg_zeta(s, b, opt, terms);
                    double err = std::max(m.error_bound, z.error_bound);
                    row.insert(row.end(), {num(lead), num(det), num(z.value), num(err)});
                    o.json["rows"].push_back({{"beta", b},
                                              {"lambda_max", cjson(lead)},
                                              {"det", cjson(det)},
                                              {"zeta", cjson(z.value)},
                                              {"zeta_terms", z.terms},
                                              {"error_bound", err}});
                } catch (const DomainError& e) {
                    std::cerr << Json({{"error", "domain"}, {"beta", b}, {"message", e.what()}}).dump() << "\n";
                    row.insert(row.end(), {"nan", "nan", "nan", "nan"});
                    o.json["rows"].push_back({{"beta", b}, {"error", e.what()}});
                }
                std::string line;
                for (const std::string& f : row) line += (line.empty() ? "" : " ") + f;
                o.text += line + "\n";
                o.csv.push_back(std::move(row));
            }
            return o;
        };
    });

    // rosen
    std::string to_text, from_text;
    auto* c_rosen = app.add_subcommand("rosen", "Convert between lambda_q-CFs and Rosen fractions");
    auto* o_to = c_rosen->add_option("--to", to_text, "CF literal to convert to a Rosen fraction");
    auto* o_from = c_rosen->add_option("--from", from_text, "Rosen fraction \"[r0; (e1:r1), ...]\"");
    o_to->excludes(o_from);
    c_rosen->callback([&] {
        run = [&] {
            Output o;
            RosenExpansion r;
            CFExpansion e;
            if (!to_text.empty()) {
                e = parse_cf(to_text, co.q);
                r = to_rosen(e);
            } else if (!from_text.empty()) {
                r = parse_rosen(from_text, co.q);
                e = from_rosen(r);
            } else {
                throw CLI::RequiredError("--to or --from");
            }
            ReducedReport rep = is_reduced(r);
            o.json = {{"rosen", to_json(r)}, {"cf", to_json(e)}, {"reduced", rep.reduced},
                      {"violated", rep.violated}, {"ambiguous", rep.ambiguous}};
            o.text = (to_text.empty() ? e.str() : r.str());
            if (r.formal) o.text += "\n(formal, q = 3)";
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (co.q < 3) throw DomainError("q must be at least 3");
        if (co.precision < 0) throw DomainError("precision must be positive");
        emit(run(), co.format);
        return 0;
    } catch (const CLI::Error& e) {
        std::cerr << Json({{"error", "usage"}, {"message", e.what()}}).dump() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << Json({{"error", "domain"}, {"message", e.what()}}).dump() << "\n";
        return exit_domain;
    } catch (const TruncationError& e) {
        std::cerr << Json({{"error", "truncation"}, {"message", e.what()}}).dump() << "\n";
        return exit_limit;
    } catch (const SpectralError& e) {
        std::cerr << Json({{"error", "spectral"}, {"message", e.what()}}).dump() << "\n";
        return exit_limit;
    } catch (const std::exception& e) {
        std::cerr << Json({{"error", "internal"}, {"message", e.what()}}).dump() << "\n";
        return exit_internal;
    }
}
