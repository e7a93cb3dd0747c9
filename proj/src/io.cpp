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


#include "hecke/io.hpp"

#include <cctype>

namespace hecke {

namespace {

class Parser {
public:
    Parser(const std::string& s, int q) : s_(s), q_(q) {}

    Real run()
    {
        Real v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw DomainError("cannot parse value '" + s_ + "': " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Real expr()
    {
        Real v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    Real term()
    {
        Real v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/')) {
                Real d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }

    Real unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Real power()
    {
        Real base = atom();
        if (!eat('^')) return base;
        skip();
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("exponent must be an integer");
        long e = std::stol(s_.substr(start, pos_ - start));
        Real r(q_, Q(1));
        for (long i = 0; i < e; ++i) r *= base;
        if (neg) {
            if (r.is_zero()) fail("division by zero");
            r = r.inverse();
        }
        return r;
    }

    Real atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Real v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string id = s_.substr(start, pos_ - start);
        if (id == "l" || id == "lambda") return Real::lambda(q_);
        if (id == "r") return constants(q_).r;
        if (id == "R") return constants(q_).R;
        if (id == "sqrt") {
            if (!eat('(')) fail("sqrt needs '('");
            Real d = expr();
            if (!eat(')')) fail("missing ')'");
            if (!d.in_field()) fail("nested square roots are not supported");
            if (d.sign() < 0) fail("square root of a negative number");
            return Real(Lam(q_), Lam(q_, Q(1)), d.field_value());
        }
        fail(id.empty() ? "unexpected '" + std::string(1, c) + "'" : "unknown name '" + id + "'");
    }

    Real number()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Z whole = start == pos_ ? Z(0) : Z(s_.substr(start, pos_ - start));
        Q v(whole);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t f = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (f == pos_ && start + 1 == f) fail("bad number");
            if (f != pos_) {
                Z frac(s_.substr(f, pos_ - f));
                Z scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - f);
                v += Q(frac, scale);
                v.canonicalize();
            }
        }
        return Real(q_, v);
    }

    const std::string& s_;
    int q_;
    std::size_t pos_ = 0;
};

Json rational(const Q& x)
{
    return to_string(x);
}

Q rational_from(const Json& j)
{
    return parse_rational(j.get<std::string>());
}

}  // namespace

Real parse_value(const std::string& s, int q)
{
    if (q < 3) throw DomainError("q must be at least 3");
    std::size_t i = s.find_first_not_of(" \t");
    if (i != std::string::npos && s[i] == '[') {
        CFExpansion e = parse_cf(s, q);
        return evaluate_exact(e);
    }
    return Parser(s, q).run();
}

std::string decimal(const Real& x, int digits)
{
    int prec = static_cast<int>(digits * 3.33) + 16;
    Interval iv = x.interval(prec);
    Q m = iv.mid();
    std::string sign = m < 0 ? "-" : "";
    if (m < 0) m = -m;
    Z scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Q scaled = m * scale + Q(1, 2);
    Z n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    std::string t = n.get_str();
    if (t.size() <= static_cast<std::size_t>(digits)) t = std::string(digits + 1 - t.size(), '0') + t;
    std::string out = t.substr(0, t.size() - digits) + "." + t.substr(t.size() - digits);
    if (n == 0) sign.clear();
    return sign + out;
}

Json to_json(const Lam& x)
{
    Json a = Json::array();
    for (const Q& c : x.coeffs()) a.push_back(rational(c));
    return a;
}

Lam lam_from_json(int q, const Json& j)
{
    std::vector<Q> c;
    for (const auto& v : j) c.push_back(rational_from(v));
    return Lam(q, c);
}

Json to_json(const Real& x, int prec)
{
    if (prec <= 0) prec = default_precision();
    Json j;
    j["q"] = x.q();
    switch (x.kind()) {
    case Real::Kind::rational: j["kind"] = "rational"; break;
    case Real::Kind::field: j["kind"] = "field"; break;
    case Real::Kind::surd: j["kind"] = "surd"; break;
    }
    if (x.in_field()) {
        j["coeffs"] = to_json(x.field_value());
        j["quad"] = nullptr;
    } else {
        Lam a, b, c;
        x.quadratic(a, b, c);
        j["coeffs"] = nullptr;
        j["quad"] = Json::array({to_json(a), to_json(b), to_json(c)});
    }
    Interval iv = x.interval(prec);
    j["interval"] = Json::array({rational(iv.lo), rational(iv.hi)});
    j["decimal"] = decimal(x);
    return j;
}

Real real_from_json(const Json& j)
{
    int q = j.at("q").get<int>();
    if (!j.at("coeffs").is_null()) return Real(lam_from_json(q, j.at("coeffs")));
    const Json& quad = j.at("quad");
    Lam a = lam_from_json(q, quad.at(0)), b = lam_from_json(q, quad.at(1)), c = lam_from_json(q, quad.at(2));
    Real lo(q, rational_from(j.at("interval").at(0))), hi(q, rational_from(j.at("interval").at(1)));
    Lam two_a = a * Q(2);
    Lam disc = b * b - a * c * Q(4);
    for (int s : {1, -1}) {
        Real root(-b / two_a, Lam(q, Q(s)) / two_a, disc);
        if (lo <= root && root <= hi) return root;
    }
    throw DomainError("no root of the quadratic lies in the interval");
}

Json to_json(const CFExpansion& e)
{
    Json j;
    j["q"] = e.q;
    j["a0"] = e.a0;
    j["digits"] = e.digits;
    if (e.periodic()) {
        j["preperiod"] = e.digits.size();
        j["period"] = e.period;
    } else {
        j["preperiod"] = nullptr;
        j["period"] = nullptr;
    }
    j["kind"] = kind_name(e.kind);
    j["truncated"] = e.truncated;
    j["text"] = e.str();
    return j;
}

CFExpansion cf_from_json(const Json& j)
{
    CFExpansion e;
    e.q = j.at("q").get<int>();
    e.a0 = j.at("a0").get<Digit>();
    e.digits = j.at("digits").get<Word>();
    if (!j.at("period").is_null()) e.period = j.at("period").get<Word>();
    e.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("truncated")) e.truncated = j.at("truncated").get<bool>();
    return e;
}

Json to_json(const RewriteTrace& t)
{
    Json j;
    j["input"] = to_json(t.input);
    Json steps = Json::array();
    for (const RewriteStep& s : t.steps)
        steps.push_back({{"rule", s.rule}, {"position", s.position}, {"window", s.window}, {"cascade", s.cascade}});
    j["steps"] = steps;
    j["result"] = to_json(t.result);
    j["cascade"] = t.cascade;
    j["cascade_sign"] = t.cascade_sign;
    return j;
}

Json to_json(const Moebius& m)
{
    return Json::array({Json::array({m.a.str(), m.b.str()}), Json::array({m.c.str(), m.d.str()})});
}

Symbol parse_symbol(const std::string& s)
{
    try {
        if (!s.empty() && (s[0] == '>' || s[0] == '<')) {
            Digit m = std::stoll(s.substr(1));
            return {s[0] == '>' ? m + 1 : m - 1, 0, true};
        }
        auto u = s.find('_');
        Symbol sym{std::stoll(s.substr(0, u)), 0, false};
        if (u != std::string::npos) sym.index = std::stoi(s.substr(u + 1));
        if (sym.digit == 0) throw DomainError("zero digit");
        return sym;
    } catch (const std::logic_error&) {
        throw DomainError("bad partition symbol '" + s + "'");
    }
}

Json to_json(const TransitionMatrix& m)
{
    Json j;
    j["q"] = m.q;
    j["map"] = map_name(m.map);
    Json alpha = Json::array();
    for (const Symbol& s : m.alphabet) alpha.push_back(s.str());
    j["alphabet"] = alpha;
    Json rows = Json::array();
    for (const auto& r : m.adj) {
        Json row = Json::array();
        for (char c : r) row.push_back(c ? 1 : 0);
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

TransitionMatrix matrix_from_json(const Json& j)
{
    TransitionMatrix m;
    m.q = j.at("q").get<int>();
    m.map = parse_map(j.at("map").get<std::string>());
    for (const auto& s : j.at("alphabet")) m.alphabet.push_back(parse_symbol(s.get<std::string>()));
    for (const auto& r : j.at("rows")) {
        std::vector<char> row;
        for (const auto& v : r) row.push_back(static_cast<char>(v.get<int>() != 0));
        if (row.size() != m.alphabet.size()) throw DomainError("matrix row length differs from the alphabet");
        m.adj.push_back(std::move(row));
    }
    if (m.adj.size() != m.alphabet.size()) throw DomainError("matrix is not square");
    return m;
}

Json to_json(const MarkovPartition& p, int prec)
{
    Json j;
    j["q"] = p.q;
    j["map"] = map_name(p.map);
    j["cutoff"] = p.cutoff;
    Json orbit = Json::array();
    for (std::size_t i = 0; i < p.orbit.size(); ++i)
        orbit.push_back({{"index", i}, {"step", p.orbit_step[i]}, {"value", to_json(p.orbit[i], prec)}});
    j["orbit"] = orbit;
    Json cells = Json::array();
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        Json img = Json::array();
        for (std::size_t k : p.images[i]) img.push_back(p.cells[k].label.str());
        cells.push_back({{"label", p.cells[i].label.str()},
                         {"lo", to_json(p.cells[i].lo, prec)},
                         {"hi", to_json(p.cells[i].hi, prec)},
                         {"image", img}});
    }
    j["cells"] = cells;
    Json ids = Json::array();
    for (const ImageIdentity& id : p.identities)
        ids.push_back({{"source", id.source}, {"branch", id.branch}, {"lo", id.lo.str()}, {"hi", id.hi.str()},
                       {"holds", id.holds}});
    j["identities"] = ids;
    j["notes"] = p.notes;
    return j;
}

Json to_json(const Encoding& e)
{
    Json syms = Json::array();
    for (const Symbol& s : e.symbols) syms.push_back(s.str());
    return {{"symbols", syms}, {"digits", e.digits}, {"terminated", e.terminated}};
}

Json to_json(const Reduction& r, int prec)
{
    return {{"word", r.word.str()},
            {"matrix", to_json(r.g)},
            {"omega_minus", to_json(r.omega_minus, prec)},
            {"omega_plus", to_json(r.omega_plus, prec)},
            {"branch", r.branch},
            {"attempted", r.attempted},
            {"m", r.m},
            {"shift_steps", r.shift_steps}};
}

Json to_json(const RosenExpansion& r)
{
    Json d = Json::array(), p = Json::array();
    for (const RosenDigit& x : r.digits) d.push_back(Json::array({x.eps, x.r}));
    for (const RosenDigit& x : r.period) p.push_back(Json::array({x.eps, x.r}));
    return {{"q", r.q},       {"r0", r.r0},        {"digits", d},           {"period", r.periodic() ? p : Json()},
            {"text", r.str()}, {"formal", r.formal}, {"truncated", r.truncated}};
}

}  // namespace hecke
