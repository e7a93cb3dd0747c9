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

#include "hecke/cf.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace hecke {

std::string kind_name(CFKind k)
{
    switch (k) {
    case CFKind::regular: return "regular";
    case CFKind::dual_regular: return "dual_regular";
    default: return "raw";
    }
}

CFKind parse_kind(const std::string& s)
{
    if (s == "regular") return CFKind::regular;
    if (s == "dual_regular" || s == "dual") return CFKind::dual_regular;
    if (s == "raw") return CFKind::raw;
    throw DomainError("unknown expansion kind '" + s + "'");
}

/* --------------------------------------------------------------- CFExpansion */

Digit CFExpansion::digit(std::size_t i) const
{
    if (i == 0) return a0;
    if (i <= digits.size()) return digits[i - 1];
    if (period.empty()) throw std::out_of_range("digit index past the end of a finite expansion");
    return period[(i - 1 - digits.size()) % period.size()];
}

Word CFExpansion::prefix(std::size_t n) const
{
    Word w;
    w.reserve(n);
    std::size_t avail = period.empty() ? digits.size() : n;
    for (std::size_t i = 1; i <= std::min(n, avail); ++i) w.push_back(digit(i));
    return w;
}

std::string CFExpansion::str() const
{
    std::ostringstream os;
    os << "[" << a0 << ";";
    bool first = true;
    for (Digit d : digits) {
        os << (first ? " " : ", ") << d;
        first = false;
    }
    if (!period.empty()) {
        os << (first ? " (" : ", (");
        for (std::size_t i = 0; i < period.size(); ++i) os << (i ? ", " : "") << period[i];
        os << ")*";
    }
    if (truncated) os << ", ...";
    os << "]";
    return os.str();
}

bool operator==(const CFExpansion& a, const CFExpansion& b)
{
    return a.q == b.q && a.a0 == b.a0 && a.digits == b.digits && a.period == b.period &&
           a.truncated == b.truncated;
}

static Digit parse_digit(const std::string& tok)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw DomainError("bad digit '" + tok + "'");
    }
    if (pos != tok.size()) throw DomainError("bad digit '" + tok + "'");
    return v;
}

CFExpansion parse_cf(const std::string& text, int q, CFKind kind)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() >= 4 && s.rfind("[[", 0) == 0 && s.substr(s.size() - 2) == "]]") {
        s = s.substr(1, s.size() - 2);
        if (kind == CFKind::raw) kind = CFKind::dual_regular;
    }
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
        throw DomainError("continued fraction literal must look like [a0; d1, d2, (p1, p2)*]");
    s = s.substr(1, s.size() - 2);
    auto semi = s.find(';');
    if (semi == std::string::npos) throw DomainError("missing ';' in continued fraction literal");
    CFExpansion e;
    e.q = q;
    e.kind = kind;
    e.a0 = parse_digit(s.substr(0, semi));
    std::string rest = s.substr(semi + 1);
    if (rest.size() >= 3 && rest.substr(rest.size() - 3) == "...") {
        e.truncated = true;
        rest.resize(rest.size() - 3);
        if (!rest.empty() && rest.back() == ',') rest.pop_back();
    }
    auto open = rest.find('(');
    std::string pre = rest, per;
    if (open != std::string::npos) {
        auto close = rest.find(")*", open);
        if (close == std::string::npos || close + 2 != rest.size())
            throw DomainError("period must be a final '( ... )*' group");
        per = rest.substr(open + 1, close - open - 1);
        pre = rest.substr(0, open);
        if (!pre.empty() && pre.back() == ',') pre.pop_back();
    }
    auto split = [](const std::string& list, Word& out) {
        if (list.empty()) return;
        std::stringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            Digit d = parse_digit(tok);
            if (d == 0) throw DomainError("digits after a0 must be nonzero");
            out.push_back(d);
        }
    };
    split(pre, e.digits);
    split(per, e.period);
    if (open != std::string::npos && e.period.empty()) throw DomainError("empty period");
    if (e.truncated && e.periodic()) throw DomainError("a periodic expansion cannot be truncated");
    normalize_period(e);
    return e;
}

void normalize_period(CFExpansion& e)
{
    if (e.period.empty()) return;
    std::size_t n = e.period.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = e.period[i] == e.period[i - p];
        if (ok) {
            e.period.resize(p);
            break;
        }
    }
    while (!e.digits.empty() && e.digits.back() == e.period.back()) {
        e.digits.pop_back();
        Word rot{e.period.back()};
        rot.insert(rot.end(), e.period.begin(), e.period.end() - 1);
        e.period = rot;
    }
}

/* ------------------------------------------------------------------- Moebius */

Moebius Moebius::identity(int q)
{
    return {Lam(q, Q(1)), Lam(q), Lam(q), Lam(q, Q(1))};
}

Moebius Moebius::S(int q)
{
    return {Lam(q), Lam(q, Q(-1)), Lam(q, Q(1)), Lam(q)};
}

Moebius Moebius::T(int q, Digit n)
{
    return {Lam(q, Q(1)), Lam::lambda(q) * Q(static_cast<long>(n)), Lam(q), Lam(q, Q(1))};
}

Moebius Moebius::ST(int q, Digit n)
{
    return {Lam(q), Lam(q, Q(-1)), Lam(q, Q(1)), Lam::lambda(q) * Q(static_cast<long>(n))};
}

Moebius Moebius::inverse() const
{
    return {d, -b, -c, a};
}

Moebius operator*(const Moebius& x, const Moebius& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

bool operator==(const Moebius& x, const Moebius& y)
{
    if (x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d) return true;
    return x.a == -y.a && x.b == -y.b && x.c == -y.c && x.d == -y.d;
}

bool Moebius::is_identity() const
{
    return *this == identity(q());
}

Real Moebius::apply(const Real& x) const
{
    Real den = Real(c) * x + Real(d);
    if (den.is_zero()) throw DomainError("Moebius image is the point at infinity");
    return (Real(a) * x + Real(b)) / den;
}

Interval Moebius::apply(const Interval& x, int prec) const
{
    Interval ia = a.interval(prec), ib = b.interval(prec), ic = c.interval(prec),
             id = d.interval(prec);
    Interval den = ic * x + id;
    if (den.contains_zero()) throw DomainError("Moebius pole inside the interval");
    auto img = [&](const Q& t) {
        Interval it(t);
        return round_out((ia * it + ib) / (ic * it + id), prec);
    };
    return hull(img(x.lo), img(x.hi));
}

std::string Moebius::str() const
{
    return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

Moebius cf_matrix(int q, Digit a0, const Word& digits)
{
    Lam lam = Lam::lambda(q);
    auto big = [&](Digit n) { return lam * Q(static_cast<long>(n)); };
    // Running product [[a, b], [c, d]] times S T^n = [[b, -a + n lambda b], [d, -c + n lambda d]]
    Moebius m{Lam(q, Q(1)), big(a0), Lam(q), Lam(q, Q(1))};
    for (Digit n : digits) {
        Lam nl = big(n);
        Lam na = m.b, nb = m.b * nl - m.a, nc = m.d, nd = m.d * nl - m.c;
        m = {na, nb, nc, nd};
    }
    return m;
}

/* ----------------------------------------------------------------- constants */

int h_of(int q)
{
    if (q < 3) throw DomainError("q must be at least 3");
    return q % 2 == 0 ? (q - 2) / 2 : (q - 3) / 2;
}

int kappa_of(int q)
{
    int h = h_of(q);
    return q % 2 == 0 ? h : 2 * h + 1;
}

Word r_period(int q)
{
    int h = h_of(q);
    if (q == 3) return {3};
    Word w;
    if (q % 2 == 0) {
        w.assign(h - 1, 1);
        w.push_back(2);
    } else {
        w.assign(h, 1);
        w.push_back(2);
        w.insert(w.end(), h - 1, 1);
        w.push_back(2);
    }
    return w;
}

Real attracting_fixed_point(const Moebius& m)
{
    int q = m.q();
    if (m.c.is_zero()) throw DomainError("period map fixes infinity");
    Lam tr = m.trace();
    Lam disc = tr * tr - m.det() * Q(4);
    int s = disc.sign();
    if (s < 0) throw DomainError("elliptic period map has no real fixed point");
    Lam two_c = m.c * Q(2);
    Lam alpha = (m.a - m.d) / two_c;
    if (s == 0) return Real(alpha);
    Lam beta = Lam(q, Q(tr.sign())) / two_c;
    return Real(alpha, beta, disc);
}

namespace {

std::mutex g_const_mutex;
std::map<int, std::unique_ptr<HeckeConstants>> g_constants;

}  // namespace

const HeckeConstants& constants(int q)
{
    {
        std::lock_guard<std::mutex> lk(g_const_mutex);
        auto it = g_constants.find(q);
        if (it != g_constants.end()) return *it->second;
    }
    auto c = std::make_unique<HeckeConstants>();
    c->q = q;
    c->h = h_of(q);
    c->kappa = kappa_of(q);
    c->lambda = Lam::lambda(q);
    c->inv_lambda = c->lambda.inverse();
    c->r = attracting_fixed_point(cf_matrix(q, 0, r_period(q)));
    c->R = Real(c->lambda) + c->r;
    std::lock_guard<std::mutex> lk(g_const_mutex);
    auto& slot = g_constants[q];
    if (!slot) slot = std::move(c);
    return *slot;
}

/* ------------------------------------------------------------ digit functions */

namespace {

/* Modified floor of u + v where u and v may live in different quadratic extensions. */
Z mfloor_sum(const Real& u, const Real& v)
{
    Interval iv;
    for (int prec = 64;; prec *= 2) {
        iv = u.interval(prec) + v.interval(prec);
        if (iv.width() <= Q(1, 8)) break;
        if (prec > (1 << 20)) throw std::logic_error("floor refinement did not converge");
    }
    Z k;
    mpz_fdiv_q(k.get_mpz_t(), iv.hi.get_num_mpz_t(), iv.hi.get_den_mpz_t());
    if (Q(k) < iv.lo) return k;
    auto c = compare(u, Real(u.q(), Q(k)) - v);
    if (c < 0) return k - 1;
    if (c > 0) return k;
    return k > 0 ? k - 1 : k;
}

Digit to_digit(const Z& z)
{
    if (!z.fits_slong_p()) throw DomainError("digit exceeds the 64-bit range");
    return z.get_si();
}

Real times_digit(const Lam& lam, Digit n)
{
    return Real(lam * Q(static_cast<long>(n)));
}

Real neg_inverse(const Real& x)
{
    return -x.inverse();
}

Step f_step_unchecked(const Real& x)
{
    Step s;
    if (x.is_zero()) {
        s.terminal = true;
        s.next = Real(x.q(), Q(0));
        return s;
    }
    const auto& c = constants(x.q());
    Real y = neg_inverse(x);
    s.digit = to_digit(nearest_multiple(y));
    s.next = y - times_digit(c.lambda, s.digit);
    return s;
}

Step fstar_step_unchecked(const Real& x)
{
    Step s;
    if (x.is_zero()) {
        s.terminal = true;
        s.next = Real(x.q(), Q(0));
        return s;
    }
    const auto& c = constants(x.q());
    Real y = neg_inverse(x);
    s.digit = to_digit(nearest_multiple_dual(y));
    s.next = y - times_digit(c.lambda, s.digit);
    // The literal digit function lands on the fixed boundary points +-R; continue with +-r instead.
    if (s.next == c.R) {
        s.digit += 1;
        s.next = s.next - Real(c.lambda);
    } else if (s.next == -c.R) {
        s.digit -= 1;
        s.next = s.next + Real(c.lambda);
    }
    return s;
}

}  // namespace

Z nearest_multiple(const Real& x)
{
    const auto& c = constants(x.q());
    return modified_floor(x * Real(c.inv_lambda) + Real(x.q(), Q(1, 2)));
}

Z nearest_multiple_dual(const Real& y)
{
    const auto& c = constants(y.q());
    Real u = y * Real(c.inv_lambda);
    Real v = c.R * Real(c.inv_lambda);
    if (y.sign() >= 0) return mfloor_sum(u, Real(y.q(), Q(1)) - v);
    return mfloor_sum(u, v);
}

Step f_step(const Real& x)
{
    const auto& c = constants(x.q());
    Real half = Real(c.lambda) * Real(x.q(), Q(1, 2));
    if (x < -half || x > half) throw DomainError("f_q is defined on [-lambda/2, lambda/2] only");
    return f_step_unchecked(x);
}

Step fstar_step(const Real& y)
{
    const auto& c = constants(y.q());
    if (y < -c.R || y > c.R) throw DomainError("f_q* is defined on [-R_q, R_q] only");
    return fstar_step_unchecked(y);
}

Real f_map(const Real& x)
{
    return f_step(x).next;
}

Real fstar_map(const Real& y)
{
    return fstar_step(y).next;
}

/* ---------------------------------------------------------------- expansions */

CFExpansion expand(const Real& x, CFKind kind, std::size_t max_digits)
{
    if (kind == CFKind::raw) throw DomainError("expansion kind must be regular or dual_regular");
    int q = x.q();
    const auto& c = constants(q);
    bool dual = kind == CFKind::dual_regular;
    CFExpansion e;
    e.q = q;
    e.kind = kind;
    e.a0 = to_digit(dual ? nearest_multiple_dual(x) : nearest_multiple(x));
    Real rem = x - times_digit(c.lambda, e.a0);
    struct Seen {
        double approx;
        Real value;
    };
    std::vector<Seen> seen;
    Word digits;
    while (true) {
        if (rem.is_zero()) {
            e.digits = digits;
            return e;
        }
        double approx = rem.to_double();
        for (std::size_t j = 0; j < seen.size(); ++j) {
            if (std::fabs(seen[j].approx - approx) > 1e-9) continue;
            if (seen[j].value == rem) {
                e.digits.assign(digits.begin(), digits.begin() + j);
                e.period.assign(digits.begin() + j, digits.end());
                normalize_period(e);
                return e;
            }
        }
        if (digits.size() >= max_digits) {
            e.digits = digits;
            e.truncated = true;
            e.kind = CFKind::raw;
            return e;
        }
        seen.push_back({approx, rem});
        Step s = dual ? fstar_step_unchecked(rem) : f_step_unchecked(rem);
        digits.push_back(s.digit);
        rem = s.next;
    }
}

Real evaluate_prefix(int q, Digit a0, const Word& digits)
{
    return cf_matrix(q, a0, digits).apply(Real(q, Q(0)));
}

Real evaluate_exact(const CFExpansion& e)
{
    if (e.truncated) throw TruncationError("truncated expansion has no exact value");
    Moebius head = cf_matrix(e.q, e.a0, e.digits);
    if (e.period.empty()) return head.apply(Real(e.q, Q(0)));
    Real tail = attracting_fixed_point(cf_matrix(e.q, 0, e.period));
    return head.apply(tail);
}

Evaluation evaluate(const CFExpansion& e, int prec)
{
    if (prec <= 0) prec = default_precision();
    Evaluation out;
    if (!e.truncated) {
        out.exact = true;
        out.value = evaluate_exact(e);
        out.bounds = out.value.interval(prec);
        return out;
    }
    const auto& c = constants(e.q);
    Interval tail;
    if (e.kind == CFKind::regular) {
        Interval l = Real(c.lambda).interval(prec + 8);
        tail = Interval(-l.hi / 2, l.hi / 2);
    } else {
        Interval r = c.R.interval(prec + 8);
        tail = Interval(-r.hi, r.hi);
    }
    out.bounds = cf_matrix(e.q, e.a0, e.digits).apply(tail, prec);
    out.value = Real(e.q, out.bounds.mid());
    return out;
}

std::vector<Convergent> convergents(const CFExpansion& e, std::size_t n)
{
    int q = e.q;
    Lam lam = Lam::lambda(q);
    Lam p2(q), p1(q, Q(1)), q2(q, Q(-1)), q1(q);
    std::vector<Convergent> out;
    for (std::size_t k = 0; k <= n; ++k) {
        Lam a = lam * Q(static_cast<long>(e.digit(k)));
        Lam p = a * p1 - p2, qq = a * q1 - q2;
        out.push_back({p, qq});
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = qq;
    }
    return out;
}

}  // namespace hecke
