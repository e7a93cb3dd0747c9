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

#include "hecke/field.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace hecke {

std::string to_string(const Q& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& s)
{
    std::string t;
    for (char ch : s)
        if (ch != ' ' && ch != '\t') t += ch;
    if (t.empty()) throw DomainError("empty rational literal");
    if (t[0] == '+') t.erase(0, 1);
    Q r;
    auto ok = [](const std::string& u) {
        if (u.empty()) return false;
        size_t i = (u[0] == '-') ? 1 : 0;
        if (i == u.size()) return false;
        for (; i < u.size(); ++i)
            if (u[i] < '0' || u[i] > '9') return false;
        return true;
    };
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        if (!ok(t)) throw DomainError("bad rational literal '" + s + "'");
        r = Q(Z(t));
    } else {
        std::string n = t.substr(0, slash), d = t.substr(slash + 1);
        if (!ok(n) || !ok(d)) throw DomainError("bad rational literal '" + s + "'");
        Z den(d);
        if (den == 0) throw DomainError("zero denominator in '" + s + "'");
        r = Q(Z(n), den);
        r.canonicalize();
    }
    return r;
}

/* ---------------------------------------------------------------- intervals */

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b)
{
    Q p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (int i = 1; i < 4; ++i) {
        if (p[i] < r.lo) r.lo = p[i];
        if (p[i] > r.hi) r.hi = p[i];
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    return a * Interval(1 / b.hi, 1 / b.lo);
}

Interval hull(const Interval& a, const Interval& b)
{
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

static Z floor_q(const Q& x)
{
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

static Z ceil_q(const Q& x)
{
    Z r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

static Q pow2(int e)
{
    Q r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
    return r;
}

Interval round_out(const Interval& a, int prec)
{
    Q s = pow2(prec);
    Q lo = a.lo * s, hi = a.hi * s;
    Q rlo(floor_q(lo)), rhi(ceil_q(hi));
    return {rlo / s, rhi / s};
}

Interval sqrt(const Interval& a, int prec)
{
    if (a.hi < 0) throw DomainError("square root of a negative interval");
    Q s = pow2(2 * prec);
    Z lo = a.lo > 0 ? floor_q(a.lo * s) : Z(0);
    Z hi = ceil_q(a.hi * s);
    Z rlo, rhi;
    mpz_sqrt(rlo.get_mpz_t(), lo.get_mpz_t());
    mpz_sqrt(rhi.get_mpz_t(), hi.get_mpz_t());
    if (rhi * rhi < hi) rhi += 1;
    Q d = pow2(prec);
    return {Q(rlo) / d, Q(rhi) / d};
}

/* ---------------------------------------------------------- minimal polynomial */

namespace {

using Poly = std::vector<Z>;

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly exact_div(Poly num, const Poly& den)
{
    Poly quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
    for (size_t i = quo.size(); i-- > 0;) {
        Z c = num[i + den.size() - 1] / den.back();
        quo[i] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("non-exact polynomial division");
    return quo;
}

Poly cyclotomic(int n, std::map<int, Poly>& memo)
{
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p(n + 1, Z(0));
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = exact_div(p, cyclotomic(d, memo));
    memo[n] = p;
    return p;
}

/* Rewrites a palindromic polynomial of degree 2m in x as a polynomial in t = x + 1/x. */
Poly palindromic_to_trace(const Poly& phi)
{
    size_t m = (phi.size() - 1) / 2;
    std::vector<Poly> v(m + 1);
    v[0] = Poly{2};
    if (m >= 1) v[1] = Poly{0, 1};
    for (size_t k = 2; k <= m; ++k) {
        Poly r(k + 1, Z(0));
        for (size_t i = 0; i < v[k - 1].size(); ++i) r[i + 1] += v[k - 1][i];
        for (size_t i = 0; i < v[k - 2].size(); ++i) r[i] -= v[k - 2][i];
        v[k] = r;
    }
    Poly out(m + 1, Z(0));
    out[0] = phi[m];
    for (size_t k = 1; k <= m; ++k)
        for (size_t i = 0; i < v[k].size(); ++i) out[i] += phi[m + k] * v[k][i];
    trim(out);
    return out;
}

struct FieldInfo {
    int q = 0;
    int deg = 0;
    IntPoly minpoly;
    std::vector<std::vector<Q>> powers;  // lambda^k reduced, k < 2*deg - 1
    std::map<int, Interval> lambda_iv;
};

std::mutex g_mutex;
std::map<int, FieldInfo> g_fields;

Q eval_poly(const IntPoly& p, const Q& x)
{
    Q r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + Q(p[i]);
    return r;
}

Interval compute_lambda_interval(const IntPoly& p, int q, int prec)
{
    mpfr_t c, pi;
    int bits = prec + 64;
    mpfr_init2(c, bits);
    mpfr_init2(pi, bits);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_div_ui(pi, pi, static_cast<unsigned long>(q), MPFR_RNDN);
    mpfr_cos(c, pi, MPFR_RNDN);
    mpfr_mul_ui(c, c, 2, MPFR_RNDN);
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, c);
    Q mid{Z(m)};
    mid *= pow2(static_cast<int>(e));
    mpz_clear(m);
    mpfr_clear(c);
    mpfr_clear(pi);
    for (int widen = 0; widen < 8; ++widen) {
        Q eps = pow2(-(prec + 1) + widen);
        Interval iv{mid - eps, mid + eps};
        iv = round_out(iv, prec + 2);
        Q flo = eval_poly(p, iv.lo), fhi = eval_poly(p, iv.hi);
        if (sgn(flo) * sgn(fhi) < 0) return iv;
    }
    throw std::logic_error("failed to isolate lambda_q");
}

FieldInfo& info(int q)
{
    if (q < 3) throw DomainError("q must be at least 3, got " + std::to_string(q));
    auto it = g_fields.find(q);
    if (it != g_fields.end()) return it->second;
    std::map<int, Poly> memo;
    IntPoly mp = palindromic_to_trace(cyclotomic(2 * q, memo));
    FieldInfo f;
    f.q = q;
    f.minpoly = mp;
    f.deg = static_cast<int>(mp.size()) - 1;
    int d = f.deg;
    f.powers.assign(std::max(1, 2 * d - 1), std::vector<Q>(d, Q(0)));
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (k < d) {
            f.powers[k][k] = 1;
            continue;
        }
        // lambda^k = lambda * lambda^(k-1), reducing lambda^d = -sum p_i lambda^i
        const auto& prev = f.powers[k - 1];
        std::vector<Q> cur(d, Q(0));
        for (int i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
        Q top = prev[d - 1];
        for (int i = 0; i < d; ++i) cur[i] -= top * Q(mp[i]);
        f.powers[k] = cur;
    }
    if (d == 1) f.powers.assign(1, std::vector<Q>{Q(1)});
    return g_fields.emplace(q, std::move(f)).first->second;
}

}  // namespace

IntPoly minimal_polynomial(int q)
{
    std::lock_guard<std::mutex> lk(g_mutex);
    return info(q).minpoly;
}

int field_degree(int q)
{
    std::lock_guard<std::mutex> lk(g_mutex);
    return info(q).deg;
}

Interval lambda_interval(int q, int prec)
{
    std::lock_guard<std::mutex> lk(g_mutex);
    FieldInfo& f = info(q);
    if (f.deg == 1) {
        Q v = -Q(f.minpoly[0]);
        return {v, v};
    }
    auto it = f.lambda_iv.lower_bound(prec);
    if (it != f.lambda_iv.end()) return it->second;
    Interval iv = compute_lambda_interval(f.minpoly, q, prec);
    f.lambda_iv[prec] = iv;
    return iv;
}

/* ------------------------------------------------------------------------ Lam */

static void check_same(int a, int b)
{
    if (a != b)
        throw DomainError("mixed q tags (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

Lam::Lam(int q) : q_(q), c_(field_degree(q), Q(0)) {}

Lam::Lam(int q, const Q& c) : Lam(q) { c_[0] = c; }

Lam::Lam(int q, std::vector<Q> coeffs) : Lam(q)
{
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i < c_.size()) {
            c_[i] += coeffs[i];
        } else {
            Lam t(q);
            {
                std::lock_guard<std::mutex> lk(g_mutex);
                const FieldInfo& f = info(q);
                // lambda^i for i >= d obtained by repeated multiplication
                std::vector<Q> p = f.powers[c_.size() - 1];
                for (size_t k = c_.size() - 1; k < i; ++k) {
                    std::vector<Q> nx(c_.size(), Q(0));
                    for (size_t j = 0; j + 1 < c_.size(); ++j) nx[j + 1] = p[j];
                    Q top = p.back();
                    for (size_t j = 0; j < c_.size(); ++j) nx[j] -= top * Q(f.minpoly[j]);
                    p = nx;
                }
                t.c_ = p;
            }
            for (size_t j = 0; j < c_.size(); ++j) c_[j] += coeffs[i] * t.c_[j];
        }
    }
}

Lam Lam::lambda(int q)
{
    Lam r(q);
    if (r.c_.size() == 1)
        r.c_[0] = -Q(minimal_polynomial(q)[0]);
    else
        r.c_[1] = 1;
    return r;
}

bool Lam::is_zero() const
{
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool Lam::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Lam::is_integer() const
{
    return is_rational() && c_[0].get_den() == 1;
}

Q Lam::rational_value() const
{
    if (!is_rational()) throw DomainError("field element is not rational");
    return c_[0];
}

Lam Lam::operator-() const
{
    Lam r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Lam& Lam::operator+=(const Lam& o)
{
    check_same(q_, o.q_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Lam& Lam::operator-=(const Lam& o)
{
    check_same(q_, o.q_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Lam& Lam::operator*=(const Lam& o)
{
    check_same(q_, o.q_);
    size_t d = c_.size();
    if (d == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Q> prod(2 * d - 1, Q(0));
    for (size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    std::vector<Q> out(prod.begin(), prod.begin() + d);
    {
        std::lock_guard<std::mutex> lk(g_mutex);
        const FieldInfo& f = info(q_);
        for (size_t k = d; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            for (size_t i = 0; i < d; ++i) out[i] += prod[k] * f.powers[k][i];
        }
    }
    c_ = std::move(out);
    return *this;
}

Lam Lam::inverse() const
{
    if (is_zero()) throw DomainError("division by zero in Q(lambda_q)");
    size_t d = c_.size();
    if (d == 1) return Lam(q_, 1 / c_[0]);
    // columns of multiplication-by-this matrix
    std::vector<std::vector<Q>> m(d, std::vector<Q>(d + 1, Q(0)));
    Lam basis(q_);
    for (size_t j = 0; j < d; ++j) {
        Lam e(q_);
        e.c_[j] = 1;
        Lam col = *this * e;
        for (size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) throw std::logic_error("singular multiplication matrix");
        std::swap(m[piv], m[col]);
        Q inv = 1 / m[col][col];
        for (size_t k = col; k <= d; ++k) m[col][k] *= inv;
        for (size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Q f = m[r][col];
            for (size_t k = col; k <= d; ++k) m[r][k] -= f * m[col][k];
        }
    }
    Lam r(q_);
    for (size_t i = 0; i < d; ++i) r.c_[i] = m[i][d];
    return r;
}

Lam& Lam::operator/=(const Lam& o)
{
    return *this *= o.inverse();
}

namespace {

/* Midpoint of an enclosure of a nonzero value, refined to double relative precision. */
template <class F>
double relative_double(F enclose)
{
    for (int prec = 64;; prec *= 2) {
        Interval iv = enclose(prec);
        if (!iv.contains_zero() && iv.width() * (Q(1) << 60) <= abs(iv.lo)) return iv.to_double();
        if (prec > (1 << 22)) throw std::logic_error("interval refinement did not converge");
    }
}

}  // namespace

Interval Lam::interval(int prec) const
{
    if (is_rational()) return Interval(c_[0]);
    int wp = prec + 4 * static_cast<int>(c_.size()) + 8;
    Interval lam = lambda_interval(q_, wp);
    Interval acc(c_.back());
    for (size_t i = c_.size() - 1; i-- > 0;) acc = round_out(acc * lam + Interval(c_[i]), wp);
    return acc;
}

int Lam::sign() const
{
    if (is_rational()) return sgn(c_[0]);
    for (int prec = 64;; prec *= 2) {
        Interval iv = interval(prec);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        if (prec > (1 << 22)) throw std::logic_error("sign determination did not terminate");
    }
}

double Lam::to_double() const
{
    if (is_zero()) return 0;
    return relative_double([this](int prec) { return interval(prec); });
}

std::string Lam::str() const
{
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Q c = c_[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string cs = c.get_str();
        if (i == 0)
            s += cs;
        else {
            if (c != 1) s += cs + "*";
            s += "l";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

bool operator==(const Lam& a, const Lam& b)
{
    return a.q_ == b.q_ && a.c_ == b.c_;
}

Lam operator+(Lam a, const Lam& b) { return a += b; }
Lam operator-(Lam a, const Lam& b) { return a -= b; }
Lam operator*(Lam a, const Lam& b) { return a *= b; }
Lam operator/(Lam a, const Lam& b) { return a /= b; }
Lam operator*(Lam a, const Q& b)
{
    return a *= Lam(a.q(), b);
}
Lam operator+(Lam a, const Q& b) { return a += Lam(a.q(), b); }
Lam operator-(Lam a, const Q& b) { return a -= Lam(a.q(), b); }

/* ----------------------------------------------------------------------- Real */

Real::Real(const Lam& alpha, const Lam& beta, const Lam& disc) : a_(alpha), b_(beta), d_(disc)
{
    check_same(a_.q(), b_.q());
    check_same(a_.q(), d_.q());
    if (b_.is_zero() || d_.is_zero()) {
        b_ = Lam(a_.q());
        d_ = Lam(a_.q());
        return;
    }
    if (d_.sign() < 0) throw DomainError("negative radicand in quadratic surd");
}

Real::Kind Real::kind() const
{
    if (!b_.is_zero()) return Kind::surd;
    return a_.is_rational() ? Kind::rational : Kind::field;
}

Lam Real::field_value() const
{
    if (!b_.is_zero()) throw DomainError("value is not an element of Q(lambda_q)");
    return a_;
}

void Real::absorb(const Real& o)
{
    check_same(q(), o.q());
    if (o.b_.is_zero()) return;
    if (b_.is_zero()) {
        d_ = o.d_;
        return;
    }
    if (d_ == o.d_) return;
    Lam ratio = o.d_ / d_;
    if (ratio.is_rational()) {
        Q t = ratio.rational_value();
        Z n = t.get_num(), dd = t.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(dd.get_mpz_t())) {
            return;
        }
    }
    throw DomainError("arithmetic between incompatible quadratic extensions");
}

Real Real::operator-() const
{
    Real r(*this);
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

static Lam sqrt_ratio(const Lam& from, const Lam& to)
{
    // sqrt(to/from) for a rational perfect-square ratio
    Q t = (to / from).rational_value();
    Z n, d;
    mpz_sqrt(n.get_mpz_t(), t.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), t.get_den_mpz_t());
    return Lam(from.q(), Q(n, d));
}

Real& Real::operator+=(const Real& o)
{
    absorb(o);
    a_ += o.a_;
    if (!o.b_.is_zero()) b_ += (o.d_ == d_) ? o.b_ : o.b_ * sqrt_ratio(d_, o.d_);
    if (b_.is_zero()) d_ = Lam(q());
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    return *this += -o;
}

Real& Real::operator*=(const Real& o)
{
    absorb(o);
    Lam ob = o.b_;
    if (!ob.is_zero() && !(o.d_ == d_)) ob = ob * sqrt_ratio(d_, o.d_);
    Lam na = a_ * o.a_;
    if (!b_.is_zero() && !ob.is_zero()) na += b_ * ob * d_;
    Lam nb = a_ * ob + b_ * o.a_;
    a_ = na;
    b_ = nb;
    if (b_.is_zero()) d_ = Lam(q());
    return *this;
}

Real Real::conjugate() const
{
    Real r(*this);
    r.b_ = -b_;
    return r;
}

Real Real::inverse() const
{
    if (b_.is_zero()) return Real(a_.inverse());
    Lam norm = a_ * a_ - b_ * b_ * d_;
    if (norm.is_zero()) {
        // sqrt(D) = |alpha/beta| lies in the field
        Lam s = a_ / b_;
        if (s.sign() < 0) s = -s;
        Lam v = a_ + b_ * s;
        if (v.is_zero()) throw DomainError("division by zero");
        return Real(v.inverse());
    }
    Lam inv = norm.inverse();
    return Real(a_ * inv, -b_ * inv, d_);
}

Real& Real::operator/=(const Real& o)
{
    if (o.is_zero()) throw DomainError("division by zero");
    return *this *= o.inverse();
}

int Real::sign() const
{
    int sa = a_.sign();
    if (b_.is_zero()) return sa;
    int sb = b_.sign();
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Lam diff = a_ * a_ - b_ * b_ * d_;
    return sa * diff.sign();
}

Interval Real::interval(int prec) const
{
    Interval ia = a_.interval(prec + 4);
    if (b_.is_zero()) return ia;
    Interval ib = b_.interval(prec + 8), id = d_.interval(prec + 8);
    Interval s = sqrt(id, prec + 8);
    return round_out(ia + ib * s, prec + 2);
}

Interval Real::to_interval(const Q& width) const
{
    if (width <= 0) throw DomainError("interval width must be positive");
    if (kind() == Kind::rational) return Interval(a_.rational_value());
    for (int prec = 64;; prec *= 2) {
        Interval iv = interval(prec);
        if (iv.width() <= width) return iv;
        if (prec > (1 << 22)) throw std::logic_error("interval refinement did not converge");
    }
}

double Real::to_double() const
{
    if (sign() == 0) return 0;
    return relative_double([this](int prec) { return interval(prec); });
}

void Real::quadratic(Lam& a, Lam& b, Lam& c) const
{
    if (b_.is_zero()) {
        a = Lam(q());
        b = Lam(q(), Q(1));
        c = -a_;
        return;
    }
    a = Lam(q(), Q(1));
    b = a_ * Q(-2);
    c = a_ * a_ - b_ * b_ * d_;
}

std::string Real::str() const
{
    if (b_.is_zero()) return a_.str();
    return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + d_.str() + ")";
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }

int sign_of(const Real& x)
{
    return x.sign();
}

static bool compatible(const Real& x, const Real& y)
{
    return x.in_field() || y.in_field() || x.disc() == y.disc();
}

/* Exact equality of surds over different radicands: a common root of the two monic
   minimal polynomials is either a shared polynomial or the root of their difference. */
static bool equal_general(const Real& x, const Real& y)
{
    Lam xa, xb, xc, ya, yb, yc;
    x.quadratic(xa, xb, xc);
    y.quadratic(ya, yb, yc);
    if (xb == yb && xc == yc) {
        // same monic polynomial: roots coincide iff the radical parts agree in sign
        return x.alpha() == y.alpha() && x.beta().sign() == y.beta().sign();
    }
    if (xb == yb) return false;
    Lam z = -(xc - yc) / (xb - yb);
    Real rz(z);
    return (x - rz).sign() == 0 && (y - rz).sign() == 0;
}

std::strong_ordering compare(const Real& x, const Real& y)
{
    check_same(x.q(), y.q());
    int s;
    if (compatible(x, y)) {
        s = (x - y).sign();
    } else {
        bool done = false;
        s = 0;
        for (int prec = 64; prec <= 256 && !done; prec *= 2) {
            Interval a = x.interval(prec), b = y.interval(prec);
            if (a.hi < b.lo) s = -1, done = true;
            else if (b.hi < a.lo) s = 1, done = true;
        }
        if (!done) {
            if (equal_general(x, y)) {
                s = 0;
            } else {
                for (int prec = 512;; prec *= 2) {
                    Interval a = x.interval(prec), b = y.interval(prec);
                    if (a.hi < b.lo) { s = -1; break; }
                    if (b.hi < a.lo) { s = 1; break; }
                    if (prec > (1 << 22)) throw std::logic_error("comparison did not terminate");
                }
            }
        }
    }
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool operator==(const Real& x, const Real& y) { return compare(x, y) == 0; }
bool operator<(const Real& x, const Real& y) { return compare(x, y) < 0; }
bool operator<=(const Real& x, const Real& y) { return compare(x, y) <= 0; }
bool operator>(const Real& x, const Real& y) { return compare(x, y) > 0; }
bool operator>=(const Real& x, const Real& y) { return compare(x, y) >= 0; }

Interval to_interval(const Real& x, const Q& width)
{
    return x.to_interval(width);
}

Z floor_of(const Real& x)
{
    Interval iv = x.to_interval(Q(1, 8));
    Z k = floor_q(iv.hi);
    if (Q(k) < iv.lo) return k;
    int s = compare(x, Real(x.q(), Q(k))) < 0 ? -1 : 0;
    return k + s;
}

Z modified_floor(const Real& x)
{
    Interval iv = x.to_interval(Q(1, 8));
    Z k = floor_q(iv.hi);
    if (Q(k) < iv.lo) return k;
    auto c = compare(x, Real(x.q(), Q(k)));
    if (c < 0) return k - 1;
    if (c > 0) return k;
    return k > 0 ? k - 1 : k;
}

int default_precision()
{
    const char* env = std::getenv("HECKE_CF_PRECISION");
    if (env && *env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 16 && v <= (1 << 20)) return static_cast<int>(v);
    }
    return 64;
}

}  // namespace hecke
