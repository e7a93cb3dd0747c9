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

#ifndef HECKE_FIELD_HPP
#define HECKE_FIELD_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

using Z = mpz_class;
using Q = mpq_class;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string to_string(const Q& x);
Q parse_rational(const std::string& s);

/* Closed interval with rational endpoints. */
struct Interval {
    Q lo, hi;

    Interval() = default;
    Interval(const Q& a) : lo(a), hi(a) {}
    Interval(const Q& a, const Q& b) : lo(a), hi(b) {}

    Q width() const { return hi - lo; }
    Q mid() const { return (lo + hi) / 2; }
    bool contains(const Q& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
    double to_double() const { return mid().get_d(); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);
Interval sqrt(const Interval& a, int prec);
/* Outward rounding of both endpoints to multiples of 2^-prec. */
Interval round_out(const Interval& a, int prec);

/* Integer polynomial, coefficients from degree 0 upward. */
using IntPoly = std::vector<Z>;

/* Monic minimal polynomial of 2cos(pi/q) over Q. */
IntPoly minimal_polynomial(int q);
int field_degree(int q);
/* Isolating interval of lambda_q of width at most 2^(1-prec). */
Interval lambda_interval(int q, int prec);

/* Element of Q(lambda_q) stored as coefficients of 1, lambda, ..., lambda^(d-1). */
class Lam {
public:
    Lam() = default;
    explicit Lam(int q);
    Lam(int q, const Q& c);
    Lam(int q, std::vector<Q> coeffs);

    static Lam lambda(int q);

    int q() const { return q_; }
    const std::vector<Q>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    bool is_integer() const;
    Q rational_value() const;

    Lam operator-() const;
    Lam& operator+=(const Lam& o);
    Lam& operator-=(const Lam& o);
    Lam& operator*=(const Lam& o);
    Lam& operator/=(const Lam& o);
    Lam inverse() const;

    Interval interval(int prec) const;
    int sign() const;
    double to_double() const;
    std::string str() const;

    friend bool operator==(const Lam& a, const Lam& b);

private:
    int q_ = 0;
    std::vector<Q> c_;
};

Lam operator+(Lam a, const Lam& b);
Lam operator-(Lam a, const Lam& b);
Lam operator*(Lam a, const Lam& b);
Lam operator/(Lam a, const Lam& b);
Lam operator*(Lam a, const Q& b);
Lam operator+(Lam a, const Q& b);
Lam operator-(Lam a, const Q& b);

/* Element alpha + beta*sqrt(D) with alpha, beta, D in Q(lambda_q) and D > 0.
   Covers rationals and field elements (beta = 0) as well as quadratic surds. */
class Real {
public:
    enum class Kind { rational, field, surd };

    Real() = default;
    explicit Real(int q) : a_(q), b_(q), d_(q) {}
    Real(int q, const Q& x) : a_(q, x), b_(q), d_(q) {}
    Real(const Lam& x) : a_(x), b_(x.q()), d_(x.q()) {}
    Real(const Lam& alpha, const Lam& beta, const Lam& disc);

    static Real lambda(int q) { return Real(Lam::lambda(q)); }

    int q() const { return a_.q(); }
    Kind kind() const;
    const Lam& alpha() const { return a_; }
    const Lam& beta() const { return b_; }
    const Lam& disc() const { return d_; }
    bool in_field() const { return b_.is_zero(); }
    bool is_zero() const { return sign() == 0; }
    Lam field_value() const;

    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real inverse() const;
    Real conjugate() const;

    int sign() const;
    Interval interval(int prec) const;
    Interval to_interval(const Q& width) const;
    double to_double() const;
    /* Coefficients (a, b, c) of a*x^2 + b*x + c over Q(lambda_q) vanishing at x. */
    void quadratic(Lam& a, Lam& b, Lam& c) const;
    std::string str() const;

private:
    void absorb(const Real& o);
    Lam a_, b_, d_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);

int sign_of(const Real& x);
/* Exact comparison; throws DomainError on mixed q. */
std::strong_ordering compare(const Real& x, const Real& y);
bool operator==(const Real& x, const Real& y);
bool operator<(const Real& x, const Real& y);
bool operator<=(const Real& x, const Real& y);
bool operator>(const Real& x, const Real& y);
bool operator>=(const Real& x, const Real& y);
Interval to_interval(const Real& x, const Q& width);

/* Modified floor: n with n < x <= n+1 for x > 0 and n <= x < n+1 for x <= 0. */
Z modified_floor(const Real& x);
Z floor_of(const Real& x);

/* Default working precision in bits; overridable via HECKE_CF_PRECISION. */
int default_precision();

}  // namespace hecke

#endif
