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

#ifndef HECKE_CF_HPP
#define HECKE_CF_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hecke/field.hpp"

namespace hecke {

using Digit = std::int64_t;
using Word = std::vector<Digit>;

enum class CFKind { raw, regular, dual_regular };

std::string kind_name(CFKind k);
CFKind parse_kind(const std::string& s);

/* Signed-digit expansion [a0; digits, (period)*]. */
struct CFExpansion {
    int q = 3;
    Digit a0 = 0;
    Word digits;  // preperiod
    Word period;  // empty for finite expansions
    CFKind kind = CFKind::raw;
    bool truncated = false;

    bool periodic() const { return !period.empty(); }
    bool finite() const { return period.empty() && !truncated; }
    /* Digit i >= 1 of the (possibly infinite) sequence. */
    Digit digit(std::size_t i) const;
    /* First n digits after a0, unrolling the period. */
    Word prefix(std::size_t n) const;
    std::string str() const;

    friend bool operator==(const CFExpansion& a, const CFExpansion& b);
};

/* Parses "[a0; d1, d2, (p1, p2)*]". */
CFExpansion parse_cf(const std::string& s, int q, CFKind kind = CFKind::raw);
/* Rotates and shortens the period so the representation is canonical. */
void normalize_period(CFExpansion& e);

/* 2x2 matrix over Z[lambda_q] acting by Moebius transformations. */
struct Moebius {
    Lam a, b, c, d;

    static Moebius identity(int q);
    static Moebius S(int q);
    static Moebius T(int q, Digit n = 1);
    /* S T^n : x -> -1/(x + n lambda). */
    static Moebius ST(int q, Digit n);

    int q() const { return a.q(); }
    Lam det() const { return a * d - b * c; }
    Lam trace() const { return a + d; }
    Moebius inverse() const;
    Real apply(const Real& x) const;
    Interval apply(const Interval& x, int prec) const;
    bool is_identity() const;
    std::string str() const;

    friend bool operator==(const Moebius& x, const Moebius& y);
};

Moebius operator*(const Moebius& x, const Moebius& y);
/* Word T^{a0} S T^{d1} ... S T^{dn}. */
Moebius cf_matrix(int q, Digit a0, const Word& digits);

struct HeckeConstants {
    int q = 3;
    int h = 0;
    int kappa = 1;
    Lam lambda;
    Lam inv_lambda;
    Real r;
    Real R;
};

/* Cached per q; safe for concurrent use. */
const HeckeConstants& constants(int q);
int h_of(int q);
int kappa_of(int q);
/* Expansion patterns of r_q. */
Word r_period(int q);

Z nearest_multiple(const Real& x);
Z nearest_multiple_dual(const Real& y);

struct Step {
    bool terminal = false;
    Digit digit = 0;
    Real next;
};

Step f_step(const Real& x);
Step fstar_step(const Real& y);
/* Interval maps; 0 maps to 0. */
Real f_map(const Real& x);
Real fstar_map(const Real& y);

constexpr std::size_t default_max_digits = 256;

CFExpansion expand(const Real& x, CFKind kind = CFKind::regular,
                   std::size_t max_digits = default_max_digits);

struct Evaluation {
    bool exact = false;
    Real value;
    Interval bounds;
};

/* Exact value for finite and periodic expansions. */
Real evaluate_exact(const CFExpansion& e);
/* Exact when possible, otherwise an enclosure of every value the truncated tail allows. */
Evaluation evaluate(const CFExpansion& e, int prec = 0);
/* Value of the first n digits, i.e. the n-th convergent. */
Real evaluate_prefix(int q, Digit a0, const Word& digits);

struct Convergent {
    Lam p, q;
};

std::vector<Convergent> convergents(const CFExpansion& e, std::size_t n);

/* Attracting fixed point of the hyperbolic or parabolic map m. */
Real attracting_fixed_point(const Moebius& m);

}  // namespace hecke

#endif
