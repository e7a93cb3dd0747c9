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

#ifndef HECKE_NATURAL_EXT_HPP
#define HECKE_NATURAL_EXT_HPP

#include <string>
#include <vector>

#include "hecke/cf.hpp"

namespace hecke {

struct Rect {
    Real x_lo, x_hi, y_lo, y_hi;
};

/* The closed rectangles making up Omega_q, 2 kappa of them. */
std::vector<Rect> omega_domain(int q);

bool omega_contains(int q, const Real& x, const Real& y);

/* Future point x in I_q and past point y in I_{R_q}. */
struct PointPair {
    Real x, y;

    friend bool operator==(const PointPair& a, const PointPair& b) { return a.x == b.x && a.y == b.y; }
};

/* (x, y) -> (f(x), -1/(y + a1 lambda)) with a1 the first regular digit of x. */
PointPair F_apply(const PointPair& p);
/* (x, y) -> (-1/(x + b lambda), f*(y)) with b the first dual digit of y.
   Left inverse of F_apply except on y = +-R, which f* never returns. */
PointPair F_inverse(const PointPair& p);

/* A word in the generators, S or T^n, applied right to left. */
struct GenWord {
    std::vector<std::pair<char, Digit>> letters;

    Moebius matrix(int q) const;
    std::string str() const;
};

struct Reduction {
    Moebius g;
    GenWord word;
    Real omega_minus, omega_plus;
    /* Proof case that produced the result, "shift" for the fallback iteration or
       "search" for the exhaustive word search. */
    std::string branch;
    /* Proof case selected by the translation step, "none" if neither sign case applies. */
    std::string attempted;
    Digit m = 0;
    int shift_steps = 0;  // shift iterations, or the word length for "search"
};

constexpr std::size_t reduction_depth = 128;
/* Word length of the exhaustive search run when shifting fails. */
constexpr std::size_t search_depth = 12;

/* Finds g with (S g.omega_plus, -g.omega_minus) in Omega_q. Endpoints with finite
   expansions throw DomainError; an unsuccessful search throws TruncationError. */
Reduction reduce_geodesic(const Real& omega_minus, const Real& omega_plus);

}  // namespace hecke

#endif
