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


#ifndef HECKE_TEST_UTIL_HPP
#define HECKE_TEST_UTIL_HPP

#include <random>

#include "hecke/cf.hpp"
#include "hecke/grammar.hpp"

namespace hecke::test {

inline Real rat(int q, long n, long d = 1)
{
    Q x(n, d);
    x.canonicalize();
    return Real(q, x);
}

inline Real lam(int q)
{
    return Real::lambda(q);
}

/* Nonzero digits with |d| <= bound. */
inline Word random_word(std::mt19937& rng, std::size_t n, Digit bound)
{
    std::uniform_int_distribution<Digit> d(1, bound);
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(rng() % 2 ? d(rng) : -d(rng));
    return w;
}

inline Word random_regular_word(std::mt19937& rng, int q, std::size_t n, Digit bound)
{
    for (;;) {
        Word w = random_word(rng, n, bound);
        if (is_regular_word(q, w)) return w;
    }
}

/* Finite regular expansion with a0 = 0 whose value lies in I_q. */
inline CFExpansion random_regular_cf(std::mt19937& rng, int q, std::size_t n, Digit bound)
{
    CFExpansion e;
    e.q = q;
    e.digits = random_regular_word(rng, q, n, bound);
    e.kind = CFKind::regular;
    return e;
}

inline Real random_rational(std::mt19937& rng, int q, long span, long den)
{
    std::uniform_int_distribution<long> nd(-span * den, span * den), dd(1, den);
    return rat(q, nd(rng), dd(rng));
}

}  // namespace hecke::test

#endif
