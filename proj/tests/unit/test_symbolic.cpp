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


#include "doctest.h"
#include "hecke/symbolic.hpp"
#include "util.hpp"

using namespace hecke;
using hecke::test::lam;
using hecke::test::rat;

namespace {

/* All words of length n over the nonzero digits with |d| <= bound. */
void for_each_word(std::size_t n, Digit bound, const std::function<void(const Word&)>& fn)
{
    Word w(n, -bound);
    for (;;) {
        fn(w);
        std::size_t i = 0;
        for (; i < n; ++i) {
            w[i] = w[i] == -1 ? 1 : w[i] + 1;
            if (w[i] <= bound) break;
            w[i] = -bound;
        }
        if (i == n) return;
    }
}

}  // namespace

TEST_SUITE("symbolic")
{
    TEST_CASE("orbits")
    {
        auto f = orbit_points(3, MapTag::f);
        REQUIRE(f.size() == 2);
        CHECK(f[0] == rat(3, -1, 2));
        CHECK(f[1] == rat(3, 0));
        auto s = orbit_points(3, MapTag::f_star);
        REQUIRE(s.size() == 2);
        CHECK(s[0] == -constants(3).R);
        CHECK(s[1] == constants(3).R - rat(3, 1));
        CHECK(orbit_points(4, MapTag::f).size() == 2);
        CHECK(orbit_points(5, MapTag::f).size() == 4);
        for (int q = 3; q <= 12; ++q) {
            std::size_t k = static_cast<std::size_t>(kappa_of(q)) + 1;
            CHECK(orbit_points(q, MapTag::f).size() == k);
            CHECK(orbit_points(q, MapTag::f_star).size() == k);
            CHECK(orbit_interleaving(q));
            CHECK(orbit_points(q, MapTag::f).back().is_zero());
        }
    }

    TEST_CASE("digit cells")
    {
        auto [lo, hi] = digit_cell(3, MapTag::f, 2);
        CHECK(lo == rat(3, -1, 2));
        CHECK(hi == rat(3, -2, 5));
        for (int q = 3; q <= 8; ++q)
            for (MapTag t : {MapTag::f, MapTag::f_star})
                for (Digit m = 1; m <= 6; ++m) {
                    if (q == 3 && m == 1) continue;
                    auto [a, b] = digit_cell(q, t, m);
                    auto [c, d] = digit_cell(q, t, -m);
                    CHECK(c == -b);
                    CHECK(d == -a);
                }
        CHECK(branch(4, 2, inverse_branch(4, 2, rat(4, 1, 3))) == rat(4, 1, 3));
    }

    TEST_CASE("dual image of the last one cell for even q")
    {
        for (int q = 4; q <= 12; q += 2) {
            const auto& c = constants(q);
            MarkovPartition p = build_partition(q, MapTag::f_star);
            std::size_t i = p.find(Symbol{1, kappa_of(q)});
            REQUIRE(i < p.cells.size());
            Real lo = branch(q, 1, p.cells[i].lo), hi = branch(q, 1, p.cells[i].hi);
            Real want_lo = rat(q, -1) / (lam(q) * rat(q, 2) + c.r);
            CHECK(std::min(lo, hi, [](const Real& a, const Real& b) { return a < b; }) == want_lo);
            CHECK(std::max(lo, hi, [](const Real& a, const Real& b) { return a < b; }) == c.R);
        }
    }

    TEST_CASE("partitions")
    {
        for (int q = 3; q <= 12; ++q)
            for (MapTag t : {MapTag::f, MapTag::f_star}) {
                CAPTURE(q);
                MarkovPartition p = build_partition(q, t, 6);
                REQUIRE_FALSE(p.cells.empty());
                CHECK(p.cells.front().lo == -p.bound());
                CHECK(p.cells.back().hi == p.bound());
                for (std::size_t i = 0; i + 1 < p.cells.size(); ++i) CHECK(p.cells[i].hi == p.cells[i + 1].lo);
                for (const auto& c : p.cells) CHECK(c.lo < c.hi);
                for (const auto& id : p.identities) CHECK(id.holds);
                for (const auto& c : p.cells) {
                    std::size_t j = p.find(c.label.mirror());
                    REQUIRE(j < p.cells.size());
                    CHECK(p.cells[j].lo == -c.hi);
                }
            }
    }

    TEST_CASE("transition matrices")
    {
        TransitionMatrix a = transition_matrix(3, MapTag::f);
        for (Digit m = 2; m <= 8; ++m) {
            CHECK_FALSE(a(Symbol{2}, Symbol{m}));
            CHECK_FALSE(a(Symbol{-2}, Symbol{-m}));
            CHECK(a(Symbol{2}, Symbol{-m}));
        }
        for (int q : {6, 8, 10}) {
            TransitionMatrix b = transition_matrix(q, MapTag::f);
            for (int l = 1; l < kappa_of(q); ++l) {
                CHECK(b(Symbol{1, l}, Symbol{1, l + 1}));
                CHECK(b(Symbol{-1, l}, Symbol{-1, l + 1}));
            }
        }
        for (int q : {5, 7, 9}) {
            TransitionMatrix b = transition_matrix(q, MapTag::f, 6);
            for (const Symbol& s : b.alphabet)
                for (Digit m = 3; m <= 6; ++m) CHECK(b(Symbol{m}, s));
        }
        for (int q = 3; q <= 12; ++q)
            for (MapTag t : {MapTag::f, MapTag::f_star}) {
                TransitionMatrix m = transition_matrix(q, t);
                for (const Symbol& x : m.alphabet)
                    for (const Symbol& y : m.alphabet) CHECK(m(x, y) == m(x.mirror(), y.mirror()));
            }
    }

    TEST_CASE("admissibility matches regularity")
    {
        for (int q : {3, 4, 5, 6}) {
            TransitionMatrix m = transition_matrix(q, MapTag::f);
            std::size_t bad = 0;
            for (std::size_t n = 1; n <= 6; ++n)
                for_each_word(n, 4, [&](const Word& w) {
                    if (admissible(m, w) != is_regular_word(q, w)) ++bad;
                });
            CHECK(bad == 0);
        }
    }

    TEST_CASE("encoding")
    {
        std::mt19937 rng(21);
        for (int q = 3; q <= 8; ++q) {
            MarkovPartition p = build_partition(q, MapTag::f);
            const auto& c = constants(q);
            Real half = lam(q) / rat(q, 2);
            for (int k = 0; k < 40; ++k) {
                Real x = c.r * test::random_rational(rng, q, 1, 89);
                if (x > half || x < -half) continue;
                Encoding e;
                try {
                    e = encode(p, x, 12);
                } catch (const BoundaryError&) {
                    continue;
                }
                Decoded d = decode(p, e);
                CHECK(d.lo <= x);
                CHECK(x <= d.hi);
                CFExpansion cf = expand(x, CFKind::regular, 12);
                Word want = cf.prefix(12);
                std::size_t n = std::min(want.size(), e.digits.size());
                CHECK(Word(e.digits.begin(), e.digits.begin() + static_cast<long>(n)) ==
                      Word(want.begin(), want.begin() + static_cast<long>(n)));
            }
        }
    }

    TEST_CASE("cells shrink along itineraries")
    {
        MarkovPartition p = build_partition(3, MapTag::f);
        Real x = constants(3).r / rat(3, 3);
        Q prev = 1;
        for (std::size_t n : {4, 8, 16, 32}) {
            Decoded d = decode(p, encode(p, x, n));
            Q w = (d.hi - d.lo).interval(64).hi;
            CHECK(w < prev);
            prev = w;
        }
        CHECK(prev < Q(1, 1000000));
    }

    TEST_CASE("boundary points")
    {
        MarkovPartition p = build_partition(3, MapTag::f_star);
        Real psi = orbit_points(3, MapTag::f_star)[1];
        CHECK_THROWS_AS(encode(p, psi, 3), BoundaryError);
        Encoding l = encode(p, psi, 3, Side::left);
        Encoding r = encode(p, psi, 3, Side::right);
        CHECK_FALSE(l.symbols == r.symbols);
        Real r3 = constants(3).r;
        CHECK(decode_periodic(build_partition(3, MapTag::f), {}, {3}) == r3);
    }
}
