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
#include "hecke/natural_ext.hpp"
#include "hecke/symbolic.hpp"
#include "util.hpp"

using namespace hecke;
using hecke::test::lam;
using hecke::test::rat;

namespace {

/* Point of I_q with a purely periodic regular expansion. */
Real periodic_point(std::mt19937& rng, int q, Digit a0 = 0)
{
    for (;;) {
        CFExpansion e;
        e.q = q;
        e.a0 = a0;
        e.period = test::random_word(rng, 1 + rng() % 3, 5);
        e.kind = CFKind::regular;
        if (is_regular(e)) return evaluate_exact(e);
    }
}

/* Pair in Omega_q with y off the points +-R. */
PointPair admissible_pair(std::mt19937& rng, int q)
{
    const auto& c = constants(q);
    for (;;) {
        Real x = periodic_point(rng, q);
        Real y = c.R * test::random_rational(rng, q, 1, 199);
        if (y == c.R || y == -c.R) continue;
        if (omega_contains(q, x, y)) return {x, y};
    }
}

}  // namespace

TEST_SUITE("natural_ext")
{
    TEST_CASE("domain for q = 3")
    {
        const auto& c = constants(3);
        auto rects = omega_domain(3);
        REQUIRE(rects.size() == 2);
        CHECK(rects[0].x_lo == rat(3, -1, 2));
        CHECK(rects[0].x_hi == rat(3, 0));
        CHECK(rects[0].y_lo == c.R - rat(3, 1));
        CHECK(rects[0].y_hi == c.R);
        CHECK(rects[1].x_lo == rat(3, 0));
        CHECK(rects[1].x_hi == rat(3, 1, 2));
        CHECK(rects[1].y_lo == -c.R);
        CHECK(rects[1].y_hi == rat(3, 1) - c.R);
        CHECK(omega_contains(3, rat(3, -1, 4), rat(3, 1, 2)));
        CHECK(omega_contains(3, rat(3, 0), rat(3, 0)));
        CHECK_FALSE(omega_contains(3, rat(3, 1, 4), rat(3, 1, 2)));
    }

    TEST_CASE("domain shape")
    {
        for (int q = 3; q <= 12; ++q) {
            auto rects = omega_domain(q);
            CHECK(rects.size() == static_cast<std::size_t>(2 * kappa_of(q)));
            std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) { return a.x_lo < b.x_lo; });
            Real half = lam(q) / rat(q, 2);
            CHECK(rects.front().x_lo == -half);
            CHECK(rects.back().x_hi == half);
            for (std::size_t i = 0; i + 1 < rects.size(); ++i) CHECK(rects[i].x_hi == rects[i + 1].x_lo);
            for (std::size_t i = 0; i < rects.size(); ++i) {
                const Rect& a = rects[i];
                const Rect& b = rects[rects.size() - 1 - i];
                CHECK(a.x_lo == -b.x_hi);
                CHECK(a.y_lo == -b.y_hi);
            }
        }
    }

    TEST_CASE("F and its inverse")
    {
        std::mt19937 rng(31);
        for (int q = 3; q <= 6; ++q)
            for (int k = 0; k < 50; ++k) {
                PointPair p = admissible_pair(rng, q);
                Step s = f_step(p.x);
                PointPair n = F_apply(p);
                CHECK(n.x == s.next);
                CHECK(n.y == inverse_branch(q, s.digit, p.y));
                CHECK(F_inverse(n) == p);
                CHECK(F_apply(F_inverse(p)) == p);
            }
    }

    TEST_CASE("digits move from future to past")
    {
        std::mt19937 rng(32);
        for (int q : {3, 4, 5}) {
            PointPair p = admissible_pair(rng, q);
            Word future = expand(p.x, CFKind::regular, 10).prefix(10);
            for (int i = 0; i < 5; ++i) {
                p = F_apply(p);
                CHECK(expand(p.y, CFKind::dual_regular, 1).prefix(1) == Word{future[i]});
            }
        }
    }

    TEST_CASE("Omega is invariant")
    {
        std::mt19937 rng(33);
        for (int q = 3; q <= 5; ++q)
            for (int k = 0; k < 20; ++k) {
                PointPair p = admissible_pair(rng, q);
                for (int i = 0; i < 50; ++i) {
                    p = F_apply(p);
                    REQUIRE(omega_contains(q, p.x, p.y));
                }
            }
    }

    TEST_CASE("geodesic reduction")
    {
        std::mt19937 rng(34);
        for (int q = 3; q <= 5; ++q) {
            int done = 0;
            while (done < 40) {
                Real wp = periodic_point(rng, q, static_cast<Digit>(rng() % 7) - 3);
                Real wm = periodic_point(rng, q, static_cast<Digit>(rng() % 7) - 3);
                if (wp == wm) continue;
                Reduction r = reduce_geodesic(wm, wp);
                CHECK(r.g.apply(wm) == r.omega_minus);
                CHECK(r.g.apply(wp) == r.omega_plus);
                CHECK(r.word.matrix(q) == r.g);
                CHECK(omega_contains(q, Moebius::S(q).apply(r.omega_plus), -r.omega_minus));
                CHECK_FALSE(r.attempted.empty());
                ++done;
            }
        }
    }

    TEST_CASE("reduced input keeps the identity")
    {
        std::mt19937 rng(35);
        for (int q = 3; q <= 5; ++q) {
            PointPair p = admissible_pair(rng, q);
            if (p.x.is_zero()) continue;
            Real wp = Moebius::S(q).apply(p.x);
            Real wm = -p.y;
            Reduction r = reduce_geodesic(wm, wp);
            CHECK(r.g.is_identity());
            CHECK(r.word.letters.empty());
        }
    }

    TEST_CASE("a0 = 2 case for q = 3")
    {
        std::mt19937 rng(36);
        for (int k = 0; k < 200; ++k) {
            Real wp = periodic_point(rng, 3, 2);
            Real wm = periodic_point(rng, 3, 0);
            Reduction r = reduce_geodesic(wm, wp);
            if (r.branch == "a0=2" && r.m != 0) CHECK(std::abs(r.m) >= 5);
        }
    }

    TEST_CASE("cusps")
    {
        Real wm = constants(3).r;
        CHECK_THROWS_AS(reduce_geodesic(wm, rat(3, 2, 3)), DomainError);
        CHECK_THROWS_AS(reduce_geodesic(rat(3, 1, 3), constants(3).R), DomainError);
        CHECK_THROWS_AS(reduce_geodesic(wm, wm), DomainError);
    }
}
