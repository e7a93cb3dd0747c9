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
#include "hecke/cf.hpp"
#include "hecke/grammar.hpp"
#include "util.hpp"

using namespace hecke;
using hecke::test::lam;
using hecke::test::rat;

namespace {

Moebius power(const Moebius& m, int n)
{
    Moebius r = Moebius::identity(m.q());
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

Word repeat(Digit d, int n)
{
    return Word(static_cast<std::size_t>(n), d);
}

bool overlaps(const Interval& a, const Interval& b)
{
    return a.lo <= b.hi && b.lo <= a.hi;
}

Word cat(Word a, const Word& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_SUITE("cf")
{
    TEST_CASE("nearest multiple")
    {
        CHECK(nearest_multiple(rat(3, 0)) == 0);
        CHECK(nearest_multiple(rat(3, 3, 2)) == 1);
        CHECK(nearest_multiple(-lam(4) / rat(4, 2)) == 0);
        CHECK(nearest_multiple(lam(4) / rat(4, 2)) == 0);
        CHECK(nearest_multiple(rat(5, 7)) == 4);
    }

    TEST_CASE("nearest multiple dual")
    {
        CHECK(nearest_multiple_dual(rat(3, 0)) == 0);
        CHECK(nearest_multiple_dual(-constants(3).R) == 0);
        CHECK(nearest_multiple_dual(rat(4, 1, 2)) == 0);
    }

    TEST_CASE("f step")
    {
        CHECK(f_step(rat(3, 0)).terminal);
        Step s = f_step(rat(3, -1, 2));
        CHECK(s.digit == 2);
        CHECK(s.next.is_zero());
        s = f_step(-lam(4) / rat(4, 2));
        CHECK(s.digit == 1);
        CHECK(s.next.is_zero());
        CHECK_THROWS_AS(f_step(rat(3, 1)), DomainError);
        for (int q = 3; q <= 10; ++q) {
            Real x = rat(q, -1, 3);
            Step t = f_step(x);
            CHECK(t.next == -x.inverse() - lam(q) * rat(q, t.digit));
            CHECK(t.next <= lam(q) / rat(q, 2));
            CHECK(t.next >= -lam(q) / rat(q, 2));
        }
    }

    TEST_CASE("f* step")
    {
        CHECK(fstar_step(rat(3, 0)).terminal);
        for (int q : {4, 6, 8, 10}) {
            Step s = fstar_step(-constants(q).R);
            CHECK(s.next == rat(q, 1) - lam(q));
            CHECK(s.next == constants(q).r);
        }
        // q = 3: the orbit of -R runs through R - 1
        Step s = fstar_step(-constants(3).R);
        CHECK(s.next == constants(3).R - rat(3, 1));
        CHECK_THROWS_AS(fstar_step(rat(3, 2)), DomainError);
    }

    TEST_CASE("special expansions")
    {
        CHECK(expand(-lam(4) / rat(4, 2)).str() == "[0; 1]");
        CHECK(expand(constants(3).r).str() == "[0; (3)*]");
        for (int q : {4, 6, 8, 10, 12}) {
            int h = h_of(q);
            CFExpansion e = expand(constants(q).R, CFKind::dual_regular);
            CHECK(e.a0 == 0);
            CFExpansion want{q, 0, repeat(-1, h), cat({-2}, repeat(-1, h - 1)), CFKind::dual_regular};
            CHECK(e.prefix(40) == want.prefix(40));
            CHECK(evaluate_exact(want) == constants(q).R);
        }
    }

    TEST_CASE("evaluation")
    {
        CHECK(evaluate_exact(parse_cf("[1; 3]", 3)) == rat(3, 2, 3));
        CHECK(evaluate_exact(parse_cf("[0;]", 3)).is_zero());
        CHECK(evaluate_exact(parse_cf("[1; (3)*]", 3)) == constants(3).R);
        for (int q = 3; q <= 8; ++q) {
            const Real& r = constants(q).r;
            CFExpansion e = expand(r);
            REQUIRE(e.periodic());
            CHECK(evaluate_exact(e) == r);
            CFExpansion cut{q, e.a0, e.prefix(12), {}, CFKind::raw, true};
            Evaluation ev = evaluate(cut);
            CHECK_FALSE(ev.exact);
            CHECK(overlaps(ev.bounds, r.interval(80)));
        }
    }

    TEST_CASE("convergents")
    {
        auto c = convergents(parse_cf("[1; 3]", 3), 1);
        REQUIRE(c.size() == 2);
        CHECK(c[0].p == Lam(3, Q(1)));
        CHECK(c[0].q == Lam(3, Q(1)));
        CHECK(c[1].p == Lam(3, Q(2)));
        CHECK(c[1].q == Lam(3, Q(3)));
        auto d = convergents(parse_cf("[2; 1]", 4), 0);
        CHECK(d[0].p == Lam::lambda(4) * Q(2));
        CHECK(d[0].q == Lam(4, Q(1)));
    }

    TEST_CASE("constants")
    {
        const auto& c4 = constants(4);
        CHECK(c4.h == 1);
        CHECK(c4.kappa == 1);
        CHECK(c4.R == rat(4, 1));
        CHECK(c4.r == rat(4, 1) - lam(4));
        CHECK(constants(5).kappa == 3);
        Real s5(Lam(3), Lam(3, Q(1)), Lam(3, Q(5)));  // sqrt 5
        CHECK(constants(3).R == (s5 - rat(3, 1)) / rat(3, 2));
        for (int q = 3; q <= 20; ++q) {
            const auto& c = constants(q);
            CHECK(c.R == Real(c.lambda) + c.r);
            CHECK(lam(q) / rat(q, 2) < c.R);
            CHECK(c.R <= rat(q, 1));
            CHECK(c.kappa == (q % 2 == 0 ? (q - 2) / 2 : q - 2));
        }
        CHECK_THROWS_AS(constants(2), DomainError);
    }

    TEST_CASE("group relations")
    {
        for (int q = 3; q <= 12; ++q) {
            Moebius S = Moebius::S(q), T = Moebius::T(q);
            CHECK((S * S).is_identity());
            CHECK(power(S * T, q).is_identity());
            CHECK(S.det() == Lam(q, Q(1)));
            CHECK(T.det() == Lam(q, Q(1)));
            Moebius m = Moebius::ST(q, 3) * Moebius::T(q, -2) * S;
            CHECK((m * m.inverse()).is_identity());
        }
    }

    TEST_CASE("-R as an image of R")
    {
        for (int q = 3; q <= 12; ++q) {
            const Real& R = constants(q).R;
            if (q % 2 == 0) {
                CHECK(Moebius::S(q).apply(R) == -R);
            } else {
                Moebius ts = Moebius::T(q) * Moebius::S(q);
                CHECK(power(ts, h_of(q) + 1).apply(R) == -R);
            }
        }
    }

    TEST_CASE("rational round trip")
    {
        std::mt19937 rng(3);
        for (int q = 3; q <= 10; ++q)
            for (int k = 0; k < (q <= 6 ? 500 : 50); ++k) {
                Real x = hecke::test::random_rational(rng, q, 3, 40);
                CFExpansion e = expand(x, CFKind::regular, 64);
                if (e.finite() || e.periodic()) {
                    CHECK(evaluate_exact(e) == x);
                } else {
                    CHECK(overlaps(evaluate(e).bounds, x.interval(80)));
                }
                CHECK(is_regular(e));
            }
    }

    TEST_CASE("dual expansions avoid reversed blocks")
    {
        std::mt19937 rng(4);
        for (int q = 3; q <= 10; ++q) {
            const Real& R = constants(q).R;
            for (int k = 0; k < 100; ++k) {
                Real y = hecke::test::random_rational(rng, q, 1, 50) * R;
                if (y > R || y < -R) continue;
                CFExpansion e = expand(y, CFKind::dual_regular, 64);
                CHECK(is_dual_regular(e));
            }
        }
    }

    TEST_CASE("shift property")
    {
        std::mt19937 rng(5);
        for (int q = 3; q <= 8; ++q) {
            Real half = lam(q) / rat(q, 2);
            for (int k = 0; k < 30; ++k) {
                Real x = hecke::test::random_rational(rng, q, 1, 97) * half;
                if (x > half || x < -half) continue;
                CFExpansion e = expand(x, CFKind::regular, 40);
                if (e.digits.empty()) continue;
                CFExpansion s = expand(f_map(x), CFKind::regular, 39);
                Word tail(e.digits.begin() + 1, e.digits.end());
                std::size_t n = std::min(tail.size(), s.digits.size());
                CHECK(Word(tail.begin(), tail.begin() + static_cast<long>(n)) ==
                      Word(s.digits.begin(), s.digits.begin() + static_cast<long>(n)));
            }
        }
    }

    TEST_CASE("finite expansion identity")
    {
        std::mt19937 rng(6);
        for (int q = 3; q <= 10; ++q) {
            int h = h_of(q);
            for (int k = 0; k < 50; ++k) {
                Word w = test::random_regular_word(rng, q, 1 + rng() % 4, 4);
                if (w.back() == 1) continue;
                Word lhs = w, rhs = w;
                rhs.back() -= 1;
                if (rhs.back() == 0) continue;
                if (q % 2 == 0) {
                    lhs = cat(lhs, repeat(1, h));
                    rhs = cat(rhs, repeat(-1, h));
                } else {
                    lhs = cat(cat(cat(lhs, repeat(1, h)), {2}), repeat(1, h));
                    rhs = cat(cat(cat(rhs, repeat(-1, h)), {-2}), repeat(-1, h));
                }
                CHECK(evaluate_prefix(q, 0, lhs) == evaluate_prefix(q, 0, rhs));
            }
        }
    }

    TEST_CASE("cf text syntax")
    {
        CFExpansion e = parse_cf("[1; 2, -3, (4, -5)*]", 5);
        CHECK(e.a0 == 1);
        CHECK(e.digits == Word{2, -3});
        CHECK(e.period == Word{4, -5});
        CHECK(parse_cf(e.str(), 5) == e);
        CHECK_THROWS_AS(parse_cf("[1; 0]", 5), DomainError);
        CHECK_THROWS_AS(parse_cf("1; 2", 5), DomainError);
    }
}
