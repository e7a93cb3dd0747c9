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
#include "hecke/io.hpp"
#include "util.hpp"

using namespace hecke;
using hecke::test::lam;
using hecke::test::rat;

TEST_SUITE("io")
{
    TEST_CASE("value parsing")
    {
        CHECK(parse_value("3/7", 3) == rat(3, 3, 7));
        CHECK(parse_value("-l/2", 4) == -lam(4) / rat(4, 2));
        CHECK(parse_value("1 + 2*l + l^2", 5) == rat(5, 1) + lam(5) * rat(5, 2) + lam(5) * lam(5));
        CHECK(parse_value("lambda^-1", 6) == lam(6).inverse());
        CHECK(parse_value("0.125", 3) == rat(3, 1, 8));
        CHECK(parse_value("-1.5", 3) == rat(3, -3, 2));
        CHECK(parse_value("R", 7) == constants(7).R);
        CHECK(parse_value("r", 7) == constants(7).r);
        CHECK(parse_value("(sqrt(5) - 1)/2", 3) == constants(3).R);
        CHECK(parse_value("[1; 3]", 3) == rat(3, 2, 3));
        CHECK(parse_value("[0; (3)*]", 3) == constants(3).r);
        CHECK_THROWS_AS(parse_value("1/0", 3), DomainError);
        CHECK_THROWS_AS(parse_value("2 +", 3), DomainError);
        CHECK_THROWS_AS(parse_value("x", 3), DomainError);
        CHECK_THROWS_AS(parse_value("sqrt(-2)", 3), DomainError);
    }

    TEST_CASE("decimal output")
    {
        CHECK(decimal(rat(3, 1, 4), 5) == "0.25000");
        CHECK(decimal(constants(3).R, 12).rfind("0.618033988750", 0) == 0);
        CHECK(decimal(-lam(4), 6).rfind("-1.41421", 0) == 0);
    }

    TEST_CASE("real round trip")
    {
        for (int q = 3; q <= 9; ++q) {
            for (const Real& x : {rat(q, -5, 3), lam(q) * rat(q, 3) - rat(q, 1, 2), constants(q).R, constants(q).r * lam(q)}) {
                Json j = to_json(x);
                CHECK(j["q"] == q);
                CHECK(real_from_json(j) == x);
                CHECK(real_from_json(Json::parse(j.dump())) == x);
            }
        }
        Lam a = Lam::lambda(5) * Q(3, 2) + Q(-1);
        CHECK(lam_from_json(5, to_json(a)) == a);
    }

    TEST_CASE("expansion round trip")
    {
        std::mt19937 rng(51);
        for (int q = 3; q <= 8; ++q)
            for (int k = 0; k < 50; ++k) {
                CFExpansion e = test::random_regular_cf(rng, q, 1 + rng() % 6, 5);
                if (k % 2) e.period = {test::random_regular_word(rng, q, 1, 5)};
                Json j = to_json(e);
                CHECK(cf_from_json(Json::parse(j.dump())) == e);
            }
        Json j = to_json(parse_cf("[1; 2, (3)*]", 3));
        CHECK(j["a0"] == 1);
        CHECK(j["period"] == Json::array({3}));
        CHECK(j["digits"] == Json::array({2}));
        CHECK(j["preperiod"] == 1);
    }

    TEST_CASE("matrix round trip")
    {
        for (int q : {3, 4, 5})
            for (MapTag t : {MapTag::f, MapTag::f_star}) {
                TransitionMatrix m = transition_matrix(q, t, 5);
                TransitionMatrix back = matrix_from_json(Json::parse(to_json(m).dump()));
                CHECK(back.q == m.q);
                CHECK(back.alphabet == m.alphabet);
                CHECK(back.adj == m.adj);
            }
        CHECK(parse_symbol("-2") == Symbol{-2, 0, false});
        CHECK(parse_symbol("1_2") == Symbol{1, 2, false});
        CHECK(parse_symbol(">8") == Symbol{9, 0, true});
        CHECK(parse_symbol("<-8") == Symbol{-9, 0, true});
        for (const Symbol& s : transition_matrix(5, MapTag::f).alphabet) CHECK(parse_symbol(s.str()) == s);
    }

    TEST_CASE("other records")
    {
        Json t = to_json(rewrite_to_regular(parse_cf("[0; 2, 3, -4]", 3)));
        REQUIRE(t["steps"].size() == 1);
        CHECK(t["steps"][0]["window"] == Json::array({-1, -2, 2}));
        Json m = to_json(Moebius::S(4));
        CHECK(m.size() == 2);
        Json r = to_json(to_rosen(parse_cf("[0; -2, 3]", 4)));
        CHECK(r.dump().find("\"q\":4") != std::string::npos);
        Json p = to_json(build_partition(3, MapTag::f, 4));
        CHECK(p["orbit"].size() == 2);
    }
}
