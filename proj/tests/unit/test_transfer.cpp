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


#include <cmath>

#include "doctest.h"
#include "hecke/transfer.hpp"

using namespace hecke;

namespace {

std::string set_str(const IndexTable& t, int i, int j)
{
    return t(i, j).str();
}

}  // namespace

TEST_SUITE("transfer")
{
    TEST_CASE("Hurwitz zeta")
    {
        const double pi = std::acos(-1.0);
        CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - pi * pi / 6) < 1e-14);
        CHECK(std::abs(hurwitz_zeta(3.0, 1.0) - 1.2020569031595942) < 1e-14);
        CHECK(std::abs(hurwitz_zeta(4.0, 0.5) - std::pow(pi, 4) / 6) < 1e-12);
        CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), DomainError);
    }

    TEST_CASE("index sets")
    {
        IndexTable a = index_sets(3);
        CHECK(set_str(a, 1, 1) == "Z>=3");
        CHECK(set_str(a, 1, -1) == "Z<=-2");
        CHECK(set_str(a, -1, 1) == "Z>=2");
        CHECK(set_str(a, -1, -1) == "Z<=-3");
        IndexTable b = index_sets(4);
        CHECK(set_str(b, 1, 1) == "Z>=2");
        CHECK(set_str(b, 1, -1) == "Z<=-1");
        CHECK(set_str(b, -1, 1) == "Z>=1");
        CHECK(set_str(b, -1, -1) == "Z<=-2");
        for (int q = 3; q <= 10; ++q) {
            IndexTable t = index_sets(q);
            for (int i = -t.kappa; i <= t.kappa; ++i)
                for (int j = -t.kappa; j <= t.kappa; ++j) {
                    if (i == 0 || j == 0) continue;
                    const IndexSet& s = t(i, j);
                    const IndexSet& m = t(-i, -j);
                    CHECK(s.first == -m.first);
                    CHECK(s.last == -m.last);
                    CHECK(s.unbounded == m.unbounded);
                }
            // every large digit appears in some set of every row
            for (int i = -t.kappa; i <= t.kappa; ++i) {
                if (i == 0) continue;
                for (Digit n : {Digit{40}, Digit{-40}}) {
                    int hits = 0;
                    for (int j = -t.kappa; j <= t.kappa; ++j)
                        if (j != 0 && t(i, j).contains(n)) ++hits;
                    CHECK(hits == 1);
                }
            }
        }
    }

    TEST_CASE("disc systems")
    {
        CHECK(certify(explicit_discs(3)));
        CHECK_FALSE(certify(explicit_discs(4)));
        CHECK_THROWS_AS(explicit_discs(5), DomainError);
        for (int q = 3; q <= 10; ++q) {
            DiscSystem s = disc_system(q);
            CHECK(certify(s));
            for (std::size_t k = 0; k < s.discs.size(); ++k) {
                const Disc& d = s.discs[k];
                CHECK(d.center - d.radius < s.table.lo[k]);
                CHECK(s.table.hi[k] < d.center + d.radius);
            }
        }
    }

    TEST_CASE("leading eigenvalue at beta = 1")
    {
        OperatorMatrix m = assemble(disc_system(3), 1.0);
        Complex l = leading_eigenvalue(m);
        CHECK(std::abs(l - 1.0) < 1e-10);
        CHECK(std::abs(fredholm_det(m)) < 1e-10);
        CHECK(std::abs(selberg_zeta(disc_system(3), 1.0).value) < 1e-10);
    }

    TEST_CASE("single basis function")
    {
        // with order 1 and q = 3 the entry is sum_{n >= 3} (n - 1/4)^-2 over one cell
        AssemblyOptions opt;
        opt.order = 0;
        OperatorMatrix m = assemble(disc_system(3), 1.0, opt);
        double direct = 0;
        for (long n = 1000000; n >= 3; --n) direct += 1.0 / ((n - 0.25) * (n - 0.25));
        direct += 1.0 / (1000000.0 - 0.25);
        CHECK(std::abs(m(0, 0).real() - direct) < 1e-11);
        CHECK(std::abs(m(0, 0).real() - hurwitz_zeta(2.0, 2.75).real()) < 1e-13);
    }

    TEST_CASE("decay and domain")
    {
        OperatorMatrix m = assemble(disc_system(3), 8.0);
        CHECK(m.norm() < 1e-3);
        CHECK_THROWS_AS(assemble(disc_system(3), 0.5), DomainError);
        CHECK_THROWS_AS(assemble(disc_system(3), Complex(0.4, 3.0)), DomainError);
        CHECK_THROWS_AS(fixed_point_trace(3, 0.5, 100), DomainError);
    }

    TEST_CASE("trace matches the fixed point sum")
    {
        for (int q : {3, 4}) {
            for (double beta : {2.0, 3.0}) {
                AssemblyOptions opt;
                opt.n_max = 2000;
                opt.order = 24;
                OperatorMatrix m = assemble(disc_system(q), beta, opt);
                opt.order = 20;
                double truncation = std::abs(trace(m) - trace(assemble(disc_system(q), beta, opt)));
                FixedPointSum f = fixed_point_trace(q, beta, 2000);
                CAPTURE(q);
                CAPTURE(beta);
                CHECK(truncation < 1e-12);
                CHECK(std::abs(trace(m) - f.value) <= m.error_bound + f.tail_bound + truncation);
            }
        }
    }

    TEST_CASE("truncation order stabilizes")
    {
        AssemblyOptions a, b;
        a.order = 16;
        b.order = 20;
        for (Complex beta : {Complex(1.5, 0), Complex(2.0, 1.0)}) {
            Complex la = leading_eigenvalue(assemble(disc_system(3), beta, a));
            Complex lb = leading_eigenvalue(assemble(disc_system(3), beta, b));
            CHECK(std::abs(la - lb) < 1e-8);
        }
    }

    TEST_CASE("spectrum is ordered")
    {
        auto ev = spectrum(assemble(disc_system(4), 2.0));
        for (std::size_t i = 0; i + 1 < ev.size(); ++i) CHECK(std::abs(ev[i]) >= std::abs(ev[i + 1]));
        CHECK(std::abs(ev[0].imag()) < 1e-12);
        CHECK(ev[0].real() > 0);
        CHECK(ev[0].real() < 1);
    }
}
