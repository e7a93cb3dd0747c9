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


#ifndef HECKE_TRANSFER_HPP
#define HECKE_TRANSFER_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/cf.hpp"

namespace hecke {

using Complex = std::complex<double>;

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Digits n with vartheta_n(Phi_i) inside Phi_j: first..last, or first onward to
   +-infinity in the direction of its sign. */
struct IndexSet {
    Digit first = 0;
    Digit last = 0;
    bool unbounded = false;

    bool empty() const { return first == 0; }
    bool contains(Digit n) const;
    std::string str() const;
};

/* Labels are +-1..+-kappa; label i > 0 is the cell [phi_{i-1}, phi_i] left of 0. */
struct IndexTable {
    int q = 3;
    int kappa = 1;
    std::vector<Real> lo, hi;       // cells by slot
    std::vector<IndexSet> sets;     // slot(i) * 2 kappa + slot(j)

    std::size_t size() const { return 2 * static_cast<std::size_t>(kappa); }
    std::size_t slot(int label) const;
    int label(std::size_t slot) const;
    const IndexSet& operator()(int i, int j) const;
};

IndexTable index_sets(int q);

/* Real-centered open disc. */
struct Disc {
    Real center, radius;
};

struct DiscSystem {
    IndexTable table;
    std::vector<Disc> discs;  // by slot
    /* Relative margin of the searched discs, 0 for the explicit ones. */
    Q growth = 0;

    int q() const { return table.q; }
};

/* Closed-disc containment vartheta_n(D_i) in D_j for every n in N_{i,j}, exactly. */
bool certify(const DiscSystem& s);
/* D_{+-1} = +-{|z - (lambda - 2)/4| < (lambda + 2)/4} for q = 3, 4, uncertified. */
DiscSystem explicit_discs(int q);
/* Explicit discs for q = 3. Elsewhere intervals are grown around the cells until the
   branch images map into them, then certified; the q = 4 explicit discs fail the check. */
DiscSystem disc_system(int q);

/* hurwitz: closed form for the half-infinite sums; direct: summation up to n_max with an
   integral-test tail bound. automatic picks hurwitz exactly when lambda = 1. */
enum class TailPolicy { automatic, hurwitz, direct };

struct AssemblyOptions {
    std::size_t order = 16;
    Digit n_max = 10000;
    TailPolicy tail = TailPolicy::automatic;
};

/* Truncation of L_beta in the scaled Taylor basis ((z - c_j) / r_j)^k on each disc. */
struct OperatorMatrix {
    int q = 3;
    Complex beta;
    std::size_t order = 0;
    std::size_t dim = 0;
    Digit n_max = 0;
    TailPolicy tail = TailPolicy::automatic;
    /* Row-sum bound on the entrywise tail and rounding error. */
    double error_bound = 0;
    std::vector<Complex> a;  // row-major

    Complex operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
    double norm() const;  // maximum absolute row sum
};

OperatorMatrix assemble(const DiscSystem& s, Complex beta, const AssemblyOptions& opt = {});

/* Eigenvalues ordered by decreasing modulus. */
std::vector<Complex> spectrum(const OperatorMatrix& m);
/* Power iteration, falling back to the full spectrum when it stalls. */
Complex leading_eigenvalue(const OperatorMatrix& m);
Complex trace(const OperatorMatrix& m);
/* det(1 - L_beta) as the eigenvalue product of the truncation. */
Complex fredholm_det(const OperatorMatrix& m);

struct FixedPointSum {
    Complex value;
    double tail_bound = 0;
};

/* Sum of (z^2)^beta / (1 - z^2) over the fixed points z = [0; (n)*] of f with
   regular period, |n| <= n_max. Computed without the index table. */
FixedPointSum fixed_point_trace(int q, Complex beta, Digit n_max);

struct ZetaValue {
    Complex value;
    int terms = 0;
    double error_bound = 0;
};

/* prod_{k=0}^{K} det(1 - L_{beta+k}), an approximation under the trace identification;
   stops early once a factor is within 1e-12 of 1. */
ZetaValue selberg_zeta(const DiscSystem& s, Complex beta, const AssemblyOptions& opt = {}, int K = 12);

/* Hurwitz zeta sum_{k>=0} (k + a)^-s for Re s > 1, a > 0. */
Complex hurwitz_zeta(Complex s, double a);

}  // namespace hecke

#endif
