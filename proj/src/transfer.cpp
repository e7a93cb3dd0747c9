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


#include "hecke/transfer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hecke/grammar.hpp"
#include "hecke/symbolic.hpp"

namespace hecke {

bool IndexSet::contains(Digit n) const
{
    if (empty() || n == 0 || (n > 0) != (first > 0)) return false;
    Digit a = std::abs(n), lo = std::abs(first);
    return a >= lo && (unbounded || a <= std::abs(last));
}

std::string IndexSet::str() const
{
    if (empty()) return "{}";
    if (unbounded) return (first > 0 ? "Z>=" : "Z<=") + std::to_string(first);
    if (first == last) return "{" + std::to_string(first) + "}";
    return "{" + std::to_string(first) + ".." + std::to_string(last) + "}";
}

std::size_t IndexTable::slot(int label) const
{
    if (label == 0 || std::abs(label) > kappa) throw DomainError("partition label out of range");
    return label > 0 ? static_cast<std::size_t>(label - 1) : static_cast<std::size_t>(kappa - label - 1);
}

int IndexTable::label(std::size_t s) const
{
    int k = static_cast<int>(s);
    return k < kappa ? k + 1 : -(k - kappa + 1);
}

const IndexSet& IndexTable::operator()(int i, int j) const
{
    return sets[slot(i) * size() + slot(j)];
}

namespace {

Real times(int q, Digit m)
{
    return Real::lambda(q) * Real(q, Q(static_cast<long>(m)));
}

void extend(IndexSet& s, Digit n)
{
    if (s.empty()) {
        s.first = s.last = n;
        return;
    }
    if (n != s.last + (n > 0 ? 1 : -1)) throw std::logic_error("index set is not contiguous");
    s.last = n;
}

}  // namespace

IndexTable index_sets(int q)
{
    if (q < 3) throw DomainError("q must be at least 3");
    IndexTable t;
    t.q = q;
    t.kappa = kappa_of(q);
    std::vector<Real> phi = orbit_points(q, MapTag::f);
    std::size_t n = t.size();
    t.lo.resize(n);
    t.hi.resize(n);
    for (int i = 1; i <= t.kappa; ++i) {
        t.lo[t.slot(i)] = phi[i - 1];
        t.hi[t.slot(i)] = phi[i];
        t.lo[t.slot(-i)] = -phi[i];
        t.hi[t.slot(-i)] = -phi[i - 1];
    }
    t.sets.assign(n * n, IndexSet{});
    Real left = phi.front();
    std::size_t last = t.slot(t.kappa);
    // Positive digits land left of 0; negative digits follow by the mirror symmetry.
    for (std::size_t i = 0; i < n; ++i) {
        for (Digit d = 1;; ++d) {
            Real a = inverse_branch(q, d, t.lo[i]), b = inverse_branch(q, d, t.hi[i]);
            if (a < left) {
                if (b > left) throw std::logic_error("branch image straddles the interval end");
                continue;
            }
            std::size_t j = 0;
            while (static_cast<int>(j) < t.kappa && !(t.lo[j] <= a && b <= t.hi[j])) ++j;
            if (static_cast<int>(j) == t.kappa) throw std::logic_error("branch image is not inside one cell");
            extend(t.sets[i * n + j], d);
            if (j == last) {
                t.sets[i * n + j].unbounded = true;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(t.kappa); ++j) {
            const IndexSet& s = t.sets[i * n + j];
            if (s.empty()) continue;
            std::size_t mi = t.slot(-t.label(i)), mj = t.slot(-t.label(j));
            t.sets[mi * n + mj] = IndexSet{-s.first, -s.last, s.unbounded};
        }
    return t;
}

bool certify(const DiscSystem& s)
{
    const IndexTable& t = s.table;
    int q = t.q;
    std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Disc& d = s.discs[i];
        if (!(d.radius.sign() > 0)) return false;
        Real lo = d.center - d.radius, hi = d.center + d.radius;
        if (!(lo < t.lo[i] && t.hi[i] < hi)) return false;
        for (std::size_t j = 0; j < n; ++j) {
            const IndexSet& set = t.sets[i * n + j];
            if (set.empty()) continue;
            const Disc& e = s.discs[j];
            Real elo = e.center - e.radius, ehi = e.center + e.radius;
            int sg = set.first > 0 ? 1 : -1;
            // Beyond the first digit the images move monotonically towards 0.
            if (set.unbounded && !(sg > 0 ? ehi.sign() > 0 : elo.sign() < 0)) return false;
            Digit stop = set.unbounded ? set.first : set.last;
            for (Digit m = set.first;; m += sg) {
                Real pole = -times(q, m);
                if (sg > 0 ? !(pole < lo) : !(hi < pole)) return false;
                Real a = inverse_branch(q, m, lo), b = inverse_branch(q, m, hi);
                if (!(elo < a && b < ehi)) return false;
                if (m == stop) break;
            }
        }
    }
    return true;
}

DiscSystem explicit_discs(int q)
{
    if (q != 3 && q != 4) throw DomainError("explicit discs are given for q = 3, 4 only");
    DiscSystem s;
    s.table = index_sets(q);
    s.discs.resize(s.table.size());
    Real lam = Real::lambda(q);
    Real c = (lam - Real(q, Q(2))) * Real(q, Q(1, 4));
    Real r = (lam + Real(q, Q(2))) * Real(q, Q(1, 4));
    s.discs[s.table.slot(1)] = {c, r};
    s.discs[s.table.slot(-1)] = {-c, r};
    return s;
}

namespace {

Q to_q(double x)
{
    return Q(x);
}

/* Grows each interval to cover its cell and the branch images landing in it until the
   system maps into itself, then rounds outward to rationals. */
bool search_discs(DiscSystem& s)
{
    const IndexTable& t = s.table;
    std::size_t n = t.size();
    double lam = Real::lambda(t.q).to_double();
    std::vector<double> clo(n), chi(n);
    for (std::size_t i = 0; i < n; ++i) {
        clo[i] = t.lo[i].to_double();
        chi[i] = t.hi[i].to_double();
    }
    for (const Q& margin : {Q(1, 64), Q(1, 16), Q(1, 4)}) {
        double eta = margin.get_d();
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            double w = chi[i] - clo[i];
            a[i] = clo[i] - eta * w;
            b[i] = chi[i] + eta * w;
        }
        for (int it = 0; it < 200; ++it) {
            std::vector<double> na(n), nb(n);
            for (std::size_t j = 0; j < n; ++j) {
                na[j] = clo[j];
                nb[j] = chi[j];
            }
            bool diverged = false;
            for (std::size_t i = 0; i < n && !diverged; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const IndexSet& set = t.sets[i * n + j];
                    if (set.empty()) continue;
                    int sg = set.first > 0 ? 1 : -1;
                    for (Digit m = set.first;; m += sg) {
                        double x = a[i] + static_cast<double>(m) * lam, y = b[i] + static_cast<double>(m) * lam;
                        if (x * y <= 0) {
                            diverged = true;
                            break;
                        }
                        na[j] = std::min(na[j], -1 / x);
                        nb[j] = std::max(nb[j], -1 / y);
                        if (set.unbounded || m == set.last) break;
                    }
                    if (set.unbounded) {
                        na[j] = std::min(na[j], 0.0);
                        nb[j] = std::max(nb[j], 0.0);
                    }
                }
            if (diverged) break;
            bool inside = true;
            for (std::size_t j = 0; j < n; ++j) {
                double w = nb[j] - na[j];
                na[j] -= eta * w;
                nb[j] += eta * w;
                inside = inside && a[j] <= na[j] && nb[j] <= b[j];
            }
            a = na;
            b = nb;
            if (!inside) continue;
            for (std::size_t j = 0; j < n; ++j) {
                double w = b[j] - a[j];
                Q lo = to_q(a[j] - eta * w), hi = to_q(b[j] + eta * w);
                s.discs[j] = {Real(t.q, (lo + hi) / 2), Real(t.q, (hi - lo) / 2)};
            }
            s.growth = margin;
            if (certify(s)) return true;
        }
    }
    return false;
}

}  // namespace

DiscSystem disc_system(int q)
{
    if (q == 3) {
        DiscSystem s = explicit_discs(q);
        if (!certify(s)) throw SpectralError("explicit discs fail the contraction check");
        return s;
    }
    DiscSystem s;
    s.table = index_sets(q);
    s.discs.resize(s.table.size());
    if (!search_discs(s)) throw SpectralError("no certified disc system found for q = " + std::to_string(q));
    return s;
}

/* ------------------------------------------------------------------ numerics */

Complex hurwitz_zeta(Complex s, double a)
{
    if (!(s.real() > 1)) throw DomainError("Hurwitz zeta needs Re s > 1");
    if (!(a > 0)) throw DomainError("Hurwitz zeta needs a > 0");
    // Euler-Maclaurin with B_2 .. B_24.
    static const std::array<double, 12> b2j = {1.0 / 6,         -1.0 / 30,      1.0 / 42,
                                               -1.0 / 30,       5.0 / 66,       -691.0 / 2730,
                                               7.0 / 6,         -3617.0 / 510,  43867.0 / 798,
                                               -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
    int m = 20 + static_cast<int>(std::abs(s));
    Complex sum = 0;
    for (int k = 0; k < m; ++k) sum += std::pow(a + k, -s);
    double x = a + m;
    Complex xs = std::pow(x, -s);
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    Complex rising = s;  // s (s+1) ... (s+2j-2)
    double fact = 2;     // (2j)!
    double xp = 1 / x;
    for (std::size_t j = 1; j <= b2j.size(); ++j) {
        Complex term = b2j[j - 1] / fact * rising * xs * xp;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        fact *= static_cast<double>((2 * j + 1) * (2 * j + 2));
        xp /= x * x;
    }
    return sum;
}

namespace {

struct PowerSums {
    std::vector<Complex> value;
    std::vector<double> bound;
};

/* sum over n in the set of A_n^-(2 beta + p), A_n = |n| lambda + sign(n) c, p = 0..P. */
PowerSums power_sums(const IndexSet& set, double lam, double c, Complex beta, std::size_t P,
                     TailPolicy tail, Digit n_max)
{
    PowerSums r;
    r.value.assign(P + 1, 0);
    r.bound.assign(P + 1, 0);
    double sc = set.first > 0 ? c : -c;
    Digit lo = std::abs(set.first);
    Digit hi = set.unbounded ? std::numeric_limits<Digit>::max() : std::abs(set.last);
    if (set.unbounded && tail == TailPolicy::hurwitz) {
        double shift = lo + sc / lam;
        for (std::size_t p = 0; p <= P; ++p) {
            Complex sig = 2.0 * beta + static_cast<double>(p);
            r.value[p] = std::pow(lam, -sig) * hurwitz_zeta(sig, shift);
            r.bound[p] = 1e-14 * std::abs(r.value[p]);
        }
        return r;
    }
    Digit top = std::min(hi, std::max(lo, n_max));
    for (Digit n = lo; n <= top; ++n) {
        double A = static_cast<double>(n) * lam + sc;
        Complex t = std::pow(A, -2.0 * beta);
        for (std::size_t p = 0; p <= P; ++p) {
            r.value[p] += t;
            t /= A;
        }
    }
    for (std::size_t p = 0; p <= P; ++p) {
        r.bound[p] = 4 * std::numeric_limits<double>::epsilon() * static_cast<double>(top - lo + 1) *
                     std::abs(r.value[p]);
        if (top < hi) {
            // sum_{n > top} A_n^-s <= integral from top to infinity
            double s = 2 * beta.real() + static_cast<double>(p);
            double A = static_cast<double>(top) * lam + sc;
            r.bound[p] += std::pow(A, 1 - s) / (lam * (s - 1));
        }
    }
    return r;
}

/* binom(-sigma, l) for l = 0..L */
std::vector<Complex> neg_binomials(Complex sigma, std::size_t L)
{
    std::vector<Complex> b(L + 1);
    b[0] = 1;
    for (std::size_t l = 1; l <= L; ++l) b[l] = b[l - 1] * (-sigma - static_cast<double>(l - 1)) / static_cast<double>(l);
    return b;
}

using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const Mat> view(const OperatorMatrix& m)
{
    return Eigen::Map<const Mat>(m.a.data(), static_cast<Eigen::Index>(m.dim), static_cast<Eigen::Index>(m.dim));
}

}  // namespace

double OperatorMatrix::norm() const
{
    double best = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        double s = 0;
        for (std::size_t c = 0; c < dim; ++c) s += std::abs(a[r * dim + c]);
        best = std::max(best, s);
    }
    return best;
}

OperatorMatrix assemble(const DiscSystem& s, Complex beta, const AssemblyOptions& opt)
{
    if (!(beta.real() > 0.5)) throw DomainError("the transfer operator diverges for Re(beta) <= 1/2");
    if (opt.n_max < 1) throw DomainError("digit cutoff must be positive");
    const IndexTable& t = s.table;
    int q = t.q;
    OperatorMatrix m;
    m.q = q;
    m.beta = beta;
    m.order = opt.order;
    m.n_max = opt.n_max;
    m.tail = opt.tail == TailPolicy::automatic ? (q == 3 ? TailPolicy::hurwitz : TailPolicy::direct) : opt.tail;
    std::size_t nb = t.size(), N = opt.order, B = N + 1;
    m.dim = nb * B;
    m.a.assign(m.dim * m.dim, 0);
    std::vector<double> err(m.dim * m.dim, 0);
    double lam = Real::lambda(q).to_double();
    std::vector<double> c(nb), rho(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        c[i] = s.discs[i].center.to_double();
        rho[i] = s.discs[i].radius.to_double();
    }
    // binom(k, m)
    std::vector<std::vector<double>> C(B, std::vector<double>(B, 0));
    for (std::size_t k = 0; k < B; ++k) {
        C[k][0] = 1;
        for (std::size_t j = 1; j <= k; ++j) C[k][j] = C[k - 1][j - 1] + (j < k ? C[k - 1][j] : 0);
    }
    std::vector<std::vector<Complex>> nb_of(B);
    for (std::size_t mm = 0; mm < B; ++mm) nb_of[mm] = neg_binomials(2.0 * beta + static_cast<double>(mm), N);

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const IndexSet& set = t.sets[i * nb + j];
            if (set.empty()) continue;
            double sg = set.first > 0 ? 1 : -1;
            PowerSums ps = power_sums(set, lam, c[i], beta, 2 * N, m.tail, opt.n_max);
            for (std::size_t l = 0; l < B; ++l)
                for (std::size_t k = 0; k < B; ++k) {
                    Complex sum = 0;
                    double abs_sum = 0, tail = 0;
                    for (std::size_t mm = 0; mm <= k; ++mm) {
                        double w = C[k][mm] * std::pow(-c[j], static_cast<double>(k - mm)) *
                                   std::pow(-sg, static_cast<double>(mm)) * std::pow(sg, static_cast<double>(l));
                        Complex coef = w * nb_of[mm][l];
                        Complex term = coef * ps.value[mm + l];
                        sum += term;
                        abs_sum += std::abs(term);
                        tail += std::abs(coef) * ps.bound[mm + l];
                    }
                    double scale = std::pow(rho[i], static_cast<double>(l)) / std::pow(rho[j], static_cast<double>(k));
                    std::size_t r = i * B + l, col = j * B + k;
                    m.a[r * m.dim + col] = sum * scale;
                    err[r * m.dim + col] =
                        (tail + 8 * std::numeric_limits<double>::epsilon() * abs_sum * static_cast<double>(k + 1)) * scale;
                }
        }
    for (std::size_t r = 0; r < m.dim; ++r) {
        double row = 0;
        for (std::size_t col = 0; col < m.dim; ++col) row += err[r * m.dim + col];
        m.error_bound = std::max(m.error_bound, row);
    }
    return m;
}

std::vector<Complex> spectrum(const OperatorMatrix& m)
{
    Eigen::ComplexEigenSolver<Mat> es(view(m), false);
    if (es.info() != Eigen::Success) throw SpectralError("eigenvalue solver did not converge");
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        return a.imag() > b.imag();
    });
    return ev;
}

Complex leading_eigenvalue(const OperatorMatrix& m)
{
    auto M = view(m);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(m.dim));
    Complex mu = 0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXcd w = M * v;
        double nw = w.norm();
        if (nw == 0) break;
        Complex next = v.dot(w) / v.squaredNorm();
        v = w / nw;
        if (it > 0 && std::abs(next - mu) <= 1e-15 * std::abs(next)) return next;
        mu = next;
    }
    std::vector<Complex> ev = spectrum(m);
    if (ev.empty()) throw SpectralError("empty operator matrix");
    return ev.front();
}

Complex trace(const OperatorMatrix& m)
{
    Complex t = 0;
    for (std::size_t i = 0; i < m.dim; ++i) t += m(i, i);
    return t;
}

Complex fredholm_det(const OperatorMatrix& m)
{
    Complex d = 1;
    for (Complex mu : spectrum(m)) d *= 1.0 - mu;
    return d;
}

FixedPointSum fixed_point_trace(int q, Complex beta, Digit n_max)
{
    if (!(beta.real() > 0.5)) throw DomainError("the fixed point sum diverges for Re(beta) <= 1/2");
    double lam = Real::lambda(q).to_double();
    std::size_t reps = 2 * static_cast<std::size_t>(kappa_of(q)) + 4;
    FixedPointSum r;
    for (Digit a = 1; a <= n_max; ++a)
        for (Digit n : {a, -a}) {
            double nl = static_cast<double>(n) * lam;
            if (nl * nl <= 4) continue;
            if (!is_regular_word(q, Word(reps, n))) continue;
            // attracting root of z^2 + n lambda z + 1
            double z = (-nl + (n > 0 ? 1 : -1) * std::sqrt(nl * nl - 4)) / 2;
            double z2 = z * z;
            r.value += std::exp(beta * std::log(z2)) / (1 - z2);
        }
    double s = 2 * beta.real();
    double A = static_cast<double>(n_max) * lam - 1;
    r.tail_bound = 2 * std::pow(A, 1 - s) / (lam * (s - 1)) / (1 - 1 / (A * A));
    return r;
}

ZetaValue selberg_zeta(const DiscSystem& s, Complex beta, const AssemblyOptions& opt, int K)
{
    ZetaValue z;
    z.value = 1;
    for (int k = 0; k <= K; ++k) {
        OperatorMatrix m = assemble(s, beta + static_cast<double>(k), opt);
        Complex d = fredholm_det(m);
        z.value *= d;
        z.terms = k + 1;
        z.error_bound = std::max(z.error_bound, m.error_bound);
        if (std::abs(d - 1.0) < 1e-12) break;
    }
    return z;
}

}  // namespace hecke
