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


#include "hecke/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hecke {

std::string map_name(MapTag t)
{
    return t == MapTag::f ? "f" : "fstar";
}

MapTag parse_map(const std::string& s)
{
    if (s == "f") return MapTag::f;
    if (s == "fstar" || s == "f_star" || s == "f*") return MapTag::f_star;
    throw DomainError("unknown map '" + s + "', expected f or fstar");
}

std::string Symbol::str() const
{
    if (tail) return digit > 0 ? ">" + std::to_string(digit - 1) : "<" + std::to_string(digit + 1);
    std::string s = std::to_string(digit);
    if (index > 0) s += "_" + std::to_string(index);
    return s;
}

namespace {

Real rat(int q, long n, long d = 1)
{
    Q x(n, d);
    x.canonicalize();
    return Real(q, x);
}

Real times(int q, Digit m)
{
    return Real::lambda(q) * Real(q, Q(static_cast<long>(m)));
}

Digit first_digit(int q)
{
    return q == 3 ? 2 : 1;
}

Digit explicit_from(int q)
{
    return q % 2 == 0 || q == 3 ? 2 : 3;
}

const Real& rmax(const Real& a, const Real& b)
{
    return a < b ? b : a;
}

const Real& rmin(const Real& a, const Real& b)
{
    return a < b ? a : b;
}


std::vector<Real> iterate_orbit(int q, MapTag map)
{
    const auto& c = constants(q);
    Real x = map == MapTag::f ? -(Real::lambda(q) * rat(q, 1, 2)) : -c.R;
    std::vector<Real> xs{x};
    for (int it = 0; it < 4 * q + 8; ++it) {
        Real next = map == MapTag::f ? f_map(xs.back()) : fstar_map(xs.back());
        if (std::find(xs.begin(), xs.end(), next) != xs.end()) {
            if (xs.size() != static_cast<std::size_t>(c.kappa) + 1)
                throw std::logic_error("orbit of the boundary point has " + std::to_string(xs.size()) +
                                       " points, expected kappa + 1");
            return xs;
        }
        xs.push_back(next);
    }
    throw std::logic_error("orbit of the boundary point does not close");
}

void indexed_orbit(int q, MapTag map, std::vector<Real>& pts, std::vector<int>& steps)
{
    std::vector<Real> xs = iterate_orbit(q, map);
    int kappa = kappa_of(q);
    int h = h_of(q);
    pts.assign(kappa + 1, Real(q));
    steps.assign(kappa + 1, 0);
    if (q % 2 == 0) {
        for (int i = 0; i <= kappa; ++i) {
            pts[i] = xs[i];
            steps[i] = i;
        }
    } else {
        for (int i = 0; i <= h; ++i) {
            pts[2 * i] = xs[i];
            steps[2 * i] = i;
            pts[2 * i + 1] = xs[h + i + 1];
            steps[2 * i + 1] = h + i + 1;
        }
    }
}

struct Builder {
    MarkovPartition& p;
    const HeckeConstants& c;
    Real L;

    Builder(MarkovPartition& part) : p(part), c(constants(part.q)), L(Real::lambda(part.q)) {}

    Real P(int i) const { return p.orbit.at(i); }

    const Cell& cell(Digit d, int i) const { return p.cells.at(p.find(Symbol{d, i, false})); }

    std::pair<Real, Real> span(int i) const { return {P(i - 1), P(i)}; }

    std::pair<Real, Real> of(const Cell& x) const { return {x.lo, x.hi}; }

    void add(const std::string& name, Digit m, std::pair<Real, Real> src, std::pair<Real, Real> img)
    {
        for (int eps : {1, -1}) {
            ImageIdentity id;
            id.source = (eps > 0 ? "" : "-") + name;
            id.branch = eps * m;
            if (eps > 0) {
                id.src_lo = src.first;
                id.src_hi = src.second;
                id.lo = img.first;
                id.hi = img.second;
            } else {
                id.src_lo = -src.second;
                id.src_hi = -src.first;
                id.lo = -img.second;
                id.hi = -img.first;
            }
            id.holds = branch(p.q, id.branch, id.src_lo) == id.lo &&
                       branch(p.q, id.branch, id.src_hi) == id.hi;
            p.identities.push_back(std::move(id));
        }
    }

    void empty_range(const std::string& what)
    {
        p.notes.push_back("empty index range: " + what);
    }

    std::string J(const std::string& s) const
    {
        return (p.map == MapTag::f ? "J_{" : "J*_{") + s + "}";
    }

    std::string ri(Digit d, int i) const { return J(std::to_string(d) + "_" + std::to_string(i)); }

    void digit_identities(Digit from, std::pair<Real, Real> img)
    {
        for (Digit m = from; m <= p.cutoff + 2; ++m)
            add(J(std::to_string(m)), m, digit_cell(p.q, p.map, m), img);
    }

    void identities()
    {
        int q = p.q;
        int k = c.kappa;
        int h = c.h;
        Real half = L * rat(q, 1, 2);
        Real zero = rat(q, 0);
        std::pair<Real, Real> Iq{-half, half};
        std::pair<Real, Real> rR{c.r, c.R};
        if (p.map == MapTag::f) {
            if (q == 3) {
                add(J("2"), 2, digit_cell(q, p.map, 2), {zero, half});
                digit_identities(3, Iq);
            } else if (q % 2 == 0) {
                if (k < 3) empty_range("f(J_{1_i}) = J_{1_{i+1}}, 1 <= i <= kappa - 2");
                for (int i = 1; i <= k - 2; ++i) add(ri(1, i), 1, of(cell(1, i)), of(cell(1, i + 1)));
                if (k >= 2) add(ri(1, k - 1), 1, of(cell(1, k - 1)), {P(k - 1), zero});
                add(ri(1, k), 1, of(cell(1, k)), {zero, half});
                digit_identities(2, Iq);
            } else {
                if (h < 3) empty_range("f(Phi_{2i}) = Phi_{2i+2}, 1 <= i <= h - 2");
                for (int i = 1; i <= h - 2; ++i)
                    add("Phi_{" + std::to_string(2 * i) + "}", 1, span(2 * i), span(2 * i + 2));
                add(ri(1, k - 1), 1, of(cell(1, k - 1)), {zero, half});
                add(ri(2, k - 1), 2, of(cell(2, k - 1)), {-half, P(1)});
                for (int i = 1; i <= h; ++i)
                    add("Phi_{" + std::to_string(2 * i - 1) + "}", 1, span(2 * i - 1), span(2 * i + 1));
                add(ri(2, k), 2, of(cell(2, k)), {P(1), half});
                digit_identities(3, Iq);
            }
            return;
        }
        if (q == 3) {
            digit_identities(2, rR);
        } else if (q % 2 == 0) {
            if (k < 2) empty_range("f*(J*_{1_i}) = J*_{1_{i+1}}, 1 <= i <= kappa - 1");
            for (int i = 1; i <= k - 1; ++i) add(ri(1, i), 1, of(cell(1, i)), of(cell(1, i + 1)));
            Real edge = -(L * rat(q, 2) + c.r).inverse();
            add(ri(1, k), 1, of(cell(1, k)), {edge, c.R});
            digit_identities(2, rR);
        } else {
            digit_identities(3, rR);
            if (h < 2) empty_range("f*(J*_{1_{2i}}) = J*_{1_{2i+2}}, 1 <= i <= h - 1");
            for (int i = 1; i <= h - 1; ++i)
                add(ri(1, 2 * i), 1, of(cell(1, 2 * i)), of(cell(1, 2 * i + 2)));
            for (int i = 1; i <= h; ++i) add(ri(1, 2 * i - 1), 1, of(cell(1, 2 * i - 1)), span(2 * i + 1));
            add(ri(1, 2 * h), 1, of(cell(1, 2 * h)), {P(k), c.R});
            add(ri(2, k), 2, of(cell(2, k)), of(cell(1, 2)));
            add(ri(2, k + 1), 2, of(cell(2, k + 1)), {P(2), c.R});
        }
    }

    void cells()
    {
        int q = p.q;
        int k = c.kappa;
        std::vector<std::pair<Digit, int>> refined;
        if (q != 3 && q % 2 == 0) {
            for (int i = 1; i <= k; ++i) refined.push_back({1, i});
        } else if (q != 3) {
            for (int i = 1; i <= k - 1; ++i) refined.push_back({1, i});
            if (p.map == MapTag::f) {
                refined.push_back({2, k - 1});
                refined.push_back({2, k});
            } else {
                refined.push_back({2, k});
                refined.push_back({2, k + 1});
            }
        }
        std::vector<Cell> pos;
        for (auto [d, i] : refined) {
            auto [lo, hi] = digit_cell(q, p.map, d);
            Cell x{Symbol{d, i, false}, rmax(lo, P(i - 1)), rmin(hi, P(i))};
            if (!(x.lo < x.hi)) throw std::logic_error("empty refined cell " + x.label.str());
            pos.push_back(std::move(x));
        }
        for (Digit m = explicit_from(q); m <= p.cutoff; ++m) {
            auto [lo, hi] = digit_cell(q, p.map, m);
            pos.push_back(Cell{Symbol{m, 0, false}, lo, hi});
        }
        pos.push_back(Cell{Symbol{p.cutoff + 1, 0, true}, digit_cell(q, p.map, p.cutoff).second, rat(q, 0)});
        for (const Cell& x : pos) {
            p.cells.push_back(x);
            p.cells.push_back(Cell{x.label.mirror(), -x.hi, -x.lo});
        }
        std::sort(p.cells.begin(), p.cells.end(), [](const Cell& a, const Cell& b) { return a.lo < b.lo; });
        Real b = p.bound();
        if (!(p.cells.front().lo == -b) || !(p.cells.back().hi == b))
            throw std::logic_error("cells do not cover the interval");
        for (std::size_t i = 0; i + 1 < p.cells.size(); ++i)
            if (!(p.cells[i].hi == p.cells[i + 1].lo))
                throw std::logic_error("cells " + p.cells[i].label.str() + " and " +
                                       p.cells[i + 1].label.str() + " do not tile");
    }

    /* Position of x among the cell boundaries, or -1. */
    long boundary_index(const Real& x) const
    {
        std::size_t n = p.cells.size();
        std::size_t lo = 0, hi = n;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (p.cells[mid].lo < x) lo = mid + 1;
            else hi = mid;
        }
        if (lo < n && p.cells[lo].lo == x) return static_cast<long>(lo);
        if (p.cells.back().hi == x) return static_cast<long>(n);
        return -1;
    }

    std::string images()
    {
        for (const Cell& x : p.cells) {
            std::pair<Real, Real> src{x.lo, x.hi};
            if (x.label.tail) src = digit_cell(p.q, p.map, x.label.digit);
            Real a = branch(p.q, x.label.digit, src.first);
            Real b = branch(p.q, x.label.digit, src.second);
            long i = boundary_index(a);
            long j = boundary_index(b);
            if (i < 0 || j < 0 || i >= j) {
                p.images.emplace_back();
                return "image of cell " + x.label.str() + " is not a union of cells";
            }
            std::vector<std::size_t> img;
            for (long t = i; t < j; ++t) img.push_back(static_cast<std::size_t>(t));
            p.images.push_back(std::move(img));
        }
        return {};
    }
};

}  // namespace

std::size_t MarkovPartition::find(const Symbol& s) const
{
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].label == s) return i;
    throw DomainError("symbol " + s.str() + " is not in the partition");
}

std::size_t MarkovPartition::find_digit(Digit d, int index) const
{
    if (d > cutoff) return find(Symbol{cutoff + 1, 0, true});
    if (d < -cutoff) return find(Symbol{-cutoff - 1, 0, true});
    return find(Symbol{d, index, false});
}

Real MarkovPartition::bound() const
{
    if (map == MapTag::f) return Real::lambda(q) * rat(q, 1, 2);
    return constants(q).R;
}

std::vector<Real> orbit_points(int q, MapTag map)
{
    std::vector<Real> pts;
    std::vector<int> steps;
    indexed_orbit(q, map, pts, steps);
    return pts;
}

bool orbit_interleaving(int q)
{
    auto phi = orbit_points(q, MapTag::f);
    auto psi = orbit_points(q, MapTag::f_star);
    if (!(psi.front() == -constants(q).R) || !phi.back().is_zero()) return false;
    std::vector<Real> chain;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        chain.push_back(psi[i]);
        chain.push_back(phi[i]);
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!(chain[i] < chain[i + 1])) return false;
    return true;
}

std::pair<Real, Real> digit_cell(int q, MapTag map, Digit m)
{
    if (m < 0) {
        auto [lo, hi] = digit_cell(q, map, -m);
        return {-hi, -lo};
    }
    if (m < first_digit(q)) throw DomainError("digit " + std::to_string(m) + " has no cell");
    const auto& c = constants(q);
    Real L = Real::lambda(q);
    if (map == MapTag::f) {
        Real lo = m == first_digit(q) ? -(L * rat(q, 1, 2)) : -(rat(q, 2) / (times(q, 2 * m - 1)));
        return {lo, -(rat(q, 2) / times(q, 2 * m + 1))};
    }
    Real lo = m == first_digit(q) ? -c.R : -(c.r + times(q, m)).inverse();
    return {lo, -(c.r + times(q, m + 1)).inverse()};
}

Real branch(int q, Digit m, const Real& x)
{
    return -x.inverse() - times(q, m);
}

Real inverse_branch(int q, Digit m, const Real& y)
{
    return -(y + times(q, m)).inverse();
}

MarkovPartition build_partition_unchecked(int q, MapTag map, Digit cutoff)
{
    if (q < 3) throw DomainError("q must be at least 3");
    if (cutoff < explicit_from(q))
        throw DomainError("digit cutoff must be at least " + std::to_string(explicit_from(q)));
    MarkovPartition p;
    p.q = q;
    p.map = map;
    p.cutoff = cutoff;
    indexed_orbit(q, map, p.orbit, p.orbit_step);
    if (map == MapTag::f_star) {
        p.orbit.push_back(rat(q, 0));
        p.orbit_step.push_back(-1);
    }
    Builder b(p);
    b.cells();
    std::string err = b.images();
    if (!err.empty()) p.notes.push_back(err);
    b.identities();
    return p;
}

MarkovPartition build_partition(int q, MapTag map, Digit cutoff)
{
    MarkovPartition p = build_partition_unchecked(q, map, cutoff);
    if (p.images.size() != p.cells.size() || std::any_of(p.images.begin(), p.images.end(),
                                                         [](const auto& v) { return v.empty(); }))
        throw DomainError("Markov property fails for q=" + std::to_string(q) + ": " + p.notes.back());
    for (const auto& id : p.identities)
        if (!id.holds)
            throw DomainError("image identity fails for q=" + std::to_string(q) + " at " + id.source);
    return p;
}

/* ------------------------------------------------------------ transition matrix */

std::size_t TransitionMatrix::index(const Symbol& s) const
{
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == s) return i;
    throw DomainError("symbol " + s.str() + " is not in the alphabet");
}

bool TransitionMatrix::operator()(const Symbol& a, const Symbol& b) const
{
    return adj[index(a)][index(b)] != 0;
}

namespace {

std::vector<Symbol> canonical_alphabet(const MarkovPartition& p)
{
    std::vector<Symbol> pos;
    for (const Cell& c : p.cells)
        if (c.label.digit > 0) pos.push_back(c.label);
    std::sort(pos.begin(), pos.end(), [](const Symbol& a, const Symbol& b) {
        return std::tuple(a.tail, a.digit, a.index) < std::tuple(b.tail, b.digit, b.index);
    });
    std::vector<Symbol> all = pos;
    for (const Symbol& s : pos) all.push_back(s.mirror());
    return all;
}

TransitionMatrix empty_matrix(const MarkovPartition& p)
{
    TransitionMatrix m;
    m.q = p.q;
    m.map = p.map;
    m.alphabet = canonical_alphabet(p);
    m.adj.assign(m.alphabet.size(), std::vector<char>(m.alphabet.size(), 0));
    return m;
}

}  // namespace

TransitionMatrix transition_matrix(const MarkovPartition& p)
{
    TransitionMatrix m = empty_matrix(p);
    for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
        const auto& img = p.images.at(p.find(m.alphabet[a]));
        for (std::size_t b = 0; b < m.alphabet.size(); ++b)
            if (std::find(img.begin(), img.end(), p.find(m.alphabet[b])) != img.end()) m.adj[a][b] = 1;
    }
    return m;
}

TransitionMatrix transition_matrix(int q, MapTag map, Digit cutoff)
{
    return transition_matrix(build_partition(q, map, cutoff));
}

namespace {

struct Literal {
    TransitionMatrix& m;
    Digit M;

    std::vector<Symbol> r(int eps, Digit d, int i) const
    {
        Symbol s{eps * d, i, false};
        if (std::find(m.alphabet.begin(), m.alphabet.end(), s) == m.alphabet.end()) return {};
        return {s};
    }
    /* Unrefined digits eps*m for m >= from, including the tail class. */
    std::vector<Symbol> from(int eps, Digit f) const
    {
        std::vector<Symbol> v;
        for (Digit d = f; d <= M; ++d) v.push_back(Symbol{eps * d, 0, false});
        v.push_back(Symbol{eps * (M + 1), 0, true});
        return v;
    }
    /* Every refined symbol of digit eps*d. */
    std::vector<Symbol> any(int eps, Digit d) const
    {
        std::vector<Symbol> v;
        for (const Symbol& s : m.alphabet)
            if (!s.tail && s.digit == eps * d) v.push_back(s);
        return v;
    }
    static std::vector<Symbol> join(std::vector<Symbol> a, const std::vector<Symbol>& b)
    {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    void set(const std::vector<Symbol>& rows, const std::vector<Symbol>& cols, char v = 1)
    {
        for (const Symbol& a : rows)
            for (const Symbol& b : cols) {
                auto ia = std::find(m.alphabet.begin(), m.alphabet.end(), a);
                auto ib = std::find(m.alphabet.begin(), m.alphabet.end(), b);
                if (ia == m.alphabet.end() || ib == m.alphabet.end()) continue;
                m.adj[ia - m.alphabet.begin()][ib - m.alphabet.begin()] = v;
            }
    }
};

}  // namespace

TransitionMatrix published_matrix(int q, MapTag map, Digit cutoff)
{
    MarkovPartition p = build_partition_unchecked(q, map, cutoff);
    TransitionMatrix m = empty_matrix(p);
    Literal t{m, cutoff};
    int k = kappa_of(q);
    int h = h_of(q);
    const auto& all = m.alphabet;
    for (int e : {1, -1}) {
        if (map == MapTag::f) {
            if (q == 3) {
                t.set(t.r(e, 2, 0), t.from(-e, 2));
                t.set(t.from(e, 3), all);
            } else if (q % 2 == 0) {
                for (int l = 1; l <= k - 1; ++l) t.set(t.r(e, 1, l), t.r(e, 1, l + 1));
                t.set(t.r(e, 1, k - 1), t.from(e, 2));
                for (int l = 1; l <= k; ++l) t.set(t.r(e, 1, k), t.r(-e, 1, l));
                t.set(t.r(e, 1, k), t.from(-1, 2));
                t.set(t.from(e, 2), all);
            } else {
                for (int i = 1; i <= h - 2; ++i) t.set(t.r(e, 1, 2 * i), t.r(e, 1, 2 * i + 1));
                t.set(t.r(e, 1, 2 * h - 2), t.r(e, 1, 2 * h));
                t.set(t.r(e, 1, 2 * h - 2), t.r(e, 2, k));
                for (int i = 1; i <= k - 1; ++i) t.set(t.r(e, 1, 2 * h), t.r(-e, 1, i));
                for (int i = k; i <= k + 1; ++i) t.set(t.r(e, 1, 2 * h), t.r(-e, 2, i));
                t.set(t.r(e, 1, 2 * h), t.from(-e, 3));
                for (int i = 1; i <= h - 1; ++i) t.set(t.r(e, 1, 2 * i - 1), t.r(e, 1, 2 * i + 1));
                t.set(t.r(e, 1, 2 * h - 1), t.r(e, 2, k + 1));
                t.set(t.r(e, 1, 2 * h - 1), t.from(-e, 3));
                t.set(t.r(e, 2, k), t.r(-e, 1, 1));
                for (int d : {1, -1}) {
                    for (int i = 2; i <= k - 1; ++i) t.set(t.r(e, 2, k + 1), t.r(d, 1, i));
                    for (int i = 2; i <= k - 1; ++i) t.set(t.r(e, 2, k + 1), t.r(d, 2, i));
                    t.set(t.r(e, 2, k + 1), t.from(d, 3));
                }
                t.set(t.r(e, 2, k + 1), t.r(-e, 1, 1));
                t.set(t.from(e, 3), all);
            }
            continue;
        }
        if (q == 3) {
            for (const Symbol& a : t.from(e, 2))
                for (const Symbol& b : all)
                    if (!(b == Symbol{2 * e, 0, false})) t.set({a}, {b});
        } else if (q % 2 == 0) {
            for (int i = 1; i <= k - 1; ++i) t.set(t.r(e, 1, i), t.r(e, 1, i + 1));
            for (const Symbol& b : all)
                if (!(b.digit == e && !b.tail)) t.set(t.r(e, 1, k), {b});
            for (const Symbol& b : all)
                if (!(b == Symbol{e, 1, false})) t.set(t.from(e, 2), {b});
        } else {
            for (int i = 1; i <= h - 1; ++i) t.set(t.r(e, 1, 2 * i - 1), t.r(e, 1, 2 * i + 1));
            t.set(t.r(e, 1, 2 * h - 1), t.r(e, 2, k));
            for (int i = 1; i <= h - 1; ++i) t.set(t.r(e, 1, 2 * i), t.r(e, 1, 2 * i + 2));
            t.set(t.r(e, 1, 2 * h), t.r(e, 2, k + 1));
            t.set(t.r(e, 1, 2 * h), t.join(t.from(1, 3), t.from(-1, 3)));
            t.set(t.r(e, 1, 2 * h), t.any(-1, 2));
            t.set(t.r(e, 2, k), t.r(e, 1, 2));
            for (int i = 2; i <= k - 1; ++i) t.set(t.r(e, 2, k + 1), t.r(e, 1, i));
            for (int i = k; i <= k + 1; ++i) t.set(t.r(e, 2, k + 1), t.r(e, 2, i));
            t.set(t.r(e, 2, k + 1), t.join(t.from(1, 3), t.from(-1, 3)));
            for (int i = 1; i <= k - 1; ++i) t.set(t.r(e, 2, k + 1), t.r(-e, 1, i));
            for (int i = k; i <= k + 1; ++i) t.set(t.r(e, 2, k + 1), t.r(-e, 2, i));
            for (int i = 2; i <= k - 1; ++i) t.set(t.from(e, 3), t.r(e, 1, i));
            t.set(t.from(e, 3), t.r(-e, 1, 1));
            for (int i = k; i <= k + 1; ++i) t.set(t.from(e, 3), t.r(-e, 2, i));
        }
    }
    return m;
}

bool admissible(const TransitionMatrix& m, const Word& w)
{
    if (w.empty()) return true;
    auto matches = [](const Symbol& s, Digit d) {
        if (!s.tail) return s.digit == d;
        Digit M = s.digit > 0 ? s.digit - 1 : -s.digit - 1;
        return (d > 0) == (s.digit > 0) && (d > M || d < -M);
    };
    std::size_t n = m.alphabet.size();
    std::vector<char> cur(n, 0);
    for (std::size_t a = 0; a < n; ++a) cur[a] = matches(m.alphabet[a], w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::vector<char> next(n, 0);
        bool any = false;
        for (std::size_t b = 0; b < n; ++b) {
            if (!matches(m.alphabet[b], w[k])) continue;
            for (std::size_t a = 0; a < n && !next[b]; ++a)
                if (cur[a] && m.adj[a][b]) next[b] = 1;
            any = any || next[b];
        }
        if (!any) return false;
        cur = std::move(next);
    }
    return std::any_of(cur.begin(), cur.end(), [](char c) { return c != 0; });
}

/* ------------------------------------------------------------------- coding */

namespace {

Digit tail_digit(const MarkovPartition& p, const Real& x, Side side)
{
    Real y = -x.inverse();
    Digit d = static_cast<Digit>((p.map == MapTag::f ? nearest_multiple(y) : nearest_multiple_dual(y)).get_si());
    auto [lo, hi] = digit_cell(p.q, p.map, d);
    if (!(x == lo) && !(x == hi)) return d;
    if (side == Side::none)
        throw BoundaryError("point " + x.str() + " lies on a digit boundary inside the tail class", x);
    for (Digit e : {d - 1, d, d + 1}) {
        if (e == 0 || (e > 0) != (d > 0) || (e <= p.cutoff && e >= -p.cutoff)) continue;
        auto [a, b] = digit_cell(p.q, p.map, e);
        if ((side == Side::left && x == b) || (side == Side::right && x == a)) return e;
    }
    throw BoundaryError("no cell on the requested side of " + x.str(), x);
}

}  // namespace

Encoding encode(const MarkovPartition& p, const Real& x0, std::size_t n, Side side)
{
    if (x0.q() != p.q) throw DomainError("point and partition use different q");
    Real b = p.bound();
    if (x0 < -b || x0 > b) throw DomainError("point " + x0.str() + " lies outside the partitioned interval");
    Encoding e;
    Real x = x0;
    for (std::size_t k = 0; k < n; ++k) {
        if (x.is_zero()) {
            e.terminated = true;
            break;
        }
        std::size_t lo = 0, hi = p.cells.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (p.cells[mid].hi < x) lo = mid + 1;
            else hi = mid;
        }
        std::size_t j = lo;
        const Cell* cell = &p.cells[j];
        bool on_hi = x == cell->hi;
        bool on_lo = x == cell->lo;
        if (on_hi || on_lo) {
            std::string where = on_hi && j + 1 < p.cells.size()
                                    ? "between cells " + cell->label.str() + " and " + p.cells[j + 1].label.str()
                                    : "at the end of cell " + cell->label.str();
            if (side == Side::none) throw BoundaryError("point " + x.str() + " lies " + where, x);
            if (on_hi && side == Side::right) {
                if (j + 1 >= p.cells.size()) throw BoundaryError("no cell right of " + x.str(), x);
                cell = &p.cells[j + 1];
            } else if (on_lo && side == Side::left) {
                throw BoundaryError("no cell left of " + x.str(), x);
            }
        }
        Digit d = cell->label.tail ? tail_digit(p, x, side) : cell->label.digit;
        e.symbols.push_back(cell->label);
        e.digits.push_back(d);
        x = branch(p.q, d, x);
    }
    return e;
}

Decoded decode(const MarkovPartition& p, const Encoding& e)
{
    std::size_t n = e.symbols.size();
    if (e.digits.size() != n) throw DomainError("encoding has mismatched symbols and digits");
    if (n == 0) return {-p.bound(), p.bound()};
    auto interval = [&](std::size_t k) {
        const Symbol& s = e.symbols[k];
        if (s.tail) return digit_cell(p.q, p.map, e.digits[k]);
        const Cell& c = p.cells[p.find(s)];
        return std::pair<Real, Real>{c.lo, c.hi};
    };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto& img = p.images.at(p.find(e.symbols[k]));
        if (std::find(img.begin(), img.end(), p.find(e.symbols[k + 1])) == img.end())
            throw DomainError("inadmissible symbol pair (" + e.symbols[k].str() + ", " +
                              e.symbols[k + 1].str() + ")");
    }
    auto [lo, hi] = interval(n - 1);
    for (std::size_t k = n - 1; k-- > 0;) {
        Real a = inverse_branch(p.q, e.digits[k], lo);
        Real b = inverse_branch(p.q, e.digits[k], hi);
        auto [cl, ch] = interval(k);
        lo = rmax(a, cl);
        hi = rmin(b, ch);
    }
    return {lo, hi};
}

Real decode_periodic(const MarkovPartition& p, const Word& pre, const Word& period)
{
    if (period.empty()) throw DomainError("periodic itinerary needs a nonempty period");
    Word w = pre;
    for (int rep = 0; rep < 3; ++rep) w.insert(w.end(), period.begin(), period.end());
    if (!admissible(transition_matrix(p), w)) throw DomainError("itinerary is not admissible");
    CFExpansion e;
    e.q = p.q;
    e.digits = pre;
    e.period = period;
    e.kind = p.map == MapTag::f ? CFKind::regular : CFKind::dual_regular;
    return evaluate_exact(e);
}

std::string to_dot(const TransitionMatrix& m)
{
    std::ostringstream os;
    os << "digraph sofic_" << map_name(m.map) << "_q" << m.q << " {\n";
    for (std::size_t i = 0; i < m.alphabet.size(); ++i)
        os << "  s" << i << " [label=\"" << m.alphabet[i].str() << "\"];\n";
    for (std::size_t a = 0; a < m.alphabet.size(); ++a)
        for (std::size_t b = 0; b < m.alphabet.size(); ++b)
            if (m.adj[a][b]) {
                const Symbol& s = m.alphabet[b];
                std::string label = s.tail ? s.str() : std::to_string(s.digit);
                os << "  s" << a << " -> s" << b << " [label=\"" << label << "\"];\n";
            }
    os << "}\n";
    return os.str();
}

}  // namespace hecke
