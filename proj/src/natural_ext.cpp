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


#include "hecke/natural_ext.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "hecke/symbolic.hpp"

namespace hecke {

std::vector<Rect> omega_domain(int q)
{
    static std::mutex mu;
    static std::map<int, std::vector<Rect>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    auto phi = orbit_points(q, MapTag::f);
    auto psi = orbit_points(q, MapTag::f_star);
    const Real& R = constants(q).R;
    int k = kappa_of(q);
    std::vector<Rect> rects;
    for (int i = 1; i <= k; ++i) {
        rects.push_back(Rect{phi[i - 1], phi[i], psi[k - i + 1], R});
        rects.push_back(Rect{-phi[i], -phi[i - 1], -R, -psi[k - i + 1]});
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(q, rects);
    return rects;
}

bool omega_contains(int q, const Real& x, const Real& y)
{
    for (const Rect& r : omega_domain(q))
        if (r.x_lo <= x && x <= r.x_hi && r.y_lo <= y && y <= r.y_hi) return true;
    return false;
}

namespace {

Real times(int q, Digit m)
{
    return Real::lambda(q) * Real(q, Q(static_cast<long>(m)));
}

void require_omega(const PointPair& p)
{
    if (p.x.q() != p.y.q()) throw DomainError("pair mixes different q");
    if (!omega_contains(p.x.q(), p.x, p.y)) throw DomainError("pair (" + p.x.str() + ", " + p.y.str() + ") is outside Omega_q");
}

}  // namespace

PointPair F_apply(const PointPair& p)
{
    require_omega(p);
    Step s = f_step(p.x);
    if (s.terminal) throw DomainError("cusp: the future point has a terminating expansion");
    return {s.next, -(p.y + times(p.x.q(), s.digit)).inverse()};
}

PointPair F_inverse(const PointPair& p)
{
    require_omega(p);
    Step s = fstar_step(p.y);
    if (s.terminal) throw DomainError("cusp: the past point has a terminating dual expansion");
    return {-(p.x + times(p.x.q(), s.digit)).inverse(), s.next};
}

Moebius GenWord::matrix(int q) const
{
    Moebius g = Moebius::identity(q);
    for (auto [c, n] : letters) g = g * (c == 'S' ? Moebius::S(q) : Moebius::T(q, n));
    return g;
}

std::string GenWord::str() const
{
    if (letters.empty()) return "1";
    std::string s;
    for (auto [c, n] : letters) {
        if (c == 'T' && n == 0) continue;
        if (!s.empty()) s += " ";
        s += c == 'S' ? std::string("S") : "T^" + std::to_string(n);
    }
    return s.empty() ? "1" : s;
}

namespace {

struct Attempt {
    GenWord word;
    std::string branch;
    Digit m = 0;
};

bool post(int q, const Moebius& g, const Real& wm, const Real& wp)
{
    Real p = g.apply(wp);
    if (p.is_zero()) return false;
    return omega_contains(q, -p.inverse(), -g.apply(wm));
}

/* Integer k with w - k lambda in [lo, hi], an interval of length lambda. */
Digit translate_into(const Real& w, const Real& lo, const Real& hi)
{
    int q = w.q();
    double est = std::floor((w.to_double() - lo.to_double()) / Real::lambda(q).to_double());
    for (Digit k = static_cast<Digit>(est) - 1; k <= static_cast<Digit>(est) + 2; ++k) {
        Real t = w - times(q, k);
        if (lo <= t && t <= hi) return k;
    }
    throw std::logic_error("translation search failed");
}

/* Proof cases for omega_plus > 0 and omega_minus in [-R, -r]. */
std::optional<Attempt> positive_case(const Real& wm, const Real& wp, std::string& tried)
{
    int q = wp.q();
    Digit a0 = nearest_multiple(wp).get_si();
    Digit big = q == 3 ? 3 : 2;
    tried = a0 >= big ? "a0>=" + std::to_string(big) : "a0=" + std::to_string(a0);
    Attempt id{{}, "", 0};
    auto try_m = [&](Digit m, const std::string& br) -> std::optional<Attempt> {
        Moebius g = Moebius::ST(q, m);
        if (!post(q, g, wm, wp)) return std::nullopt;
        return Attempt{GenWord{{{'S', 0}, {'T', m}}}, br, m};
    };
    if (a0 >= big) {
        if (!post(q, Moebius::identity(q), wm, wp)) return std::nullopt;
        id.branch = "a0>=" + std::to_string(big);
        return id;
    }
    if (a0 == 0) {
        for (Digit m = big; m < big + 32; ++m)
            if (auto a = try_m(-m, "a0=0")) return a;
        return std::nullopt;
    }
    std::string br = "a0=" + std::to_string(a0);
    if (post(q, Moebius::identity(q), wm, wp)) {
        id.branch = br;
        return id;
    }
    Digit b1 = fstar_step(wm).digit;
    if (b1 == 0) return std::nullopt;
    int s = b1 > 0 ? -1 : 1;
    Digit least = q == 3 ? 5 : (s > 0 ? 2 : 3);
    for (Digit k = least; k < least + 32; ++k)
        if (auto a = try_m(s * k, br)) return a;
    return std::nullopt;
}

GenWord mirrored(GenWord w)
{
    for (auto& l : w.letters)
        if (l.first == 'T') l.second = -l.second;
    return w;
}

}  // namespace

Reduction reduce_geodesic(const Real& omega_minus, const Real& omega_plus)
{
    int q = omega_plus.q();
    if (omega_minus.q() != q) throw DomainError("endpoints use different q");
    if (omega_minus == omega_plus) throw DomainError("geodesic endpoints coincide");
    if (expand(omega_plus, CFKind::regular, reduction_depth).finite())
        throw DomainError("cusp: omega_plus has a finite regular expansion");
    if (expand(omega_minus, CFKind::dual_regular, reduction_depth).finite())
        throw DomainError("cusp: omega_minus has a finite dual regular expansion");
    const auto& c = constants(q);

    auto finish = [&](const GenWord& w, std::string branch, Digit m, int steps) {
        Reduction r;
        r.word = w;
        r.g = w.matrix(q);
        r.omega_minus = r.g.apply(omega_minus);
        r.omega_plus = r.g.apply(omega_plus);
        r.branch = std::move(branch);
        r.m = m;
        r.shift_steps = steps;
        if (!post(q, r.g, omega_minus, omega_plus)) throw std::logic_error("reduction post-condition failed");
        return r;
    };

    std::string attempted = "none";
    for (int sign : {1, -1}) {
        Real wm = sign > 0 ? omega_minus : -omega_minus;
        Real wp = sign > 0 ? omega_plus : -omega_plus;
        Digit k = translate_into(wm, -c.R, -c.r);
        Real tp = wp - times(q, k);
        if (tp.sign() <= 0) continue;
        auto a = positive_case(wm - times(q, k), tp, attempted);
        if (!a) break;
        GenWord w = a->word;
        if (k != 0) w.letters.push_back({'T', -k});
        if (sign < 0) w = mirrored(w);
        Reduction r = finish(w, a->branch, sign * a->m, 0);
        r.attempted = attempted;
        return r;
    }

    // Shift iteration: each step S T^(-a) moves the future point one digit forward.
    Digit a = nearest_multiple(omega_plus).get_si();
    GenWord w{{{'S', 0}, {'T', -a}}};
    Moebius g = w.matrix(q);
    for (std::size_t step = 0; step < reduction_depth; ++step) {
        if (post(q, g, omega_minus, omega_plus)) {
            Reduction r = finish(w, "shift", 0, static_cast<int>(step));
            r.attempted = attempted;
            return r;
        }
        Real x = -g.apply(omega_plus).inverse();
        Step s = f_step(x);
        if (s.terminal) throw DomainError("cusp reached during reduction");
        GenWord next{{{'S', 0}, {'T', -s.digit}}};
        next.letters.insert(next.letters.end(), w.letters.begin(), w.letters.end());
        w = std::move(next);
        g = w.matrix(q);
    }
    // Tails equivalent to +-r_q can approach the boundary of Omega_q from outside; a short
    // word that switches to the other tail class resolves them.
    struct Node {
        GenWord w;
        Moebius g;
        char last;
    };
    std::vector<Node> frontier{{GenWord{}, Moebius::identity(q), 0}};
    for (std::size_t len = 1; len <= search_depth; ++len) {
        std::vector<Node> next;
        for (const Node& n : frontier) {
            for (char c : {'S', '+', '-'}) {
                if ((c == 'S' && n.last == 'S') || (c == '+' && n.last == '-') || (c == '-' && n.last == '+'))
                    continue;
                Node m{n.w, n.g, c};
                Moebius l = c == 'S' ? Moebius::S(q) : Moebius::T(q, c == '+' ? 1 : -1);
                m.w.letters.insert(m.w.letters.begin(), {c == 'S' ? 'S' : 'T', c == 'S' ? 0 : c == '+' ? 1 : -1});
                m.g = l * n.g;
                if (post(q, m.g, omega_minus, omega_plus)) {
                    Reduction r = finish(m.w, "search", 0, static_cast<int>(len));
                    r.attempted = attempted;
                    return r;
                }
                next.push_back(std::move(m));
            }
        }
        frontier = std::move(next);
    }
    throw TruncationError("geodesic reduction did not reach Omega_q within the depth limit");
}

}  // namespace hecke
