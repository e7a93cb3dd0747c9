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

#include "hecke/rosen.hpp"

#include <cctype>
#include <sstream>

#include "hecke/grammar.hpp"

namespace hecke {

RosenDigit RosenExpansion::digit(std::size_t i) const
{
    if (i >= 1 && i <= digits.size()) return digits[i - 1];
    if (period.empty() || i == 0) throw std::out_of_range("Rosen digit index out of range");
    return period[(i - 1 - digits.size()) % period.size()];
}

static std::string rd_str(const RosenDigit& d)
{
    return "(" + std::to_string(d.eps) + ":" + std::to_string(d.r) + ")";
}

std::string RosenExpansion::str() const
{
    std::ostringstream os;
    os << "[" << r0 << ";";
    bool first = true;
    for (const auto& d : digits) {
        os << (first ? " " : ", ") << rd_str(d);
        first = false;
    }
    if (!period.empty()) {
        os << (first ? " (" : ", (");
        for (std::size_t i = 0; i < period.size(); ++i) os << (i ? ", " : "") << rd_str(period[i]);
        os << ")*";
    }
    if (truncated) os << ", ...";
    os << "]";
    return os.str();
}

bool operator==(const RosenExpansion& a, const RosenExpansion& b)
{
    return a.q == b.q && a.r0 == b.r0 && a.digits == b.digits && a.period == b.period &&
           a.truncated == b.truncated;
}

static void normalize(RosenExpansion& r)
{
    if (r.period.empty()) return;
    std::size_t n = r.period.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = r.period[i] == r.period[i - p];
        if (ok) {
            r.period.resize(p);
            break;
        }
    }
    while (!r.digits.empty() && r.digits.back() == r.period.back()) {
        r.digits.pop_back();
        std::vector<RosenDigit> rot{r.period.back()};
        rot.insert(rot.end(), r.period.begin(), r.period.end() - 1);
        r.period = rot;
    }
}

RosenExpansion parse_rosen(const std::string& text, int q)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
        throw DomainError("Rosen literal must look like [r0; (e1:r1), (e2:r2), ...]");
    s = s.substr(1, s.size() - 2);
    auto semi = s.find(';');
    if (semi == std::string::npos) throw DomainError("missing ';' in Rosen literal");
    RosenExpansion r;
    r.q = q;
    r.formal = q == 3;
    r.r0 = std::stoll(s.substr(0, semi));
    std::size_t i = semi + 1;
    bool in_period = false;
    while (i < s.size()) {
        if (s[i] == ',') {
            ++i;
            continue;
        }
        if (s.compare(i, 3, "...") == 0) {
            r.truncated = true;
            i += 3;
            continue;
        }
        if (s.compare(i, 2, ")*") == 0 && in_period) {
            in_period = false;
            i += 2;
            continue;
        }
        if (s[i] != '(') throw DomainError("unexpected character in Rosen literal");
        if (i + 1 < s.size() && s[i + 1] == '(') {
            if (in_period || r.periodic()) throw DomainError("nested period in Rosen literal");
            in_period = true;
            ++i;
            continue;
        }
        auto close = s.find(')', i);
        auto colon = s.find(':', i);
        if (close == std::string::npos || colon == std::string::npos || colon > close)
            throw DomainError("Rosen digit must look like (e:r)");
        RosenDigit d;
        d.eps = std::stoi(s.substr(i + 1, colon - i - 1));
        d.r = std::stoll(s.substr(colon + 1, close - colon - 1));
        if ((d.eps != 1 && d.eps != -1) || d.r < 1)
            throw DomainError("Rosen digits need eps = +-1 and r >= 1");
        (in_period ? r.period : r.digits).push_back(d);
        i = close + 1;
    }
    if (in_period) throw DomainError("unterminated period in Rosen literal");
    normalize(r);
    return r;
}

static int sgn_d(Digit d)
{
    return (d > 0) - (d < 0);
}

RosenExpansion to_rosen(const CFExpansion& e)
{
    RosenExpansion r;
    r.q = e.q;
    r.formal = e.q == 3;
    r.r0 = e.a0;
    r.truncated = e.truncated;
    std::size_t pre = e.digits.size(), per = e.period.size();
    std::size_t total = per ? pre + 1 + per : pre;
    Digit prev = 0;
    for (std::size_t i = 1; i <= total; ++i) {
        Digit a = e.digit(i);
        RosenDigit d;
        d.r = a < 0 ? -a : a;
        d.eps = i == 1 ? -sgn_d(a) : -sgn_d(prev) * sgn_d(a);
        if (per && i > pre + 1)
            r.period.push_back(d);
        else
            r.digits.push_back(d);
        prev = a;
    }
    normalize(r);
    return r;
}

CFExpansion from_rosen(const RosenExpansion& r)
{
    CFExpansion e;
    e.q = r.q;
    e.a0 = r.r0;
    e.truncated = r.truncated;
    e.kind = CFKind::raw;
    int sign = 1;
    std::size_t pre = r.digits.size(), per = r.period.size();
    for (std::size_t i = 1; i <= pre + 2 * per; ++i) {
        RosenDigit d = r.digit(i);
        sign *= -d.eps;
        Digit a = sign * d.r;
        if (i <= pre)
            e.digits.push_back(a);
        else
            e.period.push_back(a);
    }
    normalize_period(e);
    if (is_regular(e)) e.kind = CFKind::regular;
    return e;
}

Real rosen_value(const RosenExpansion& r)
{
    if (r.truncated) throw TruncationError("truncated Rosen fraction has no exact value");
    int q = r.q;
    Lam lam = Lam::lambda(q);
    auto step = [&](const RosenDigit& d) {
        return Moebius{Lam(q), Lam(q, Q(d.eps)), Lam(q, Q(1)), lam * Q(static_cast<long>(d.r))};
    };
    Moebius head = Moebius::T(q, r.r0);
    for (const auto& d : r.digits) head = head * step(d);
    if (r.period.empty()) return head.apply(Real(q, Q(0)));
    Moebius p = Moebius::identity(q);
    for (const auto& d : r.period) p = p * step(d);
    return head.apply(attracting_fixed_point(p));
}

ReducedReport is_reduced(const RosenExpansion& r)
{
    ReducedReport rep;
    int q = r.q;
    int h = h_of(q);
    int hr = q % 2 == 0 ? h - 1 : h;
    bool odd = q % 2 == 1;
    std::size_t n = r.digits.size();
    if (r.periodic()) n += 2 * r.period.size() + 2 * static_cast<std::size_t>(hr) + 4;
    std::vector<RosenDigit> w;
    for (std::size_t i = 1; i <= n; ++i) w.push_back(r.digit(i));
    auto neg_one = [&](std::size_t i) { return i < w.size() && w[i].eps == -1 && w[i].r == 1; };
    auto neg_any = [&](std::size_t i) { return i < w.size() && w[i].eps == -1; };
    auto ones = [&](std::size_t i, int k) {
        for (int j = 0; j < k; ++j)
            if (!neg_one(i + j)) return false;
        return true;
    };
    auto flag = [&](int clause, std::size_t pos) {
        rep.reduced = false;
        rep.violated.push_back(clause);
        rep.at.push_back(pos + 1);
    };
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].r == 1) {
            if (ones(i + 1, hr) && neg_any(i + 1 + hr)) flag(1, i);
            if (odd && ones(i + 1, hr)) flag(2, i);
        }
        if (odd) {
            bool head = q == 3 ? w[i].r == 2 : (w[i].r == 1 && ones(i + 1, hr - 1));
            std::size_t j = q == 3 ? i : i + hr;
            if (head && (q == 3 || (j < w.size() && w[j].eps == -1 && w[j].r == 2)) &&
                ones(j + 1, hr) && neg_any(j + 1 + hr))
                flag(3, i);
        }
    }
    if (odd && !r.periodic() && !r.truncated && w.size() >= static_cast<std::size_t>(hr) + 1) {
        std::size_t i = w.size() - hr - 1;
        if (w[i].r == 1 && ones(i + 1, hr)) flag(4, i);
    }
    if (!r.periodic() && !r.truncated && !w.empty()) {
        // Finite expansions ending in a tail worth +-lambda/2 have a second reduced form.
        CFExpansion e = from_rosen(r);
        Word d = e.digits;
        Word tail(h, 1);
        if (odd) {
            tail.push_back(2);
            tail.insert(tail.end(), h, 1);
        }
        if (q != 3 && d.size() >= tail.size()) {
            for (int s : {1, -1}) {
                bool match = true;
                for (std::size_t k = 0; k < tail.size() && match; ++k)
                    match = d[d.size() - tail.size() + k] == s * tail[k];
                if (match) rep.ambiguous = true;
            }
        }
    }
    return rep;
}

}  // namespace hecke
