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

#include "hecke/grammar.hpp"

#include <algorithm>

namespace hecke {

std::string block_name(BlockType t)
{
    switch (t) {
    case BlockType::q3_one: return "q3_one";
    case BlockType::q3_twos: return "q3_twos";
    case BlockType::even_run: return "even_run";
    case BlockType::even_tail: return "even_tail";
    case BlockType::odd_run: return "odd_run";
    default: return "odd_tail";
    }
}

static int sgn_d(Digit d)
{
    return (d > 0) - (d < 0);
}

std::size_t max_block_length(int q)
{
    int h = h_of(q);
    if (q == 3) return 2;
    if (q % 2 == 0) return h + 1;
    return 2 * h + 2;
}

std::optional<BlockMatch> first_forbidden(int q, const Word& w, std::size_t from)
{
    int h = h_of(q);
    std::size_t n = w.size();
    auto run_of = [&](std::size_t i, int eps, Digit mag) {
        std::size_t r = 0;
        while (i + r < n && w[i + r] == eps * mag) ++r;
        return r;
    };
    for (std::size_t i = from; i < n; ++i) {
        int eps = sgn_d(w[i]);
        if (eps == 0) continue;
        if (q == 3) {
            if (w[i] == eps) return BlockMatch{i, 1, eps, BlockType::q3_one};
            if (w[i] == 2 * eps && i + 1 < n && sgn_d(w[i + 1]) == eps)
                return BlockMatch{i, 2, eps, BlockType::q3_twos};
            continue;
        }
        std::size_t r = run_of(i, eps, 1);
        if (r >= static_cast<std::size_t>(h) + 1) {
            return BlockMatch{i, static_cast<std::size_t>(h) + 1, eps,
                              q % 2 == 0 ? BlockType::even_run : BlockType::odd_run};
        }
        if (r != static_cast<std::size_t>(h)) continue;
        std::size_t j = i + h;
        if (j >= n || sgn_d(w[j]) != eps) continue;
        if (q % 2 == 0) return BlockMatch{i, static_cast<std::size_t>(h) + 1, eps, BlockType::even_tail};
        if (w[j] != 2 * eps) continue;
        if (run_of(j + 1, eps, 1) < static_cast<std::size_t>(h)) continue;
        std::size_t k = j + 1 + h;
        if (k < n && sgn_d(w[k]) == eps)
            return BlockMatch{i, static_cast<std::size_t>(2 * h + 2), eps, BlockType::odd_tail};
    }
    return std::nullopt;
}

bool is_regular_word(int q, const Word& w)
{
    return !first_forbidden(q, w).has_value();
}

static Word scan_window(const CFExpansion& e)
{
    if (!e.periodic()) return e.digits;
    std::size_t len = e.digits.size() + 2 * e.period.size() + max_block_length(e.q);
    return e.prefix(len);
}

bool is_regular(const CFExpansion& e)
{
    return is_regular_word(e.q, scan_window(e));
}

bool is_dual_regular(const CFExpansion& e)
{
    Word w = scan_window(e);
    std::reverse(w.begin(), w.end());
    return is_regular_word(e.q, w);
}

/* ------------------------------------------------------------------- order */

std::strong_ordering lex_compare(const CFExpansion& x, const CFExpansion& y)
{
    if (x.q != y.q) throw DomainError("expansions for different q");
    for (const auto* e : {&x, &y})
        if (e->kind == CFKind::dual_regular && e->a0 != 0)
            throw DomainError("lexicographic order needs dual regular expansions with a0 = 0");
    if (x.a0 != y.a0) return x.a0 <=> y.a0;
    auto length = [](const CFExpansion& e) -> std::size_t {
        return e.periodic() ? static_cast<std::size_t>(-1) : e.digits.size();
    };
    std::size_t lx = length(x), ly = length(y);
    std::size_t bound = std::max(x.digits.size(), y.digits.size()) + 1;
    bound += std::max<std::size_t>(1, x.period.size()) * std::max<std::size_t>(1, y.period.size());
    for (std::size_t n = 1;; ++n) {
        bool xe = n > lx, ye = n > ly;
        if (xe || ye) {
            if ((xe && x.truncated) || (ye && y.truncated))
                throw TruncationError("order undecided within the truncated digits");
            if (xe && ye) return std::strong_ordering::equal;
            if (xe) return y.digit(n) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
            return x.digit(n) > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (n > bound) return std::strong_ordering::equal;
        Digit a = x.digit(n), b = y.digit(n);
        if (a == b) continue;
        if ((a > 0) != (b > 0))
            return a > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
    }
}

/* --------------------------------------------------------------- rewriting */

namespace {

/* Removes zero digits: [x, 0, y] -> [x + y] and a trailing [x, 0] vanishes. */
void merge_zeros(Word& w)
{
    std::size_t j = 1;
    while (j < w.size()) {
        if (w[j] != 0) {
            ++j;
            continue;
        }
        if (j + 1 < w.size()) {
            w[j - 1] += w[j + 1];
            w.erase(w.begin() + j, w.begin() + j + 2);
            j = j > 1 ? j - 1 : 1;
        } else {
            if (j == 1) throw DomainError("expansion evaluates to the cusp at infinity");
            w.erase(w.begin() + j - 1, w.end());
            j = j > 2 ? j - 2 : 1;
        }
    }
}

/* Rewrites the block m in w (w[0] = a0). Returns the index of the last touched digit. */
std::size_t apply_rule(int q, Word& w, const BlockMatch& m)
{
    int h = h_of(q);
    Digit e = m.sign;
    std::size_t p = m.pos;
    w[p - 1] -= e;
    std::size_t last = 0;
    switch (m.type) {
    case BlockType::q3_one:
        w.erase(w.begin() + p);
        last = p;
        if (p < w.size()) w[p] -= e;
        break;
    case BlockType::q3_twos: {
        std::size_t k = 0;
        while (p + k < w.size() && w[p + k] == 2 * e) ++k;
        w.erase(w.begin() + p + 1, w.begin() + p + k);
        w[p] = -e * static_cast<Digit>(k + 1);
        last = p + 1;
        if (p + 1 < w.size()) w[p + 1] -= e;
        break;
    }
    case BlockType::even_run:
    case BlockType::odd_run: {
        std::size_t keep = m.type == BlockType::even_run ? h - 1 : h;
        w.erase(w.begin() + p, w.begin() + p + (h + 1 - keep));
        for (std::size_t i = 0; i < keep; ++i) w[p + i] = -e;
        last = p + keep;
        if (last < w.size()) w[last] -= e;
        break;
    }
    case BlockType::even_tail:
        for (int i = 0; i < h; ++i) w[p + i] = -e;
        w[p + h] -= e;
        last = p + h;
        break;
    case BlockType::odd_tail:
        for (int i = 0; i < h; ++i) w[p + i] = -e;
        w[p + h] = -2 * e;
        for (int i = 0; i < h; ++i) w[p + h + 1 + i] = -e;
        w[p + 2 * h + 1] -= e;
        last = p + 2 * h + 1;
        break;
    }
    return last;
}

struct CoreResult {
    std::size_t steps = 0;
    bool cascade = false;
    std::optional<BlockMatch> pending;  // leftmost block left untouched
};

/* Rewrites leftmost blocks whose rule window ends before limit. */
CoreResult rewrite_core(int q, Word& w, std::size_t limit, std::vector<RewriteStep>* trace,
                        std::size_t max_steps, std::size_t cascade_after)
{
    CoreResult res;
    std::size_t run = 0;
    std::optional<std::size_t> prev_last;
    while (true) {
        auto m = first_forbidden(q, w, 1);
        if (!m) return res;
        if (m->pos + m->len + 1 >= limit) {
            res.pending = m;
            return res;
        }
        bool cascading = prev_last && m->pos <= *prev_last;
        run = cascading ? run + 1 : 0;
        if (trace && cascading && !trace->empty()) trace->back().cascade = true;
        if (cascade_after && run >= cascade_after) {
            res.cascade = true;
            res.pending = m;
            return res;
        }
        if (res.steps >= max_steps)
            throw DomainError("rewriting exceeded " + std::to_string(max_steps) + " steps");
        std::size_t last = apply_rule(q, w, *m);
        std::size_t before = w.size();
        merge_zeros(w);
        if (w.size() < before && last >= w.size()) last = w.empty() ? 0 : w.size() - 1;
        ++res.steps;
        prev_last = last;
        if (trace) {
            RewriteStep st;
            st.rule = block_name(m->type);
            st.position = m->pos - 1;
            std::size_t hi = std::min(w.size(), last + 1);
            if (st.position < hi) st.window.assign(w.begin() + st.position, w.begin() + hi);
            trace->push_back(std::move(st));
        }
    }
}

}  // namespace

std::size_t cascade_threshold(int q)
{
    return std::max<std::size_t>(64, 8 * static_cast<std::size_t>(q));
}

Word rewrite_word(int q, Word w, std::vector<RewriteStep>* trace, std::size_t max_steps)
{
    if (w.empty()) throw DomainError("empty word");
    merge_zeros(w);
    rewrite_core(q, w, static_cast<std::size_t>(-1) / 2, trace, max_steps, 0);
    return w;
}

bool rewrite_once(int q, Word& w)
{
    if (w.empty()) throw DomainError("empty word");
    merge_zeros(w);
    auto m = first_forbidden(q, w, 1);
    if (!m) return false;
    apply_rule(q, w, *m);
    merge_zeros(w);
    return true;
}

int r_tail_sign(const CFExpansion& in)
{
    if (!in.periodic()) return 0;
    CFExpansion e = in;
    normalize_period(e);
    Word r = r_period(e.q);
    if (e.period.size() != r.size()) return 0;
    for (int s : {1, -1}) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            bool ok = true;
            for (std::size_t i = 0; i < r.size() && ok; ++i)
                ok = e.period[i] == s * r[(i + k) % r.size()];
            if (ok) return s;
        }
    }
    return 0;
}

RewriteTrace rewrite_to_regular(const CFExpansion& e, std::size_t max_steps)
{
    RewriteTrace tr;
    tr.input = e;
    int q = e.q;
    if (e.truncated) throw TruncationError("cannot rewrite a truncated expansion");
    if (!e.periodic()) {
        Word w{e.a0};
        w.insert(w.end(), e.digits.begin(), e.digits.end());
        w = rewrite_word(q, w, &tr.steps, max_steps);
        tr.result.q = q;
        tr.result.a0 = w[0];
        tr.result.digits.assign(w.begin() + 1, w.end());
        tr.result.kind = CFKind::regular;
        return tr;
    }
    std::size_t thr = cascade_threshold(q);
    std::size_t hspan = 2 * static_cast<std::size_t>(h_of(q)) + 4;
    std::size_t margin = 2 * e.period.size() + 2 * max_block_length(q) + 8;
    std::size_t len = e.digits.size() + thr * hspan + 2 * margin;
    len += e.period.size() - (len - e.digits.size()) % e.period.size();
    Word w{e.a0};
    Word body = e.prefix(len);
    w.insert(w.end(), body.begin(), body.end());
    merge_zeros(w);
    CoreResult core = rewrite_core(q, w, w.size() - margin, &tr.steps, max_steps, thr);

    Real value = evaluate_exact(e);
    CFExpansion closed = expand(value, CFKind::regular);
    if (closed.truncated)
        throw DomainError("periodic input without an eventually periodic regular expansion");
    tr.result = closed;
    // The rewritten prefix must agree with the regular expansion up to the pending block.
    std::size_t stable = core.pending ? core.pending->pos : w.size();
    stable = stable > 2 ? stable - 2 : 0;
    std::size_t avail = closed.periodic() ? stable : std::min(stable, closed.digits.size() + 1);
    bool agree = closed.a0 == w[0] || stable == 0;
    for (std::size_t i = 1; agree && i < avail && i < w.size(); ++i) agree = closed.digit(i) == w[i];
    if (!agree)
        throw DomainError("rewriting diverged from the regular expansion of " + e.str() +
                          " (got " + closed.str() + ")");
    if (core.cascade) {
        tr.cascade = true;
        tr.cascade_sign = r_tail_sign(closed);
    }
    return tr;
}

/* ------------------------------------------------------------- equivalence */

bool tails_equivalent(const CFExpansion& xin, const CFExpansion& yin)
{
    if (xin.truncated || yin.truncated)
        throw TruncationError("tails of truncated expansions are unknown");
    CFExpansion x = xin, y = yin;
    normalize_period(x);
    normalize_period(y);
    if (!x.periodic() && !y.periodic()) return true;
    if (x.periodic() != y.periodic()) return false;
    if (x.period.size() != y.period.size()) return false;
    std::size_t n = x.period.size();
    for (std::size_t k = 0; k < n; ++k) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = x.period[i] == y.period[(i + k) % n];
        if (ok) return true;
    }
    return false;
}

std::string equivalence_name(Equivalence e)
{
    switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::equivalent_via_r_exception: return "equivalent_via_r_exception";
    default: return "not_equivalent";
    }
}

Equivalence group_equivalent(const CFExpansion& x, const CFExpansion& y)
{
    if (x.q != y.q) throw DomainError("expansions for different q");
    CFExpansion rx = is_regular(x) ? x : rewrite_to_regular(x).result;
    CFExpansion ry = is_regular(y) ? y : rewrite_to_regular(y).result;
    if (tails_equivalent(rx, ry)) return Equivalence::equivalent;
    if (r_tail_sign(rx) * r_tail_sign(ry) == -1) return Equivalence::equivalent_via_r_exception;
    return Equivalence::not_equivalent;
}

}  // namespace hecke
