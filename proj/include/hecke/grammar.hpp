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

#ifndef HECKE_GRAMMAR_HPP
#define HECKE_GRAMMAR_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "hecke/cf.hpp"

namespace hecke {

enum class BlockType {
    q3_one,    // [e1]
    q3_twos,   // [e2, em]
    even_run,  // [(e1)^(h+1)]
    even_tail, // [(e1)^h, em]
    odd_run,   // [(e1)^(h+1)]
    odd_tail,  // [(e1)^h, e2, (e1)^h, em]
};

std::string block_name(BlockType t);

struct BlockMatch {
    std::size_t pos = 0;  // index into the scanned word
    std::size_t len = 0;
    int sign = 1;
    BlockType type = BlockType::q3_one;
};

/* Leftmost forbidden block of w starting at index >= from. */
std::optional<BlockMatch> first_forbidden(int q, const Word& w, std::size_t from = 0);
/* Longest forbidden block pattern for q. */
std::size_t max_block_length(int q);

bool is_regular_word(int q, const Word& w);
bool is_regular(const CFExpansion& e);
bool is_dual_regular(const CFExpansion& e);

/* Lexicographic order on regular expansions, or dual regular ones with a0 = 0. */
std::strong_ordering lex_compare(const CFExpansion& x, const CFExpansion& y);

struct RewriteStep {
    std::string rule;
    std::size_t position = 0;  // index of the first rewritten digit, a0 = 0
    Word window;               // digits from position after the step
    bool cascade = false;      // the step created the next forbidden block
};

struct RewriteTrace {
    CFExpansion input;
    std::vector<RewriteStep> steps;
    CFExpansion result;
    bool cascade = false;
    /* Sign s with result tail equivalent to s*r_q, 0 if the cascade ends elsewhere. */
    int cascade_sign = 0;
};

std::size_t cascade_threshold(int q);

RewriteTrace rewrite_to_regular(const CFExpansion& e, std::size_t max_steps = 200000);

/* Applies the elementary rewriting rules to a finite word [a0; digits] until it is regular. */
Word rewrite_word(int q, Word w, std::vector<RewriteStep>* trace = nullptr,
                  std::size_t max_steps = 200000);

/* Rewrites the leftmost forbidden block of [a0; digits]; false if w is regular. */
bool rewrite_once(int q, Word& w);

/* +1 if the expansion has the periodic tail of r_q, -1 for -r_q, 0 otherwise. */
int r_tail_sign(const CFExpansion& e);

bool tails_equivalent(const CFExpansion& x, const CFExpansion& y);

enum class Equivalence { equivalent, equivalent_via_r_exception, not_equivalent };

std::string equivalence_name(Equivalence e);
Equivalence group_equivalent(const CFExpansion& x, const CFExpansion& y);

}  // namespace hecke

#endif
