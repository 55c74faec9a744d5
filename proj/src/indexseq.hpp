#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foundation.hpp"

namespace fm {

// Element of the free monoid F_n, written left to right: (i_s, ..., i_1).
// f_I applies i_1 (the last entry) first.
using IndexSeq = std::vector<int>;

std::string format_seq(const IndexSeq& s);
IndexSeq parse_seq(const std::string& text);  // "3,2,1" or "3 2 1"

IndexSeq segment_I(int a, int b);  // (a, a+1, ..., b)
IndexSeq segment_J(int a, int b);  // (b, b-1, ..., a)
IndexSeq D_sequence(int k);        // I_k^k I_{k-1}^k ... I_1^k
IndexSeq seq_concat(const IndexSeq& left, const IndexSeq& right);

// Adjacent commuting entries (|x - y| >= 2) stand with the larger one on
// the left (left-most) or on the right (right-most).
bool is_leftmost(const IndexSeq& s);
bool is_rightmost(const IndexSeq& s);
bool is_reduced(const IndexSeq& s);

IndexSeq leftmost_reduced(const IndexSeq& s);
IndexSeq rightmost_reduced(const IndexSeq& s);

struct JBlock {
  int a;  // smallest entry
  int b;  // largest entry
};

// Maximal descending runs J_{a_l}^{b_l} ... J_{a_1}^{b_1}, left to right.
std::vector<JBlock> j_blocks(const IndexSeq& rightmost_reduced_seq);

bool is_small(const IndexSeq& s);

// Breadth-first search through commutations, contractions and at most
// `expansion_depth` square insertions for a factor (k+1, k, k+1).
// nullopt when `budget` states were visited without a decision.
std::optional<bool> is_small_oracle(const IndexSeq& s, int expansion_depth,
                                    long budget = 2000000);

// Lambda_n: right-most, reduced, small sequences over 1..n, ordered by
// length and then by (i_1, i_2, ...).
std::vector<IndexSeq> enumerate_small(int n, bool include_empty = true);

// f_I on a tuple stored position 1 first.
std::vector<Elem> evaluate_f(const FactorableMonoid& m, const IndexSeq& seq,
                             std::vector<Elem> tuple);

// I D_n = D_n = D_n I and (I_1^n)^n = D_n under evaluation, on generator
// tuples of length n+1 (all of them, or `samples` pseudo-random ones).
CheckReport check_absorption_D(const FactorableMonoid& m, int n, long samples,
                               int max_I_length = 3);

}  // namespace fm
