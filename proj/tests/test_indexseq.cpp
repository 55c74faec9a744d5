#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "doctest.h"
#include "factorability.hpp"
#include "fixtures.hpp"
#include "indexseq.hpp"

using namespace fm;

namespace {

// All sequences over 1..n of length at most len.
std::vector<IndexSeq> all_sequences(int n, int len) {
  std::vector<IndexSeq> out{{}};
  std::vector<IndexSeq> layer{{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<IndexSeq> next;
    for (const auto& s : layer)
      for (int i = 1; i <= n; ++i) {
        auto t = s;
        t.push_back(i);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// P-equivalence class under commutations and square contraction only,
// explored without expansion; the reduced members are what we compare.
std::set<IndexSeq> commutation_class(const IndexSeq& s) {
  std::set<IndexSeq> seen{s};
  std::deque<IndexSeq> todo{s};
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop_front();
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      IndexSeq t = cur;
      if (std::abs(t[i] - t[i + 1]) >= 2) std::swap(t[i], t[i + 1]);
      else if (t[i] == t[i + 1]) t.erase(t.begin() + i);
      else continue;
      if (seen.insert(t).second) todo.push_back(t);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("left-most and right-most examples") {
  CHECK(is_leftmost({4, 2, 1, 2, 3}));
  CHECK_FALSE(is_leftmost({2, 4, 1, 2, 3}));
  CHECK(is_leftmost({}));
  CHECK(is_rightmost({}));
  CHECK(leftmost_reduced({2, 4, 1, 2, 3}) == IndexSeq{4, 2, 1, 2, 3});
  CHECK(leftmost_reduced({1, 1}) == IndexSeq{1});
  CHECK(leftmost_reduced({4, 2, 1, 2, 3}) == IndexSeq{4, 2, 1, 2, 3});
  CHECK(rightmost_reduced({3, 1, 2}) == IndexSeq{1, 3, 2});
  CHECK(rightmost_reduced({2, 2}) == IndexSeq{2});
  CHECK(rightmost_reduced({1, 2, 1}) == IndexSeq{1, 2, 1});
}

TEST_CASE("reduced representatives: idempotent, canonical, letter set preserved") {
  for (const auto& s : all_sequences(4, 5)) {
    auto l = leftmost_reduced(s);
    auto r = rightmost_reduced(s);
    CHECK(is_leftmost(l));
    CHECK(is_reduced(l));
    CHECK(is_rightmost(r));
    CHECK(is_reduced(r));
    CHECK(leftmost_reduced(l) == l);
    CHECK(rightmost_reduced(r) == r);
    CHECK(std::set<int>(s.begin(), s.end()) == std::set<int>(l.begin(), l.end()));
    CHECK(std::set<int>(s.begin(), s.end()) == std::set<int>(r.begin(), r.end()));
    // the representatives lie in the class reachable by commutations and contractions
    auto cls = commutation_class(s);
    CHECK(cls.count(l));
    CHECK(cls.count(r));
    // uniqueness: every member of the class has the same representatives
    for (const auto& t : cls) {
      CHECK(leftmost_reduced(t) == l);
      CHECK(rightmost_reduced(t) == r);
    }
  }
}

TEST_CASE("J blocks") {
  auto b = j_blocks({3, 2, 1});
  REQUIRE(b.size() == 1);
  CHECK(b[0].a == 1);
  CHECK(b[0].b == 3);
  b = j_blocks({2, 3, 2, 1});
  REQUIRE(b.size() == 2);
  CHECK((b[0].a == 2 && b[0].b == 2));
  CHECK((b[1].a == 1 && b[1].b == 3));
  b = j_blocks({1, 2, 1});
  REQUIRE(b.size() == 2);
  CHECK((b[0].a == 1 && b[0].b == 1));
  CHECK((b[1].a == 1 && b[1].b == 2));
  CHECK_THROWS_AS(j_blocks({3, 1}), Error);
}

TEST_CASE("segments and D") {
  CHECK(segment_I(1, 3) == IndexSeq{1, 2, 3});
  CHECK(segment_J(1, 3) == IndexSeq{3, 2, 1});
  CHECK(D_sequence(1) == IndexSeq{1});
  CHECK(D_sequence(2) == IndexSeq{2, 1, 2});
  CHECK(D_sequence(3) == IndexSeq{3, 2, 3, 1, 2, 3});
  CHECK_THROWS_AS(segment_I(3, 1), Error);
  CHECK(parse_seq("3,2,1") == IndexSeq{3, 2, 1});
  CHECK(parse_seq("3 2 1") == IndexSeq{3, 2, 1});
  CHECK(format_seq({3, 2, 1}) == "(3,2,1)");
  CHECK(format_seq({}) == "()");
}

TEST_CASE("smallness examples") {
  CHECK(is_small({3, 2, 1}));
  CHECK_FALSE(is_small({2, 1, 2}));
  CHECK_FALSE(is_small({2, 1, 2, 3, 2, 1}));
  CHECK(is_small_oracle({3, 2, 1}, 1) == true);
  CHECK(is_small_oracle({2, 1, 2}, 0) == false);
  CHECK(is_small_oracle({1, 2, 1, 3, 2, 1}, 1) == true);
}

TEST_CASE("criterion agrees with the oracle on F_3 up to length 6") {
  int disagreements = 0;
  for (const auto& s : all_sequences(3, 6)) {
    auto o = is_small_oracle(s, 1);
    REQUIRE(o.has_value());
    if (*o != is_small(s)) {
      ++disagreements;
      MESSAGE("disagreement at " << format_seq(s));
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("Lambda_n enumeration") {
  CHECK(enumerate_small(0).size() == 1);
  CHECK(enumerate_small(0, false).empty());
  auto l1 = enumerate_small(1);
  CHECK(l1 == std::vector<IndexSeq>{{}, {1}});
  auto l2 = enumerate_small(2);
  CHECK(std::set<IndexSeq>(l2.begin(), l2.end()) ==
        std::set<IndexSeq>{{}, {1}, {2}, {2, 1}, {1, 2}, {1, 2, 1}});
  CHECK(l2.size() == 6);
  auto l3 = enumerate_small(3);
  std::set<IndexSeq> s3(l3.begin(), l3.end());
  CHECK(s3.size() == l3.size());
  for (IndexSeq x : {IndexSeq{3, 2, 1}, {1, 3, 2, 1}, {2, 1, 3, 2, 1}, {1, 2, 1, 3, 2, 1},
                     {2, 3, 2, 1}, {1, 2, 3, 2, 1}})
    CHECK(s3.count(x));
}

TEST_CASE("Lambda_n is exactly the right-most reduced small words (brute force)") {
  for (int n = 1; n <= 3; ++n) {
    auto l = enumerate_small(n);
    std::set<IndexSeq> got(l.begin(), l.end());
    std::set<IndexSeq> want;
    size_t maxlen = 0;
    for (const auto& s : l) maxlen = std::max(maxlen, s.size());
    for (const auto& s : all_sequences(n, static_cast<int>(maxlen) + 1))
      if (is_rightmost(s) && is_reduced(s) && is_small(s)) want.insert(s);
    CHECK(got == want);
  }
}

TEST_CASE("structure of small sequences") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& s : enumerate_small(n, false)) {
      CAPTURE(format_seq(s));
      int mx = *std::max_element(s.begin(), s.end());
      CHECK(std::count(s.begin(), s.end(), mx) == 1);
      // every connected factor is small
      for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j <= s.size(); ++j)
          CHECK(is_small(IndexSeq(s.begin() + i, s.begin() + j)));
      CHECK(static_cast<long>(s.size()) <= (1L << n) - 1);
    }
}

TEST_CASE("prepending below the leftmost block maximum keeps smallness") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : enumerate_small(n, false)) {
      int bl = j_blocks(s).front().b;
      for (int j = 1; j < bl; ++j) {
        IndexSeq t = seq_concat({j}, s);
        if (is_rightmost(t) && is_reduced(t)) CHECK(is_small(t));
      }
    }
}

TEST_CASE("evaluate_f") {
  auto app = load_fixture("appendix");
  const auto& m = *app.monoid;
  auto gen = [&](const char* s) { return m.generator(m.parse_generator(s)); };
  std::vector<Elem> start{gen("d1"), gen("c1"), gen("b1"), gen("a1")};
  CHECK(evaluate_f(m, {}, start) == start);
  CHECK(evaluate_f(m, {2, 1, 2, 3, 2, 1, 2, 3}, start) == start);
  CHECK(evaluate_f(m, {3}, start) != start);
  CHECK_THROWS_AS(evaluate_f(m, {4}, start), Error);
}

TEST_CASE("D_{n-1} turns a geodesic generator word into the normal form") {
  auto braid = load_fixture("braid3");
  const auto& m = *braid.monoid;
  auto nf_letters = [&](Elem x, size_t pad) {
    std::vector<Elem> out;
    while (x != m.unit()) {
      auto [pre, last] = m.eta(x);
      out.push_back(last);
      x = pre;
    }
    while (out.size() < pad) out.push_back(m.unit());
    return out;
  };
  std::mt19937 rng(11);
  int geodesic = 0;
  for (int k = 0; k < 3000 && geodesic < 400; ++k) {
    size_t len = 2 + rng() % 4;
    std::vector<Elem> word;  // position 1 first
    for (size_t i = 0; i < len; ++i) word.push_back(m.generator(rng() % m.generator_count()));
    Elem prod = m.unit();
    for (auto it = word.rbegin(); it != word.rend(); ++it) prod = m.multiply(prod, *it);
    if (m.norm(prod) != static_cast<int>(len)) continue;
    ++geodesic;
    CHECK(evaluate_f(m, D_sequence(static_cast<int>(len) - 1), word) == nf_letters(prod, len));
  }
  CHECK(geodesic >= 100);
  // Artin letters a, b, a, b: the product abab = a.aba has norm 2
  Elem a = m.generator(m.parse_generator("a")), b = m.generator(m.parse_generator("b"));
  std::vector<Elem> abab{b, a, b, a};
  Elem prod = m.multiply(m.multiply(a, b), m.multiply(a, b));
  CHECK(evaluate_f(m, D_sequence(3), abab) == nf_letters(prod, 4));
}

TEST_CASE("absorption of D_n") {
  auto braid = load_fixture("braid3");
  CHECK(check_absorption_D(*braid.monoid, 2, 0).ok());
  CHECK(check_absorption_D(*braid.monoid, 1, 0).ok());
  auto fa = load_fixture("free_abelian2");
  CHECK(check_absorption_D(*fa.monoid, 2, 0).ok());
  CHECK(check_absorption_D(*fa.monoid, 3, 0).ok());
}
