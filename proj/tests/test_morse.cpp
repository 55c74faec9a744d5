#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "garside.hpp"
#include "morse.hpp"

using namespace fm;

namespace {

// Determinant by fraction-free elimination (Bareiss).
long long det(std::vector<std::vector<long long>> a) {
  const int n = static_cast<int>(a.size());
  long long sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Elementary divisors from determinantal divisors: d_k = gcd of k x k minors.
std::vector<std::string> divisors_by_minors(const std::vector<std::vector<long long>>& a) {
  const int r = static_cast<int>(a.size()), c = static_cast<int>(a[0].size());
  std::vector<long long> dk{1};
  for (int k = 1; k <= std::min(r, c); ++k) {
    long long g = 0;
    std::vector<int> rows(k), cols(k);
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<long long>> m;
        for (int i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          std::vector<long long> row;
          for (int j = 0; j < c; ++j)
            if (csel[j]) row.push_back(a[i][j]);
          m.push_back(row);
        }
        g = std::gcd(g, std::llabs(det(m)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<std::string> out;
  for (size_t k = 1; k < dk.size(); ++k) out.push_back(std::to_string(dk[k] / dk[k - 1]));
  return out;
}

SparseMatrix to_sparse(const std::vector<std::vector<long long>>& a) {
  SparseMatrix s;
  s.rows = static_cast<int>(a.size());
  s.cols = static_cast<int>(a[0].size());
  for (int i = 0; i < s.rows; ++i)
    for (int j = 0; j < s.cols; ++j)
      if (a[i][j]) s.entries[{i, j}] = a[i][j];
  return s;
}

std::shared_ptr<const ArtinMonoid> artin_a3() {
  auto w = std::make_shared<CoxeterGroup>(CoxeterMatrix::from_pairs(
      {"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 3}, {"a", "c", 2}}));
  return std::make_shared<ArtinMonoid>(w);
}

// Cell from simple words written left to right.
Cell cell_of(const ArtinMonoid& m, std::vector<std::string> entries_left_to_right) {
  Cell c;
  for (auto it = entries_left_to_right.rbegin(); it != entries_left_to_right.rend(); ++it)
    c.push_back(greedy_nf(m, *it));
  return c;
}

const char* kSmallFixtures[] = {"z2", "cyclic3", "free_abelian2", "braid3", "artin_b2", "s3"};

}  // namespace

TEST_CASE("faces") {
  auto z2 = cyclic_group(2);
  Elem t = z2->generator(0);
  Cell tt{t, t};
  CHECK_FALSE(face(*z2, tt, 1).has_value());
  CHECK(face(*z2, tt, 0) == Cell{t});
  CHECK(face(*z2, tt, 2) == Cell{t});
  CHECK_THROWS_AS(face(*z2, tt, 3), Error);
  auto braid = load_fixture("braid3");
  const auto& m = *braid.artin;
  Cell ab = cell_of(m, {"a", "b"});
  auto f = face(m, ab, 1);
  REQUIRE(f.has_value());
  CHECK(*f == Cell{greedy_nf(m, "a b")});
}

TEST_CASE("classification and the matching on B3+") {
  auto z2 = cyclic_group(2);
  Elem t = z2->generator(0);
  CHECK(classify(*z2, {t, t}).kind == CellStatus::Essential);
  CHECK(classify(*z2, {t, t}).height == 2);

  auto braid = load_fixture("braid3");
  const auto& m = *braid.artin;
  Cell a_delta = cell_of(m, {"a", "aba"});
  auto st = classify(m, a_delta);
  CHECK(st.kind == CellStatus::Collapsible);
  CHECK(st.height == 1);
  Cell merged = matching_mu(m, a_delta);
  CHECK(merged == Cell{greedy_nf(m, "a a b a")});
  auto st2 = classify(m, merged);
  CHECK(st2.kind == CellStatus::Redundant);
  CHECK(st2.height == 0);
  CHECK(matching_mu(m, merged) == a_delta);
  CHECK_THROWS_AS(matching_mu(m, cell_of(m, {"a"})), Error);

  // any cell with a norm >= 2 entry at position 1 is redundant of height 0
  Cell c = cell_of(m, {"b", "a b a b"});
  CHECK(classify(m, c).kind == CellStatus::Redundant);
  CHECK(classify(m, c).height == 0);
}

TEST_CASE("the matching is an involution with unit incidence") {
  for (std::string name : kSmallFixtures) {
    CAPTURE(name);
    auto L = load_fixture(name);
    const auto& m = *L.monoid;
    Ball ball = word_ball(m, 3);
    std::vector<Elem> elems;
    for (const auto& e : ball.elems)
      if (e != m.unit()) elems.push_back(e);
    std::mt19937 rng(17);
    for (int k = 0; k < 300; ++k) {
      int deg = 1 + rng() % 3;
      Cell c;
      for (int i = 0; i < deg; ++i) c.push_back(elems[rng() % elems.size()]);
      auto st = classify(m, c);
      if (st.kind == CellStatus::Essential) continue;
      Cell mu = matching_mu(m, c);
      CAPTURE(format_cell(m, c));
      CAPTURE(format_cell(m, mu));
      CHECK(std::abs(static_cast<int>(mu.size()) - deg) == 1);
      CHECK(matching_mu(m, mu) == c);
      const Cell& z = st.kind == CellStatus::Redundant ? c : mu;
      long long inc = matching_incidence(m, z);
      CHECK((inc == 1 || inc == -1));
    }
  }
}

TEST_CASE("Visy bases") {
  auto z2 = cyclic_group(2);
  for (int n = 0; n <= 5; ++n) CHECK(visy_basis(*z2, n).size() == 1);
  auto braid = load_fixture("braid3");
  CHECK(visy_basis(*braid.monoid, 0).size() == 1);
  CHECK(visy_basis(*braid.monoid, 1).size() == 5);
  for (const auto& c : visy_basis(*braid.monoid, 3))
    CHECK(classify(*braid.monoid, c).kind == CellStatus::Essential);
}

TEST_CASE("Z/2 differentials") {
  auto z2 = cyclic_group(2);
  Elem t = z2->generator(0);
  CHECK(visy_differential_lambda(*z2, {t}).empty());
  auto d2 = visy_differential_lambda(*z2, {t, t});
  REQUIRE(d2.size() == 1);
  CHECK(d2.begin()->first == Cell{t});
  CHECK(std::llabs(d2.begin()->second) == 2);
  CHECK(visy_differential_coherent(*z2, {t, t}) == d2);
  CHECK(morse_differential_generic(*z2, {t, t}) == d2);
}

TEST_CASE("three differential formulas agree through degree 3") {
  for (std::string name : kSmallFixtures) {
    CAPTURE(name);
    auto L = load_fixture(name);
    const auto& m = *L.monoid;
    for (int n = 1; n <= 3; ++n)
      for (const auto& x : visy_basis(m, n)) {
        auto a = visy_differential_lambda(m, x);
        CHECK(visy_differential_coherent(m, x) == a);
        CHECK(morse_differential_generic(m, x) == a);
      }
  }
}

TEST_CASE("theta reduction") {
  auto braid = load_fixture("braid3");
  const auto& m = *braid.artin;
  Cell ess = cell_of(m, {"a", "b"});
  REQUIRE(classify(m, ess).kind == CellStatus::Essential);
  CHECK(theta_reduce(m, Chain{{ess, 1}}) == Chain{{ess, 1}});
  CHECK(theta_reduce(m, Chain{{cell_of(m, {"a", "aba"}), 1}}).empty());
  for (int n = 1; n <= 3; ++n)
    for (const auto& x : visy_basis(m, n))
      CHECK(theta_reduce(m, bar_differential(m, x)) == visy_differential_lambda(m, x));
}

TEST_CASE("d o d = 0 and the PRP cancellation") {
  for (std::string name : kSmallFixtures) {
    CAPTURE(name);
    auto L = load_fixture(name);
    const auto& m = *L.monoid;
    int top = std::string(name) == "s3" ? 4 : 5;
    auto cx = visy_complex(m, top);
    for (int k = 2; k <= top; ++k) {
      std::map<std::pair<int, int>, long long> prod;
      for (const auto& [rc1, v1] : cx.d[k].entries)
        for (const auto& [rc0, v0] : cx.d[k - 1].entries)
          if (rc0.second == rc1.first) prod[{rc0.first, rc1.second}] += v0 * v1;
      for (const auto& [rc, v] : prod) CHECK(v == 0);
    }
    for (int n = 1; n <= 3; ++n)
      for (const auto& x : visy_basis(m, n)) CHECK(prp_sum(m, x).empty());
  }
}

TEST_CASE("xi on the A3 cell [aba|ba|bca|a]") {
  auto m = artin_a3();
  Cell x = cell_of(*m, {"a b a", "b a", "b c a", "a"});
  REQUIRE(classify(*m, x).kind == CellStatus::Essential);
  CHECK(xi(*m, x, {3, 2, 1}) == IndexSeq{2, 3, 2, 1});
  CHECK(xi(*m, x, {1, 3, 2, 1}) == IndexSeq{1, 2, 3, 2, 1});
  CHECK(xi(*m, x, {2, 1, 3, 2, 1}) == IndexSeq{1, 2, 1, 3, 2, 1});
  CHECK(xi(*m, x, {2, 3, 2, 1}) == IndexSeq{3, 2, 1});
  CHECK(xi(*m, x, {1, 2, 3, 2, 1}) == IndexSeq{1, 3, 2, 1});
  CHECK(xi(*m, x, {1, 2, 1, 3, 2, 1}) == IndexSeq{2, 1, 3, 2, 1});

  // the involution properties on all of Lambda_3 minus the coherent ones
  for (const auto& I : enumerate_small(3)) {
    if (is_coherent(*m, x, I)) continue;
    CAPTURE(format_seq(I));
    IndexSeq J = xi(*m, x, I);
    CHECK(xi(*m, x, J) == I);
    CHECK_FALSE(is_coherent(*m, x, J));
    auto fi = f_cell_seq(*m, x, I);
    if (J == I) {
      CHECK_FALSE(fi.has_value());
    } else {
      CHECK(std::abs(static_cast<int>(J.size()) - static_cast<int>(I.size())) == 1);
      CHECK(f_cell_seq(*m, x, J) == fi);
    }
  }
  CHECK(prp_sum(*m, x).empty());
}

TEST_CASE("Smith normal form against determinantal divisors") {
  std::mt19937 rng(23);
  for (int k = 0; k < 200; ++k) {
    int r = 1 + rng() % 4, c = 1 + rng() % 4;
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<long long>(rng() % 11) - 5;
    CAPTURE(k);
    CHECK(smith_diagonal(to_sparse(a)) == divisors_by_minors(a));
  }
  CHECK(smith_diagonal(to_sparse({{2, 0}, {0, 3}})) == std::vector<std::string>{"1", "6"});
  CHECK(smith_diagonal(to_sparse({{0, 0}, {0, 0}})).empty());
}

TEST_CASE("homology of small complexes") {
  IntegerChainComplex cx;
  cx.labels = {{"e"}, {"x"}, {}};
  cx.d = {SparseMatrix{}, SparseMatrix{1, 1, {}}, SparseMatrix{1, 0, {}}};
  auto h = homology(cx);
  REQUIRE(h.groups.size() == 2);
  CHECK(h.groups[0].rank == 1);
  CHECK(h.groups[1].rank == 1);
  CHECK(h.text() == "H_0 = Z\nH_1 = Z\n");

  IntegerChainComplex bad;
  bad.labels = {{"e"}, {"x"}, {"y"}};
  bad.d = {SparseMatrix{}, SparseMatrix{1, 1, {{{0, 0}, 1}}}, SparseMatrix{1, 1, {{{0, 0}, 1}}}};
  CHECK_THROWS_AS(homology(bad), Error);
}

TEST_CASE("bar complex ranks") {
  auto z2 = cyclic_group(2);
  auto bz = bar_complex_truncated(*z2, 4);
  for (int k = 0; k <= 4; ++k) CHECK(bz.labels[k].size() == 1);
  auto s3 = s3_transpositions();
  auto bs = bar_complex_truncated(*s3, 2);
  CHECK(bs.labels[0].size() == 1);
  CHECK(bs.labels[1].size() == 5);
  CHECK(bs.labels[2].size() == 25);
  FiniteTableMonoid trivial("trivial", {"1"}, 0, {}, {{0}});
  trivial.set_eta({{0, 0}});
  auto bt = bar_complex_truncated(trivial, 3);
  CHECK(bt.labels[0].size() == 1);
  for (int k = 1; k <= 3; ++k) CHECK(bt.labels[k].empty());
  auto braid = load_fixture("braid3");
  CHECK_THROWS_AS(bar_complex_truncated(*braid.monoid, 2), Error);
}

TEST_CASE("Visy homology equals bar homology for finite fixtures") {
  auto z2 = cyclic_group(2);
  auto hv = homology(visy_complex(*z2, 6));
  CHECK(hv.text() == homology(bar_complex_truncated(*z2, 6)).text());
  CHECK(hv.text() == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2\nH_4 = 0\nH_5 = Z/2\n");
  auto c3 = cyclic_group(3);
  CHECK(homology(visy_complex(*c3, 5)).text() == homology(bar_complex_truncated(*c3, 5)).text());
  auto s3 = s3_transpositions();
  auto hs = homology(visy_complex(*s3, 3));
  CHECK(hs.text() == homology(bar_complex_truncated(*s3, 3)).text());
  CHECK(hs.text() == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\n");
}

TEST_CASE("all three Visy constructions give the same complex") {
  auto braid = load_fixture("braid3");
  auto a = visy_complex(*braid.monoid, 3, VisyMethod::Coherent);
  auto b = visy_complex(*braid.monoid, 3, VisyMethod::Lambda);
  auto c = visy_complex(*braid.monoid, 3, VisyMethod::Generic);
  for (int k = 0; k <= 3; ++k) {
    CHECK(a.labels[k] == b.labels[k]);
    CHECK(a.d[k].entries == b.d[k].entries);
    CHECK(a.d[k].entries == c.d[k].entries);
  }
  CHECK(homology(a).text() == "H_0 = Z\nH_1 = Z\nH_2 = 0\n");
}

TEST_CASE("redundant chains on B3+ and the appendix terminate") {
  auto braid = load_fixture("braid3");
  const auto& m = *braid.monoid;
  for (int a = 0; a < m.generator_count(); ++a)
    for (int b = 0; b < m.generator_count(); ++b)
      for (int c = 0; c < m.generator_count(); ++c) {
        auto rep = redundant_chains(m, {m.generator(a), m.generator(b), m.generator(c)});
        CHECK(rep.terminated);
        CHECK(rep.violations.empty());
      }
  auto app = load_fixture("appendix");
  const auto& p = *app.monoid;
  auto g = [&](const char* s) { return p.generator(p.parse_generator(s)); };
  auto rep = redundant_chains(p, {g("d1"), g("c1"), g("b1"), g("a1")});
  CHECK(rep.terminated);
  CHECK(rep.violations.empty());
}
