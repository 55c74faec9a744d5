#include "factorability.hpp"

#include <algorithm>
#include <sstream>

namespace fm {

namespace {

int64_t key_of(int32_t a, int32_t b, int n) {
  return static_cast<int64_t>(a + 1) * (n + 1) + (b + 1);
}

Word drop_units(const Word& w) {
  Word r;
  for (int32_t a : w)
    if (a != kUnit) r.push_back(a);
  return r;
}

}  // namespace

PhiTable::PhiTable(Alphabet alphabet,
                   std::vector<std::pair<LetterPair, LetterPair>> entries)
    : alphabet_(std::move(alphabet)) {
  const int n = alphabet_.size();
  auto in_range = [n](int32_t a) { return a == kUnit || (a >= 0 && a < n); };
  for (const auto& [from, to] : entries) {
    if (from.first == kUnit || from.second == kUnit)
      throw Error("phi entries on pairs containing 1 are fixed by the unit axiom");
    if (!in_range(from.first) || !in_range(from.second) || !in_range(to.first) ||
        !in_range(to.second))
      throw Error("phi entry letter out of range");
    if (from == to) continue;
    if (!map_.emplace(key_of(from.first, from.second, n), to).second)
      throw Error("phi given twice on (" + alphabet_.name(from.first) + ", " +
                  alphabet_.name(from.second) + ")");
    entries_.push_back({from, to});
  }
}

LetterPair PhiTable::phi(int32_t a, int32_t b) const {
  if (b == kUnit) return {kUnit, a};
  if (a == kUnit) return {kUnit, b};
  auto it = map_.find(key_of(a, b, size()));
  return it == map_.end() ? LetterPair{a, b} : it->second;
}

Word PhiTable::phi_i(Word t, int i) const {
  if (i < 1 || i + 1 > static_cast<int>(t.size()))
    throw Error("phi_" + std::to_string(i) + " out of range for a tuple of length " +
                std::to_string(t.size()));
  auto [c, d] = phi(t[i], t[i - 1]);
  t[i] = c;
  t[i - 1] = d;
  return t;
}

bool PhiTable::totally_stable(const Word& t) const {
  for (size_t i = 1; i < t.size(); ++i)
    if (!stable(t[i], t[i - 1])) return false;
  return true;
}

Word PhiTable::insert(Word x, int32_t letter, int depth, int limit) const {
  Word t;
  t.reserve(x.size() + 1);
  t.push_back(letter);
  t.insert(t.end(), x.begin(), x.end());
  for (int i = 1; i < static_cast<int>(t.size()); ++i) t = phi_i(std::move(t), i);
  if (std::find(t.begin(), t.end(), kUnit) == t.end()) return t;
  return nf(drop_units(t), depth + 1, limit);
}

Word PhiTable::nf(const Word& w, int depth, int limit) const {
  if (depth > limit)
    throw Error("normal form recursion exceeded its depth guard; the table is malformed");
  Word v = drop_units(w);
  if (v.size() <= 1) return v;
  Word left(v.begin() + 1, v.end());
  return insert(nf(left, depth + 1, limit), v[0], depth, limit);
}

Word PhiTable::normal_form(const Word& w) const {
  int n = static_cast<int>(w.size());
  return nf(w, 0, n * (n + 1));
}

Word PhiTable::append(Word x, const Word& w) const {
  int n = static_cast<int>(x.size() + w.size());
  int limit = n * (n + 1);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == kUnit) continue;
    x = insert(std::move(x), *it, 0, limit);
  }
  return x;
}

std::string LocalAxiomReport::text() const {
  std::ostringstream os;
  const char* names[5] = {"axiom 1 (presentation)", "axiom 2 (idempotency)",
                          "axiom 3 (unit value)", "axiom 4 (stability for triples)",
                          "axiom 5 (normal form condition)"};
  for (int k = 0; k < 5; ++k) {
    CheckReport r = axioms[k];
    r.title = names[k];
    os << r.summary() << "\n";
  }
  return os.str();
}

LocalAxiomReport check_local_factorability(const PhiTable& t) {
  LocalAxiomReport rep;
  const int n = t.size();
  std::vector<int32_t> plus{kUnit};
  for (int a = 0; a < n; ++a) plus.push_back(a);
  auto name = [&](int32_t a) { return t.format_letter(a); };

  // The monoid is defined by the presentation <E | (a,b) = phi(a,b)>.
  rep.axioms[0].checked = 1;

  for (int32_t a : plus)
    for (int32_t b : plus) {
      ++rep.axioms[1].checked;
      auto p = t.phi(a, b);
      if (t.phi(p.first, p.second) != p)
        rep.axioms[1].fail("(" + name(a) + ", " + name(b) + ")");
    }

  for (int32_t a : plus) {
    ++rep.axioms[2].checked;
    if (t.phi(a, kUnit) != LetterPair{kUnit, a}) rep.axioms[2].fail(name(a));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++rep.axioms[3].checked;
        Word x{c, b, a};
        x = t.phi_i(t.phi_i(t.phi_i(x, 2), 1), 2);
        bool unit = std::find(x.begin(), x.end(), kUnit) != x.end();
        if (!unit && !t.totally_stable(x))
          rep.axioms[3].fail("(" + name(a) + ", " + name(b) + ", " + name(c) + ")");
      }

  // Axiom 5 holds automatically when (a,b) or (b,c) is stable.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (t.stable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (t.stable(b, c)) continue;
        ++rep.axioms[4].checked;
        rep.axiom5_triples.push_back({a, b, c});
        Word x{c, b, a};
        if (t.normal_form(x) != t.normal_form(t.phi_i(x, 1)))
          rep.axioms[4].fail("(" + name(a) + ", " + name(b) + ", " + name(c) + ")");
      }
    }
  return rep;
}

std::pair<Word, int32_t> eta_of(const Word& x) {
  if (x.empty()) return {Word{}, kUnit};
  return {Word(x.begin() + 1, x.end()), x[0]};
}

RewriteSystem induced_rewriting_system(const PhiTable& t) {
  std::vector<RewriteRule> rules;
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b) {
      if (t.stable(a, b)) continue;
      auto [c, d] = t.phi(a, b);
      Word rhs;
      if (d != kUnit) rhs.push_back(d);
      if (c != kUnit) rhs.push_back(c);
      rules.push_back({Word{b, a}, rhs});
    }
  return RewriteSystem(t.alphabet(), std::move(rules));
}

RewriteSystem induced_rewriting_system(const FactorableMonoid& m) {
  const int n = m.generator_count();
  std::vector<std::string> names;
  for (int g = 0; g < n; ++g) names.push_back(m.generator_name(g));
  std::vector<RewriteRule> rules;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Elem x = m.generator(a), y = m.generator(b);
      if (m.stable(x, y)) continue;
      Word rhs;
      Elem cur = m.multiply(x, y);
      for (int guard = 0; !m.is_unit(cur); ++guard) {
        if (guard > 2) throw Error("eta of a product of two generators has norm above 2");
        auto [pre, last] = m.eta(cur);
        int l = m.generator_index(last);
        if (l < 0) throw Error("eta returned a non-generator");
        rhs.push_back(l);
        cur = pre;
      }
      rules.push_back({Word{b, a}, rhs});
    }
  return RewriteSystem(Alphabet(names), std::move(rules));
}

std::pair<Elem, Elem> PhiMonoid::eta(const Elem& x) const {
  auto [pre, last] = eta_of(x);
  return {pre, last == kUnit ? Elem{} : Elem{last}};
}

std::vector<Elem> apply_f(const FactorableMonoid& m, std::vector<Elem> t, int i) {
  if (i < 1 || i + 1 > static_cast<int>(t.size()))
    throw Error("f_" + std::to_string(i) + " out of range");
  auto [a, b] = m.eta(m.multiply(t[i], t[i - 1]));
  t[i] = std::move(a);
  t[i - 1] = std::move(b);
  return t;
}

int norm_sum(const FactorableMonoid& m, const std::vector<Elem>& t) {
  int s = 0;
  for (const auto& x : t) s += m.norm(x);
  return s;
}

CheckReport check_recognition_principle(const FactorableMonoid& m, int radius) {
  CheckReport rep;
  rep.title = "recognition principle";
  Ball ball = word_ball(m, radius);
  for (const auto& x : ball.elems) {
    Elem last = m.eta(x).second;
    for (int g = 0; g < m.generator_count(); ++g) {
      ++rep.checked;
      Elem a = m.generator(g);
      if (m.stable(x, a) != m.stable(last, a))
        rep.fail("(" + m.format(x) + ", " + m.generator_name(g) + ")");
    }
  }
  return rep;
}

CheckReport check_graded_equality(const FactorableMonoid& m, int radius) {
  CheckReport rep;
  rep.title = "graded equality of f1f2f1f2, f2f1f2, f2f1f2f1";
  Ball ball = word_ball(m, radius);
  const size_t n = ball.elems.size();
  for (size_t i3 = 0; i3 < n; ++i3)
    for (size_t i2 = 0; i2 < n; ++i2) {
      if (ball.norms[i3] + ball.norms[i2] > radius) continue;
      for (size_t i1 = 0; i1 < n; ++i1) {
        int total = ball.norms[i3] + ball.norms[i2] + ball.norms[i1];
        if (total > radius) continue;
        ++rep.checked;
        std::vector<Elem> x{ball.elems[i1], ball.elems[i2], ball.elems[i3]};
        auto f = [&](std::vector<Elem> t, std::initializer_list<int> seq) {
          std::vector<int> s(seq);
          for (auto it = s.rbegin(); it != s.rend(); ++it) t = apply_f(m, std::move(t), *it);
          return t;
        };
        auto p = f(x, {1, 2, 1, 2});
        auto q = f(x, {2, 1, 2});
        auto r = f(x, {2, 1, 2, 1});
        bool equal = p == q && q == r;
        bool drop = norm_sum(m, p) < total && norm_sum(m, q) < total &&
                    norm_sum(m, r) < total;
        if (!equal && !drop)
          rep.fail("(" + m.format(x[2]) + ", " + m.format(x[1]) + ", " +
                   m.format(x[0]) + ")");
      }
    }
  return rep;
}

CheckReport check_strong_conditions(const FactorableMonoid& m, int radius) {
  CheckReport rep;
  rep.title = "strong conditions (xs)'=(x's)', bar(xs)=bar(x).bar(x's)";
  Ball ball = word_ball(m, radius);
  for (const auto& x : ball.elems) {
    auto [xb, xp] = m.eta(x);
    for (int g = 0; g < m.generator_count(); ++g) {
      ++rep.checked;
      Elem s = m.generator(g);
      auto xs = m.eta(m.multiply(x, s));
      auto ps = m.eta(m.multiply(xp, s));
      if (xs.second != ps.second || xs.first != m.multiply(xb, ps.first))
        rep.fail("x=" + m.format(x) + ", s=" + m.generator_name(g));
    }
  }
  return rep;
}

std::optional<std::vector<std::pair<int, int>>> search_factorability(
    const FiniteTableMonoid& m, long max_candidates) {
  const int n = m.size();
  const auto& tab = m.table();
  const int one = m.unit_index();
  // word norms by breadth-first search over the table
  std::vector<int> norm(n, -1);
  norm[one] = 0;
  std::vector<int> frontier{one};
  for (int d = 1; !frontier.empty(); ++d) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : m.generator_elements()) {
        int y = tab[x][g];
        if (norm[y] < 0) {
          norm[y] = d;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  for (int x = 0; x < n; ++x)
    if (norm[x] < 0) throw Error("generators do not generate " + m.names()[x]);

  std::vector<std::pair<int, int>> base(n);
  std::vector<int> free_elems;
  std::vector<std::vector<std::pair<int, int>>> options(n);
  for (int x = 0; x < n; ++x) {
    if (x == one) {
      base[x] = {one, one};
    } else if (norm[x] == 1) {
      base[x] = {one, x};
    } else {
      for (int g : m.generator_elements())
        for (int y = 0; y < n; ++y)
          if (tab[y][g] == x && norm[y] == norm[x] - 1) options[x].push_back({y, g});
      free_elems.push_back(x);
    }
  }
  std::vector<size_t> pick(free_elems.size(), 0);
  for (long cand = 0; cand < max_candidates; ++cand) {
    auto eta = base;
    for (size_t k = 0; k < free_elems.size(); ++k)
      eta[free_elems[k]] = options[free_elems[k]][pick[k]];
    FiniteTableMonoid trial = m;
    trial.set_eta(eta);
    int maxn = *std::max_element(norm.begin(), norm.end());
    if (validate_handle(trial, maxn).ok() &&
        check_graded_equality(trial, 3 * maxn).ok())
      return eta;
    // odometer, last element fastest
    size_t k = free_elems.size();
    while (k > 0) {
      --k;
      if (++pick[k] < options[free_elems[k]].size()) break;
      pick[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (free_elems.empty()) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fm
