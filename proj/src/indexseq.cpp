#include "indexseq.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "factorability.hpp"

namespace fm {

std::string format_seq(const IndexSeq& s) {
  std::string out = "(";
  for (size_t k = 0; k < s.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(s[k]);
  }
  return out + ")";
}

IndexSeq parse_seq(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == '(' || c == ')') c = ' ';
  IndexSeq s;
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 1) throw Error("bad index '" + tok + "'");
    s.push_back(v);
  }
  return s;
}

IndexSeq segment_I(int a, int b) {
  if (a > b || a < 1) throw Error("segment needs 1 <= a <= b");
  IndexSeq s;
  for (int k = a; k <= b; ++k) s.push_back(k);
  return s;
}

IndexSeq segment_J(int a, int b) {
  IndexSeq s = segment_I(a, b);
  std::reverse(s.begin(), s.end());
  return s;
}

IndexSeq D_sequence(int k) {
  if (k < 1) throw Error("D_k needs k >= 1");
  IndexSeq s;
  for (int a = k; a >= 1; --a) {
    auto seg = segment_I(a, k);
    s.insert(s.end(), seg.begin(), seg.end());
  }
  return s;
}

IndexSeq seq_concat(const IndexSeq& left, const IndexSeq& right) {
  IndexSeq s = left;
  s.insert(s.end(), right.begin(), right.end());
  return s;
}

bool is_leftmost(const IndexSeq& s) {
  for (size_t k = 0; k + 1 < s.size(); ++k)
    if (std::abs(s[k] - s[k + 1]) >= 2 && s[k] < s[k + 1]) return false;
  return true;
}

bool is_rightmost(const IndexSeq& s) {
  for (size_t k = 0; k + 1 < s.size(); ++k)
    if (std::abs(s[k] - s[k + 1]) >= 2 && s[k] > s[k + 1]) return false;
  return true;
}

bool is_reduced(const IndexSeq& s) {
  for (size_t k = 0; k + 1 < s.size(); ++k)
    if (s[k] == s[k + 1]) return false;
  return true;
}

namespace {

// Deletes squares and sorts commuting neighbours until nothing moves; the
// irreducible sequences are exactly the reduced canonical ones.
IndexSeq canonical(IndexSeq s, bool larger_left) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t k = 0; k + 1 < s.size();) {
      if (s[k] == s[k + 1]) {
        s.erase(s.begin() + k + 1);
        moved = true;
        continue;
      }
      bool commute = std::abs(s[k] - s[k + 1]) >= 2;
      if (commute && (s[k] < s[k + 1]) == larger_left) {
        std::swap(s[k], s[k + 1]);
        moved = true;
      }
      ++k;
    }
  }
  return s;
}

bool has_pattern(const IndexSeq& s) {
  for (size_t k = 0; k + 2 < s.size(); ++k)
    if (s[k] == s[k + 2] && s[k + 1] == s[k] - 1) return true;
  return false;
}

struct SeqHash {
  size_t operator()(const std::pair<IndexSeq, int>& p) const noexcept {
    return ElemHash{}(p.first) * 31 + static_cast<size_t>(p.second);
  }
};

}  // namespace

IndexSeq leftmost_reduced(const IndexSeq& s) { return canonical(s, true); }
IndexSeq rightmost_reduced(const IndexSeq& s) { return canonical(s, false); }

std::vector<JBlock> j_blocks(const IndexSeq& s) {
  if (!is_rightmost(s) || !is_reduced(s))
    throw Error("j_blocks needs a right-most reduced sequence, got " + format_seq(s));
  std::vector<JBlock> out;
  size_t k = 0;
  while (k < s.size()) {
    size_t e = k;
    while (e + 1 < s.size() && s[e + 1] == s[e] - 1) ++e;
    out.push_back({s[e], s[k]});
    k = e + 1;
  }
  return out;
}

bool is_small(const IndexSeq& s) {
  auto blocks = j_blocks(rightmost_reduced(s));
  for (size_t r = 0; r + 1 < blocks.size(); ++r)
    if (blocks[r].b >= blocks[r + 1].b) return false;
  return true;
}

std::optional<bool> is_small_oracle(const IndexSeq& s, int expansion_depth, long budget) {
  using State = std::pair<IndexSeq, int>;
  std::unordered_set<State, SeqHash> seen;
  std::deque<State> q;
  seen.insert({s, 0});
  q.push_back({s, 0});
  while (!q.empty()) {
    auto [cur, used] = q.front();
    q.pop_front();
    if (has_pattern(cur)) return false;
    auto visit = [&](IndexSeq next, int u) {
      State st{std::move(next), u};
      if (seen.count(st)) return;
      seen.insert(st);
      q.push_back(std::move(st));
    };
    for (size_t k = 0; k + 1 < cur.size(); ++k) {
      if (std::abs(cur[k] - cur[k + 1]) >= 2) {
        IndexSeq n = cur;
        std::swap(n[k], n[k + 1]);
        visit(std::move(n), used);
      }
      if (cur[k] == cur[k + 1]) {
        IndexSeq n = cur;
        n.erase(n.begin() + k);
        visit(std::move(n), used);
      }
    }
    if (used < expansion_depth)
      for (size_t k = 0; k < cur.size(); ++k) {
        IndexSeq n = cur;
        n.insert(n.begin() + k, cur[k]);
        visit(std::move(n), used + 1);
      }
    if (static_cast<long>(seen.size()) > budget) return std::nullopt;
  }
  return true;
}

std::vector<IndexSeq> enumerate_small(int n, bool include_empty) {
  if (n < 0) throw Error("enumerate_small needs n >= 0");
  std::vector<IndexSeq> out;
  // Pick a set of block maxima (increasing left to right) and a lower end
  // for each block; consecutive blocks never merge because a_r < b_{r-1}.
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> maxima;
    for (int b = 1; b <= n; ++b)
      if (mask & (1L << (b - 1))) maxima.push_back(b);
    std::vector<int> lows(maxima.size(), 1);
    while (true) {
      IndexSeq s;
      for (size_t r = 0; r < maxima.size(); ++r) {
        auto j = segment_J(lows[r], maxima[r]);
        s.insert(s.end(), j.begin(), j.end());
      }
      if (!s.empty() || include_empty) out.push_back(std::move(s));
      bool done = true;
      for (size_t r = maxima.size(); r-- > 0;) {
        if (++lows[r] <= maxima[r]) {
          done = false;
          break;
        }
        lows[r] = 1;
      }
      if (done) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const IndexSeq& x, const IndexSeq& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  return out;
}

std::vector<Elem> evaluate_f(const FactorableMonoid& m, const IndexSeq& seq,
                             std::vector<Elem> tuple) {
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (*it < 1 || *it + 1 > static_cast<int>(tuple.size()))
      throw Error("index " + std::to_string(*it) + " out of range for a tuple of length " +
                  std::to_string(tuple.size()));
    tuple = apply_f(m, std::move(tuple), *it);
  }
  return tuple;
}

CheckReport check_absorption_D(const FactorableMonoid& m, int n, long samples,
                               int max_I_length) {
  CheckReport rep;
  rep.title = "absorption by D_" + std::to_string(n);
  if (n < 1) throw Error("absorption check needs n >= 1");
  const int g = m.generator_count();
  const IndexSeq D = D_sequence(n);
  IndexSeq power;
  for (int k = 0; k < n; ++k) {
    auto seg = segment_I(1, n);
    power.insert(power.end(), seg.begin(), seg.end());
  }
  // all sequences over 1..n up to the given length
  std::vector<IndexSeq> tests{{}};
  for (size_t b = 0; b < tests.size(); ++b) {
    if (static_cast<int>(tests[b].size()) >= max_I_length) continue;
    for (int i = 1; i <= n; ++i) tests.push_back(seq_concat(tests[b], {i}));
  }

  std::vector<std::vector<int>> tuples;
  double total = 1;
  for (int k = 0; k <= n; ++k) total *= g;
  if (total <= static_cast<double>(samples)) {
    std::vector<int> t(n + 1, 0);
    while (true) {
      tuples.push_back(t);
      int k = 0;
      while (k <= n && ++t[k] == g) t[k++] = 0;
      if (k > n) break;
    }
  } else {
    std::mt19937 rng(12345);
    for (long s = 0; s < samples; ++s) {
      std::vector<int> t(n + 1);
      for (int& v : t) v = static_cast<int>(rng() % static_cast<unsigned>(g));
      tuples.push_back(t);
    }
  }
  for (const auto& t : tuples) {
    std::vector<Elem> x;
    for (int v : t) x.push_back(m.generator(v));
    auto show = [&] {
      std::string s;
      for (auto it = x.rbegin(); it != x.rend(); ++it) s += (s.empty() ? "" : "|") + m.format(*it);
      return "[" + s + "]";
    };
    auto base = evaluate_f(m, D, x);
    ++rep.checked;
    if (evaluate_f(m, power, x) != base) rep.fail("(I_1^n)^n at " + show());
    for (const auto& I : tests) {
      ++rep.checked;
      if (evaluate_f(m, seq_concat(D, I), x) != base)
        rep.fail("D_n" + format_seq(I) + " at " + show());
      if (evaluate_f(m, seq_concat(I, D), x) != base)
        rep.fail(format_seq(I) + "D_n at " + show());
    }
  }
  return rep;
}

}  // namespace fm
