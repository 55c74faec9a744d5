#include "morse.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace fm {

using boost::multiprecision::cpp_int;

void chain_add(Chain& c, const Cell& cell, long long coeff) {
  if (coeff == 0) return;
  auto it = c.find(cell);
  if (it == c.end()) {
    c.emplace(cell, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) c.erase(it);
}

void chain_add(Chain& c, const Chain& other, long long factor) {
  for (const auto& [cell, v] : other) chain_add(c, cell, v * factor);
}

std::string format_cell(const FactorableMonoid& m, const Cell& c) {
  std::string s = "[";
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (it != c.rbegin()) s += '|';
    s += m.format(*it);
  }
  return s + "]";
}

std::string format_chain(const FactorableMonoid& m, const Chain& c) {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [cell, v] : c) {
    if (!s.empty()) s += v < 0 ? " - " : " + ";
    else if (v < 0) s += "-";
    long long a = v < 0 ? -v : v;
    if (a != 1) s += std::to_string(a) + "*";
    s += format_cell(m, cell);
  }
  return s;
}

std::optional<Cell> face(const FactorableMonoid& m, const Cell& c, int i) {
  const int n = static_cast<int>(c.size());
  if (i < 0 || i > n) throw Error("face index out of range");
  if (n == 0) throw Error("the empty cell has no faces");
  Cell r = c;
  if (i == 0) {
    r.erase(r.begin());
  } else if (i == n) {
    r.pop_back();
  } else {
    Elem p = m.multiply(c[i], c[i - 1]);
    if (m.is_unit(p)) return std::nullopt;
    r[i - 1] = std::move(p);
    r.erase(r.begin() + i);
  }
  return r;
}

Chain bar_differential(const FactorableMonoid& m, const Cell& c) {
  Chain out;
  const int n = static_cast<int>(c.size());
  for (int i = 0; i <= n && n > 0; ++i)
    if (auto f = face(m, c, i)) chain_add(out, *f, (i % 2) ? -1 : 1);
  return out;
}

std::optional<Cell> f_cell(const FactorableMonoid& m, const Cell& c, int i) {
  if (i < 1 || i + 1 > static_cast<int>(c.size())) throw Error("f_i index out of range");
  auto [a, b] = m.eta(m.multiply(c[i], c[i - 1]));
  if (m.is_unit(a) || m.is_unit(b)) return std::nullopt;
  Cell r = c;
  r[i] = std::move(a);
  r[i - 1] = std::move(b);
  return r;
}

std::optional<Cell> f_cell_seq(const FactorableMonoid& m, const Cell& c, const IndexSeq& seq) {
  std::optional<Cell> y = c;
  for (auto it = seq.rbegin(); it != seq.rend() && y; ++it) y = f_cell(m, *y, *it);
  return y;
}

int height(const FactorableMonoid& m, const Cell& c) {
  int h = 0;
  const int n = static_cast<int>(c.size());
  while (h < n && m.generator_index(c[h]) >= 0 && (h == 0 || !m.stable(c[h], c[h - 1]))) ++h;
  return h;
}

CellStatus classify(const FactorableMonoid& m, const Cell& c) {
  int h = height(m, c);
  if (h == static_cast<int>(c.size())) return {CellStatus::Essential, h};
  if (h >= 1 && m.stable(c[h], c[h - 1])) return {CellStatus::Collapsible, h};
  return {CellStatus::Redundant, h};
}

bool stable_at(const FactorableMonoid& m, const Cell& c, int p) {
  if (p < 1 || p + 1 > static_cast<int>(c.size())) throw Error("stability position out of range");
  return m.stable(c[p], c[p - 1]);
}

Cell matching_mu(const FactorableMonoid& m, const Cell& c) {
  auto st = classify(m, c);
  if (st.kind == CellStatus::Essential) throw Error("mu is undefined on essential cells");
  const int h = st.height;
  if (st.kind == CellStatus::Collapsible) {
    auto r = face(m, c, h);
    if (!r) throw Error("collapsible cell merges to the unit");
    return *r;
  }
  auto [pre, last] = m.eta(c[h]);
  if (m.is_unit(pre) || m.is_unit(last)) throw Error("redundant entry does not split");
  Cell r = c;
  r[h] = last;
  r.insert(r.begin() + h + 1, pre);
  return r;
}

long long matching_incidence(const FactorableMonoid& m, const Cell& z) {
  auto d = bar_differential(m, matching_mu(m, z));
  auto it = d.find(z);
  return it == d.end() ? 0 : it->second;
}

namespace {

int norm_total(const FactorableMonoid& m, const Cell& c) {
  int s = 0;
  for (const auto& e : c) s += m.norm(e);
  return s;
}

std::vector<Cell> redundant_successors(const FactorableMonoid& m, const Cell& z) {
  std::vector<Cell> out;
  for (const auto& [w, v] : bar_differential(m, matching_mu(m, z)))
    if (w != z && classify(m, w).kind == CellStatus::Redundant) out.push_back(w);
  return out;
}

}  // namespace

RedundantChainReport redundant_chains(const FactorableMonoid& m, const Cell& start,
                                      long budget) {
  RedundantChainReport rep;
  const int total = norm_total(m, start);
  long work = 0;
  auto violate = [&](const std::string& s) {
    if (rep.violations.size() < 8) rep.violations.push_back(s);
  };

  // Termination below the norm-preserving layer: plain cycle search.
  std::map<Cell, int> color;  // 1 on stack, 2 done
  std::map<Cell, long> depth_memo;
  std::function<long(const Cell&)> settle = [&](const Cell& z) -> long {
    auto it = color.find(z);
    if (it != color.end()) {
      if (it->second == 1) {
        rep.terminated = false;
        violate("cycle through " + format_cell(m, z));
        return 0;
      }
      return depth_memo[z];
    }
    if (++work > budget) {
      rep.terminated = false;
      return 0;
    }
    color[z] = 1;
    long best = 0;
    for (const auto& w : redundant_successors(m, z)) best = std::max(best, settle(w) + 1);
    color[z] = 2;
    depth_memo[z] = best;
    return best;
  };

  std::vector<Cell> path;
  std::function<void(const Cell&, IndexSeq&)> walk = [&](const Cell& z, IndexSeq& seq) {
    if (!rep.terminated) return;
    if (std::find(path.begin(), path.end(), z) != path.end()) {
      rep.terminated = false;
      violate("cycle through " + format_cell(m, z));
      return;
    }
    if (++work > budget) {
      rep.terminated = false;
      return;
    }
    seq.insert(seq.begin(), height(m, z) + 1);
    if (!is_rightmost(seq) || !is_reduced(seq) || !is_small(seq))
      violate("height sequence " + format_seq(seq) + " at " + format_cell(m, z));
    path.push_back(z);
    bool extended = false;
    for (const auto& w : redundant_successors(m, z)) {
      if (norm_total(m, w) == total) {
        extended = true;
        walk(w, seq);
      } else {
        rep.longest = std::max(rep.longest, static_cast<long>(path.size()) + 1 + settle(w));
        ++rep.chains;
      }
    }
    if (!extended) {
      ++rep.norm_preserving;
      ++rep.chains;
      rep.longest = std::max(rep.longest, static_cast<long>(path.size()));
    }
    path.pop_back();
    seq.erase(seq.begin());
  };

  const int n = static_cast<int>(start.size());
  std::set<Cell> launched;
  for (int i = 0; i <= n; ++i) {
    auto z = face(m, start, i);
    if (!z || classify(m, *z).kind != CellStatus::Redundant) continue;
    if (!launched.insert(*z).second) continue;
    if (norm_total(m, *z) == total) {
      IndexSeq seq;
      walk(*z, seq);
    } else {
      rep.longest = std::max(rep.longest, 1 + settle(*z));
      ++rep.chains;
    }
  }
  return rep;
}

std::vector<Cell> visy_basis(const FactorableMonoid& m, int degree) {
  if (degree < 0) throw Error("negative degree");
  const int g = m.generator_count();
  std::vector<std::vector<char>> unstable(g, std::vector<char>(g));
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) unstable[a][b] = !m.stable(m.generator(a), m.generator(b));
  // cells as generator index lists, position 1 first
  std::vector<std::vector<int>> cur{{}};
  for (int k = 0; k < degree; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& c : cur)
      for (int a = 0; a < g; ++a)
        if (c.empty() || unstable[a][c.back()]) {
          auto d = c;
          d.push_back(a);
          next.push_back(std::move(d));
        }
    cur = std::move(next);
  }
  std::vector<Cell> out;
  for (const auto& c : cur) {
    Cell cell;
    for (int a : c) cell.push_back(m.generator(a));
    out.push_back(std::move(cell));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Chain project_essential(const FactorableMonoid& m, const Chain& c) {
  Chain out;
  for (const auto& [cell, v] : c)
    if (classify(m, cell).kind == CellStatus::Essential) out.emplace(cell, v);
  return out;
}

Chain visy_differential_lambda(const FactorableMonoid& m, const Cell& x) {
  const int n = static_cast<int>(x.size());
  Chain out;
  if (n == 0) return out;
  for (const auto& I : enumerate_small(n - 1, true)) {
    auto y = f_cell_seq(m, x, I);
    if (!y) continue;
    chain_add(out, project_essential(m, bar_differential(m, *y)), (I.size() % 2) ? -1 : 1);
  }
  return out;
}

Chain visy_differential_coherent(const FactorableMonoid& m, const Cell& x) {
  const int n = static_cast<int>(x.size());
  Chain out;
  if (n == 0) return out;
  const long max_len = (1L << std::min(n, 40)) + 1;
  std::function<void(const Cell&, long, int)> dfs = [&](const Cell& y, long r, int last) {
    if (r > max_len) throw Error("coherent sequence longer than any small sequence");
    for (int j = 0; j <= n; ++j) {
      if (r > 0 && j == last) continue;
      auto z = face(m, y, j);
      if (!z) continue;
      auto st = classify(m, *z);
      if (st.kind == CellStatus::Essential) {
        chain_add(out, *z, ((j + r) % 2) ? -1 : 1);
      } else if (st.kind == CellStatus::Redundant && j >= 1 && j < n) {
        if (auto y2 = f_cell(m, y, j)) dfs(*y2, r + 1, j);
      }
    }
  };
  dfs(x, 0, -1);
  return out;
}

Chain morse_differential_generic(const FactorableMonoid& m, const Cell& x, long budget) {
  std::map<Cell, Chain> memo;
  std::set<Cell> active;
  long work = 0;
  std::function<const Chain&(const Cell&)> value = [&](const Cell& z) -> const Chain& {
    auto it = memo.find(z);
    if (it != memo.end()) return it->second;
    if (active.count(z)) throw Error("matching is not noetherian at " + format_cell(m, z));
    if (++work > budget) throw Error("Morse flow exceeded its budget");
    Chain res;
    auto st = classify(m, z);
    if (st.kind == CellStatus::Essential) {
      res.emplace(z, 1);
    } else if (st.kind == CellStatus::Redundant) {
      active.insert(z);
      Cell mz = matching_mu(m, z);
      Chain dm = bar_differential(m, mz);
      long long eps = dm.count(z) ? dm[z] : 0;
      if (eps != 1 && eps != -1)
        throw Error("incidence " + std::to_string(eps) + " on matched pair at " +
                    format_cell(m, z));
      for (const auto& [w, v] : dm)
        if (w != z) chain_add(res, value(w), -eps * v);
      active.erase(z);
    }
    return memo.emplace(z, std::move(res)).first->second;
  };
  Chain out;
  for (const auto& [z, v] : bar_differential(m, x)) chain_add(out, value(z), v);
  return out;
}

Chain theta_reduce(const FactorableMonoid& m, const Chain& c, long budget) {
  Chain cur = c;
  for (long it = 0; it < budget; ++it) {
    bool redundant = false;
    Chain next;
    for (const auto& [z, v] : cur) {
      auto st = classify(m, z);
      if (st.kind == CellStatus::Essential) {
        chain_add(next, z, v);
      } else if (st.kind == CellStatus::Redundant) {
        redundant = true;
        Chain dm = bar_differential(m, matching_mu(m, z));
        long long eps = dm.count(z) ? dm[z] : 0;
        if (eps != 1 && eps != -1) throw Error("incidence is not a unit");
        for (const auto& [w, u] : dm)
          if (w != z) chain_add(next, w, -eps * u * v);
      }
    }
    if (!redundant) return next;
    cur = std::move(next);
  }
  throw Error("theta did not stabilise within the budget");
}

bool is_coherent(const FactorableMonoid& m, const Cell& x, const IndexSeq& seq) {
  Cell y = x;
  for (size_t k = seq.size(); k-- > 0;) {
    int i = seq[k];
    if (i < 1 || i >= static_cast<int>(y.size())) return false;
    auto z = face(m, y, i);
    if (!z || classify(m, *z).kind != CellStatus::Redundant) return false;
    if (k == 0) break;
    auto y2 = f_cell(m, y, i);
    if (!y2) return false;
    y = std::move(*y2);
  }
  return true;
}

Chain prp_sum(const FactorableMonoid& m, const Cell& x) {
  const int n = static_cast<int>(x.size());
  Chain out;
  if (n == 0) return out;
  for (const auto& I : enumerate_small(n - 1, true)) {
    if (is_coherent(m, x, I)) continue;
    if (auto y = f_cell_seq(m, x, I)) chain_add(out, *y, (I.size() % 2) ? -1 : 1);
  }
  return out;
}

IndexSeq xi(const FactorableMonoid& m, const Cell& x, const IndexSeq& I) {
  const int s = static_cast<int>(I.size());
  if (!f_cell_seq(m, x, I)) return I;
  auto entry = [&](int t) { return I[s - t]; };  // i_t, t = 1..s
  auto prefix_cell = [&](int t) {
    return f_cell_seq(m, x, IndexSeq(I.end() - t, I.end()));
  };
  int t = 0;
  for (int u = 1; u <= s; ++u) {
    if (entry(u) < 2) continue;
    auto y = prefix_cell(u);
    if (y && stable_at(m, *y, entry(u) - 1)) {
      t = u;
      break;
    }
  }
  if (t == 0) return I;
  while (true) {
    const int p = entry(t) - 1;
    // Case 1: an entry p above t with only commuting entries between.
    for (int k = t + 1; k <= s; ++k) {
      if (entry(k) == p) {
        IndexSeq r = I;
        r.erase(r.begin() + (s - k));
        return r;
      }
      if (std::abs(entry(k) - p) < 2) break;
    }
    // Case 2: insert p if the result stays small.
    IndexSeq upper(I.begin(), I.begin() + (s - t));
    IndexSeq lower(I.begin() + (s - t), I.end());
    IndexSeq cand = seq_concat(seq_concat(upper, {p}), lower);
    if (is_small(cand)) {
      IndexSeq r = seq_concat(rightmost_reduced(seq_concat(upper, {p})), lower);
      if (static_cast<int>(r.size()) != s + 1)
        throw Error("xi insertion was absorbed in " + format_seq(I));
      return r;
    }
    // Case 3: move on to the next entry equal to p.
    int next = 0;
    for (int k = t + 1; k <= s; ++k)
      if (entry(k) == p) {
        next = k;
        break;
      }
    if (next == 0) throw Error("xi found no continuation for " + format_seq(I));
    auto y = prefix_cell(next);
    if (!y || p < 2 || !stable_at(m, *y, p - 1))
      throw Error("xi continuation is not stable for " + format_seq(I));
    t = next;
  }
}

// ---------------------------------------------------------------- homology

namespace {

using Dense = std::vector<std::vector<cpp_int>>;

Dense to_dense(const SparseMatrix& a) {
  Dense d(a.rows, std::vector<cpp_int>(a.cols));
  for (const auto& [rc, v] : a.entries) d[rc.first][rc.second] = v;
  return d;
}

}  // namespace

std::vector<std::string> smith_diagonal(const SparseMatrix& sm) {
  Dense a = to_dense(sm);
  const int R = sm.rows, C = sm.cols;
  std::vector<cpp_int> diag;
  for (int t = 0; t < std::min(R, C); ++t) {
    // pivot of least absolute value in the remaining block
    int pi = -1, pj = -1;
    cpp_int best;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < R; ++i) std::swap(a[i][t], a[i][pj]);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        cpp_int q = a[i][t] / a[t][t];
        if (q != 0)
          for (int j = t; j < C; ++j)
            if (a[t][j] != 0) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        cpp_int q = a[t][j] / a[t][t];
        if (q != 0)
          for (int i = t; i < R; ++i)
            if (a[i][t] != 0) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // a smaller remainder sits in row or column t: make it the pivot
      int bi = t, bj = t;
      cpp_int m = abs(a[t][t]);
      for (int i = t + 1; i < R; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < m) {
          m = abs(a[i][t]);
          bi = i;
          bj = t;
        }
      for (int j = t + 1; j < C; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < m) {
          m = abs(a[t][j]);
          bi = t;
          bj = j;
        }
      std::swap(a[t], a[bi]);
      for (int i = 0; i < R; ++i) std::swap(a[i][t], a[i][bj]);
    }
    diag.push_back(abs(a[t][t]));
  }
  // normalise to a divisibility chain
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      cpp_int g = gcd(diag[i], diag[j]);
      cpp_int l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  std::vector<std::string> out;
  for (const auto& d : diag) out.push_back(d.str());
  return out;
}

std::string HomologyResult::text() const {
  std::ostringstream os;
  for (size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    std::vector<std::string> parts;
    if (g.rank == 1) parts.push_back("Z");
    if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
    for (const auto& t : g.torsion) parts.push_back("Z/" + t);
    os << "H_" << k << " = ";
    if (parts.empty()) os << "0";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? " (+) " : "") << parts[i];
    os << "\n";
  }
  return os.str();
}

HomologyResult homology(const IntegerChainComplex& cx) {
  const int top = cx.top();
  if (top < 0) throw Error("empty chain complex");
  for (int k = 2; k <= top; ++k) {
    const auto& a = cx.d[k - 1];
    const auto& b = cx.d[k];
    std::map<std::pair<int, int>, long long> prod;
    std::map<int, std::vector<std::pair<int, long long>>> by_row;
    for (const auto& [rc, v] : a.entries) by_row[rc.second].push_back({rc.first, v});
    for (const auto& [rc, v] : b.entries) {
      auto it = by_row.find(rc.first);
      if (it == by_row.end()) continue;
      for (auto [r, u] : it->second) prod[{r, rc.second}] += u * v;
    }
    for (const auto& [rc, v] : prod)
      if (v != 0) throw Error("d o d != 0 in degree " + std::to_string(k));
  }
  std::vector<std::vector<std::string>> snf(top + 1);
  for (int k = 1; k <= top; ++k) snf[k] = smith_diagonal(cx.d[k]);
  HomologyResult res;
  for (int k = 0; k < top; ++k) {
    DegreeHomology h;
    long dim = static_cast<long>(cx.labels[k].size());
    h.rank = dim - static_cast<long>(snf[k].size()) - static_cast<long>(snf[k + 1].size());
    for (const auto& d : snf[k + 1])
      if (d != "1") h.torsion.push_back(d);
    res.groups.push_back(std::move(h));
  }
  return res;
}

namespace {

IntegerChainComplex assemble(const FactorableMonoid& m, const std::vector<std::vector<Cell>>& basis,
                             const std::function<Chain(const Cell&)>& diff) {
  IntegerChainComplex cx;
  const int top = static_cast<int>(basis.size()) - 1;
  cx.d.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    std::vector<std::string> labels;
    for (const auto& c : basis[k]) labels.push_back(format_cell(m, c));
    cx.labels.push_back(std::move(labels));
  }
  for (int k = 1; k <= top; ++k) {
    std::map<Cell, int> row;
    for (size_t i = 0; i < basis[k - 1].size(); ++i) row.emplace(basis[k - 1][i], static_cast<int>(i));
    SparseMatrix& mat = cx.d[k];
    mat.rows = static_cast<int>(basis[k - 1].size());
    mat.cols = static_cast<int>(basis[k].size());
    for (size_t j = 0; j < basis[k].size(); ++j)
      for (const auto& [cell, v] : diff(basis[k][j])) {
        auto it = row.find(cell);
        if (it == row.end())
          throw Error("differential leaves the basis at " + format_cell(m, cell));
        mat.entries[{it->second, static_cast<int>(j)}] = v;
      }
  }
  return cx;
}

}  // namespace

IntegerChainComplex visy_complex(const FactorableMonoid& m, int max_degree, VisyMethod method) {
  if (max_degree < 0) throw Error("negative degree");
  std::vector<std::vector<Cell>> basis;
  for (int k = 0; k <= max_degree; ++k) basis.push_back(visy_basis(m, k));
  std::function<Chain(const Cell&)> diff;
  switch (method) {
    case VisyMethod::Coherent:
      diff = [&](const Cell& c) { return visy_differential_coherent(m, c); };
      break;
    case VisyMethod::Lambda:
      diff = [&](const Cell& c) { return visy_differential_lambda(m, c); };
      break;
    case VisyMethod::Generic:
      diff = [&](const Cell& c) { return morse_differential_generic(m, c); };
      break;
  }
  return assemble(m, basis, diff);
}

IntegerChainComplex bar_complex_truncated(const FactorableMonoid& m, int max_degree) {
  if (!m.is_finite()) throw Error("the bar complex oracle needs a finite monoid");
  if (max_degree < 0) throw Error("negative degree");
  std::vector<Elem> nonunit;
  for (const auto& e : m.elements())
    if (!m.is_unit(e)) nonunit.push_back(e);
  std::vector<std::vector<Cell>> basis{{Cell{}}};
  for (int k = 1; k <= max_degree; ++k) {
    std::vector<Cell> next;
    for (const auto& c : basis.back())
      for (const auto& e : nonunit) {
        Cell d = c;
        d.push_back(e);
        next.push_back(std::move(d));
      }
    std::sort(next.begin(), next.end());
    basis.push_back(std::move(next));
  }
  return assemble(m, basis, [&](const Cell& c) { return bar_differential(m, c); });
}

}  // namespace fm
