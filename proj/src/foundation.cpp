#include "foundation.hpp"

#include <cctype>
#include <deque>
#include <sstream>

namespace fm {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error("alphabet must not be empty");
  for (int i = 0; i < size(); ++i) {
    const std::string& s = letters_[i];
    if (s.empty()) throw Error("empty letter name");
    if (s == "1") throw Error("letter name '1' is reserved for the unit");
    for (char c : s)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw Error("letter name contains whitespace: '" + s + "'");
    if (!index_.emplace(s, i).second) throw Error("duplicate letter '" + s + "'");
  }
}

int Alphabet::index(const std::string& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

Word concat(const Word& u, const Word& v) {
  Word r;
  r.reserve(u.size() + v.size());
  r.insert(r.end(), v.begin(), v.end());
  r.insert(r.end(), u.begin(), u.end());
  return r;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
  Word w;
  auto toks = split_tokens(text);
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    if (*it == "1") continue;
    int i = alphabet.index(*it);
    if (i < 0) throw Error("unknown letter '" + *it + "'");
    w.push_back(i);
  }
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (!s.empty()) s += ' ';
    s += *it == kUnit ? std::string("1") : alphabet.name(*it);
  }
  return s;
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << title << ": " << (ok() ? "pass" : "FAIL") << " (" << checked
     << " checked";
  if (failures) os << ", " << failures << " violations";
  os << ")";
  for (const auto& w : witnesses) os << "\n  witness: " << w;
  return os.str();
}

Elem FactorableMonoid::evaluate(const std::vector<int>& gens) const {
  Elem x = unit();
  for (int g : gens) x = multiply(x, generator(g));
  return x;
}

int FactorableMonoid::parse_generator(const std::string& token) const {
  for (int g = 0; g < generator_count(); ++g)
    if (generator_name(g) == token) return g;
  return -1;
}

Elem FactorableMonoid::parse_element(const std::string& text) const {
  std::vector<int> gens;
  for (const auto& tok : split_tokens(text)) {
    if (tok == "1") continue;
    int g = parse_generator(tok);
    if (g < 0) throw Error("unknown generator '" + tok + "'");
    gens.push_back(g);
  }
  return evaluate(gens);
}

Ball word_ball(const FactorableMonoid& m, int radius) {
  Ball b;
  b.radius = radius;
  Elem one = m.unit();
  b.elems.push_back(one);
  b.norms.push_back(0);
  b.index.emplace(one, 0);
  size_t begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t end = b.elems.size();
    for (size_t i = begin; i < end; ++i)
      for (int g = 0; g < m.generator_count(); ++g) {
        Elem y = m.multiply(b.elems[i], m.generator(g));
        if (b.index.count(y)) continue;
        b.index.emplace(y, static_cast<int>(b.elems.size()));
        b.elems.push_back(std::move(y));
        b.norms.push_back(r);
      }
    begin = end;
    if (b.elems.size() == end) {
      b.exhausted = true;
      return b;
    }
  }
  for (size_t i = begin; i < b.elems.size(); ++i)
    for (int g = 0; g < m.generator_count(); ++g)
      if (!b.index.count(m.multiply(b.elems[i], m.generator(g)))) return b;
  b.exhausted = true;
  return b;
}

std::optional<int> word_norm_bfs(const FactorableMonoid& m, const Elem& x,
                                 int radius) {
  if (x == m.unit()) return 0;
  std::unordered_map<Elem, int, ElemHash> seen;
  std::deque<Elem> frontier{m.unit()};
  seen.emplace(m.unit(), 0);
  while (!frontier.empty()) {
    Elem cur = frontier.front();
    frontier.pop_front();
    int d = seen[cur];
    if (d == radius) continue;
    for (int g = 0; g < m.generator_count(); ++g) {
      Elem y = m.multiply(cur, m.generator(g));
      if (seen.count(y)) continue;
      if (y == x) return d + 1;
      seen.emplace(y, d + 1);
      frontier.push_back(std::move(y));
    }
  }
  return std::nullopt;
}

CheckReport validate_handle(const FactorableMonoid& m, int radius) {
  CheckReport rep;
  rep.title = "factorization map (F1-F3)";
  Ball ball = word_ball(m, radius);
  auto bfs_norm = [&](const Elem& x) -> int {
    if (auto n = ball.norm_of(x)) return *n;
    auto n = word_norm_bfs(m, x, radius + 2);
    return n ? *n : -1;
  };
  Elem one = m.unit();
  for (size_t i = 0; i < ball.elems.size(); ++i) {
    const Elem& x = ball.elems[i];
    ++rep.checked;
    auto [pre, last] = m.eta(x);
    std::string wx = m.format(x);
    if (m.multiply(pre, last) != x) rep.fail("F1 at " + wx);
    int nx = ball.norms[i];
    if (m.norm(x) != nx)
      rep.fail("norm of " + wx + " is " + std::to_string(m.norm(x)) +
               ", word length " + std::to_string(nx));
    int np = bfs_norm(pre), nl = bfs_norm(last);
    if (np < 0 || nl < 0 || np + nl != nx) rep.fail("F2 at " + wx);
    if (x != one && m.generator_index(last) < 0) rep.fail("F3 at " + wx);
    if (x == one && (pre != one || last != one)) rep.fail("eta(1) != (1,1)");
  }
  return rep;
}

FiniteTableMonoid::FiniteTableMonoid(std::string name,
                                     std::vector<std::string> names, int unit,
                                     std::vector<int> generators,
                                     std::vector<std::vector<int>> table)
    : name_(std::move(name)),
      names_(std::move(names)),
      unit_(unit),
      gens_(std::move(generators)),
      table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw Error("finite monoid needs at least the unit");
  if (unit_ < 0 || unit_ >= n) throw Error("unit index out of range");
  if (static_cast<int>(table_.size()) != n) throw Error("table has wrong row count");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error("table has wrong column count");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("table entry out of range");
  }
  for (int i = 0; i < n; ++i)
    if (table_[unit_][i] != i || table_[i][unit_] != i)
      throw Error("unit does not act as identity on " + names_[i]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error("multiplication is not associative at (" + names_[a] +
                      ", " + names_[b] + ", " + names_[c] + ")");
  gen_index_.assign(n, -1);
  for (size_t g = 0; g < gens_.size(); ++g) {
    int e = gens_[g];
    if (e < 0 || e >= n) throw Error("generator out of range");
    if (e == unit_) throw Error("the unit cannot be a generator");
    if (gen_index_[e] >= 0) throw Error("duplicate generator");
    gen_index_[e] = static_cast<int>(g);
  }
  std::unordered_map<std::string, int> seen;
  for (const auto& s : names_)
    if (!seen.emplace(s, 0).second) throw Error("duplicate element name '" + s + "'");
}

void FiniteTableMonoid::set_eta(std::vector<std::pair<int, int>> eta) {
  const int n = size();
  if (static_cast<int>(eta.size()) != n) throw Error("eta table has wrong size");
  for (auto [p, g] : eta)
    if (p < 0 || p >= n || g < 0 || g >= n) throw Error("eta entry out of range");
  eta_ = std::move(eta);
  // norm through the eta recursion; -1 marks a cycle
  norms_.assign(n, -2);
  for (int x = 0; x < n; ++x) {
    std::vector<int> path;
    int cur = x;
    while (cur != unit_ && norms_[cur] == -2 && path.size() <= static_cast<size_t>(n)) {
      path.push_back(cur);
      cur = eta_[cur].first;
    }
    int base;
    if (cur == unit_) base = 0;
    else if (norms_[cur] != -2) base = norms_[cur];
    else base = -1;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      base = base < 0 ? -1 : base + 1;
      norms_[*it] = base;
    }
  }
  norms_[unit_] = 0;
}

std::pair<Elem, Elem> FiniteTableMonoid::eta(const Elem& x) const {
  if (eta_.empty()) throw Error("no factorization map attached to " + name_);
  auto [p, g] = eta_.at(x.at(0));
  return {{p}, {g}};
}

int FiniteTableMonoid::norm(const Elem& x) const {
  if (norms_.empty()) throw Error("no factorization map attached to " + name_);
  return norms_.at(x.at(0));
}

std::vector<Elem> FiniteTableMonoid::elements() const {
  std::vector<Elem> out;
  for (int i = 0; i < size(); ++i) out.push_back({i});
  return out;
}

}  // namespace fm
