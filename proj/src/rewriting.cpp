#include "rewriting.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fm {

RewriteSystem::RewriteSystem(Alphabet alphabet, std::vector<RewriteRule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    if (r.lhs.empty()) throw Error("rewriting rule with empty left side");
    if (r.lhs == r.rhs) throw Error("rewriting rule with identical sides");
    for (int a : r.lhs)
      if (a < 0 || a >= alphabet_.size()) throw Error("rule letter out of range");
    for (int a : r.rhs)
      if (a < 0 || a >= alphabet_.size()) throw Error("rule letter out of range");
  }
}

RewriteSystem RewriteSystem::from_strings(
    const std::vector<std::string>& letters,
    const std::vector<std::pair<std::string, std::string>>& rules) {
  Alphabet a(letters);
  std::vector<RewriteRule> rs;
  for (const auto& [l, r] : rules) rs.push_back({parse_word(a, l), parse_word(a, r)});
  return RewriteSystem(std::move(a), std::move(rs));
}

std::string RewriteSystem::format_rule(int id) const {
  const auto& r = rules_.at(id);
  return format(r.lhs) + "→" + format(r.rhs);
}

static bool matches_at(const Word& w, const Word& pat, size_t at) {
  if (at + pat.size() > w.size()) return false;
  return std::equal(pat.begin(), pat.end(), w.begin() + at);
}

static Word replace_at(const Word& w, size_t at, size_t len, const Word& by) {
  Word r(w.begin(), w.begin() + at);
  r.insert(r.end(), by.begin(), by.end());
  r.insert(r.end(), w.begin() + at + len, w.end());
  return r;
}

std::vector<RewriteStep> rewrite_positions(const RewriteSystem& sys, const Word& w) {
  std::vector<RewriteStep> out;
  for (size_t at = 0; at < w.size(); ++at)
    for (int id = 0; id < sys.size(); ++id) {
      const auto& r = sys.rules()[id];
      if (matches_at(w, r.lhs, at))
        out.push_back({id, static_cast<int>(at) + 1,
                       replace_at(w, at, r.lhs.size(), r.rhs)});
    }
  return out;
}

bool is_irreducible(const RewriteSystem& sys, const Word& w) {
  for (size_t at = 0; at < w.size(); ++at)
    for (const auto& r : sys.rules())
      if (matches_at(w, r.lhs, at)) return false;
  return true;
}

Strategy Strategy::parse(const std::string& text) {
  Strategy s;
  if (text.empty() || text == "rightmost" || text == "rightmost-first") return s;
  if (text == "leftmost" || text == "leftmost-first") {
    s.kind = LeftmostFirst;
    return s;
  }
  const std::string prefix = "schedule:";
  if (text.rfind(prefix, 0) == 0) {
    s.kind = Schedule;
    std::string rest = text.substr(prefix.size());
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream in(rest);
    int p;
    while (in >> p) {
      if (p < 1) throw Error("schedule positions start at 1");
      s.schedule.push_back(p);
    }
    if (!in.eof() || s.schedule.empty()) throw Error("malformed schedule '" + text + "'");
    return s;
  }
  throw Error("unknown strategy '" + text + "'");
}

TerminationReport reduce(const RewriteSystem& sys, const Word& w, long budget,
                         const Strategy& strategy) {
  if (budget < 1) throw Error("budget must be at least 1");
  TerminationReport rep;
  rep.start = w;
  Word cur = w;
  std::unordered_map<Word, size_t, ElemHash> seen{{cur, 0}};
  size_t sched = 0;
  for (long step = 0;; ++step) {
    auto options = rewrite_positions(sys, cur);
    if (options.empty()) {
      rep.outcome = TerminationReport::Irreducible;
      break;
    }
    if (step == budget) {
      rep.outcome = TerminationReport::BudgetExhausted;
      break;
    }
    const RewriteStep* pick = nullptr;
    switch (strategy.kind) {
      case Strategy::RightmostFirst:
        pick = &options.front();
        break;
      case Strategy::LeftmostFirst: {
        int best = -1;
        for (const auto& o : options)
          if (o.position > best) best = o.position;
        for (const auto& o : options)
          if (o.position == best) {
            pick = &o;
            break;
          }
        break;
      }
      case Strategy::Schedule:
        for (size_t k = 0; k < strategy.schedule.size() && !pick; ++k) {
          int p = strategy.schedule[(sched + k) % strategy.schedule.size()];
          for (const auto& o : options)
            if (o.position == p) {
              pick = &o;
              sched += k + 1;
              break;
            }
        }
        if (!pick) pick = &options.front();
        break;
    }
    rep.steps.push_back(*pick);
    cur = pick->result;
    auto [it, fresh] = seen.emplace(cur, rep.steps.size());
    if (!fresh) {
      rep.outcome = TerminationReport::CycleFound;
      rep.cycle_begin = it->second;
      break;
    }
  }
  rep.end = cur;
  return rep;
}

MinimalityReport is_strongly_minimal(const RewriteSystem& sys) {
  MinimalityReport rep;
  for (int id = 0; id < sys.size(); ++id) {
    const auto& r = sys.rules()[id];
    if (!is_irreducible(sys, r.rhs)) {
      rep.rhs_irreducible = false;
      rep.witnesses.push_back("right side of " + sys.format_rule(id) + " is reducible");
    }
    for (size_t at = 0; at < r.lhs.size(); ++at)
      for (int other = 0; other < sys.size(); ++other) {
        if (other == id) continue;
        if (matches_at(r.lhs, sys.rules()[other].lhs, at)) {
          if (rep.lhs_minimal || rep.witnesses.size() < 8)
            rep.witnesses.push_back("left side of " + sys.format_rule(id) +
                                    " is reducible by " + sys.format_rule(other));
          rep.lhs_minimal = false;
        }
      }
  }
  for (int a = 0; a < sys.alphabet().size(); ++a)
    if (!is_irreducible(sys, Word{a})) {
      rep.letters_irreducible = false;
      rep.witnesses.push_back("letter " + sys.alphabet().name(a) + " is reducible");
    }
  return rep;
}

std::vector<CriticalPair> critical_pairs(const RewriteSystem& sys) {
  // Work in reading order (leftmost letter first) and convert back.
  auto rd = [](const Word& w) { return Word(w.rbegin(), w.rend()); };
  std::vector<CriticalPair> out;
  for (int i = 0; i < sys.size(); ++i) {
    Word li = rd(sys.rules()[i].lhs), ri = rd(sys.rules()[i].rhs);
    for (int j = 0; j < sys.size(); ++j) {
      Word lj = rd(sys.rules()[j].lhs), rj = rd(sys.rules()[j].rhs);
      // proper overlaps: li = u v, lj = v w
      for (size_t k = 1; k < li.size() && k < lj.size(); ++k) {
        if (!std::equal(li.end() - k, li.end(), lj.begin())) continue;
        Word u(li.begin(), li.end() - k), w(lj.begin() + k, lj.end());
        Word peak = li;
        peak.insert(peak.end(), w.begin(), w.end());
        Word left = ri;
        left.insert(left.end(), w.begin(), w.end());
        Word right = u;
        right.insert(right.end(), rj.begin(), rj.end());
        out.push_back({i, j, rd(peak), rd(left), rd(right)});
      }
      // containments: lj is a factor of li
      if (i == j || lj.size() > li.size()) continue;
      for (size_t o = 0; o + lj.size() <= li.size(); ++o) {
        if (!std::equal(lj.begin(), lj.end(), li.begin() + o)) continue;
        Word right(li.begin(), li.begin() + o);
        right.insert(right.end(), rj.begin(), rj.end());
        right.insert(right.end(), li.begin() + o + lj.size(), li.end());
        out.push_back({i, j, rd(li), rd(ri), rd(right)});
      }
    }
  }
  return out;
}

namespace {

struct Reach {
  std::unordered_set<Word, ElemHash> words;
  bool complete = true;
};

Reach reachable(const RewriteSystem& sys, const Word& w, long budget) {
  Reach r;
  std::deque<Word> q{w};
  r.words.insert(w);
  while (!q.empty()) {
    Word cur = q.front();
    q.pop_front();
    for (auto& s : rewrite_positions(sys, cur)) {
      if (r.words.count(s.result)) continue;
      if (static_cast<long>(r.words.size()) >= budget) {
        r.complete = false;
        return r;
      }
      r.words.insert(s.result);
      q.push_back(std::move(s.result));
    }
  }
  return r;
}

Word least_irreducible(const RewriteSystem& sys, const Reach& r) {
  std::vector<Word> irr;
  for (const auto& w : r.words)
    if (is_irreducible(sys, w)) irr.push_back(w);
  std::sort(irr.begin(), irr.end());
  return irr.empty() ? Word{} : irr.front();
}

}  // namespace

ConfluenceReport check_confluence_on_peaks(const RewriteSystem& sys, long budget) {
  ConfluenceReport rep;
  for (const auto& cp : critical_pairs(sys)) {
    ++rep.peaks;
    if (cp.left == cp.right) {
      ++rep.joinable;
      continue;
    }
    Reach a = reachable(sys, cp.left, budget);
    Reach b = reachable(sys, cp.right, budget);
    bool meet = false;
    for (const auto& w : a.words)
      if (b.words.count(w)) {
        meet = true;
        break;
      }
    if (meet) {
      ++rep.joinable;
    } else if (a.complete && b.complete) {
      ++rep.non_joinable;
      rep.witnesses.push_back({cp.peak, least_irreducible(sys, a), least_irreducible(sys, b)});
    } else {
      ++rep.undecided;
    }
  }
  return rep;
}

std::optional<long> longest_rewriting_sequence(const RewriteSystem& sys,
                                               const Word& w, long budget) {
  std::unordered_map<Word, long, ElemHash> memo;  // -1 while on the stack
  struct Frame {
    Word word;
    std::vector<RewriteStep> next;
    size_t i = 0;
    long best = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({w, rewrite_positions(sys, w)});
  memo[w] = -1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == f.next.size()) {
      long v = f.best;
      memo[f.word] = v;
      stack.pop_back();
      if (!stack.empty()) stack.back().best = std::max(stack.back().best, v + 1);
      continue;
    }
    Word nxt = f.next[f.i++].result;
    auto it = memo.find(nxt);
    if (it != memo.end()) {
      if (it->second < 0) return std::nullopt;
      f.best = std::max(f.best, it->second + 1);
      continue;
    }
    if (static_cast<long>(memo.size()) >= budget) return std::nullopt;
    memo[nxt] = -1;
    auto steps = rewrite_positions(sys, nxt);
    stack.push_back({std::move(nxt), std::move(steps)});
  }
  return memo[w];
}

long effective_sequence_bound(int n) {
  if (n < 1) throw Error("effective_sequence_bound needs n >= 1");
  long prev = 1, cur = 4;
  if (n == 1) return prev;
  for (int k = 3; k <= n; ++k) {
    long nxt = 3 * cur + prev + 3;
    prev = cur;
    cur = nxt;
  }
  return cur;
}

std::string format_trace(const RewriteSystem& sys, const TerminationReport& rep) {
  std::ostringstream os;
  for (const auto& s : rep.steps)
    os << "pos=" << s.position << " rule=(" << sys.format_rule(s.rule)
       << ") word=" << sys.format(s.result) << "\n";
  return os.str();
}

}  // namespace fm
