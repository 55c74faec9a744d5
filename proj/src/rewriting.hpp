#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "foundation.hpp"

namespace fm {

struct RewriteRule {
  Word lhs;  // position 1 first, like every Word
  Word rhs;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(Alphabet alphabet, std::vector<RewriteRule> rules);
  // Rules written left to right, e.g. {"a b a", "b a b"}.
  static RewriteSystem from_strings(
      const std::vector<std::string>& letters,
      const std::vector<std::pair<std::string, std::string>>& rules);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  int size() const { return static_cast<int>(rules_.size()); }
  std::string format_rule(int id) const;
  std::string format(const Word& w) const { return format_word(alphabet_, w); }
  Word parse(const std::string& s) const { return parse_word(alphabet_, s); }

 private:
  Alphabet alphabet_;
  std::vector<RewriteRule> rules_;
};

struct RewriteStep {
  int rule;
  int position;  // position of the rightmost letter of the replaced factor
  Word result;
};

// All one-step rewrites, position ascending from the right, then rule id.
std::vector<RewriteStep> rewrite_positions(const RewriteSystem& sys, const Word& w);
bool is_irreducible(const RewriteSystem& sys, const Word& w);

struct Strategy {
  enum Kind { RightmostFirst, LeftmostFirst, Schedule } kind = RightmostFirst;
  // Schedule: positions tried cyclically; when a whole round finds nothing
  // applicable the rightmost rewrite is taken instead.
  std::vector<int> schedule;

  static Strategy parse(const std::string& text);
};

struct TerminationReport {
  enum Outcome { Irreducible, CycleFound, BudgetExhausted } outcome;
  Word start;
  Word end;
  std::vector<RewriteStep> steps;
  // For CycleFound: steps[cycle_begin..] lead from `end` back to `end`.
  size_t cycle_begin = 0;
  size_t cycle_length() const { return steps.size() - cycle_begin; }
};

TerminationReport reduce(const RewriteSystem& sys, const Word& w, long budget,
                         const Strategy& strategy = {});

struct MinimalityReport {
  bool rhs_irreducible = true;
  bool lhs_minimal = true;
  bool letters_irreducible = true;
  std::vector<std::string> witnesses;
  bool minimal() const { return rhs_irreducible && lhs_minimal; }
  bool strongly_minimal() const { return minimal() && letters_irreducible; }
};

MinimalityReport is_strongly_minimal(const RewriteSystem& sys);

struct CriticalPair {
  int rule_a;
  int rule_b;
  Word peak;
  Word left;   // peak rewritten with rule_a
  Word right;  // peak rewritten with rule_b
};

std::vector<CriticalPair> critical_pairs(const RewriteSystem& sys);

struct ConfluenceReport {
  long peaks = 0;
  long joinable = 0;
  long non_joinable = 0;
  long undecided = 0;
  // non-joinable peaks: (peak, irreducible from left, irreducible from right)
  std::vector<std::array<Word, 3>> witnesses;
  bool all_joinable() const { return non_joinable == 0 && undecided == 0; }
};

ConfluenceReport check_confluence_on_peaks(const RewriteSystem& sys, long budget);

// Longest rewriting sequence starting at w; nullopt when a cycle is
// reachable or more than `budget` words are visited.
std::optional<long> longest_rewriting_sequence(const RewriteSystem& sys,
                                               const Word& w, long budget);

// c(1) = 1, c(2) = 4, c(n) = 3c(n-1) + c(n-2) + 3.
long effective_sequence_bound(int n);

std::string format_trace(const RewriteSystem& sys, const TerminationReport& rep);

}  // namespace fm
