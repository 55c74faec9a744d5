#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "foundation.hpp"
#include "rewriting.hpp"

namespace fm {

using LetterPair = std::pair<int32_t, int32_t>;  // pointed letters, kUnit allowed

// Sparse local factorization table phi on E+ x E+. Absent pairs are fixed
// points; phi(s, 1) = (1, s) and phi(1, s) = (1, s) are synthesized.
class PhiTable {
 public:
  PhiTable(Alphabet alphabet, std::vector<std::pair<LetterPair, LetterPair>> entries);

  const Alphabet& alphabet() const { return alphabet_; }
  int size() const { return alphabet_.size(); }
  LetterPair phi(int32_t a, int32_t b) const;
  bool stable(int32_t a, int32_t b) const { return phi(a, b) == LetterPair{a, b}; }
  // Non-trivial entries in insertion order.
  const std::vector<std::pair<LetterPair, LetterPair>>& entries() const { return entries_; }

  // phi applied at positions (i+1, i); the tuple is stored position 1 first.
  Word phi_i(Word tuple, int i) const;
  bool totally_stable(const Word& tuple) const;

  // Recursive normal form; units are dropped. Throws when the recursion
  // depth exceeds |w|(|w|+1).
  Word normal_form(const Word& w) const;
  // Normal form of x.w where x is already a normal form.
  Word append(Word x, const Word& w) const;

  std::string format(const Word& w) const { return format_word(alphabet_, w); }
  std::string format_letter(int32_t a) const {
    return a == kUnit ? std::string("1") : alphabet_.name(a);
  }

 private:
  Word nf(const Word& w, int depth, int limit) const;
  Word insert(Word nf_word, int32_t letter, int depth, int limit) const;

  Alphabet alphabet_;
  std::vector<std::pair<LetterPair, LetterPair>> entries_;
  std::unordered_map<int64_t, LetterPair> map_;
};

struct LocalAxiomReport {
  std::array<CheckReport, 5> axioms;
  // Totally unstable triples (a, b, c) on which axiom 5 was evaluated,
  // written left to right.
  std::vector<std::array<int32_t, 3>> axiom5_triples;
  bool ok() const {
    for (const auto& a : axioms)
      if (!a.ok()) return false;
    return true;
  }
  std::string text() const;
};

LocalAxiomReport check_local_factorability(const PhiTable& table);

// eta of a normal form word: (all but position 1, letter at position 1).
std::pair<Word, int32_t> eta_of(const Word& nf_word);

RewriteSystem induced_rewriting_system(const PhiTable& table);
// Same construction from eta: every unstable pair (a, b) of generators
// rewrites to the eta normal form of ab.
RewriteSystem induced_rewriting_system(const FactorableMonoid& m);

// Monoid presented by a local factorization table; elements are NF words.
class PhiMonoid : public FactorableMonoid {
 public:
  explicit PhiMonoid(std::shared_ptr<const PhiTable> table, std::string name = "phi")
      : table_(std::move(table)), name_(std::move(name)) {}

  const PhiTable& table() const { return *table_; }
  std::shared_ptr<const PhiTable> table_ptr() const { return table_; }
  const std::string& name() const { return name_; }

  std::string kind() const override { return "phi-table"; }
  Elem unit() const override { return {}; }
  int generator_count() const override { return table_->size(); }
  Elem generator(int g) const override { return {g}; }
  std::string generator_name(int g) const override { return table_->alphabet().name(g); }
  Elem multiply(const Elem& x, const Elem& y) const override { return table_->append(x, y); }
  std::pair<Elem, Elem> eta(const Elem& x) const override;
  int norm(const Elem& x) const override { return static_cast<int>(x.size()); }
  std::string format(const Elem& x) const override { return table_->format(x); }
  int generator_index(const Elem& x) const override { return x.size() == 1 ? x[0] : -1; }

 private:
  std::shared_ptr<const PhiTable> table_;
  std::string name_;
};

// f_i on a tuple of elements (position 1 first): positions (i+1, i) are
// replaced by eta of their product. Units are kept.
std::vector<Elem> apply_f(const FactorableMonoid& m, std::vector<Elem> tuple, int i);
int norm_sum(const FactorableMonoid& m, const std::vector<Elem>& tuple);

CheckReport check_recognition_principle(const FactorableMonoid& m, int radius);
CheckReport check_graded_equality(const FactorableMonoid& m, int radius);
CheckReport check_strong_conditions(const FactorableMonoid& m, int radius);

// Deterministic search for a factorization map on a finite monoid: every
// element of norm >= 2 gets one geodesic split (prefix, generator); the
// first assignment passing graded equality on all triples is returned.
std::optional<std::vector<std::pair<int, int>>> search_factorability(
    const FiniteTableMonoid& m, long max_candidates = 1000000);

}  // namespace fm
