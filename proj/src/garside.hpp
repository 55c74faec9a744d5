#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "foundation.hpp"

namespace fm {

struct CoxeterMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<int>> m;  // 0 stands for infinity; diagonal 1

  // Pairs not listed get m = infinity.
  static CoxeterMatrix from_pairs(std::vector<std::string> names,
                                  const std::vector<std::tuple<std::string, std::string, int>>& pairs);
  int rank() const { return static_cast<int>(names.size()); }
  void validate() const;
};

// Finite Coxeter group enumerated through its geometric representation.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(CoxeterMatrix matrix, int bound = 1000);

  const CoxeterMatrix& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(length_.size()); }
  int rank() const { return matrix_.rank(); }
  int generator(int s) const { return gen_[s]; }
  int mul(int x, int y) const { return mul_[static_cast<size_t>(x) * size() + y]; }
  int inv(int x) const { return inv_[x]; }
  int length(int x) const { return length_[x]; }
  uint64_t left_descents(int x) const { return ldes_[x]; }
  uint64_t right_descents(int x) const { return rdes_[x]; }
  int longest() const { return longest_; }
  // Reduced word, letters left to right.
  const std::vector<int>& reduced_word(int x) const { return word_[x]; }

  bool left_divides(int x, int y) const { return length(x) + length(mul(inv(x), y)) == length(y); }
  bool right_divides(int x, int y) const { return length(mul(y, inv(x))) + length(x) == length(y); }
  int rlcm(int x, int y) const;
  int llcm(int x, int y) const;
  int rgcd(int x, int y) const;  // greatest common right divisor
  int right_complement(int x, int y) const { return mul(inv(x), rlcm(x, y)); }  // x\y
  int left_complement(int x, int y) const { return mul(llcm(x, y), inv(y)); }   // x/y

 private:
  CoxeterMatrix matrix_;
  std::vector<int> gen_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> length_;
  std::vector<uint64_t> ldes_, rdes_;
  std::vector<std::vector<int>> word_;
  int longest_ = 0;
};

// Artin monoid of finite type with E = the square-free (simple) elements.
// Elements are right-greedy normal forms: simple indices of the Coxeter
// group, position 1 first. Generator g is the group element g + 1.
class ArtinMonoid : public FactorableMonoid {
 public:
  explicit ArtinMonoid(std::shared_ptr<const CoxeterGroup> group);

  const CoxeterGroup& group() const { return *group_; }
  std::string kind() const override { return "artin"; }
  Elem unit() const override { return {}; }
  int generator_count() const override { return group_->size() - 1; }
  Elem generator(int g) const override { return {g + 1}; }
  std::string generator_name(int g) const override { return simple_name(g + 1); }
  Elem multiply(const Elem& x, const Elem& y) const override;
  std::pair<Elem, Elem> eta(const Elem& x) const override;
  int norm(const Elem& x) const override { return static_cast<int>(x.size()); }
  std::string format(const Elem& x) const override;
  int generator_index(const Elem& x) const override {
    return x.size() == 1 ? x[0] - 1 : -1;
  }

  std::string simple_name(int w) const;
  // Simple element named by a token: a simple's name or a single letter.
  int parse_simple(const std::string& token) const;
  // Element of a word in Artin letters or simple names, left to right.
  Elem from_tokens(const std::vector<std::string>& tokens) const;
  // Right-greedy normal form of a word of simples written left to right.
  Elem normalize(const std::vector<int>& simples_left_to_right) const;
  // (u, v) with u left of v is normal iff R(u) is contained in L(v).
  bool normal_pair(int u, int v) const;
  Elem delta() const { return {group_->longest()}; }
  // Apply an automorphism of the simples letterwise.
  Elem map_letters(const Elem& x, const std::vector<int>& perm) const;
  // Length in Artin letters.
  int letter_length(const Elem& x) const;

 private:
  std::shared_ptr<const CoxeterGroup> group_;
};

// Greedy normal form of a word over Artin letters / simple names.
Elem greedy_nf(const ArtinMonoid& m, const std::string& word);

// Garside element, divisors, star maps and phi, plus the group of fractions.
// Group elements w Delta^{-m} are coded [m, w...] with Delta not right
// dividing w when m > 0.
class GarsideStructure {
 public:
  explicit GarsideStructure(std::shared_ptr<const ArtinMonoid> monoid);
  // Validates that `delta` is a Garside element with the same divisors as
  // the longest element.
  static GarsideStructure with_delta(std::shared_ptr<const ArtinMonoid> monoid, const Elem& delta);

  const ArtinMonoid& monoid() const { return *monoid_; }
  std::shared_ptr<const ArtinMonoid> monoid_ptr() const { return monoid_; }
  const CoxeterGroup& group() const { return monoid_->group(); }
  int delta_simple() const { return group().longest(); }
  Elem delta() const { return monoid_->delta(); }
  // Nontrivial divisors of Delta as simple indices, generator order.
  std::vector<int> divisors() const;

  int star(int t) const;      // t\Delta
  int pre_star(int t) const;  // Delta/t, also written alpha(t)
  int phi(int t) const;       // Delta phi(t) = t Delta
  int delta_map(int t) const; // phi^{-1}
  Elem phi_power(const Elem& x, int k) const;  // k may be negative

  // ---- monoid divisibility through the group of fractions
  bool left_divides(const Elem& x, const Elem& y) const;
  bool right_divides(const Elem& x, const Elem& y) const;
  Elem rgcd_delta(const Elem& x) const;

  // ---- group of fractions
  Elem g_unit() const { return {0}; }
  Elem g_from_monoid(const Elem& x) const;
  Elem g_simple_inverse(int t) const;
  Elem g_mul(const Elem& a, const Elem& b) const;
  Elem g_inv(const Elem& a) const;
  Elem g_delta_power(int k) const;  // Delta^k, k may be negative
  static int g_exponent(const Elem& a) { return a.at(0); }
  static Elem g_positive(const Elem& a) { return Elem(a.begin() + 1, a.end()); }
  bool g_in_monoid(const Elem& a) const { return a.at(0) == 0; }

  // x_p ... x_1 y_1^{-1} ... y_q^{-1}; x read left to right, y as y_1..y_q.
  struct XYForm {
    std::vector<int> x;
    std::vector<int> y;
  };
  XYForm to_xy(const Elem& a) const;
  Elem from_xy(const XYForm& f) const;
  std::string format_group(const Elem& a) const;
  std::string format_xy(const XYForm& f) const;
  // Lemma-level norm: max(|w|, m).
  int g_norm(const Elem& a) const;

 private:
  std::shared_ptr<const ArtinMonoid> monoid_;
  std::vector<int> phi_, phi_inv_;
};

// Garside group with E = D union D^{-1}; generator g < |D| is the divisor
// g + 1, the others are inverses.
class GarsideGroup : public FactorableMonoid {
 public:
  explicit GarsideGroup(std::shared_ptr<const GarsideStructure> s);

  const GarsideStructure& structure() const { return *s_; }
  std::string kind() const override { return "garside-group"; }
  Elem unit() const override { return {0}; }
  int generator_count() const override { return 2 * d_; }
  Elem generator(int g) const override;
  std::string generator_name(int g) const override;
  Elem multiply(const Elem& x, const Elem& y) const override { return s_->g_mul(x, y); }
  std::pair<Elem, Elem> eta(const Elem& x) const override;
  int norm(const Elem& x) const override { return s_->g_norm(x); }
  std::string format(const Elem& x) const override { return s_->format_xy(s_->to_xy(x)); }
  int generator_index(const Elem& x) const override;

 private:
  std::shared_ptr<const GarsideStructure> s_;
  int d_;
};

// Square-free elements as positive words, with closure under llcm and
// left-complement checked.
struct QFReport {
  std::vector<std::string> elements;
  CheckReport closure;
};
QFReport square_free_elements(const CoxeterMatrix& matrix, int bound = 1000);

std::vector<CheckReport> computation_rules_check(const GarsideStructure& s);
CheckReport norm_explicit_check(const GarsideStructure& s, int samples, unsigned seed = 7);
CheckReport incremental_prefix_lemma_check(const FactorableMonoid& m, int radius);
// Right-cancellativity, llcm universal property and the llcm product rule
// on the radius ball.
std::vector<CheckReport> validate_gaussian_hypotheses(const FactorableMonoid& m, int radius);
CheckReport right_cancellativity_probe(const FactorableMonoid& m, int radius);

// Letters of the eta normal form, position 1 first.
std::vector<Elem> eta_normal_form(const FactorableMonoid& m, const Elem& x);

}  // namespace fm
