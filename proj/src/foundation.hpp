#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fm {

// Canonical element code. Each backend decides what the integers mean;
// two codes are equal iff the elements are equal.
using Elem = std::vector<int32_t>;

// Letters of a word, position 1 (the rightmost letter) stored at index 0.
using Word = std::vector<int32_t>;

// Unit mark inside pointed tuples (E+ = E with 1 adjoined).
constexpr int32_t kUnit = -1;

struct ElemHash {
  size_t operator()(const Elem& e) const noexcept {
    uint64_t h = 1469598103934665603ull ^ e.size();
    for (int32_t v : e) {
      h ^= static_cast<uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& name(int i) const { return letters_.at(i); }
  int index(const std::string& s) const;
  const std::vector<std::string>& letters() const { return letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, int> index_;
};

Word concat(const Word& u, const Word& v);

// Whitespace separated names, read left to right as usually written.
// "1" tokens denote the unit and are skipped.
Word parse_word(const Alphabet& alphabet, const std::string& text);
std::string format_word(const Alphabet& alphabet, const Word& w);
std::vector<std::string> split_tokens(const std::string& text);

// Collects failures of a property check; keeps the first few witnesses.
struct CheckReport {
  std::string title;
  long checked = 0;
  long failures = 0;
  std::vector<std::string> witnesses;

  bool ok() const { return failures == 0; }
  void fail(const std::string& witness) {
    ++failures;
    if (witnesses.size() < 8) witnesses.push_back(witness);
  }
  std::string summary() const;
};

// The uniform handle every algorithm consumes: a monoid with a finite
// generating set E and a factorization map eta.
class FactorableMonoid {
 public:
  virtual ~FactorableMonoid() = default;

  virtual std::string kind() const = 0;
  virtual Elem unit() const = 0;
  virtual int generator_count() const = 0;
  virtual Elem generator(int g) const = 0;
  virtual std::string generator_name(int g) const = 0;
  virtual Elem multiply(const Elem& x, const Elem& y) const = 0;
  virtual std::pair<Elem, Elem> eta(const Elem& x) const = 0;
  virtual int norm(const Elem& x) const = 0;
  virtual std::string format(const Elem& x) const = 0;
  // Index of x in E, or -1.
  virtual int generator_index(const Elem& x) const = 0;

  virtual bool is_finite() const { return false; }
  virtual std::vector<Elem> elements() const {
    throw Error("monoid is not finite");
  }

  bool is_unit(const Elem& x) const { return x == unit(); }
  // (x, y) is stable iff eta(xy) = (x, y).
  bool stable(const Elem& x, const Elem& y) const {
    auto e = eta(multiply(x, y));
    return e.first == x && e.second == y;
  }
  Elem evaluate(const std::vector<int>& gens_left_to_right) const;
  int parse_generator(const std::string& token) const;
  Elem parse_element(const std::string& text) const;
};

// Breadth-first ball around the unit, right multiplication by generators.
struct Ball {
  int radius = 0;
  std::vector<Elem> elems;
  std::vector<int> norms;
  std::unordered_map<Elem, int, ElemHash> index;
  bool exhausted = false;  // no element of norm radius+1 exists

  std::optional<int> norm_of(const Elem& x) const {
    auto it = index.find(x);
    if (it == index.end()) return std::nullopt;
    return norms[it->second];
  }
};

Ball word_ball(const FactorableMonoid& m, int radius);

// Minimal number of generators multiplying to x; nullopt means
// "unknown beyond radius".
std::optional<int> word_norm_bfs(const FactorableMonoid& m, const Elem& x,
                                 int radius);

CheckReport validate_handle(const FactorableMonoid& m, int radius);

// Finite monoid given by its multiplication table.
class FiniteTableMonoid : public FactorableMonoid {
 public:
  FiniteTableMonoid(std::string name, std::vector<std::string> names,
                    int unit, std::vector<int> generators,
                    std::vector<std::vector<int>> table);

  // eta given per element index as (prefix index, generator element index).
  void set_eta(std::vector<std::pair<int, int>> eta);
  bool has_eta() const { return !eta_.empty(); }

  std::string kind() const override { return "finite-table"; }
  Elem unit() const override { return {unit_}; }
  int generator_count() const override {
    return static_cast<int>(gens_.size());
  }
  Elem generator(int g) const override { return {gens_.at(g)}; }
  std::string generator_name(int g) const override {
    return names_.at(gens_.at(g));
  }
  Elem multiply(const Elem& x, const Elem& y) const override {
    return {table_[x.at(0)][y.at(0)]};
  }
  std::pair<Elem, Elem> eta(const Elem& x) const override;
  int norm(const Elem& x) const override;
  std::string format(const Elem& x) const override {
    return names_.at(x.at(0));
  }
  int generator_index(const Elem& x) const override {
    return gen_index_.at(x.at(0));
  }
  bool is_finite() const override { return true; }
  std::vector<Elem> elements() const override;

  int size() const { return static_cast<int>(names_.size()); }
  int unit_index() const { return unit_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& generator_elements() const { return gens_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::pair<int, int>>& eta_table() const { return eta_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<std::string> names_;
  int unit_;
  std::vector<int> gens_;
  std::vector<int> gen_index_;
  std::vector<std::vector<int>> table_;
  std::vector<std::pair<int, int>> eta_;
  std::vector<int> norms_;
};

}  // namespace fm
