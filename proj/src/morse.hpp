#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foundation.hpp"
#include "indexseq.hpp"

namespace fm {

// Bar cell [m_n|...|m_1], entries stored position 1 first.
using Cell = std::vector<Elem>;
// Formal integer combination of cells; zero coefficients are erased.
using Chain = std::map<Cell, long long>;

void chain_add(Chain& c, const Cell& cell, long long coeff);
void chain_add(Chain& c, const Chain& other, long long factor);
std::string format_cell(const FactorableMonoid& m, const Cell& c);
std::string format_chain(const FactorableMonoid& m, const Chain& c);

// d_i; nullopt when the result would contain the unit.
std::optional<Cell> face(const FactorableMonoid& m, const Cell& c, int i);
// Alternating sum of all faces.
Chain bar_differential(const FactorableMonoid& m, const Cell& c);
// f_i on cells: eta applied to the product of positions i+1 and i;
// nullopt (the zero cell) when a unit entry appears.
std::optional<Cell> f_cell(const FactorableMonoid& m, const Cell& c, int i);
std::optional<Cell> f_cell_seq(const FactorableMonoid& m, const Cell& c, const IndexSeq& seq);

struct CellStatus {
  enum Kind { Essential, Collapsible, Redundant } kind;
  int height;
};

int height(const FactorableMonoid& m, const Cell& c);
CellStatus classify(const FactorableMonoid& m, const Cell& c);
bool stable_at(const FactorableMonoid& m, const Cell& c, int position);
Cell matching_mu(const FactorableMonoid& m, const Cell& c);
// <d mu(z), z> for a redundant cell z.
long long matching_incidence(const FactorableMonoid& m, const Cell& z);

struct RedundantChainReport {
  bool terminated = true;
  long chains = 0;           // maximal chains followed
  long longest = 0;          // longest chain length
  long norm_preserving = 0;  // maximal norm-preserving chains
  std::vector<std::string> violations;
};

// Follows every z |- z' successor from the redundant faces of `start`
// (a cell of generators). Height sequences of norm-preserving chains must
// be right-most, reduced and small.
RedundantChainReport redundant_chains(const FactorableMonoid& m, const Cell& start,
                                      long budget = 1000000);

std::vector<Cell> visy_basis(const FactorableMonoid& m, int degree);

Chain project_essential(const FactorableMonoid& m, const Chain& c);
Chain visy_differential_lambda(const FactorableMonoid& m, const Cell& x);
Chain visy_differential_coherent(const FactorableMonoid& m, const Cell& x);
Chain morse_differential_generic(const FactorableMonoid& m, const Cell& x,
                                 long budget = 1000000);
// theta iterated to stabilisation, then projected on essential cells.
Chain theta_reduce(const FactorableMonoid& m, const Chain& c, long budget = 100000);

bool is_coherent(const FactorableMonoid& m, const Cell& x, const IndexSeq& seq);
// Sum over Lambda_{n-1} minus the x-coherent sequences of (-1)^#I f_I(x).
Chain prp_sum(const FactorableMonoid& m, const Cell& x);
// The involution on Lambda_{n-1} \ F_x used to cancel that sum.
IndexSeq xi(const FactorableMonoid& m, const Cell& x, const IndexSeq& seq);

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, long long> entries;
};

struct IntegerChainComplex {
  std::vector<std::vector<std::string>> labels;  // basis per degree
  std::vector<SparseMatrix> d;                   // d[k]: C_k -> C_{k-1}; d[0] is 0x0
  int top() const { return static_cast<int>(labels.size()) - 1; }
};

struct DegreeHomology {
  long rank = 0;
  std::vector<std::string> torsion;  // decimal, d1 | d2 | ...
};

struct HomologyResult {
  std::vector<DegreeHomology> groups;  // degrees 0 .. top-1
  std::string text() const;
};

// Elementary divisors (all nonzero diagonal entries, normalised to a
// divisibility chain) of an integer matrix.
std::vector<std::string> smith_diagonal(const SparseMatrix& a);

// Checks d_{k-1} d_k = 0, then computes H_k for k below the top degree.
HomologyResult homology(const IntegerChainComplex& cx);

enum class VisyMethod { Coherent, Lambda, Generic };
IntegerChainComplex visy_complex(const FactorableMonoid& m, int max_degree,
                                 VisyMethod method = VisyMethod::Coherent);
IntegerChainComplex bar_complex_truncated(const FactorableMonoid& m, int max_degree);

}  // namespace fm
