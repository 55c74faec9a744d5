#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "factorability.hpp"
#include "foundation.hpp"
#include "garside.hpp"

namespace fm {

// A monoid-spec document turned into live objects. Only the members that
// fit the document kind are set.
struct LoadedMonoid {
  std::string kind;  // phi-table, finite-table, coxeter, garside
  std::string name;
  std::string document;  // canonical JSON text
  std::shared_ptr<const FactorableMonoid> monoid;
  std::shared_ptr<const PhiTable> phi;
  std::shared_ptr<const FiniteTableMonoid> table;
  std::shared_ptr<const ArtinMonoid> artin;
  std::shared_ptr<const GarsideStructure> garside;
  std::shared_ptr<const GarsideGroup> group;
};

// Parse errors raise ParseError; well-formed documents with inconsistent
// content raise Error.
class ParseError : public Error {
 public:
  using Error::Error;
};

LoadedMonoid load_document(const std::string& json_text);
LoadedMonoid load_file(const std::string& path);

// ---- appendix counterexample

// The 18 rules as embedded data, one "x y -> u v" line each.
const std::string& appendix_rules_text();
uint64_t appendix_checksum();           // FNV-1a of appendix_rules_text()
uint64_t fnv1a(const std::string& s);
std::shared_ptr<const PhiTable> appendix_table();  // verifies the checksum
// gamma as a permutation of the 27 generator indices
std::vector<int> appendix_gamma();
// phi(gamma a, gamma b) = (gamma x gamma)(phi(a, b)) on all pointed pairs,
// plus gamma^2 = id.
CheckReport gamma_compatibility(const PhiTable& table, const std::vector<int>& gamma);

// ---- building blocks

std::shared_ptr<FiniteTableMonoid> cyclic_group(int m);
std::shared_ptr<FiniteTableMonoid> s3_table();  // eta not yet attached
// S_3 with the eta found by the deterministic search, computed once.
std::shared_ptr<const FiniteTableMonoid> s3_transpositions();

std::string phi_document(const std::string& name, const PhiTable& table);
std::string finite_document(const FiniteTableMonoid& m);
std::string coxeter_document(const std::string& name, const CoxeterMatrix& c);
std::string garside_document(const std::string& name, const CoxeterMatrix& c,
                             const std::string& delta_word);

// ---- registry

struct FixtureInfo {
  std::string name;
  std::string summary;
};

const std::vector<FixtureInfo>& fixture_list();
// Canonical document of a registered fixture.
std::string fixture_document(const std::string& name);
// Loads and self-validates a registered fixture.
LoadedMonoid load_fixture(const std::string& name);

}  // namespace fm
