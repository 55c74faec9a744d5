#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace fm {

using nlohmann::ordered_json;

namespace {

// phi(x, y) = (u, v), read left to right; "1" is the unit.
const std::string kAppendixRules =
    "a1 b1 -> a2 b2\n"
    "b2 c1 -> b3 c2\n"
    "c2 d1 -> c3 d2\n"
    "b3 c3 -> b4 c4\n"
    "a2 b4 -> a1 b5\n"
    "b5 c4 -> b6 c5\n"
    "c5 d2 -> c6 d1\n"
    "b6 c6 -> b1 c1\n"
    "a2 b3 -> 1 e2\n"
    "a1 b6 -> 1 e3\n"
    "e2 c2 -> f2 g2\n"
    "e3 c5 -> f3 g3\n"
    "e2 c3 -> f3 g3\n"
    "e3 c6 -> f2 g2\n"
    "g2 d1 -> h2 i\n"
    "g3 d2 -> h3 i\n"
    "f2 h2 -> j k\n"
    "f3 h3 -> j k\n";

constexpr uint64_t kAppendixChecksum = 0x599c63af6993b855ull;

const std::vector<std::string> kAppendixGenerators = {
    "a1", "a2", "b1", "b2", "b3", "b4", "b5", "b6", "c1", "c2", "c3", "c4", "c5", "c6",
    "d1", "d2", "e2", "e3", "f2", "f3", "g2", "g3", "h2", "h3", "i",  "j",  "k"};

const std::string kAppendixGamma =
    "a1 a2, b1 b4, b2 b5, b3 b6, c1 c4, c2 c5, c3 c6, d1 d2, "
    "e2 e3, f2 f3, g2 g3, h2 h3, i i, j j, k k";

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError(what); }

const ordered_json& field(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const ordered_json& j, const std::string& what) {
  if (!j.is_string()) parse_fail(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str(e, what + " entry"));
  return out;
}

int32_t letter(const Alphabet& a, const ordered_json& j) {
  std::string s = str(j, "letter");
  if (s == "1") return kUnit;
  int i = a.index(s);
  if (i < 0) parse_fail("unknown generator '" + s + "'");
  return i;
}

LetterPair letter_pair(const Alphabet& a, const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("phi pairs must have two entries");
  return {letter(a, j[0]), letter(a, j[1])};
}

ordered_json pair_json(const PhiTable& t, LetterPair p) {
  return ordered_json::array({t.format_letter(p.first), t.format_letter(p.second)});
}

// Tables use positions (left, right) with left the higher position; stored
// pairs follow the same reading order.
LoadedMonoid load_phi(const ordered_json& j, const std::string& name) {
  auto gens = str_list(field(j, "generators"), "generators");
  Alphabet a;
  try {
    a = Alphabet(gens);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  const auto& phi = field(j, "phi");
  if (!phi.is_array()) parse_fail("phi must be an array of [[x, y], [u, v]] entries");
  std::vector<std::pair<LetterPair, LetterPair>> entries;
  for (const auto& e : phi) {
    if (!e.is_array() || e.size() != 2) parse_fail("phi entries must be [[x, y], [u, v]]");
    entries.push_back({letter_pair(a, e[0]), letter_pair(a, e[1])});
  }
  std::shared_ptr<const PhiTable> table;
  try {
    table = std::make_shared<PhiTable>(a, entries);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  LoadedMonoid out;
  out.kind = "phi-table";
  out.name = name;
  out.phi = table;
  out.monoid = std::make_shared<PhiMonoid>(table, name);
  return out;
}

LoadedMonoid load_finite(const ordered_json& j, const std::string& name) {
  auto elems = str_list(field(j, "elements"), "elements");
  std::map<std::string, int> idx;
  for (size_t k = 0; k < elems.size(); ++k)
    if (!idx.emplace(elems[k], static_cast<int>(k)).second)
      parse_fail("duplicate element '" + elems[k] + "'");
  auto lookup = [&](const ordered_json& e) {
    std::string s = str(e, "element");
    auto it = idx.find(s);
    if (it == idx.end()) parse_fail("unknown element '" + s + "'");
    return it->second;
  };
  int unit = lookup(field(j, "unit"));
  std::vector<int> gens;
  for (const auto& g : field(j, "generators")) gens.push_back(lookup(g));
  const auto& tj = field(j, "table");
  if (!tj.is_array() || tj.size() != elems.size()) parse_fail("table needs one row per element");
  std::vector<std::vector<int>> table;
  for (const auto& row : tj) {
    if (!row.is_array() || row.size() != elems.size())
      parse_fail("table rows need one entry per element");
    std::vector<int> r;
    for (const auto& e : row) r.push_back(lookup(e));
    table.push_back(std::move(r));
  }
  std::shared_ptr<FiniteTableMonoid> m;
  try {
    m = std::make_shared<FiniteTableMonoid>(name, elems, unit, gens, table);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  std::vector<std::pair<int, int>> eta(elems.size(), {unit, unit});
  if (auto it = j.find("eta"); it != j.end()) {
    if (!it->is_object()) parse_fail("eta must map element names to [prefix, generator]");
    std::vector<bool> given(elems.size(), false);
    given[unit] = true;
    for (auto e = it->begin(); e != it->end(); ++e) {
      int x = lookup(ordered_json(e.key()));
      if (!e.value().is_array() || e.value().size() != 2)
        parse_fail("eta values must be [prefix, generator]");
      eta[x] = {lookup(e.value()[0]), lookup(e.value()[1])};
      given[x] = true;
    }
    for (size_t x = 0; x < elems.size(); ++x)
      if (!given[x]) parse_fail("eta missing for '" + elems[x] + "'");
  } else {
    auto found = search_factorability(*m);
    if (!found) throw Error("no factorization map found for " + name);
    eta = *found;
  }
  m->set_eta(eta);
  LoadedMonoid out;
  out.kind = "finite-table";
  out.name = name;
  out.table = m;
  out.monoid = m;
  return out;
}

CoxeterMatrix coxeter_from(const ordered_json& j) {
  auto gens = str_list(field(j, "generators"), "generators");
  std::vector<std::tuple<std::string, std::string, int>> pairs;
  if (auto it = j.find("m"); it != j.end()) {
    if (!it->is_array()) parse_fail("m must be an array of [s, t, m] triples");
    for (const auto& e : *it) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer())
        parse_fail("m entries must be [s, t, integer]");
      pairs.emplace_back(str(e[0], "generator"), str(e[1], "generator"), e[2].get<int>());
    }
  }
  try {
    return CoxeterMatrix::from_pairs(gens, pairs);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

LoadedMonoid load_coxeter(const ordered_json& j, const std::string& name, bool garside) {
  CoxeterMatrix c = coxeter_from(j);
  auto W = std::make_shared<CoxeterGroup>(c);
  auto artin = std::make_shared<ArtinMonoid>(W);
  LoadedMonoid out;
  out.kind = garside ? "garside" : "coxeter";
  out.name = name;
  out.artin = artin;
  out.monoid = artin;
  if (garside) {
    std::string word = str(field(j, "delta"), "delta");
    Elem delta;
    try {
      delta = greedy_nf(*artin, word);
    } catch (const Error& e) {
      parse_fail(e.what());
    }
    auto s = std::make_shared<GarsideStructure>(GarsideStructure::with_delta(artin, delta));
    out.garside = s;
    out.group = std::make_shared<GarsideGroup>(s);
  }
  return out;
}

}  // namespace

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

const std::string& appendix_rules_text() { return kAppendixRules; }
uint64_t appendix_checksum() { return kAppendixChecksum; }

std::shared_ptr<const PhiTable> appendix_table() {
  if (fnv1a(kAppendixRules) != kAppendixChecksum)
    throw Error("appendix rule data does not match its checksum");
  Alphabet a(kAppendixGenerators);
  auto get = [&](const std::string& s) -> int32_t {
    if (s == "1") return kUnit;
    int i = a.index(s);
    if (i < 0) throw Error("appendix data names unknown generator " + s);
    return i;
  };
  std::vector<std::pair<LetterPair, LetterPair>> entries;
  std::istringstream in(kAppendixRules);
  std::string line;
  while (std::getline(in, line)) {
    auto t = split_tokens(line);
    if (t.size() != 5 || t[2] != "->") throw Error("bad appendix line: " + line);
    entries.push_back({{get(t[0]), get(t[1])}, {get(t[3]), get(t[4])}});
  }
  return std::make_shared<PhiTable>(a, entries);
}

std::vector<int> appendix_gamma() {
  Alphabet a(kAppendixGenerators);
  std::vector<int> g(a.size(), -1);
  std::string text = kAppendixGamma;
  std::replace(text.begin(), text.end(), ',', ' ');
  auto t = split_tokens(text);
  for (size_t k = 0; k + 1 < t.size(); k += 2) {
    int x = a.index(t[k]), y = a.index(t[k + 1]);
    g[x] = y;
    g[y] = x;
  }
  for (int v : g)
    if (v < 0) throw Error("gamma data does not cover every generator");
  return g;
}

CheckReport gamma_compatibility(const PhiTable& table, const std::vector<int>& gamma) {
  CheckReport rep;
  rep.title = "gamma compatibility (phi commutes with gamma x gamma)";
  const int n = table.size();
  auto G = [&](int32_t a) { return a == kUnit ? kUnit : gamma.at(a); };
  for (int a = 0; a < n; ++a) {
    ++rep.checked;
    if (G(G(a)) != a) rep.fail("gamma^2 moves " + table.format_letter(a));
  }
  for (int32_t a = -1; a < n; ++a)
    for (int32_t b = -1; b < n; ++b) {
      ++rep.checked;
      LetterPair lhs = table.phi(G(a), G(b));
      LetterPair p = table.phi(a, b);
      LetterPair rhs{G(p.first), G(p.second)};
      if (lhs != rhs)
        rep.fail("(" + table.format_letter(a) + ", " + table.format_letter(b) + ")");
    }
  return rep;
}

std::shared_ptr<FiniteTableMonoid> cyclic_group(int m) {
  if (m < 2) throw Error("cyclic group needs order at least 2");
  std::vector<std::string> names{"1"};
  for (int k = 1; k < m; ++k) names.push_back(k == 1 ? "t" : "t" + std::to_string(k));
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) table[x][y] = (x + y) % m;
  // Every nontrivial element is a generator. With E = {t} alone the recognition
  // principle fails at (t^{m-1}, t) once m >= 3.
  std::vector<int> gens;
  for (int k = 1; k < m; ++k) gens.push_back(k);
  auto g = std::make_shared<FiniteTableMonoid>(m == 2 ? "z2" : "cyclic" + std::to_string(m),
                                               names, 0, gens, table);
  std::vector<std::pair<int, int>> eta{{0, 0}};
  for (int k = 1; k < m; ++k) eta.push_back({0, k});
  g->set_eta(eta);
  return g;
}

std::shared_ptr<FiniteTableMonoid> s3_table() {
  // permutations of {0,1,2}; (xy)(i) = x(y(i))
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                           {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names = {"1", "a", "b", "c", "r", "r2"};
  const int n = 6;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::array<int, 3> p;
      for (int i = 0; i < 3; ++i) p[i] = perms[x][perms[y][i]];
      table[x][y] = static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
    }
  return std::make_shared<FiniteTableMonoid>("s3", names, 0, std::vector<int>{1, 2, 3}, table);
}

std::shared_ptr<const FiniteTableMonoid> s3_transpositions() {
  static const std::shared_ptr<const FiniteTableMonoid> cached = [] {
    auto m = s3_table();
    auto eta = search_factorability(*m);
    if (!eta) throw Error("no factorization map found for S_3");
    m->set_eta(*eta);
    return std::shared_ptr<const FiniteTableMonoid>(m);
  }();
  return cached;
}

std::string phi_document(const std::string& name, const PhiTable& table) {
  ordered_json j;
  j["kind"] = "phi-table";
  j["name"] = name;
  j["generators"] = table.alphabet().letters();
  ordered_json phi = ordered_json::array();
  for (const auto& [k, v] : table.entries())
    phi.push_back(ordered_json::array({pair_json(table, k), pair_json(table, v)}));
  j["phi"] = phi;
  return j.dump(2) + "\n";
}

std::string finite_document(const FiniteTableMonoid& m) {
  ordered_json j;
  const auto& names = m.names();
  j["kind"] = "finite-table";
  j["name"] = m.name();
  j["elements"] = names;
  j["unit"] = names[m.unit_index()];
  ordered_json gens = ordered_json::array();
  for (int g : m.generator_elements()) gens.push_back(names[g]);
  j["generators"] = gens;
  ordered_json table = ordered_json::array();
  for (const auto& row : m.table()) {
    ordered_json r = ordered_json::array();
    for (int v : row) r.push_back(names[v]);
    table.push_back(r);
  }
  j["table"] = table;
  if (m.has_eta()) {
    ordered_json eta = ordered_json::object();
    for (int x = 0; x < m.size(); ++x) {
      if (x == m.unit_index()) continue;
      auto [p, g] = m.eta_table()[x];
      eta[names[x]] = ordered_json::array({names[p], names[g]});
    }
    j["eta"] = eta;
  }
  return j.dump(2) + "\n";
}

namespace {

ordered_json coxeter_json(const std::string& kind, const std::string& name,
                          const CoxeterMatrix& c) {
  ordered_json j;
  j["kind"] = kind;
  j["name"] = name;
  j["generators"] = c.names;
  ordered_json m = ordered_json::array();
  for (int s = 0; s < c.rank(); ++s)
    for (int t = s + 1; t < c.rank(); ++t)
      if (c.m[s][t] != 0) m.push_back(ordered_json::array({c.names[s], c.names[t], c.m[s][t]}));
  j["m"] = m;
  return j;
}

}  // namespace

std::string coxeter_document(const std::string& name, const CoxeterMatrix& c) {
  return coxeter_json("coxeter", name, c).dump(2) + "\n";
}

std::string garside_document(const std::string& name, const CoxeterMatrix& c,
                             const std::string& delta_word) {
  auto j = coxeter_json("garside", name, c);
  j["delta"] = delta_word;
  return j.dump(2) + "\n";
}

LoadedMonoid load_document(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("monoid spec must be a JSON object");
  std::string kind = str(field(j, "kind"), "kind");
  std::string name = j.contains("name") ? str(j["name"], "name") : kind;
  LoadedMonoid out;
  if (kind == "phi-table") out = load_phi(j, name);
  else if (kind == "finite-table") out = load_finite(j, name);
  else if (kind == "coxeter") out = load_coxeter(j, name, false);
  else if (kind == "garside") out = load_coxeter(j, name, true);
  else parse_fail("unknown kind '" + kind + "'");
  out.document = j.dump(2) + "\n";
  return out;
}

LoadedMonoid load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_document(ss.str());
}

namespace {

CoxeterMatrix rank2(int m) { return CoxeterMatrix::from_pairs({"a", "b"}, {{"a", "b", m}}); }

PhiTable free_abelian_table() {
  Alphabet a({"a", "b"});
  return PhiTable(a, {{{0, 1}, {1, 0}}});
}

}  // namespace

const std::vector<FixtureInfo>& fixture_list() {
  static const std::vector<FixtureInfo> list = {
      {"appendix", "27 generators, 18 local rules; factorable with a cycling rewriting system"},
      {"z2", "cyclic group of order 2, E = {t}"},
      {"cyclic3", "cyclic group of order 3, E = {t, t2}"},
      {"free_abelian2", "free abelian monoid on a, b"},
      {"braid3", "positive braid monoid B_3+ with the divisors of Delta as alphabet"},
      {"artin_b2", "Artin monoid of type B_2 (m = 4) with its simple elements"},
      {"s3", "symmetric group S_3 with all transpositions, eta found by search"},
      {"braid3_group", "braid group B_3 as Garside group, E = D and its inverses"},
  };
  return list;
}

std::string fixture_document(const std::string& name) {
  if (name == "appendix") return phi_document("appendix", *appendix_table());
  if (name == "z2") return finite_document(*cyclic_group(2));
  if (name == "cyclic3") return finite_document(*cyclic_group(3));
  if (name == "free_abelian2") return phi_document("free_abelian2", free_abelian_table());
  if (name == "braid3") return coxeter_document("braid3", rank2(3));
  if (name == "artin_b2") return coxeter_document("artin_b2", rank2(4));
  if (name == "s3") return finite_document(*s3_transpositions());
  if (name == "braid3_group") return garside_document("braid3_group", rank2(3), "a b a");
  throw Error("unknown fixture '" + name + "'");
}

LoadedMonoid load_fixture(const std::string& name) {
  LoadedMonoid m = load_document(fixture_document(name));
  if (m.phi) {
    auto rep = check_local_factorability(*m.phi);
    if (!rep.ok()) throw Error("fixture " + name + " fails local factorability");
  }
  if (m.table) {
    int radius = 0;
    for (const auto& e : m.table->elements()) radius = std::max(radius, m.table->norm(e));
    if (!validate_handle(*m.table, radius).ok() ||
        !check_graded_equality(*m.table, 3 * radius).ok())
      throw Error("fixture " + name + " has an invalid factorization map");
  }
  if (m.artin && !validate_handle(*m.artin, 2).ok())
    throw Error("fixture " + name + " has an invalid factorization map");
  return m;
}

}  // namespace fm
