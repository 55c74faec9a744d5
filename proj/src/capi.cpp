#include "factorable.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>

#include "factorability.hpp"
#include "fixtures.hpp"
#include "garside.hpp"
#include "indexseq.hpp"
#include "morse.hpp"
#include "rewriting.hpp"

struct fm_monoid {
  fm::LoadedMonoid m;
};

namespace {

thread_local std::string g_last_error;

class NotApplicable : public fm::Error {
 public:
  using fm::Error::Error;
};

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
fm_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const fm::ParseError& e) {
    g_last_error = e.what();
    return FM_ERR_PARSE;
  } catch (const NotApplicable& e) {
    g_last_error = e.what();
    return FM_ERR_NOT_APPLICABLE;
  } catch (const fm::Error& e) {
    g_last_error = e.what();
    return FM_ERR_SEMANTIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FM_ERR_INTERNAL;
  }
}

fm_status invalid(const char* what) {
  g_last_error = what;
  return FM_ERR_INVALID_ARG;
}

std::string line(const fm::CheckReport& r) { return r.summary() + "\n"; }

// Checks for finite tables and Artin handles; returns false on any failure.
bool handle_checks(const fm::FactorableMonoid& m, int radius, int graded_radius,
                   std::string& out) {
  bool ok = true;
  for (const auto& r : {fm::validate_handle(m, radius),
                        fm::check_recognition_principle(m, radius),
                        fm::check_graded_equality(m, graded_radius)}) {
    out += line(r);
    ok = ok && r.ok();
  }
  return ok;
}

const fm::ArtinMonoid& need_artin(const fm_monoid* m) {
  if (!m->m.artin) throw NotApplicable("command needs a coxeter or garside spec, got " + m->m.kind);
  return *m->m.artin;
}

std::shared_ptr<const fm::GarsideStructure> structure_of(const fm_monoid* m) {
  if (m->m.garside) return m->m.garside;
  need_artin(m);
  return std::make_shared<fm::GarsideStructure>(m->m.artin);
}

}  // namespace

extern "C" {

const char* fm_last_error(void) { return g_last_error.c_str(); }

void fm_string_free(char* s) { std::free(s); }

fm_status fm_load_json(const char* text, fm_monoid** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    auto* h = new fm_monoid{fm::load_document(text)};
    *out = h;
    return FM_OK;
  });
}

fm_status fm_load_fixture(const char* name, fm_monoid** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] {
    auto* h = new fm_monoid{fm::load_fixture(name)};
    *out = h;
    return FM_OK;
  });
}

fm_status fm_load_file(const char* path, fm_monoid** out) {
  if (!path || !out) return invalid("null argument");
  std::string p = path;
  if (p.rfind("fixture:", 0) == 0 && !std::filesystem::exists(p))
    return fm_load_fixture(p.c_str() + 8, out);
  return guarded([&] {
    auto* h = new fm_monoid{fm::load_file(p)};
    *out = h;
    return FM_OK;
  });
}

void fm_monoid_free(fm_monoid* m) { delete m; }

fm_status fm_kind(const fm_monoid* m, char** out) {
  if (!m || !out) return invalid("null argument");
  *out = dup(m->m.kind);
  return FM_OK;
}

fm_status fm_export(const fm_monoid* m, char** out) {
  if (!m || !out) return invalid("null argument");
  *out = dup(m->m.document);
  return FM_OK;
}

fm_status fm_check(const fm_monoid* m, int radius, char** report, int* passed) {
  if (!m || !report || !passed) return invalid("null argument");
  if (radius < 1) return invalid("radius must be positive");
  return guarded([&] {
    std::string out;
    bool ok = true;
    const auto& L = m->m;
    if (L.kind == "phi-table") {
      auto rep = fm::check_local_factorability(*L.phi);
      out += rep.text();
      ok = rep.ok();
    } else if (L.kind == "finite-table") {
      int top = 0;
      for (const auto& e : L.table->elements()) top = std::max(top, L.table->norm(e));
      ok = handle_checks(*L.table, std::max(radius, top), 3 * top, out);
    } else {
      ok = handle_checks(*L.artin, radius, radius, out);
      for (const auto& r : fm::validate_gaussian_hypotheses(*L.artin, radius)) {
        out += line(r);
        ok = ok && r.ok();
      }
      auto inc = fm::incremental_prefix_lemma_check(*L.artin, radius);
      out += line(inc);
      ok = ok && inc.ok();
      if (L.garside) {
        for (const auto& r : fm::computation_rules_check(*L.garside)) {
          out += line(r);
          ok = ok && r.ok();
        }
        int gr = std::min(radius, 2);
        out += "group of fractions:\n";
        ok = handle_checks(*L.group, gr, gr, out) && ok;
      }
    }
    out += ok ? "result: pass\n" : "result: FAIL\n";
    *report = dup(out);
    *passed = ok ? 1 : 0;
    return FM_OK;
  });
}

fm_status fm_normal_form(const fm_monoid* m, const char* word, char** out) {
  if (!m || !word || !out) return invalid("null argument");
  return guarded([&] {
    const auto& L = m->m;
    std::string s;
    try {
      if (L.phi) {
        s = L.phi->format(L.phi->normal_form(fm::parse_word(L.phi->alphabet(), word)));
      } else if (L.artin) {
        s = L.artin->format(fm::greedy_nf(*L.artin, word));
      } else {
        s = L.monoid->format(L.monoid->parse_element(word));
      }
    } catch (const fm::Error& e) {
      if (dynamic_cast<const fm::ParseError*>(&e)) throw;
      std::string what = e.what();
      if (what.find("unknown") != std::string::npos) throw fm::ParseError(what);
      throw;
    }
    *out = dup(s + "\n");
    return FM_OK;
  });
}

fm_status fm_rewrite(const fm_monoid* m, const char* word, const char* strategy, long budget,
                     int trace, char** out, int* outcome) {
  if (!m || !word || !out || !outcome) return invalid("null argument");
  if (budget < 0) return invalid("budget must be non-negative");
  return guarded([&] {
    const auto& L = m->m;
    fm::RewriteSystem sys =
        L.phi ? fm::induced_rewriting_system(*L.phi) : fm::induced_rewriting_system(*L.monoid);
    fm::Strategy st;
    fm::Word w;
    try {
      st = fm::Strategy::parse(strategy ? strategy : "rightmost");
      w = sys.parse(word);
    } catch (const fm::Error& e) {
      throw fm::ParseError(e.what());
    }
    auto rep = fm::reduce(sys, w, budget, st);
    std::string s;
    if (trace) s += fm::format_trace(sys, rep);
    switch (rep.outcome) {
      case fm::TerminationReport::Irreducible:
        s += "irreducible after " + std::to_string(rep.steps.size()) + " steps: " +
             sys.format(rep.end) + "\n";
        *outcome = FM_REWRITE_IRREDUCIBLE;
        break;
      case fm::TerminationReport::CycleFound:
        s += "cycle of length " + std::to_string(rep.cycle_length()) + " through " +
             sys.format(rep.end) + " after " + std::to_string(rep.steps.size()) + " steps\n";
        *outcome = FM_REWRITE_CYCLE;
        break;
      case fm::TerminationReport::BudgetExhausted:
        s += "budget exhausted after " + std::to_string(rep.steps.size()) + " steps: " +
             sys.format(rep.end) + "\n";
        *outcome = FM_REWRITE_BUDGET;
        break;
    }
    *out = dup(s);
    return FM_OK;
  });
}

fm_status fm_homology(const fm_monoid* m, int max_degree, char** out) {
  if (!m || !out) return invalid("null argument");
  if (max_degree < 1) return invalid("max degree must be at least 1");
  return guarded([&] {
    auto cx = fm::visy_complex(*m->m.monoid, max_degree);
    *out = dup(fm::homology(cx).text());
    return FM_OK;
  });
}

fm_status fm_lambda(int n, char** out) {
  if (!out) return invalid("null argument");
  if (n < 0 || n > 20) return invalid("n must lie in 0..20");
  return guarded([&] {
    auto seqs = fm::enumerate_small(n, true);
    std::string s;
    for (const auto& q : seqs) s += fm::format_seq(q) + "\n";
    s += std::to_string(seqs.size()) + " sequences\n";
    *out = dup(s);
    return FM_OK;
  });
}

fm_status fm_garside_nf(const fm_monoid* m, const char* word, char** out) {
  if (!m || !word || !out) return invalid("null argument");
  return guarded([&] {
    const auto& A = need_artin(m);
    fm::Elem x;
    try {
      x = fm::greedy_nf(A, word);
    } catch (const fm::Error& e) {
      throw fm::ParseError(e.what());
    }
    auto s = structure_of(m);
    int k = 0;
    for (int t : x)
      if (t == s->delta_simple()) ++k;
    std::string r = A.format(x) + "\n";
    r += "factors: " + std::to_string(x.size()) + ", Delta power: " + std::to_string(k) + "\n";
    *out = dup(r);
    return FM_OK;
  });
}

fm_status fm_garside_group_nf(const fm_monoid* m, const char* word, char** out) {
  if (!m || !word || !out) return invalid("null argument");
  return guarded([&] {
    auto s = structure_of(m);
    const auto& A = s->monoid();
    fm::Elem g = s->g_unit();
    std::string text = word;
    std::replace(text.begin(), text.end(), '.', ' ');
    for (auto tok : fm::split_tokens(text)) {
      if (tok == "1") continue;
      bool inverse = false;
      const std::string suffix = "^-1";
      if (tok.size() > suffix.size() && tok.compare(tok.size() - suffix.size(), suffix.size(), suffix) == 0) {
        inverse = true;
        tok.resize(tok.size() - suffix.size());
      }
      int t = A.parse_simple(tok);
      if (t < 0) throw fm::ParseError("unknown letter or simple element '" + tok + "'");
      g = s->g_mul(g, inverse ? s->g_simple_inverse(t) : s->g_from_monoid(fm::Elem{t}));
    }
    std::string r = s->format_xy(s->to_xy(g)) + "\n";
    r += "as w Delta^-m: " + s->format_group(g) + "\n";
    r += "norm: " + std::to_string(s->g_norm(g)) + "\n";
    *out = dup(r);
    return FM_OK;
  });
}

fm_status fm_garside_structure(const fm_monoid* m, char** out) {
  if (!m || !out) return invalid("null argument");
  return guarded([&] {
    auto s = structure_of(m);
    const auto& A = s->monoid();
    std::ostringstream o;
    o << "Delta = " << A.simple_name(s->delta_simple()) << "\n";
    o << "divisors: " << s->divisors().size() << "\n";
    for (int t : s->divisors())
      o << "  " << A.simple_name(t) << ": t* = " << A.simple_name(s->star(t))
        << ", *t = " << A.simple_name(s->pre_star(t)) << ", phi(t) = " << A.simple_name(s->phi(t))
        << "\n";
    *out = dup(o.str());
    return FM_OK;
  });
}

fm_status fm_garside_qf(const fm_monoid* m, char** out) {
  if (!m || !out) return invalid("null argument");
  return guarded([&] {
    const auto& A = need_artin(m);
    auto rep = fm::square_free_elements(A.group().matrix());
    std::string s = "square-free elements: " + std::to_string(rep.elements.size()) + "\n";
    for (const auto& e : rep.elements) s += "  " + e + "\n";
    s += line(rep.closure);
    *out = dup(s);
    if (!rep.closure.ok()) g_last_error = "square-free elements are not closed";
    return rep.closure.ok() ? FM_OK : FM_ERR_SEMANTIC;
  });
}

fm_status fm_fixtures_list(char** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    std::string s;
    for (const auto& f : fm::fixture_list()) s += f.name + "  " + f.summary + "\n";
    *out = dup(s);
    return FM_OK;
  });
}

fm_status fm_fixture_export(const char* name, char** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] {
    *out = dup(fm::fixture_document(name));
    return FM_OK;
  });
}

}  // extern "C"
