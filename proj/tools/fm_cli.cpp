// Command-line front end; everything goes through the C interface.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "factorable.h"

namespace {

struct Options {
  int radius = 3;
  long budget = 10000;
  int max_degree = 4;
  std::string spec;
  std::string word;
  std::string strategy = "rightmost";
  bool trace = false;
  int n = 0;
  std::string fixture;
};

int exit_code(fm_status s) {
  switch (s) {
    case FM_OK: return 0;
    case FM_ERR_PARSE:
    case FM_ERR_INVALID_ARG: return 2;
    default: return 1;
  }
}

int fail(fm_status s) {
  std::fprintf(stderr, "error: %s\n", fm_last_error());
  return exit_code(s);
}

// Prints and frees a result string.
void emit(char* text) {
  if (text) std::fputs(text, stdout);
  fm_string_free(text);
}

template <class F>
int with_monoid(const std::string& spec, F&& f) {
  fm_monoid* m = nullptr;
  fm_status s = fm_load_file(spec.c_str(), &m);
  if (s != FM_OK) return fail(s);
  int rc = f(m);
  fm_monoid_free(m);
  return rc;
}

// Runs `call` with an output slot, prints the text, maps the status.
template <class F>
int text_result(F&& call) {
  char* out = nullptr;
  fm_status s = call(&out);
  emit(out);
  return s == FM_OK ? 0 : fail(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factorable monoids: normal forms, rewriting, Visy homology, Garside structures"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--radius", o.radius, "ball radius for property checks")->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "rewriting step budget")->check(CLI::NonNegativeNumber);
  app.add_option("--max-degree", o.max_degree, "top degree of the truncated complex")
      ->check(CLI::PositiveNumber);
  const std::string spec_help = "monoid spec file (JSON) or fixture:NAME";

  auto* check = app.add_subcommand("check", "run the axiom checks that apply to the monoid document");
  check->add_option("spec", o.spec, spec_help)->required();

  auto* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("spec", o.spec, spec_help)->required();
  nf->add_option("word", o.word, "generators, left to right")->required();

  auto* rw = app.add_subcommand("rewrite", "apply the induced rewriting system");
  rw->add_option("spec", o.spec, spec_help)->required();
  rw->add_option("word", o.word, "generators, left to right")->required();
  rw->add_option("--strategy", o.strategy, "rightmost, leftmost or schedule:i,j,...");
  rw->add_flag("--trace", o.trace, "print every rewriting step");

  auto* hom = app.add_subcommand("homology", "integral homology from the Visy complex");
  hom->add_option("spec", o.spec, spec_help)->required();

  auto* lam = app.add_subcommand("lambda", "list the right-most reduced small sequences over 1..n");
  lam->add_option("n", o.n)->required()->check(CLI::Range(0, 20));

  auto* gar = app.add_subcommand("garside", "Garside normal forms and structure");
  gar->require_subcommand(1);
  auto* gnf = gar->add_subcommand("nf", "greedy normal form in the positive monoid");
  gnf->add_option("spec", o.spec, spec_help)->required();
  gnf->add_option("word", o.word, "letters or simple names")->required();
  auto* ggnf = gar->add_subcommand("group-nf", "normal form in the group of fractions");
  ggnf->add_option("spec", o.spec, spec_help)->required();
  ggnf->add_option("word", o.word, "letters or simples, inverses as x^-1")->required();
  auto* gst = gar->add_subcommand("structure", "Delta, divisors, star maps and phi");
  gst->add_option("spec", o.spec, spec_help)->required();
  auto* gqf = gar->add_subcommand("qf", "square-free elements and their closure");
  gqf->add_option("spec", o.spec, spec_help)->required();

  auto* fx = app.add_subcommand("fixtures", "built-in example monoids");
  fx->require_subcommand(1);
  auto* fxl = fx->add_subcommand("list", "list fixture names");
  auto* fxe = fx->add_subcommand("export", "print a fixture as a monoid spec document");
  fxe->add_option("name", o.fixture)->required();

  // Global flags may also follow the subcommand.
  for (auto* sub : {check, nf, rw, hom, lam, gar, gnf, ggnf, gst, gqf, fx, fxl, fxe})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  char* out = nullptr;
  if (*check) {
    return with_monoid(o.spec, [&](fm_monoid* m) {
      int passed = 0;
      fm_status s = fm_check(m, o.radius, &out, &passed);
      if (s != FM_OK) return fail(s);
      emit(out);
      return passed ? 0 : 1;
    });
  }
  if (*nf)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_normal_form(m, o.word.c_str(), out); });
    });
  if (*rw) {
    return with_monoid(o.spec, [&](fm_monoid* m) {
      int outcome = 0;
      fm_status s = fm_rewrite(m, o.word.c_str(), o.strategy.c_str(), o.budget, o.trace ? 1 : 0,
                               &out, &outcome);
      if (s != FM_OK) return fail(s);
      emit(out);
      return outcome == FM_REWRITE_IRREDUCIBLE ? 0 : 1;
    });
  }
  if (*hom)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_homology(m, o.max_degree, out); });
    });
  if (*lam) return text_result([&](char** out) { return fm_lambda(o.n, out); });
  if (*gnf)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_garside_nf(m, o.word.c_str(), out); });
    });
  if (*ggnf)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_garside_group_nf(m, o.word.c_str(), out); });
    });
  if (*gst)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_garside_structure(m, out); });
    });
  if (*gqf)
    return with_monoid(o.spec, [&](fm_monoid* m) {
      return text_result([&](char** out) { return fm_garside_qf(m, out); });
    });
  if (*fxl) return text_result([&](char** out) { return fm_fixtures_list(out); });
  if (*fxe) return text_result([&](char** out) { return fm_fixture_export(o.fixture.c_str(), out); });
  return 2;
}
