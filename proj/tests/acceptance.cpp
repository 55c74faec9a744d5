// Acceptance run: one line per criterion, each timed against its limit.
// `acceptance` runs all ten; `acceptance 3 7` runs a subset.
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "factorability.hpp"
#include "fixtures.hpp"
#include "garside.hpp"
#include "indexseq.hpp"
#include "morse.hpp"
#include "oracles.hpp"
#include "rewriting.hpp"

using namespace fm;

namespace {

// Counts checks and keeps the first few failures.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 6) notes.push_back(what);
  }
  void expect(const CheckReport& r) { expect(r.ok(), r.summary()); }
};

struct Criterion {
  int id;
  double limit_s;
  std::string what;
  std::function<void(Tally&, std::string&)> run;
};

// All sequences over 1..n of length at most len.
std::vector<IndexSeq> all_sequences(int n, int len) {
  std::vector<IndexSeq> out{{}}, layer{{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<IndexSeq> next;
    for (const auto& s : layer)
      for (int i = 1; i <= n; ++i) {
        auto t = s;
        t.push_back(i);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Every generator tuple of the given degree, position 1 first.
template <class F>
void for_each_generator_tuple(const FactorableMonoid& m, int degree, F&& f) {
  const int g = m.generator_count();
  std::vector<int> idx(degree, 0);
  while (true) {
    Cell c;
    for (int i : idx) c.push_back(m.generator(i));
    f(c);
    int k = 0;
    while (k < degree && ++idx[k] == g) idx[k++] = 0;
    if (k == degree) return;
  }
}

// d_{k-1} d_k over the stored sparse matrices.
bool squares_to_zero(const IntegerChainComplex& cx) {
  for (size_t k = 2; k < cx.d.size(); ++k) {
    std::map<std::pair<int, int>, long long> prod;
    for (const auto& [rc1, v1] : cx.d[k].entries)
      for (const auto& [rc0, v0] : cx.d[k - 1].entries)
        if (rc0.second == rc1.first) prod[{rc0.first, rc1.second}] += v0 * v1;
    for (const auto& [rc, v] : prod)
      if (v != 0) return false;
  }
  return true;
}

Cell artin_cell(const ArtinMonoid& m, std::vector<std::string> left_to_right) {
  Cell c;
  for (auto it = left_to_right.rbegin(); it != left_to_right.rend(); ++it)
    c.push_back(greedy_nf(m, *it));
  return c;
}

void c1(Tally& t, std::string& info) {
  auto L = load_fixture("appendix");
  auto rep = check_local_factorability(*L.phi);
  for (const auto& a : rep.axioms) t.expect(a);
  auto sys = induced_rewriting_system(*L.phi);
  Word start = sys.parse("a1 b1 c1 d1");
  auto run = reduce(sys, start, 100, Strategy::parse("schedule:3,2,1,2,3,2,1,2"));
  t.expect(run.outcome == TerminationReport::CycleFound, "schedule does not cycle");
  t.expect(run.steps.size() == 8 && run.cycle_length() == 8, "cycle length is not 8");
  t.expect(run.end == start, "cycle does not return to a1 b1 c1 d1");
  std::vector<int> pos;
  for (const auto& s : run.steps) pos.push_back(s.position);
  t.expect(pos == std::vector<int>{3, 2, 1, 2, 3, 2, 1, 2}, "positions differ from the schedule");
  info = "5 axioms pass, cycle of " + std::to_string(run.cycle_length()) + " steps";
}

void c2(Tally& t, std::string& info) {
  auto L = load_fixture("appendix");
  auto probe = right_cancellativity_probe(*L.monoid, 3);
  t.expect(probe);
  auto g = gamma_compatibility(*L.phi, appendix_gamma());
  t.expect(g);
  t.expect(g.checked >= 28 * 28, "fewer than 28x28 pointed pairs checked");
  info = std::to_string(probe.checked) + " probe cases, " + std::to_string(g.checked) +
         " gamma cases";
}

void c3(Tally& t, std::string& info) {
  auto L = load_fixture("appendix");
  const auto& m = *L.monoid;
  long starts = 0, chains = 0, preserving = 0, longest = 0;
  for (int deg = 1; deg <= 4; ++deg)
    for_each_generator_tuple(m, deg, [&](const Cell& c) {
      auto r = redundant_chains(m, c);
      ++starts;
      chains += r.chains;
      preserving += r.norm_preserving;
      longest = std::max(longest, r.longest);
      t.expect(r.terminated, "chain from " + format_cell(m, c) + " does not terminate");
      for (const auto& v : r.violations) t.expect(false, format_cell(m, c) + ": " + v);
    });
  info = std::to_string(starts) + " start cells, " + std::to_string(chains) + " chains (" +
         std::to_string(preserving) + " norm-preserving), longest " + std::to_string(longest);
}

void c4(Tally& t, std::string& info) {
  t.expect(enumerate_small(1).size() == 2, "|Lambda_1| != 2");
  t.expect(enumerate_small(2).size() == 6, "|Lambda_2| != 6");

  // oracle agreement on F_3 up to length 6, both for smallness and for
  // membership in Lambda_3
  auto l3 = enumerate_small(3);
  std::set<IndexSeq> lambda3(l3.begin(), l3.end());
  long compared = 0;
  for (const auto& s : all_sequences(3, 6)) {
    auto o = is_small_oracle(s, 1);
    t.expect(o.has_value(), "oracle undecided on " + format_seq(s));
    if (!o) continue;
    ++compared;
    t.expect(*o == is_small(s), "smallness disagrees on " + format_seq(s));
    bool member = is_rightmost(s) && is_reduced(s) && *o;
    t.expect(member == (lambda3.count(s) > 0), "Lambda_3 membership disagrees on " + format_seq(s));
  }
  for (int n = 1; n <= 2; ++n) {
    auto ln = enumerate_small(n);
    std::set<IndexSeq> want;
    for (const auto& s : all_sequences(n, 3))
      if (is_rightmost(s) && is_reduced(s) && is_small_oracle(s, 1).value_or(false)) want.insert(s);
    t.expect(std::set<IndexSeq>(ln.begin(), ln.end()) == want,
             "Lambda_" + std::to_string(n) + " differs from the brute-force filter");
  }

  const std::vector<IndexSeq> Xi{{3, 2, 1},    {1, 3, 2, 1},    {2, 1, 3, 2, 1},
                                 {2, 3, 2, 1}, {1, 2, 3, 2, 1}, {1, 2, 1, 3, 2, 1}};
  for (const auto& x : Xi) t.expect(lambda3.count(x) > 0, format_seq(x) + " missing from Lambda_3");

  auto w = std::make_shared<CoxeterGroup>(CoxeterMatrix::from_pairs(
      {"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 3}, {"a", "c", 2}}));
  ArtinMonoid a3(w);
  Cell x = artin_cell(a3, {"a b a", "b a", "b c a", "a"});
  t.expect(classify(a3, x).kind == CellStatus::Essential, "[aba|ba|bca|a] is not essential");
  const std::vector<std::pair<IndexSeq, IndexSeq>> bullets{
      {{3, 2, 1}, {2, 3, 2, 1}},
      {{1, 3, 2, 1}, {1, 2, 3, 2, 1}},
      {{2, 1, 3, 2, 1}, {1, 2, 1, 3, 2, 1}}};
  for (const auto& [from, to] : bullets) {
    t.expect(xi(a3, x, from) == to, "xi" + format_seq(from) + " != " + format_seq(to));
    t.expect(xi(a3, x, to) == from, "xi" + format_seq(to) + " != " + format_seq(from));
  }
  info = "|Lambda_1| = 2, |Lambda_2| = 6, |Lambda_3| = " + std::to_string(l3.size()) + ", " +
         std::to_string(compared) + " sequences vs oracle";
}

void c5(Tally& t, std::string& info) {
  auto z2 = cyclic_group(2);
  auto visy = homology(visy_complex(*z2, 6)).text();
  auto bar = homology(bar_complex_truncated(*z2, 6)).text();
  t.expect(visy == bar, "Visy and bar homology differ");
  t.expect(visy == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2\nH_4 = 0\nH_5 = Z/2\n",
           "unexpected Z/2 homology");
  info = "Z, Z/2, 0, Z/2, 0, Z/2";
}

void c6(Tally& t, std::string& info) {
  auto table = s3_table();
  auto eta = search_factorability(*table);
  t.expect(eta.has_value(), "no factorability structure found on S3");
  if (!eta) return;
  table->set_eta(*eta);
  t.expect(validate_handle(*table, 3));
  t.expect(check_recognition_principle(*table, 3));
  t.expect(check_graded_equality(*table, 6));
  auto bar_cx = bar_complex_truncated(*table, 4);
  t.expect(bar_cx.labels[4].size() == 625, "top bar stratum is not 625 cells");
  auto visy = homology(visy_complex(*table, 4)).text();
  auto bar = homology(bar_cx).text();
  t.expect(visy == bar, "Visy and bar homology differ");
  t.expect(visy == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/6\n", "unexpected S3 homology");
  info = "eta found; H_1 = Z/2, H_2 = 0, H_3 = Z/6";
}

void c7(Tally& t, std::string& info) {
  auto L = load_fixture("braid3");
  const ArtinMonoid& m = *L.artin;
  const auto& g = m.group();
  const int d = m.generator_count();

  // radius-3 ball: every product of at most three divisors
  std::set<Elem> ball;
  long products = 0;
  for (int len = 0; len <= 3; ++len) {
    std::vector<int> idx(len, 0);
    while (true) {
      oracle::Letters letters;
      std::string text;
      Elem prod = m.unit();
      for (int i : idx) {
        Elem gen = m.generator(i);
        prod = m.multiply(prod, gen);
        for (int l : g.reduced_word(gen[0])) {
          letters.push_back(l);
          text += g.matrix().names[l] + " ";
        }
      }
      auto want = oracle::greedy_nf(g, letters);
      t.expect(want != std::vector<int>{-1}, "oracle found no greatest suffix for " + text);
      Elem nf(want.begin(), want.end());
      t.expect(greedy_nf(m, text) == nf, "greedy NF differs on " + text);
      t.expect(prod == nf, "product of divisors differs on " + text);
      ball.insert(nf);
      ++products;
      int k = 0;
      while (k < len && ++idx[k] == d) idx[k++] = 0;
      if (k == len) break;
    }
  }
  t.expect(word_ball(m, 3).elems.size() == ball.size(), "ball sizes differ");

  t.expect(check_strong_conditions(m, 3));
  auto sys = induced_rewriting_system(m);
  auto mini = is_strongly_minimal(sys);
  t.expect(mini.strongly_minimal(), "induced system is not strongly minimal");
  auto peaks = check_confluence_on_peaks(sys, 100000);
  t.expect(peaks.all_joinable(), "a critical peak is not joinable");

  std::mt19937 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    Word w;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int32_t>(rng() % d));
    auto rep = reduce(sys, w, 100000);
    t.expect(rep.outcome == TerminationReport::Irreducible,
             "no irreducible word reached from " + sys.format(w));
  }

  long traces = 0, worst = 0;
  for (int n = 1; n <= 3; ++n) {
    const long bound = effective_sequence_bound(n);
    std::vector<int> idx(n + 1, 0);
    while (true) {
      Word w(idx.begin(), idx.end());
      auto longest = longest_rewriting_sequence(sys, w, 1000000);
      ++traces;
      t.expect(longest.has_value(), "rewriting from " + sys.format(w) + " is not bounded");
      if (longest) {
        worst = std::max(worst, *longest);
        t.expect(*longest <= bound, sys.format(w) + " exceeds c(" + std::to_string(n) + ")");
      }
      int k = 0;
      while (k <= n && ++idx[k] == d) idx[k++] = 0;
      if (k == n + 1) break;
    }
  }
  info = std::to_string(products) + " divisor products, " + std::to_string(peaks.peaks) +
         " peaks, " + std::to_string(traces) + " start words, longest sequence " +
         std::to_string(worst);
}

// Three-way agreement through degree 3 and the cancellation through degree
// 4 on every essential cell, then d o d = 0 through degree 5.
long check_differentials(Tally& t, const std::string& name, const FactorableMonoid& m) {
  long cells = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& x : visy_basis(m, n)) {
      ++cells;
      if (n <= 3) {
        auto a = visy_differential_lambda(m, x);
        t.expect(visy_differential_coherent(m, x) == a,
                 name + ": coherent formula differs at " + format_cell(m, x));
        t.expect(morse_differential_generic(m, x) == a,
                 name + ": generic flow differs at " + format_cell(m, x));
      }
      t.expect(prp_sum(m, x).empty(), name + ": cancellation fails at " + format_cell(m, x));
    }
  t.expect(squares_to_zero(visy_complex(m, 5)), name + ": d o d != 0");
  return cells;
}

void c8(Tally& t, std::string& info) {
  long cells = 0, handles = 0;
  for (const auto& f : fixture_list()) {
    auto L = load_fixture(f.name);
    cells += check_differentials(t, f.name, *L.monoid);
    ++handles;
    if (L.group) {
      cells += check_differentials(t, f.name + " (group)", *L.group);
      ++handles;
    }
  }
  info = std::to_string(handles) + " monoids and groups from " +
         std::to_string(fixture_list().size()) + " fixtures, " + std::to_string(cells) +
         " essential cells of degree <= 4";
}

void c9(Tally& t, std::string& info) {
  auto L = load_fixture("braid3_group");
  const auto& s = *L.garside;
  const auto& grp = *L.group;
  Ball ball = word_ball(grp, 3);

  // independent BFS: shortest words over D and D^-1 up to length 3, told
  // apart by their action on the free group
  const int ndiv = grp.generator_count() / 2;
  const int strands = s.group().matrix().rank() + 1;
  std::map<oracle::Aut, int> shortest{{oracle::identity_aut(strands), 0}};
  std::vector<oracle::Aut> layer{oracle::identity_aut(strands)};
  for (int len = 1; len <= 3; ++len) {
    std::vector<oracle::Aut> next;
    for (const auto& a : layer)
      for (int g = 0; g < 2 * ndiv; ++g) {
        auto b = oracle::compose(a, oracle::braid_action(strands, oracle::generator_letters(s, ndiv, g)));
        if (shortest.emplace(b, len).second) next.push_back(b);
      }
    layer = std::move(next);
  }
  t.expect(shortest.size() == ball.elems.size(), "ball sizes differ from the free-group BFS");

  for (size_t i = 0; i < ball.elems.size(); ++i) {
    const Elem& z = ball.elems[i];
    auto act = oracle::braid_action(strands, oracle::signed_letters(s, z));
    auto it = shortest.find(act);
    t.expect(it != shortest.end() && it->second == ball.norms[i],
             "BFS norm of " + grp.format(z) + " differs from the free-group oracle");
    auto f = s.to_xy(z);
    int len = static_cast<int>(f.x.size() + f.y.size());
    t.expect(len == ball.norms[i], "NF of " + grp.format(z) + " is not geodesic");
    t.expect(grp.norm(z) == ball.norms[i], "norm of " + grp.format(z) + " differs from BFS");
    t.expect(s.from_xy(f) == z, "NF of " + grp.format(z) + " does not evaluate back");
  }
  t.expect(norm_explicit_check(s, 200));
  for (const auto& r : computation_rules_check(s)) t.expect(r);
  t.expect(validate_handle(grp, 3));
  t.expect(check_graded_equality(grp, 3));
  t.expect(check_recognition_principle(grp, 3));
  info = std::to_string(ball.elems.size()) + " elements in the radius-3 ball";
}

// Runs the command, returning its exit status and combined output.
std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return {-1, out};
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  return {pclose(p), out};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

void c10(Tally& t, std::string& info) {
  const std::string fm = quote(FM_CLI_PATH);
  auto dir = std::filesystem::temp_directory_path() / "fm_acceptance_corpus";
  std::filesystem::create_directories(dir);

  std::vector<std::string> cmds{fm + " fixtures list", fm + " lambda 1", fm + " lambda 2",
                                fm + " lambda 3"};
  for (const auto& f : fixture_list()) {
    std::string path = (dir / (f.name + ".json")).string();
    std::ofstream(path) << fixture_document(f.name);
    std::string spec = quote(path);
    cmds.push_back(fm + " fixtures export " + f.name);
    cmds.push_back(fm + " --radius 2 check " + spec);
    cmds.push_back(fm + " --max-degree 3 homology " + spec);
    cmds.push_back(fm + " garside qf " + spec);
    cmds.push_back(fm + " garside structure " + spec);
  }
  auto spec = [&](const char* name) { return quote((dir / (std::string(name) + ".json")).string()); };
  cmds.push_back(fm + " nf " + spec("appendix") + " 'a2 b3'");
  cmds.push_back(fm + " nf " + spec("braid3") + " 'a b a b'");
  cmds.push_back(fm + " nf " + spec("z2") + " 't t t'");
  cmds.push_back(fm + " nf " + spec("s3") + " 'a b a'");
  cmds.push_back(fm + " rewrite " + spec("appendix") +
                 " 'a1 b1 c1 d1' --strategy schedule:3,2,1,2,3,2,1,2 --trace");
  cmds.push_back(fm + " rewrite " + spec("appendix") + " 'a1 b1 c1 d1' --budget 50");
  cmds.push_back(fm + " rewrite " + spec("braid3") + " 'a b a b a' --trace");
  cmds.push_back(fm + " rewrite " + spec("free_abelian2") + " 'a b a b' --strategy leftmost --trace");
  cmds.push_back(fm + " --max-degree 6 homology " + spec("z2"));
  cmds.push_back(fm + " garside nf " + spec("braid3") + " 'a b a b'");
  cmds.push_back(fm + " garside nf " + spec("artin_b2") + " 'a b a b a'");
  cmds.push_back(fm + " garside group-nf " + spec("braid3_group") + " 'a aba^-1'");
  cmds.push_back(fm + " garside group-nf " + spec("braid3_group") + " 'ab^-1 ba b^-1'");
  cmds.push_back(fm + " nf fixture:appendix 'a2 b3'");
  cmds.push_back(fm + " check /nonexistent/spec.json");

  for (const auto& c : cmds) {
    auto first = run_command(c);
    auto second = run_command(c);
    t.expect(first.first == second.first, "exit status differs: " + c);
    t.expect(first.second == second.second, "output differs: " + c);
    t.expect(!first.second.empty(), "no output: " + c);
  }
  std::filesystem::remove_all(dir);
  info = std::to_string(cmds.size()) + " commands run twice";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, 1, "appendix axioms and the 8-step cycle", c1},
      {2, 10, "appendix right cancellativity and gamma", c2},
      {3, 60, "appendix matching is noetherian", c3},
      {4, 5, "Lambda enumeration and xi", c4},
      {5, 5, "Z/2 Visy homology vs bar", c5},
      {6, 600, "S3 eta search and homology", c6},
      {7, 120, "B3+ normal forms and rewriting", c7},
      {8, 300, "three differentials, d o d, cancellation", c8},
      {9, 120, "B3 Garside group", c9},
      {10, 600, "CLI determinism", c10},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Tally t;
    std::string info;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(t, info);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit_s;
    bool pass = t.failures == 0 && in_time;
    if (!pass) ++failed;
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d: %s  %8.2f s (limit %g s)  ", c.id,
                  pass ? "PASS" : "FAIL", secs, c.limit_s);
    std::cout << head << c.what << ": " << info << " [" << t.checks << " checks]\n";
    if (!in_time) std::cout << "    over the time limit\n";
    for (const auto& n : t.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
