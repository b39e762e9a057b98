// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "mucfl/mucfl.hpp"
#include "oracles.hpp"

using namespace mucfl;

namespace {

const char* const kEqualABTerm = "mu S. 1 + a (mu B. b S + a B B) + b (mu A. a S + b A A)";
const std::string kData = MUCFL_DATA_DIR;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool ok;
  std::string detail;
};

std::set<std::string> equal_counts_6() { return oracle::filter("ab", 6, oracle::equal_counts); }

Outcome criterion1() {
  auto got = oracle::rendered(canonical_eval(parse_term(kEqualABTerm), 6));
  auto want = equal_counts_6();
  if (want.size() != 29) return {false, "brute-force filter has " + std::to_string(want.size()) + " words"};
  return {got == want, std::to_string(got.size()) + " words"};
}

Outcome criterion2() {
  Grammar g = parse_grammar(read_text(kData + "/equal_ab.cfg"));
  auto iter = oracle::rendered(grammar_eval(g, 6).at(Var("S")));
  auto derived = oracle::rendered(derive_oracle(g, 6).at(Var("S")));
  auto want = equal_counts_6();
  return {iter == want && derived == want,
          "grammar_eval " + std::to_string(iter.size()) + ", derive_oracle " + std::to_string(derived.size())};
}

Outcome criterion3() {
  GenConfig cfg{{Var("a"), Var("b")}, 4, 2, 0};
  std::size_t equal = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    cfg.seed = mix_seed(42, i);
    Term t = random_term(cfg);
    Grammar g = to_grammar(t);
    if (equiv_upto(bekic_term(g, g.start()), t, 6).equal()) ++equal;
    else std::cerr << "  not equal: " << print_term(t) << '\n';
  }
  return {equal == 50, std::to_string(equal) + "/50 equal"};
}

std::vector<CheckReport> suite_reports;

Outcome criterion4() {
  SuiteConfig cfg;
  cfg.seed = 42;
  cfg.cases = 100;
  cfg.k = 5;
  suite_reports = run_suite(cfg);
  std::set<LawName> laws;
  std::size_t failures = 0, skips = 0;
  for (const auto& r : suite_reports) {
    laws.insert(r.law);
    if (r.verdict == Verdict::Fail) {
      ++failures;
      std::cerr << "  " << r.to_line() << "  " << r.instance << '\n';
    }
    if (r.verdict == Verdict::Skip) ++skips;
  }
  return {failures == 0 && laws.size() == 12 && suite_reports.size() == 1200,
          std::to_string(suite_reports.size()) + " reports, " + std::to_string(laws.size()) + " laws, " +
              std::to_string(failures) + " failures, " + std::to_string(skips) + " skips"};
}

Outcome criterion5() {
  const std::size_t bound = universe_size(2, 5) + 1;
  if (bound != 64) return {false, "bound computed as " + std::to_string(bound)};
  std::size_t max_stab = 0, reported = 0, mu_continuity = 0;
  for (const auto& r : suite_reports) {
    if (r.law == LawName::MuContinuity && r.stabilization) ++mu_continuity;
    if (!r.stabilization) continue;
    ++reported;
    max_stab = std::max(max_stab, *r.stabilization);
  }
  return {mu_continuity > 0 && max_stab <= bound,
          std::to_string(reported) + " indices, max " + std::to_string(max_stab) + " <= " + std::to_string(bound)};
}

Outcome criterion6() {
  GenConfig cfg{{Var("a"), Var("b")}, 4, 2, 0};
  std::size_t agree = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    cfg.seed = mix_seed(42, i);
    Term t = random_term(cfg);
    if (canonical_eval(t, 4) == canonical_eval(t, 6).restricted(4)) ++agree;
    else std::cerr << "  incoherent: " << print_term(t) << '\n';
  }
  return {agree == 100, std::to_string(agree) + "/100 agree"};
}

Outcome criterion7() {
  const Word omitted{"b", "a", "b"};
  std::vector<Symbol> ab{SymbolTable::intern("a"), SymbolTable::intern("b")};
  Term rhs = Term::zero();
  for (const auto& w : TruncatedLang::universe(ab, 3)) {
    if (w == omitted) continue;
    Term mono = Term::one();
    for (const auto& v : w.vars()) mono = mono * Term::var(v);
    rhs = rhs + mono;
  }
  EquivResult r = equiv_upto(parse_term("mu x. 1 + a x + b x"), rhs, 3);
  if (r.equal()) return {false, "reported equal"};
  return {r.counterexample->word == omitted && r.counterexample->in_left,
          "counterexample " + r.counterexample->word.to_string()};
}

Outcome criterion8() {
  GenConfig cfg{{Var("a"), Var("b")}, 4, 2, 0};
  std::size_t ok = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    cfg.seed = mix_seed(8, i);
    Term t = random_term(cfg);
    if (alpha_eq(parse_term(print_term(t)), t)) ++ok;
    else std::cerr << "  round trip failed: " << print_term(t) << '\n';
  }
  const std::string text = read_text(kData + "/equal_ab.cfg");
  const bool grammar_ok = print_grammar(parse_grammar(text)) == text;
  return {ok == 200 && grammar_ok,
          std::to_string(ok) + "/200 terms, grammar file " + (grammar_ok ? "identical" : "differs")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "equal-counts term at k=6 matches brute force", 1, criterion1},
      {2, "grammar_eval and derive_oracle agree with criterion 1", 1, criterion2},
      {3, "Bekic round trip on 50 random terms", 30, criterion3},
      {4, "axiom suite seed=42 cases=100 k=5 has no failures", 120, criterion4},
      {5, "stabilization indices within |Sigma^{<=5}|+1", 0, criterion5},
      {6, "truncation coherence on 100 random terms", 10, criterion6},
      {7, "shortest counterexample is the omitted word", 0, criterion7},
      {8, "parse/print round trips", 0, criterion8},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.ok = false;
      o.detail += " (over time limit)";
    }
    all = all && o.ok;
    std::printf("%s criterion %d: %s [%s; %.3fs]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  return all ? 0 : 1;
}
