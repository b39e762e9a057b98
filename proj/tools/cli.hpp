#ifndef MUCFL_TOOLS_CLI_HPP
#define MUCFL_TOOLS_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mucfl/mucfl.hpp"

namespace mucfl::cli {

enum ExitCode : int { kSuccess = 0, kRefuted = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A term argument, or the contents of a file when written `@path`.
inline Term term_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    try {
      return parse_term(read_file(arg.substr(1)));
    } catch (const ParseError& e) {
      throw UsageError(arg.substr(1) + ":" + e.what());
    }
  }
  try {
    return parse_term(arg);
  } catch (const ParseError& e) {
    throw UsageError(std::string("term:") + e.what());
  }
}

inline Grammar grammar_file(const std::string& path) {
  try {
    return parse_grammar(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

inline Var nonterminal_arg(const Grammar& g, const std::optional<std::string>& name) {
  if (!name) return g.start();
  if (!is_identifier(*name) || !g.is_nonterminal(Var(*name)))
    throw UsageError("'" + *name + "' is not a nonterminal of the grammar");
  return Var(*name);
}

inline void print_words(std::ostream& out, const TruncatedLang& lang) {
  for (const auto& w : lang.sorted()) out << w.to_string() << '\n';
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mu-regular expressions and context-free grammars, evaluated up to a word-length bound"};
  app.require_subcommand(1);

  std::size_t k = default_bound;
  std::size_t n = 0;
  std::string x, term1, term2, file;
  std::optional<std::string> nonterminal;
  std::uint64_t seed = 42;
  std::size_t cases = 100;
  std::optional<std::string> law;

  auto* eval_cmd = app.add_subcommand("eval", "print the words of a term's language up to length k");
  eval_cmd->add_option("-k", k, "word-length bound")->capture_default_str();
  eval_cmd->add_option("term", term1, "term, or @file")->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "compare two terms' languages up to length k");
  equiv_cmd->add_option("-k", k, "word-length bound")->capture_default_str();
  equiv_cmd->add_option("term1", term1, "left term, or @file")->required();
  equiv_cmd->add_option("term2", term2, "right term, or @file")->required();

  auto* approx_cmd = app.add_subcommand("approx", "print the unsimplified n-th approximant of mu x. term");
  approx_cmd->add_option("-n", n, "unfolding depth")->required();
  approx_cmd->add_option("-x", x, "variable to unfold")->required();
  approx_cmd->add_option("term", term1, "body term, or @file")->required();

  auto* to_grammar_cmd = app.add_subcommand("to-grammar", "print the grammar of a term");
  to_grammar_cmd->add_option("term", term1, "term, or @file")->required();

  auto* from_grammar_cmd = app.add_subcommand("from-grammar", "print the mu-term of a grammar nonterminal");
  from_grammar_cmd->add_option("-v", nonterminal, "nonterminal (default: start symbol)");
  from_grammar_cmd->add_option("file", file, "grammar file")->required();

  auto* check_cmd = app.add_subcommand("check", "run the randomized algebraic-law suite");
  check_cmd->add_option("-k", k, "word-length bound")->capture_default_str();
  check_cmd->add_option("--seed", seed, "suite seed")->capture_default_str();
  check_cmd->add_option("--cases", cases, "instances per law")->capture_default_str();
  check_cmd->add_option("--law", law, "run a single law");

  auto* lang_cmd = app.add_subcommand("lang", "print the bounded language of a grammar nonterminal");
  lang_cmd->add_option("-k", k, "word-length bound")->capture_default_str();
  lang_cmd->add_option("file", file, "grammar file")->required();
  lang_cmd->add_option("-v", nonterminal, "nonterminal (default: start symbol)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eval_cmd) {
      print_words(out, canonical_eval(term_arg(term1), k));
      return kSuccess;
    }
    if (*equiv_cmd) {
      EquivResult r = equiv_upto(term_arg(term1), term_arg(term2), k);
      if (r.equal()) {
        out << "equal up to " << k << '\n';
        return kSuccess;
      }
      out << "counterexample: " << r.counterexample->word.to_string() << " (in "
          << (r.counterexample->in_left ? "left" : "right") << " only)\n";
      return kRefuted;
    }
    if (*approx_cmd) {
      if (!is_identifier(x) || x == "mu") throw UsageError("-x: '" + x + "' is not a variable name");
      out << print_term(approximant(n, Var(x), term_arg(term1))) << '\n';
      return kSuccess;
    }
    if (*to_grammar_cmd) {
      out << print_grammar(to_grammar(term_arg(term1)));
      return kSuccess;
    }
    if (*from_grammar_cmd) {
      Grammar g = grammar_file(file);
      out << print_term(bekic_term(g, nonterminal_arg(g, nonterminal))) << '\n';
      return kSuccess;
    }
    if (*lang_cmd) {
      Grammar g = grammar_file(file);
      print_words(out, grammar_eval(g, k).at(nonterminal_arg(g, nonterminal)));
      return kSuccess;
    }
    if (*check_cmd) {
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.cases = cases;
      cfg.k = k;
      if (cases < 1) throw UsageError("--cases must be at least 1");
      if (law) {
        cfg.only = law_from_string(*law);
        if (!cfg.only) throw UsageError("unknown law '" + *law + "'");
      }
      bool all_pass = true;
      for (const auto& r : run_suite(cfg)) {
        out << r.to_line() << '\n';
        if (r.verdict == Verdict::Fail) all_pass = false;
      }
      return all_pass ? kSuccess : kRefuted;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mucfl::cli

#endif  // MUCFL_TOOLS_CLI_HPP
