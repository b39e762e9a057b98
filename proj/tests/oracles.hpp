// Test-only reference computations. Nothing here goes through the
// evaluator, the grammar solver, or the language algebra.
#ifndef MUCFL_TESTS_ORACLES_HPP
#define MUCFL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "mucfl/language.hpp"
#include "mucfl/random.hpp"
#include "mucfl/syntax.hpp"

namespace oracle {

/// All strings over single-character `alphabet` of length ≤ k.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t k) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : alphabet) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Brute-force filter of Σ^{≤k}; the empty string is rendered "eps".
inline std::set<std::string> filter(const std::string& alphabet, std::size_t k,
                                    const std::function<bool(const std::string&)>& keep) {
  std::set<std::string> out;
  for (const auto& w : all_strings(alphabet, k))
    if (keep(w)) out.insert(w.empty() ? "eps" : w);
  return out;
}

inline bool equal_counts(const std::string& w) {
  return std::count(w.begin(), w.end(), 'a') == std::count(w.begin(), w.end(), 'b');
}

inline bool only(const std::string& w, char c) {
  return std::all_of(w.begin(), w.end(), [c](char x) { return x == c; });
}

/// a^n b^n.
inline bool balanced_anbn(const std::string& w) {
  std::size_t n = w.size() / 2;
  return w.size() % 2 == 0 && w == std::string(n, 'a') + std::string(n, 'b');
}

/// Rendered words of a language, for comparison with the sets above.
inline std::set<std::string> rendered(const mucfl::TruncatedLang& lang) {
  std::set<std::string> out;
  for (const auto& w : lang) out.insert(w.to_string());
  return out;
}

/// Renames every binder to a name unused anywhere in `t` (a1, a2, ... after
/// `prefix`), giving an α-variant with different bound names.
inline mucfl::Term rename_binders(const mucfl::Term& t, const std::string& prefix = "r") {
  using mucfl::Term;
  using mucfl::TermKind;
  std::size_t counter = 0;
  auto names = mucfl::all_names(t);
  std::function<Term(const Term&, std::vector<std::pair<mucfl::Var, mucfl::Var>>&)> go =
      [&](const Term& u, std::vector<std::pair<mucfl::Var, mucfl::Var>>& scope) -> Term {
    switch (u.kind()) {
      case TermKind::Zero:
      case TermKind::One:
        return u;
      case TermKind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == u.var_name()) return Term::var(it->second);
        return u;
      case TermKind::Sum:
        return Term::sum(go(u.lhs(), scope), go(u.rhs(), scope));
      case TermKind::Prod:
        return Term::prod(go(u.lhs(), scope), go(u.rhs(), scope));
      case TermKind::Mu: {
        mucfl::Var fresh;
        do {
          fresh = mucfl::Var(prefix + std::to_string(++counter));
        } while (names.contains(fresh));
        scope.emplace_back(u.var_name(), fresh);
        Term body = go(u.body(), scope);
        scope.pop_back();
        return Term::mu(fresh, body);
      }
    }
    return u;
  };
  std::vector<std::pair<mucfl::Var, mucfl::Var>> scope;
  return go(t, scope);
}

inline mucfl::GenConfig gen(std::uint64_t seed, std::size_t depth = 4, std::size_t nesting = 2,
                            std::vector<std::string> alphabet = {"a", "b"}) {
  mucfl::GenConfig cfg;
  for (auto& a : alphabet) cfg.alphabet.emplace_back(a);
  cfg.max_depth = depth;
  cfg.max_mu_nesting = nesting;
  cfg.seed = seed;
  return cfg;
}

}  // namespace oracle

#endif  // MUCFL_TESTS_ORACLES_HPP
