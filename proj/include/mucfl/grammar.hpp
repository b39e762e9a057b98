#ifndef MUCFL_GRAMMAR_HPP
#define MUCFL_GRAMMAR_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "language.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

namespace mucfl {

/// One right-hand side; the empty sequence is ε.
using Alternative = std::vector<Var>;

/// A context-free grammar read as a system of polynomial inequalities
/// p_i ≤ X_i, one per nonterminal. Symbols that are not nonterminals are
/// terminals. The start symbol is always the first nonterminal, and the
/// nonterminal order is the declaration order.
class Grammar {
public:
  explicit Grammar(Var start) : start_(start) { declare(std::move(start)); }

  /// Declares `nt` (idempotent); new nonterminals go to the end of the order.
  void declare(Var nt) {
    if (productions_.try_emplace(nt).second) order_.push_back(std::move(nt));
  }

  /// Adds an alternative for `nt` (declaring it), ignoring duplicates.
  void add_alternative(const Var& nt, Alternative alt) {
    declare(nt);
    auto& alts = productions_.at(nt);
    if (std::find(alts.begin(), alts.end(), alt) == alts.end()) alts.push_back(std::move(alt));
  }

  const Var& start() const noexcept { return start_; }
  const std::vector<Var>& nonterminals() const noexcept { return order_; }
  bool is_nonterminal(const Var& v) const { return productions_.contains(v); }

  const std::vector<Alternative>& alternatives(const Var& nt) const {
    auto it = productions_.find(nt);
    if (it == productions_.end()) throw std::invalid_argument("'" + nt.name() + "' is not a nonterminal");
    return it->second;
  }

  /// Terminals in order of first appearance.
  std::vector<Var> terminals() const {
    std::vector<Var> out;
    std::unordered_set<Var> seen;
    for (const auto& nt : order_)
      for (const auto& alt : productions_.at(nt))
        for (const auto& s : alt)
          if (!is_nonterminal(s) && seen.insert(s).second) out.push_back(s);
    return out;
  }

  std::size_t max_alternative_length() const {
    std::size_t m = 0;
    for (const auto& [_, alts] : productions_)
      for (const auto& alt : alts) m = std::max(m, alt.size());
    return m;
  }

  friend bool operator==(const Grammar&, const Grammar&) = default;

private:
  Var start_;
  std::vector<Var> order_;
  std::map<Var, std::vector<Alternative>> productions_;
};

using GrammarLanguages = std::map<Var, TruncatedLang>;

namespace detail {

class GrammarBuilder {
public:
  explicit GrammarBuilder(const Term& t) : root_(t) {
    for (const auto& v : t.free_list()) taken_.insert(v);
  }

  Grammar build() {
    Var start = root_.kind() == TermKind::Mu ? claim(root_.var_name()) : claim(Var("S"));
    Grammar g(start);
    grammar_ = &g;
    if (root_.kind() == TermKind::Mu) {
      define(start, root_);
    } else {
      for (auto& m : monomials(root_)) g.add_alternative(start, std::move(m));
    }
    return g;
  }

private:
  using Monomials = std::vector<Alternative>;

  Var claim(const Var& wanted) {
    Var name = taken_.contains(wanted) ? fresh_var(wanted, taken_) : wanted;
    taken_.insert(name);
    return name;
  }

  void define(const Var& nt, const Term& mu) {
    grammar_->declare(nt);
    scope_.emplace_back(mu.var_name(), nt);
    Monomials body = monomials(mu.body());
    scope_.pop_back();
    for (auto& m : body) grammar_->add_alternative(nt, std::move(m));
  }

  Monomials monomials(const Term& t) {
    switch (t.kind()) {
      case TermKind::Zero:
        return {};
      case TermKind::One:
        return {Alternative{}};
      case TermKind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.var_name()) return {Alternative{it->second}};
        return {Alternative{t.var_name()}};
      }
      case TermKind::Sum: {
        Monomials l = monomials(t.lhs());
        Monomials r = monomials(t.rhs());
        l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
        return l;
      }
      case TermKind::Prod: {
        Monomials l = monomials(t.lhs());
        Monomials r = monomials(t.rhs());
        Monomials out;
        out.reserve(l.size() * r.size());
        for (const auto& a : l)
          for (const auto& b : r) {
            Alternative ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            out.push_back(std::move(ab));
          }
        return out;
      }
      case TermKind::Mu: {
        Var nt = claim(t.var_name());
        define(nt, t);
        return {Alternative{nt}};
      }
    }
    return {};
  }

  const Term& root_;
  Grammar* grammar_ = nullptr;
  std::unordered_set<Var> taken_;
  std::vector<std::pair<Var, Var>> scope_;  // binder -> nonterminal
};

inline Term polynomial(const std::vector<Alternative>& alts) {
  Term sum;
  bool first = true;
  for (const auto& alt : alts) {
    Term mono = Term::one();
    for (std::size_t i = 0; i < alt.size(); ++i)
      mono = i == 0 ? Term::var(alt[i]) : Term::prod(std::move(mono), Term::var(alt[i]));
    sum = first ? std::move(mono) : Term::sum(std::move(sum), std::move(mono));
    first = false;
  }
  return sum;
}

}  // namespace detail

/// Flattens a μ-term into a grammar: one nonterminal per μ-binder plus a start
/// nonterminal `S` for the root (the root binder itself when the root is a μ).
/// Free variables become terminals. Nonterminal names reuse binder names,
/// suffixed with the fresh-name scheme on clashes.
inline Grammar to_grammar(const Term& t) { return detail::GrammarBuilder(t).build(); }

/// Closed μ-term for the least-solution component of `v`.
///
/// Gaussian elimination in reverse declaration order: the last nonterminal X
/// becomes μX.p_X, which is substituted into every earlier body; the first
/// nonterminal's term is then closed and back-substitution closes the rest.
inline Term bekic_term(const Grammar& g, const Var& v) {
  const auto& nts = g.nonterminals();
  auto pos = std::find(nts.begin(), nts.end(), v);
  if (pos == nts.end()) throw std::invalid_argument("'" + v.name() + "' is not a nonterminal");
  const std::size_t target = static_cast<std::size_t>(pos - nts.begin());

  std::vector<Term> body;
  body.reserve(nts.size());
  for (const auto& nt : nts) body.push_back(detail::polynomial(g.alternatives(nt)));

  std::vector<Term> solution(nts.size());
  for (std::size_t i = nts.size(); i-- > 0;) {
    solution[i] = Term::mu(nts[i], body[i]);
    for (std::size_t j = 0; j < i; ++j) body[j] = subst(body[j], nts[i], solution[i]);
  }
  for (std::size_t i = 1; i <= target; ++i)
    for (std::size_t j = 0; j < i; ++j) solution[i] = subst(solution[i], nts[j], solution[j]);
  return solution[target];
}

/// Least solution of the grammar's system in the truncated algebra, by joint
/// (Jacobi) Kleene iteration from all-∅.
inline GrammarLanguages grammar_eval(const Grammar& g, std::size_t k) {
  GrammarLanguages current;
  for (const auto& nt : g.nonterminals()) current.emplace(nt, TruncatedLang(k));
  std::map<Var, TruncatedLang> letters;
  for (const auto& t : g.terminals()) letters.emplace(t, TruncatedLang::letter(k, t));

  auto value = [&](const GrammarLanguages& env, const Var& s) -> const TruncatedLang& {
    if (auto it = env.find(s); it != env.end()) return it->second;
    return letters.at(s);
  };

  for (;;) {
    GrammarLanguages next;
    for (const auto& nt : g.nonterminals()) {
      TruncatedLang acc(k);
      for (const auto& alt : g.alternatives(nt)) {
        TruncatedLang mono = TruncatedLang::epsilon(k);
        for (const auto& s : alt) {
          mono = trunc_product(mono, value(current, s), k);
          if (mono.empty()) break;
        }
        acc = acc | mono;
      }
      next.emplace(nt, std::move(acc));
    }
    if (next == current) return current;
    current = std::move(next);
  }
}

/// Independent oracle for grammar_eval: breadth-first leftmost expansion of
/// sentential forms from each nonterminal.
///
/// A form is dropped when it holds more than k terminals (they all survive
/// into the final word) or when it is longer than k + |N|·m, with m the
/// longest alternative. The length cap assumes every word of length ≤ k has a
/// leftmost derivation whose forms stay within it; tests cross-check the
/// result against grammar_eval.
inline GrammarLanguages derive_oracle(const Grammar& g, std::size_t k) {
  const auto& nts = g.nonterminals();
  std::unordered_map<Var, std::uint32_t> nt_index;
  for (std::uint32_t i = 0; i < nts.size(); ++i) nt_index.emplace(nts[i], i);

  constexpr char32_t nt_flag = 0x80000000u;
  std::vector<std::vector<std::u32string>> rules(nts.size());
  for (std::size_t i = 0; i < nts.size(); ++i)
    for (const auto& alt : g.alternatives(nts[i])) {
      std::u32string enc;
      for (const auto& s : alt) {
        auto it = nt_index.find(s);
        enc.push_back(it != nt_index.end() ? (nt_flag | it->second) : SymbolTable::intern(s));
      }
      rules[i].push_back(std::move(enc));
    }

  const std::size_t cap = k + nts.size() * g.max_alternative_length();
  auto terminal_count = [&](const std::u32string& form) {
    return static_cast<std::size_t>(
        std::count_if(form.begin(), form.end(), [&](char32_t c) { return (c & nt_flag) == 0; }));
  };

  GrammarLanguages out;
  for (std::uint32_t i = 0; i < nts.size(); ++i) {
    std::vector<Word> words;
    std::unordered_set<std::u32string> seen;
    std::deque<std::u32string> queue;
    std::u32string init(1, nt_flag | i);
    seen.insert(init);
    queue.push_back(std::move(init));
    while (!queue.empty()) {
      std::u32string form = std::move(queue.front());
      queue.pop_front();
      auto first_nt = std::find_if(form.begin(), form.end(), [&](char32_t c) { return (c & nt_flag) != 0; });
      if (first_nt == form.end()) {
        words.emplace_back(form);
        continue;
      }
      const std::size_t at = static_cast<std::size_t>(first_nt - form.begin());
      for (const auto& rhs : rules[*first_nt & ~nt_flag]) {
        std::u32string next = form.substr(0, at) + rhs + form.substr(at + 1);
        if (next.size() > cap || terminal_count(next) > k) continue;
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
    out.emplace(nts[i], TruncatedLang(k, std::move(words)));
  }
  return out;
}

}  // namespace mucfl

#endif  // MUCFL_GRAMMAR_HPP
