#ifndef MUCFL_SEMANTICS_HPP
#define MUCFL_SEMANTICS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "language.hpp"
#include "syntax.hpp"

namespace mucfl {

/// Default word-length bound.
inline constexpr std::size_t default_bound = 6;

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Assignment of truncated languages (all with the same bound) to variables.
class Valuation {
public:
  explicit Valuation(std::size_t bound) : bound_(bound) {}

  std::size_t bound() const noexcept { return bound_; }

  /// Binds (or rebinds) `x`. The language is re-truncated to the bound.
  Valuation& set(const Var& x, const TruncatedLang& lang) {
    TruncatedLang value = lang.bound() <= bound_ ? TruncatedLang(bound_, lang.words())
                                                 : lang.restricted(bound_);
    map_.insert_or_assign(x, std::move(value));
    return *this;
  }

  /// A copy with `x` rebound.
  Valuation with(const Var& x, const TruncatedLang& lang) const {
    Valuation out = *this;
    out.set(x, lang);
    return out;
  }

  const TruncatedLang* find(const Var& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
  }

  const std::map<Var, TruncatedLang>& entries() const noexcept { return map_; }

  /// Symbols occurring in any bound language.
  std::vector<Symbol> alphabet() const {
    std::vector<Symbol> out;
    for (const auto& [_, lang] : map_) {
      auto a = lang.alphabet();
      out.insert(out.end(), a.begin(), a.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  std::size_t bound_;
  std::map<Var, TruncatedLang> map_;
};

/// σ(x) = {x} for every listed variable (∅ when k = 0).
template <class Vars>
Valuation canonical_valuation(const Vars& vars, std::size_t k) {
  Valuation sigma(k);
  for (const auto& v : vars) sigma.set(v, TruncatedLang::letter(k, v));
  return sigma;
}

/// Counters collected during one evaluation.
struct EvalStats {
  /// Largest number of Kleene steps any single μ needed.
  std::size_t max_mu_iterations = 0;
  /// |Σ^{≤k}| + 1 for the valuation's alphabet: no μ may exceed it.
  std::size_t iteration_limit = 0;
};

namespace detail {

/// Compositional evaluator. μx.t is solved by Kleene iteration from ∅ until
/// two successive iterates coincide; inner binders are re-solved completely
/// on every outer step.
///
/// Subterms whose free variables are all outside the current binder scope
/// depend only on σ and are memoized by node identity, which keeps
/// evaluation of shared approximant DAGs linear in the DAG size.
class Evaluator {
public:
  Evaluator(const Valuation& sigma, std::size_t k) : sigma_(sigma), k_(k) {
    if (sigma.bound() != k)
      throw EvalError("valuation bound " + std::to_string(sigma.bound()) + " differs from k = " +
                      std::to_string(k));
    stats_.iteration_limit = universe_size(sigma.alphabet().size(), k) + 1;
  }

  TruncatedLang run(const Term& t) { return eval(t); }
  const EvalStats& stats() const noexcept { return stats_; }

private:
  TruncatedLang eval(const Term& t) {
    switch (t.kind()) {
      case TermKind::Zero:
        return TruncatedLang(k_);
      case TermKind::One:
        return TruncatedLang::epsilon(k_);
      case TermKind::Var:
        return lookup(t.var_name());
      default:
        break;
    }
    const bool cacheable = independent_of_scope(t);
    if (cacheable) {
      if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    }
    TruncatedLang out(k_);
    switch (t.kind()) {
      case TermKind::Sum:
        out = eval(t.lhs()) | eval(t.rhs());
        break;
      case TermKind::Prod: {
        TruncatedLang l = eval(t.lhs());
        if (!l.empty()) out = trunc_product(l, eval(t.rhs()), k_);
        break;
      }
      case TermKind::Mu:
        out = fixpoint(t.var_name(), t.body());
        break;
      default:
        break;
    }
    if (cacheable) memo_.emplace(t.id(), out);
    return out;
  }

  TruncatedLang fixpoint(const Var& x, const Term& body) {
    TruncatedLang current(k_);
    scope_.emplace_back(x, &current);
    std::size_t steps = 0;
    for (;;) {
      TruncatedLang next = eval(body);
      ++steps;
      if (steps > stats_.iteration_limit)
        throw std::logic_error("fixpoint iteration exceeded |Σ^{≤k}| + 1 steps");
      if (next == current) break;
      current = std::move(next);
    }
    scope_.pop_back();
    stats_.max_mu_iterations = std::max(stats_.max_mu_iterations, steps);
    return current;
  }

  const TruncatedLang& lookup(const Var& x) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == x) return *it->second;
    if (const auto* v = sigma_.find(x)) return *v;
    throw EvalError("free variable '" + x.name() + "' is not bound by the valuation");
  }

  bool independent_of_scope(const Term& t) const {
    for (const auto& [x, _] : scope_)
      if (t.has_free(x)) return false;
    return true;
  }

  const Valuation& sigma_;
  std::size_t k_;
  std::vector<std::pair<Var, const TruncatedLang*>> scope_;
  std::unordered_map<const void*, TruncatedLang> memo_;
  EvalStats stats_;
};

}  // namespace detail

/// { w ∈ L(t, σ) : |w| ≤ k }. Throws EvalError for an unbound free variable
/// or when σ's bound differs from k.
inline TruncatedLang eval(const Term& t, const Valuation& sigma, std::size_t k, EvalStats* stats = nullptr) {
  detail::Evaluator ev(sigma, k);
  TruncatedLang out = ev.run(t);
  if (stats) *stats = ev.stats();
  return out;
}

/// Evaluation under σ(x) = {x} for every free variable x.
inline TruncatedLang canonical_eval(const Term& t, std::size_t k, EvalStats* stats = nullptr) {
  return eval(t, canonical_valuation(t.free_list(), k), k, stats);
}

/// eval(nx.t) for n = 0, 1, ... up to and including the first n whose value
/// equals eval(μx.t).
inline std::vector<TruncatedLang> approximant_chain(const Var& x, const Term& t, const Valuation& sigma,
                                                    std::size_t k) {
  EvalStats stats;
  const TruncatedLang limit = eval(Term::mu(x, t), sigma, k, &stats);
  std::vector<TruncatedLang> chain;
  Term approx = Term::zero();
  for (std::size_t n = 0;; ++n) {
    chain.push_back(eval(approx, sigma, k));
    if (chain.back() == limit) break;
    if (n + 1 >= stats.iteration_limit)
      throw std::logic_error("approximant chain did not reach the fixpoint within |Σ^{≤k}| + 1 steps");
    approx = subst(t, x, approx);
  }
  return chain;
}

struct Counterexample {
  Word word;
  /// True when the word is in the left language only.
  bool in_left = false;
};

struct EquivResult {
  std::size_t bound = 0;
  std::optional<Counterexample> counterexample;

  bool equal() const noexcept { return !counterexample.has_value(); }
};

/// Bounded equivalence: equal iff the canonical languages agree on all words of
/// length ≤ k; otherwise the shortlex-least word of the symmetric difference.
inline EquivResult equiv_upto(const Term& s, const Term& t, std::size_t k) {
  TruncatedLang a = canonical_eval(s, k);
  TruncatedLang b = canonical_eval(t, k);
  EquivResult result{k, std::nullopt};
  std::optional<Counterexample> best;
  auto consider = [&](const TruncatedLang& only, bool in_left) {
    for (const auto& w : only)
      if (!best || shortlex_less(w, best->word)) best = Counterexample{w, in_left};
  };
  consider(a - b, true);
  consider(b - a, false);
  result.counterexample = std::move(best);
  return result;
}

}  // namespace mucfl

#endif  // MUCFL_SEMANTICS_HPP
