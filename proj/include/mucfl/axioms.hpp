#ifndef MUCFL_AXIOMS_HPP
#define MUCFL_AXIOMS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "io.hpp"
#include "language.hpp"
#include "random.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

namespace mucfl {

enum class LawName {
  ParkIneq1,       // t[μx.t/x] ≤ μx.t
  ParkIneq2,       // t ≤ x ⇒ μx.t ≤ x
  ParkEq,          // t[μx.t/x] = μx.t
  MuContinuity,    // a(μx.t)b = Σ_n a(nx.t)b
  Samelists,       // μx.(1+ax) = μx.(1+xa)
  ListdistrLeft,   // a(μx.(1+xb)) = μx.(a+xb)
  ListdistrRight,  // (μx.(1+bx))a = μx.(a+bx)
  GreibachLeft,    // μx.s(μy.(1+ry)) ≤ μx.(s+xr)
  GreibachRight,   // μx.(μy.(1+yr))s ≤ μx.(s+rx)
  Substitution,    // σ(t[u/y]) = σ[y↦σ(u)](t)
  Freecont,        // L(s[μy.t/y]) = ⋃_n L(s[ny.t/y])
  SupremumDecomposition,  // σ(stu) = Σ_{w∈L(t)} σ(swu)
};

inline constexpr std::array<LawName, 12> all_laws = {
    LawName::ParkIneq1,      LawName::ParkIneq2,     LawName::ParkEq,         LawName::MuContinuity,
    LawName::Samelists,      LawName::ListdistrLeft, LawName::ListdistrRight, LawName::GreibachLeft,
    LawName::GreibachRight,  LawName::Substitution,  LawName::Freecont,       LawName::SupremumDecomposition,
};

inline std::string_view to_string(LawName law) {
  switch (law) {
    case LawName::ParkIneq1: return "park-ineq1";
    case LawName::ParkIneq2: return "park-ineq2";
    case LawName::ParkEq: return "park-eq";
    case LawName::MuContinuity: return "mu-continuity";
    case LawName::Samelists: return "samelists";
    case LawName::ListdistrLeft: return "listdistr-left";
    case LawName::ListdistrRight: return "listdistr-right";
    case LawName::GreibachLeft: return "greibach-left";
    case LawName::GreibachRight: return "greibach-right";
    case LawName::Substitution: return "substitution";
    case LawName::Freecont: return "freecont";
    case LawName::SupremumDecomposition: return "supremum-decomposition";
  }
  return "?";
}

inline std::optional<LawName> law_from_string(std::string_view name) {
  for (LawName law : all_laws)
    if (to_string(law) == name) return law;
  return std::nullopt;
}

/// Laws whose right-hand side only needs to contain the left-hand side.
constexpr bool is_inequational(LawName law) {
  return law == LawName::ParkIneq1 || law == LawName::GreibachLeft || law == LawName::GreibachRight;
}

enum class Verdict { Pass, Fail, Skip };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skip: return "skip";
  }
  return "?";
}

struct CheckReport {
  LawName law = LawName::ParkEq;
  std::string instance;
  std::size_t bound = 0;
  Verdict verdict = Verdict::Pass;
  std::optional<Word> witness;
  std::optional<std::size_t> stabilization;
  std::uint64_t seed = 0;
  std::string detail;

  bool passed() const noexcept { return verdict == Verdict::Pass; }

  /// `LAW=<name> SEED=<n> K=<k> VERDICT=<v> [WITNESS=<word>] [STAB=<n>]`
  std::string to_line() const {
    std::string out = "LAW=" + std::string(to_string(law)) + " SEED=" + std::to_string(seed) +
                      " K=" + std::to_string(bound) + " VERDICT=" + std::string(to_string(verdict));
    if (witness) out += " WITNESS=" + witness->to_string();
    if (stabilization) out += " STAB=" + std::to_string(*stabilization);
    return out;
  }
};

inline CheckReport make_report(LawName law, std::string instance, std::size_t k) {
  CheckReport r;
  r.law = law;
  r.instance = std::move(instance);
  r.bound = k;
  return r;
}

/// Metavariable name (a, b, r, s, t, u, and binders x, y) to term. Binders
/// are given as variable terms and default to `x` and `y`.
using LawEnv = std::map<std::string, Term>;

class LawError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::optional<Word> least_word(const TruncatedLang& lang) {
  std::optional<Word> best;
  for (const auto& w : lang)
    if (!best || shortlex_less(w, *best)) best = w;
  return best;
}

inline void compare_sides(CheckReport& r, const TruncatedLang& lhs, const TruncatedLang& rhs, bool inequality) {
  std::optional<Word> witness = least_word(lhs - rhs);
  if (!inequality) {
    std::optional<Word> other = least_word(rhs - lhs);
    if (other && (!witness || shortlex_less(*other, *witness))) witness = other;
  }
  if (witness) {
    r.verdict = Verdict::Fail;
    r.witness = witness;
    r.detail = "lhs=" + lhs.to_string() + " rhs=" + rhs.to_string();
  } else {
    r.verdict = Verdict::Pass;
  }
}

template <class... Terms>
Valuation canonical_for(std::size_t k, const Terms&... terms) {
  std::set<Var> vars;
  (vars.insert(terms.free_list().begin(), terms.free_list().end()), ...);
  return canonical_valuation(vars, k);
}

inline std::string describe_instance(const std::vector<std::pair<std::string, Term>>& parts) {
  std::string out;
  for (const auto& [name, term] : parts) {
    if (!out.empty()) out += "; ";
    out += name + "=" + print_term(term);
  }
  return out;
}

/// A binder name not free in any of `terms`: `preferred` if possible.
template <class... Terms>
Var binder_avoiding(const Var& preferred, const Terms&... terms) {
  bool clash = (terms.has_free(preferred) || ...);
  if (!clash) return preferred;
  std::unordered_set<Var> taken;
  (taken.merge(all_names(terms)), ...);
  return fresh_var(preferred, taken);
}

/// Walks the chain c_n = σ(nx.t) together with d_n = σ(wrap(nx.t)) until c
/// repeats. Returns the union of the d_n and the first index at which d
/// reaches it; fails the report if the chain is not monotone or outruns `limit`.
template <class Wrap>
std::optional<std::pair<TruncatedLang, std::size_t>> walk_chain(CheckReport& r, const Var& x, const Term& t,
                                                                 const Valuation& sigma, std::size_t k,
                                                                 std::size_t limit, Wrap wrap) {
  std::vector<TruncatedLang> outer;
  Term approx = Term::zero();
  TruncatedLang prev_inner = eval(approx, sigma, k);
  outer.push_back(eval(wrap(approx), sigma, k));
  TruncatedLang sup = outer.back();
  for (std::size_t n = 1;; ++n) {
    if (n > limit) {
      r.verdict = Verdict::Fail;
      r.detail = "approximant chain did not stabilize within " + std::to_string(limit) + " steps";
      return std::nullopt;
    }
    approx = subst(t, x, approx);
    TruncatedLang inner = eval(approx, sigma, k);
    outer.push_back(eval(wrap(approx), sigma, k));
    if (!prev_inner.subset_of(inner) || !outer[n - 1].subset_of(outer[n])) {
      r.verdict = Verdict::Fail;
      r.witness = least_word(outer[n - 1] - outer[n]);
      r.detail = "approximant chain is not monotone at n=" + std::to_string(n);
      return std::nullopt;
    }
    sup = sup | outer.back();
    if (inner == prev_inner) break;
    prev_inner = std::move(inner);
  }
  std::size_t stab = 0;
  while (!(outer[stab] == sup)) ++stab;
  return std::make_pair(std::move(sup), stab);
}

inline const Term& require(const LawEnv& env, const char* name, LawName law) {
  auto it = env.find(name);
  if (it == env.end())
    throw LawError(std::string(to_string(law)) + ": missing metavariable '" + name + "'");
  return it->second;
}

inline Var binder_of(const LawEnv& env, const char* name, LawName law) {
  auto it = env.find(name);
  if (it == env.end()) return Var(name);
  if (it->second.kind() != TermKind::Var)
    throw LawError(std::string(to_string(law)) + ": binder '" + name + "' must be a variable");
  return it->second.var_name();
}

}  // namespace detail

/// t[μx.t/x] ⊆ μx.t under the canonical valuation.
inline CheckReport check_park_ineq1(const Term& t, const Var& x, std::size_t k) {
  CheckReport r = make_report(LawName::ParkIneq1, detail::describe_instance({{"t", t}, {"x", Term::var(x)}}), k);
  Term fix = Term::mu(x, t);
  detail::compare_sides(r, canonical_eval(subst(t, x, fix), k), canonical_eval(fix, k), true);
  return r;
}

/// t[μx.t/x] = μx.t under the canonical valuation.
inline CheckReport check_park_eq(const Term& t, const Var& x, std::size_t k) {
  CheckReport r = make_report(LawName::ParkEq, detail::describe_instance({{"t", t}, {"x", Term::var(x)}}), k);
  Term fix = Term::mu(x, t);
  detail::compare_sides(r, canonical_eval(subst(t, x, fix), k), canonical_eval(fix, k), false);
  return r;
}

/// t ≤ x ⇒ μx.t ≤ x, sampled: other variables canonical, σ(x) ranging over
/// the least fixpoint, ten random supersets of it, ten random subsets of
/// Σ^{≤k}, and Σ^{≤k} itself. Valuations violating the premise are skipped.
inline CheckReport check_park_ineq2(const Term& t, const Var& x, std::size_t k, std::uint64_t sample_seed = 0) {
  CheckReport r = make_report(LawName::ParkIneq2, detail::describe_instance({{"t", t}, {"x", Term::var(x)}}), k);
  const Term fix = Term::mu(x, t);
  const Valuation base = canonical_valuation(fix.free_list(), k);
  const TruncatedLang least = eval(fix, base, k);

  std::vector<Symbol> alphabet;
  for (const auto& v : fix.free_list()) alphabet.push_back(SymbolTable::intern(v));
  const TruncatedLang all = TruncatedLang::universe(alphabet, k);

  std::mt19937_64 rng(mix_seed(sample_seed));
  auto random_subset = [&] {
    std::vector<Word> picked;
    for (const auto& w : all)
      if (rng() & 1u) picked.push_back(w);
    return TruncatedLang(k, std::move(picked));
  };
  std::vector<TruncatedLang> candidates{least};
  for (int i = 0; i < 10; ++i) candidates.push_back(least | random_subset());
  for (int i = 0; i < 10; ++i) candidates.push_back(random_subset());
  candidates.push_back(all);

  std::size_t premises = 0;
  for (const auto& cand : candidates) {
    Valuation sigma = base.with(x, cand);
    if (!eval(t, sigma, k).subset_of(cand)) continue;
    ++premises;
    TruncatedLang concl = eval(fix, sigma, k);
    if (!concl.subset_of(cand)) {
      r.verdict = Verdict::Fail;
      r.witness = detail::least_word(concl - cand);
      r.detail = "sigma(x)=" + cand.to_string();
      return r;
    }
  }
  r.detail = std::to_string(premises) + " valuations satisfied the premise";
  return r;
}

/// Both Park properties at once: the equation t[μx.t/x] = μx.t and the
/// sampled implication t ≤ x ⇒ μx.t ≤ x. Reported under park-eq.
inline CheckReport check_park(const Term& t, const Var& x, std::size_t k, std::uint64_t sample_seed = 0) {
  CheckReport eq = check_park_eq(t, x, k);
  if (!eq.passed()) return eq;
  CheckReport impl = check_park_ineq2(t, x, k, sample_seed);
  impl.law = LawName::ParkEq;
  return impl;
}

/// a(μx.t)b against the union of the chain a(nx.t)b. The reported
/// stabilization index is the first n with a(nx.t)b equal to that union, and
/// it may not exceed |Σ^{≤k}| + 1.
inline CheckReport check_mu_continuity(const Term& a, const Var& x, const Term& t, const Term& b, std::size_t k) {
  CheckReport r = make_report(LawName::MuContinuity, detail::describe_instance({{"a", a}, {"x", Term::var(x)}, {"t", t}, {"b", b}}), k);
  Var bx = x;
  if (a.has_free(x) || b.has_free(x)) {
    std::unordered_set<Var> taken = all_names(a);
    taken.merge(all_names(b));
    taken.merge(all_names(t));
    bx = fresh_var(x, taken);
  }
  Term body = bx == x ? t : subst(t, x, Term::var(bx));
  const Term fix = Term::mu(bx, body);
  const Valuation sigma = detail::canonical_for(k, a, fix, b);
  const std::size_t limit = universe_size(sigma.alphabet().size(), k) + 1;

  auto wrap = [&](const Term& mid) { return Term::prod(Term::prod(a, mid), b); };
  const TruncatedLang lhs = eval(wrap(fix), sigma, k);
  auto chain = detail::walk_chain(r, bx, body, sigma, k, limit, wrap);
  if (!chain) {
    if (!r.witness) r.witness = detail::least_word(lhs);
    return r;
  }
  r.stabilization = chain->second;
  detail::compare_sides(r, lhs, chain->first, false);
  if (r.passed() && chain->second > limit) {
    r.verdict = Verdict::Fail;
    r.detail = "stabilization index above |Σ^{≤k}| + 1";
  }
  return r;
}

/// Checks one law instance under the canonical valuation at bound k.
/// Throws LawError if `env` lacks a metavariable the law needs. Binder side
/// conditions (x ∉ FV(a), y ∉ FV(r), ...) are repaired by renaming the binder.
inline CheckReport check_identity(LawName law, const LawEnv& env, std::size_t k, std::uint64_t sample_seed = 0) {
  using detail::binder_avoiding;
  using detail::binder_of;
  using detail::describe_instance;
  using detail::require;

  auto one = Term::one();
  auto v = [](const Var& name) { return Term::var(name); };

  switch (law) {
    case LawName::ParkIneq1:
      return check_park_ineq1(require(env, "t", law), binder_of(env, "x", law), k);
    case LawName::ParkIneq2:
      return check_park_ineq2(require(env, "t", law), binder_of(env, "x", law), k, sample_seed);
    case LawName::ParkEq:
      return check_park_eq(require(env, "t", law), binder_of(env, "x", law), k);
    case LawName::MuContinuity:
      return check_mu_continuity(require(env, "a", law), binder_of(env, "x", law), require(env, "t", law),
                                 require(env, "b", law), k);
    default:
      break;
  }

  CheckReport r = make_report(law, "", k);
  switch (law) {
    case LawName::Samelists: {
      const Term& a = require(env, "a", law);
      Var x = binder_avoiding(binder_of(env, "x", law), a);
      r.instance = describe_instance({{"a", a}, {"x", v(x)}});
      Term lhs = Term::mu(x, one + a * v(x));
      Term rhs = Term::mu(x, one + v(x) * a);
      detail::compare_sides(r, canonical_eval(lhs, k), canonical_eval(rhs, k), false);
      return r;
    }
    case LawName::ListdistrLeft:
    case LawName::ListdistrRight: {
      const Term& a = require(env, "a", law);
      const Term& b = require(env, "b", law);
      Var x = binder_avoiding(binder_of(env, "x", law), a, b);
      r.instance = describe_instance({{"a", a}, {"b", b}, {"x", v(x)}});
      Term lhs, rhs;
      if (law == LawName::ListdistrLeft) {
        lhs = a * Term::mu(x, one + v(x) * b);
        rhs = Term::mu(x, a + v(x) * b);
      } else {
        lhs = Term::mu(x, one + b * v(x)) * a;
        rhs = Term::mu(x, a + b * v(x));
      }
      detail::compare_sides(r, canonical_eval(lhs, k), canonical_eval(rhs, k), false);
      return r;
    }
    case LawName::GreibachLeft:
    case LawName::GreibachRight: {
      const Term& s = require(env, "s", law);
      const Term& rr = require(env, "r", law);
      Var x = binder_of(env, "x", law);
      Var y = binder_avoiding(binder_of(env, "y", law), rr, v(x));
      r.instance = describe_instance({{"s", s}, {"r", rr}, {"x", v(x)}, {"y", v(y)}});
      Term lhs, rhs;
      if (law == LawName::GreibachLeft) {
        lhs = Term::mu(x, s * Term::mu(y, one + rr * v(y)));
        rhs = Term::mu(x, s + v(x) * rr);
      } else {
        lhs = Term::mu(x, Term::mu(y, one + v(y) * rr) * s);
        rhs = Term::mu(x, s + rr * v(x));
      }
      detail::compare_sides(r, canonical_eval(lhs, k), canonical_eval(rhs, k), true);
      return r;
    }
    case LawName::Substitution: {
      const Term& t = require(env, "t", law);
      const Term& u = require(env, "u", law);
      Var y = binder_of(env, "y", law);
      r.instance = describe_instance({{"t", t}, {"u", u}, {"y", v(y)}});
      Valuation sigma = detail::canonical_for(k, t, u);
      TruncatedLang lhs = eval(subst(t, y, u), sigma, k);
      TruncatedLang rhs = eval(t, sigma.with(y, eval(u, sigma, k)), k);
      detail::compare_sides(r, lhs, rhs, false);
      return r;
    }
    case LawName::Freecont: {
      const Term& s = require(env, "s", law);
      const Term& t = require(env, "t", law);
      Var y = binder_of(env, "y", law);
      r.instance = describe_instance({{"s", s}, {"t", t}, {"y", v(y)}});
      Term fix = Term::mu(y, t);
      Valuation sigma = detail::canonical_for(k, s, fix);
      const std::size_t limit = universe_size(sigma.alphabet().size(), k) + 1;
      TruncatedLang lhs = eval(subst(s, y, fix), sigma, k);
      auto chain = detail::walk_chain(r, y, t, sigma, k, limit, [&](const Term& approx) { return subst(s, y, approx); });
      if (!chain) {
        if (!r.witness) r.witness = detail::least_word(lhs);
        return r;
      }
      r.stabilization = chain->second;
      detail::compare_sides(r, lhs, chain->first, false);
      return r;
    }
    case LawName::SupremumDecomposition: {
      const Term& s = require(env, "s", law);
      const Term& t = require(env, "t", law);
      const Term& u = require(env, "u", law);
      r.instance = describe_instance({{"s", s}, {"t", t}, {"u", u}});
      TruncatedLang lhs = canonical_eval(s * t * u, k);
      TruncatedLang rhs(k);
      for (const auto& w : canonical_eval(t, k)) {
        Term spliced = one;
        bool first = true;
        for (const auto& sym : w.vars()) {
          spliced = first ? v(sym) : spliced * v(sym);
          first = false;
        }
        rhs = rhs | canonical_eval(s * spliced * u, k);
      }
      detail::compare_sides(r, lhs, rhs, false);
      return r;
    }
    default:
      break;
  }
  throw LawError("unhandled law");
}

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 100;
  std::size_t k = default_bound;
  GenConfig gen{{Var("a"), Var("b")}, 4, 2, 0};
  /// Run only this law when set.
  std::optional<LawName> only;
};

namespace detail {

struct Slot {
  const char* name;
  bool with_binder;  // alphabet extended by the law's binder variable
};

inline std::vector<Slot> slots_for(LawName law) {
  switch (law) {
    case LawName::ParkIneq1:
    case LawName::ParkIneq2:
    case LawName::ParkEq:
      return {{"t", true}};
    case LawName::MuContinuity:
      return {{"a", false}, {"t", true}, {"b", false}};
    case LawName::Samelists:
      return {{"a", false}};
    case LawName::ListdistrLeft:
    case LawName::ListdistrRight:
      return {{"a", false}, {"b", false}};
    case LawName::GreibachLeft:
    case LawName::GreibachRight:
      return {{"s", true}, {"r", true}};
    case LawName::Substitution:
      return {{"t", true}, {"u", true}};
    case LawName::Freecont:
      return {{"s", true}, {"t", true}};
    case LawName::SupremumDecomposition:
      return {{"s", false}, {"t", false}, {"u", false}};
  }
  return {};
}

inline Var binder_for(LawName law) {
  return law == LawName::Substitution || law == LawName::Freecont ? Var("y") : Var("x");
}

/// Side conditions a generated instance must meet without repair.
inline bool side_conditions_hold(LawName law, const LawEnv& env, const Var& binder) {
  auto free_in = [&](const char* slot) { return env.at(slot).has_free(binder); };
  switch (law) {
    case LawName::Samelists:
      return !free_in("a");
    case LawName::ListdistrLeft:
    case LawName::ListdistrRight:
    case LawName::MuContinuity:
      return !free_in("a") && !free_in("b");
    case LawName::GreibachLeft:
    case LawName::GreibachRight:
      return !env.at("r").has_free(Var("y"));
    default:
      return true;
  }
}

inline constexpr std::size_t max_instance_attempts = 16;

}  // namespace detail

/// Generates the instance for one (law, case seed) pair; nullopt after
/// max_instance_attempts regenerations without meeting the side conditions.
inline std::optional<LawEnv> generate_instance(LawName law, const GenConfig& gen, std::uint64_t case_seed) {
  const Var binder = detail::binder_for(law);
  GenConfig base = gen;
  GenConfig extended = gen;
  if (std::find(extended.alphabet.begin(), extended.alphabet.end(), binder) == extended.alphabet.end())
    extended.alphabet.push_back(binder);
  const auto slots = detail::slots_for(law);
  for (std::size_t attempt = 0; attempt < detail::max_instance_attempts; ++attempt) {
    LawEnv env;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      GenConfig& cfg = slots[j].with_binder ? extended : base;
      cfg.seed = mix_seed(case_seed, attempt * slots.size() + j);
      env.emplace(slots[j].name, random_term(cfg));
    }
    if (detail::side_conditions_hold(law, env, binder)) return env;
  }
  return std::nullopt;
}

/// Seed of case `index` of `law` in a suite seeded with `suite_seed`.
inline std::uint64_t case_seed(std::uint64_t suite_seed, LawName law, std::size_t index) {
  return mix_seed(mix_seed(suite_seed, static_cast<std::uint64_t>(law)), index);
}

/// cfg.cases seeded random instances of every law (or cfg.only), in law
/// order then case order. Deterministic in cfg.
inline std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  if (cfg.cases < 1) throw std::invalid_argument("SuiteConfig: cases must be at least 1");
  std::vector<CheckReport> reports;
  for (LawName law : all_laws) {
    if (cfg.only && *cfg.only != law) continue;
    for (std::size_t i = 0; i < cfg.cases; ++i) {
      const std::uint64_t seed = case_seed(cfg.seed, law, i);
      auto env = generate_instance(law, cfg.gen, seed);
      CheckReport r;
      if (!env) {
        r = make_report(law, "side conditions not met", cfg.k);
        r.verdict = Verdict::Skip;
      } else {
        r = check_identity(law, *env, cfg.k, seed);
      }
      r.seed = seed;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace mucfl

#endif  // MUCFL_AXIOMS_HPP
