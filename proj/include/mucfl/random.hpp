#ifndef MUCFL_RANDOM_HPP
#define MUCFL_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "syntax.hpp"

namespace mucfl {

struct GenConfig {
  std::vector<Var> alphabet;
  std::size_t max_depth = 3;
  std::size_t max_mu_nesting = 1;
  std::uint64_t seed = 0;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return mix_seed(mix_seed(a) ^ (b + 0x632be59bd9b4e019ULL));
}

namespace detail {

// std distributions are implementation-defined; draws go through `below`
// so the same seed yields the same term on every standard library.
class TermGenerator {
public:
  explicit TermGenerator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    for (const auto& v : cfg.alphabet) reserved_.insert(v);
  }

  Term generate() {
    std::vector<Var> scope = cfg_.alphabet;
    return gen(cfg_.max_depth, cfg_.max_mu_nesting, scope);
  }

private:
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  // 0 and 1 weigh 1 each, every variable in scope weighs 2
  Term atom(const std::vector<Var>& scope) {
    std::size_t i = below(2 * scope.size() + 2);
    if (i == 0) return Term::zero();
    if (i == 1) return Term::one();
    return Term::var(scope[(i - 2) / 2]);
  }

  Term gen(std::size_t depth, std::size_t nesting, std::vector<Var>& scope) {
    if (depth <= 1) return atom(scope);
    // weights: atom 2, sum 3, prod 3, mu 2
    std::size_t total = nesting > 0 ? 10 : 8;
    std::size_t r = below(total);
    if (r < 2) return atom(scope);
    if (r < 5) {
      Term l = gen(depth - 1, nesting, scope);
      return Term::sum(std::move(l), gen(depth - 1, nesting, scope));
    }
    if (r < 8) {
      Term l = gen(depth - 1, nesting, scope);
      return Term::prod(std::move(l), gen(depth - 1, nesting, scope));
    }
    Var binder = next_binder();
    scope.push_back(binder);
    Term body = gen(depth - 1, nesting - 1, scope);
    scope.pop_back();
    return Term::mu(std::move(binder), std::move(body));
  }

  Var next_binder() {
    for (;;) {
      Var v("m" + std::to_string(++binder_count_));
      if (!reserved_.contains(v)) return v;
    }
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::unordered_set<Var> reserved_;
  std::size_t binder_count_ = 0;
};

}  // namespace detail

/// Deterministic random term: identical (cfg, seed) give identical terms.
///
/// Tree height is at most `max_depth` (an atom has height 1) and no path
/// crosses more than `max_mu_nesting` binders. Binders are named m1, m2, ...
/// skipping any name in the alphabet.
inline Term random_term(const GenConfig& cfg) {
  if (cfg.alphabet.empty()) throw std::invalid_argument("GenConfig: alphabet must be nonempty");
  if (cfg.max_depth < 1) throw std::invalid_argument("GenConfig: max_depth must be at least 1");
  return detail::TermGenerator(cfg).generate();
}

}  // namespace mucfl

#endif  // MUCFL_RANDOM_HPP
