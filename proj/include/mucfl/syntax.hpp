#ifndef MUCFL_SYNTAX_HPP
#define MUCFL_SYNTAX_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mucfl {

/// True for `[A-Za-z][A-Za-z0-9_']*`.
inline bool is_identifier(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (s.empty() || !alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_' || c == '\''; });
}

/// A variable (indeterminate). Free variables double as alphabet symbols.
class Var {
public:
  Var() = default;
  explicit Var(std::string name) : name_(std::move(name)) {
    if (!is_identifier(name_)) throw std::invalid_argument("invalid variable name '" + name_ + "'");
  }

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;

private:
  std::string name_;
};

}  // namespace mucfl

template <>
struct std::hash<mucfl::Var> {
  std::size_t operator()(const mucfl::Var& v) const noexcept { return std::hash<std::string>{}(v.name()); }
};

namespace mucfl {

enum class TermKind { Zero, One, Var, Sum, Prod, Mu };

class Term;

namespace detail {
struct TermNode;
}

/// Immutable μ-expression. Copies share structure; all operations are pure.
///
/// Every node caches its sorted free-variable list, so "is x free here" is a
/// binary search and substitution can return shared subterms untouched.
class Term {
public:
  /// The constant 0.
  Term();

  static Term zero();
  static Term one();
  static Term var(Var v);
  static Term var(std::string name) { return var(Var(std::move(name))); }
  static Term sum(Term l, Term r);
  static Term prod(Term l, Term r);
  static Term mu(Var binder, Term body);

  TermKind kind() const noexcept;
  /// Variable of a Var node, or binder of a Mu node.
  const Var& var_name() const;
  /// Left operand of Sum/Prod.
  const Term& lhs() const;
  /// Right operand of Sum/Prod.
  const Term& rhs() const;
  /// Body of a Mu node.
  const Term& body() const;

  const std::vector<Var>& free_list() const noexcept;
  bool has_free(const Var& x) const noexcept {
    const auto& fv = free_list();
    return std::binary_search(fv.begin(), fv.end(), x);
  }

  /// Node identity; equal ids imply syntactically identical terms.
  const void* id() const noexcept { return node_.get(); }

  /// Exact syntactic equality, bound names included.
  friend bool operator==(const Term& a, const Term& b);

private:
  struct NullTag {};
  explicit Term(NullTag) noexcept {}
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  static std::shared_ptr<const detail::TermNode> leaf(TermKind kind);

  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {

struct TermNode {
  TermKind kind;
  Var name;
  Term left;
  Term right;
  std::vector<Var> free;
};

inline std::vector<Var> merge_free(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// Leaves hold empty (null) child handles; only Sum/Prod/Mu children are read.
inline std::shared_ptr<const detail::TermNode> Term::leaf(TermKind kind) {
  return std::make_shared<const detail::TermNode>(
      detail::TermNode{kind, {}, Term(NullTag{}), Term(NullTag{}), {}});
}

inline Term::Term() {
  static const auto zero = leaf(TermKind::Zero);
  node_ = zero;
}

inline Term Term::zero() { return Term(); }

inline Term Term::one() {
  static const auto one = leaf(TermKind::One);
  return Term(one);
}

inline Term Term::var(Var v) {
  std::vector<Var> fv{v};
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Var, std::move(v), Term(NullTag{}), Term(NullTag{}), std::move(fv)}));
}

inline Term Term::sum(Term l, Term r) {
  auto fv = detail::merge_free(l.free_list(), r.free_list());
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Sum, {}, std::move(l), std::move(r), std::move(fv)}));
}

inline Term Term::prod(Term l, Term r) {
  auto fv = detail::merge_free(l.free_list(), r.free_list());
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Prod, {}, std::move(l), std::move(r), std::move(fv)}));
}

inline Term Term::mu(Var binder, Term body) {
  std::vector<Var> fv = body.free_list();
  fv.erase(std::remove(fv.begin(), fv.end(), binder), fv.end());
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Mu, std::move(binder), std::move(body), Term(NullTag{}), std::move(fv)}));
}

inline TermKind Term::kind() const noexcept { return node_->kind; }

inline const Var& Term::var_name() const {
  if (node_->kind != TermKind::Var && node_->kind != TermKind::Mu)
    throw std::logic_error("var_name() on a term that is neither a variable nor a binder");
  return node_->name;
}

inline const Term& Term::lhs() const {
  if (node_->kind != TermKind::Sum && node_->kind != TermKind::Prod)
    throw std::logic_error("lhs() on a non-binary term");
  return node_->left;
}

inline const Term& Term::rhs() const {
  if (node_->kind != TermKind::Sum && node_->kind != TermKind::Prod)
    throw std::logic_error("rhs() on a non-binary term");
  return node_->right;
}

inline const Term& Term::body() const {
  if (node_->kind != TermKind::Mu) throw std::logic_error("body() on a non-binder term");
  return node_->left;
}

inline const std::vector<Var>& Term::free_list() const noexcept { return node_->free; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return true;
    case TermKind::Var:
      return a.var_name() == b.var_name();
    case TermKind::Sum:
    case TermKind::Prod:
      return a.free_list() == b.free_list() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case TermKind::Mu:
      return a.var_name() == b.var_name() && a.body() == b.body();
  }
  return false;
}

/// Variables with at least one free occurrence in `t`.
inline std::set<Var> free_vars(const Term& t) {
  return {t.free_list().begin(), t.free_list().end()};
}

/// Every variable name occurring in `t`, free or bound.
inline std::unordered_set<Var> all_names(const Term& t) {
  std::unordered_set<Var> names;
  std::unordered_set<const void*> seen;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    switch (cur.kind()) {
      case TermKind::Zero:
      case TermKind::One:
        break;
      case TermKind::Var:
        names.insert(cur.var_name());
        break;
      case TermKind::Sum:
      case TermKind::Prod:
        stack.push_back(cur.lhs());
        stack.push_back(cur.rhs());
        break;
      case TermKind::Mu:
        names.insert(cur.var_name());
        stack.push_back(cur.body());
        break;
    }
  }
  return names;
}

/// `base` followed by the smallest positive numeric suffix not in `taken`.
template <class Taken>
Var fresh_var(const Var& base, const Taken& taken) {
  for (std::size_t i = 1;; ++i) {
    Var candidate(base.name() + std::to_string(i));
    if (!taken.contains(candidate)) return candidate;
  }
}

namespace detail {

class Substituter {
public:
  Substituter(const Term& t, Var x, Term u) : root_(t), x_(std::move(x)), u_(std::move(u)) {}

  Term run() { return go(root_); }

private:
  Term go(const Term& t) {
    if (!t.has_free(x_)) return t;
    if (t.kind() == TermKind::Var) return u_;
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    Term out;
    switch (t.kind()) {
      case TermKind::Sum:
        out = Term::sum(go(t.lhs()), go(t.rhs()));
        break;
      case TermKind::Prod:
        out = Term::prod(go(t.lhs()), go(t.rhs()));
        break;
      case TermKind::Mu: {
        const Var& y = t.var_name();
        if (u_.has_free(y)) {
          Var z = fresh_var(y, taken());
          taken_->insert(z);
          Term renamed = Substituter(t.body(), y, Term::var(z)).run();
          out = Term::mu(std::move(z), go(renamed));
        } else {
          out = Term::mu(y, go(t.body()));
        }
        break;
      }
      default:
        throw std::logic_error("unreachable term kind in substitution");
    }
    memo_.emplace(t.id(), out);
    return out;
  }

  std::unordered_set<Var>& taken() {
    if (!taken_) {
      taken_ = all_names(root_);
      for (auto& v : all_names(u_)) taken_->insert(v);
      taken_->insert(x_);
    }
    return *taken_;
  }

  const Term& root_;
  Var x_;
  Term u_;
  std::optional<std::unordered_set<Var>> taken_;
  std::unordered_map<const void*, Term> memo_;
};

}  // namespace detail

/// Capture-avoiding substitution t[u/x].
///
/// A binder that would capture a free variable of `u` is renamed to its name
/// plus the smallest numeric suffix not occurring (free or bound) in `t` or `u`.
inline Term subst(const Term& t, const Var& x, const Term& u) {
  return detail::Substituter(t, x, u).run();
}

namespace detail {

inline bool alpha_eq_rec(const Term& s, const Term& t, std::vector<Var>& bs, std::vector<Var>& bt) {
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return true;
    case TermKind::Var: {
      auto lookup = [](const std::vector<Var>& stack, const Var& v) -> std::ptrdiff_t {
        for (auto i = static_cast<std::ptrdiff_t>(stack.size()) - 1; i >= 0; --i)
          if (stack[static_cast<std::size_t>(i)] == v) return i;
        return -1;
      };
      auto is = lookup(bs, s.var_name());
      auto it = lookup(bt, t.var_name());
      if (is < 0 && it < 0) return s.var_name() == t.var_name();
      return is == it;
    }
    case TermKind::Sum:
    case TermKind::Prod:
      return alpha_eq_rec(s.lhs(), t.lhs(), bs, bt) && alpha_eq_rec(s.rhs(), t.rhs(), bs, bt);
    case TermKind::Mu: {
      bs.push_back(s.var_name());
      bt.push_back(t.var_name());
      bool r = alpha_eq_rec(s.body(), t.body(), bs, bt);
      bs.pop_back();
      bt.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace detail

/// Equality up to consistent renaming of bound variables (no AC matching).
inline bool alpha_eq(const Term& s, const Term& t) {
  if (s.free_list() != t.free_list()) return false;
  std::vector<Var> bs, bt;
  return detail::alpha_eq_rec(s, t, bs, bt);
}

/// The n-th approximant nx.t: 0x.t = 0 and (n+1)x.t = t[nx.t/x], unsimplified.
inline Term approximant(std::size_t n, const Var& x, const Term& t) {
  Term acc = Term::zero();
  for (std::size_t i = 0; i < n; ++i) acc = subst(t, x, acc);
  return acc;
}

/// Number of nodes in the tree view of `t` (shared subterms counted per occurrence).
inline std::size_t tree_size(const Term& t) {
  switch (t.kind()) {
    case TermKind::Sum:
    case TermKind::Prod:
      return 1 + tree_size(t.lhs()) + tree_size(t.rhs());
    case TermKind::Mu:
      return 1 + tree_size(t.body());
    default:
      return 1;
  }
}

inline Term operator+(Term l, Term r) { return Term::sum(std::move(l), std::move(r)); }
inline Term operator*(Term l, Term r) { return Term::prod(std::move(l), std::move(r)); }

}  // namespace mucfl

#endif  // MUCFL_SYNTAX_HPP
