#ifndef MUCFL_LANGUAGE_HPP
#define MUCFL_LANGUAGE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syntax.hpp"

namespace mucfl {

/// Interned alphabet symbol.
using Symbol = char32_t;

/// Process-wide symbol interning. Ids are assigned in first-use order, so
/// they say nothing about name order; compare names where order matters.
class SymbolTable {
public:
  static Symbol intern(std::string_view name) {
    auto& self = instance();
    {
      std::shared_lock lock(self.mutex_);
      if (auto it = self.ids_.find(std::string(name)); it != self.ids_.end()) return it->second;
    }
    std::unique_lock lock(self.mutex_);
    auto [it, inserted] = self.ids_.try_emplace(std::string(name), static_cast<Symbol>(self.names_.size()));
    if (inserted) self.names_.emplace_back(name);
    return it->second;
  }

  static Symbol intern(const Var& v) { return intern(v.name()); }

  static const std::string& name(Symbol s) {
    auto& self = instance();
    std::shared_lock lock(self.mutex_);
    return self.names_.at(static_cast<std::size_t>(s));
  }

private:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::shared_mutex mutex_;
  std::unordered_map<std::string, Symbol> ids_;
  std::deque<std::string> names_;  // deque keeps references stable
};

/// A finite word over interned symbols; the empty word is ε.
class Word {
public:
  Word() = default;
  explicit Word(std::u32string symbols) : syms_(std::move(symbols)) {}
  Word(std::initializer_list<std::string_view> names) {
    for (auto n : names) syms_.push_back(SymbolTable::intern(n));
  }

  static Word of(const std::vector<Var>& vars) {
    Word w;
    for (const auto& v : vars) w.syms_.push_back(SymbolTable::intern(v));
    return w;
  }

  std::size_t size() const noexcept { return syms_.size(); }
  bool empty() const noexcept { return syms_.empty(); }
  Symbol operator[](std::size_t i) const { return syms_[i]; }
  const std::u32string& symbols() const noexcept { return syms_; }

  std::vector<Var> vars() const {
    std::vector<Var> out;
    out.reserve(syms_.size());
    for (Symbol s : syms_) out.emplace_back(SymbolTable::name(s));
    return out;
  }

  friend Word operator+(const Word& a, const Word& b) { return Word(a.syms_ + b.syms_); }
  friend bool operator==(const Word&, const Word&) = default;

  /// Storage order: length first, then symbol ids.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.syms_ < b.syms_;
  }

  /// `eps` for ε; single-character symbols are concatenated ("ab"), otherwise
  /// symbols are joined with '.' ("ab.c").
  std::string to_string() const {
    if (syms_.empty()) return "eps";
    bool short_names = std::all_of(syms_.begin(), syms_.end(),
                                   [](Symbol s) { return SymbolTable::name(s).size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < syms_.size(); ++i) {
      if (i > 0 && !short_names) out += '.';
      out += SymbolTable::name(syms_[i]);
    }
    return out;
  }

private:
  std::u32string syms_;
};

/// Shortest first, then lexicographic by symbol name.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return SymbolTable::name(a[i]) < SymbolTable::name(b[i]);
  }
  return false;
}

/// A finite set of words, each no longer than `bound()`: an element of the
/// truncated-language algebra over Σ^{≤k}.
class TruncatedLang {
public:
  explicit TruncatedLang(std::size_t bound = 0) : bound_(bound) {}

  /// Throws std::invalid_argument if some word exceeds the bound.
  TruncatedLang(std::size_t bound, std::vector<Word> words) : bound_(bound), words_(std::move(words)) {
    for (const auto& w : words_)
      if (w.size() > bound_)
        throw std::invalid_argument("word '" + w.to_string() + "' exceeds bound " + std::to_string(bound_));
    normalize();
  }

  /// Keeps only the words of length ≤ bound.
  static TruncatedLang truncating(std::size_t bound, std::vector<Word> words) {
    std::erase_if(words, [bound](const Word& w) { return w.size() > bound; });
    return TruncatedLang(bound, std::move(words));
  }

  static TruncatedLang empty_set(std::size_t bound) { return TruncatedLang(bound); }
  static TruncatedLang epsilon(std::size_t bound) { return TruncatedLang(bound, {Word{}}); }
  static TruncatedLang letter(std::size_t bound, const Var& v) {
    return truncating(bound, {Word::of({v})});
  }

  /// Σ^{≤k}.
  static TruncatedLang universe(const std::vector<Symbol>& alphabet, std::size_t bound) {
    std::vector<Word> all{Word{}};
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= bound; ++len) {
      std::vector<Word> next;
      for (const auto& w : layer)
        for (Symbol s : alphabet) next.push_back(w + Word(std::u32string(1, s)));
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return TruncatedLang(bound, std::move(all));
  }

  std::size_t bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool contains(const Word& w) const { return std::binary_search(words_.begin(), words_.end(), w); }

  bool subset_of(const TruncatedLang& other) const {
    return std::includes(other.words_.begin(), other.words_.end(), words_.begin(), words_.end());
  }

  /// Words in shortest-then-lexicographic order by symbol name.
  std::vector<Word> sorted() const {
    std::vector<Word> out = words_;
    std::stable_sort(out.begin(), out.end(), shortlex_less);
    return out;
  }

  /// The words of length ≤ k, with bound k (k ≤ bound()).
  TruncatedLang restricted(std::size_t k) const {
    if (k > bound_) throw std::invalid_argument("cannot restrict to a larger bound");
    TruncatedLang out(k);
    for (const auto& w : words_)
      if (w.size() <= k) out.words_.push_back(w);
    return out;
  }

  friend TruncatedLang operator|(const TruncatedLang& a, const TruncatedLang& b) {
    TruncatedLang out(std::max(a.bound_, b.bound_));
    out.words_.reserve(a.size() + b.size());
    std::set_union(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                   std::back_inserter(out.words_));
    return out;
  }

  friend TruncatedLang operator-(const TruncatedLang& a, const TruncatedLang& b) {
    TruncatedLang out(a.bound_);
    std::set_difference(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                        std::back_inserter(out.words_));
    return out;
  }

  /// Equality of word sets; the bound is not compared.
  friend bool operator==(const TruncatedLang& a, const TruncatedLang& b) { return a.words_ == b.words_; }

  /// Distinct symbols occurring in any word.
  std::vector<Symbol> alphabet() const {
    std::vector<Symbol> out;
    for (const auto& w : words_) out.insert(out.end(), w.symbols().begin(), w.symbols().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& w : sorted()) {
      if (!first) out += ", ";
      first = false;
      out += w.to_string();
    }
    return out + "}";
  }

private:
  friend TruncatedLang trunc_product(const TruncatedLang&, const TruncatedLang&, std::size_t);

  void normalize() {
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  }

  std::size_t bound_;
  std::vector<Word> words_;  // sorted by Word::operator<, unique
};

/// { xy : x ∈ A, y ∈ B, |xy| ≤ k }.
inline TruncatedLang trunc_product(const TruncatedLang& a, const TruncatedLang& b, std::size_t k) {
  TruncatedLang out(k);
  if (a.empty() || b.empty()) return out;
  // both operands are sorted by length, so the inner loop can stop early
  for (const auto& x : a.words_) {
    if (x.size() + b.words_.front().size() > k) break;
    for (const auto& y : b.words_) {
      if (x.size() + y.size() > k) break;
      out.words_.push_back(x + y);
    }
  }
  out.normalize();
  return out;
}

/// |Σ^{≤k}| for |Σ| = n, saturating at SIZE_MAX.
constexpr std::size_t universe_size(std::size_t n, std::size_t k) noexcept {
  constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1, power = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    if (n != 0 && power > max / n) return max;
    power *= n;
    if (total > max - power) return max;
    total += power;
  }
  return total;
}

}  // namespace mucfl

#endif  // MUCFL_LANGUAGE_HPP
