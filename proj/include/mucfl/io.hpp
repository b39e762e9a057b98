#ifndef MUCFL_IO_HPP
#define MUCFL_IO_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grammar.hpp"
#include "syntax.hpp"

namespace mucfl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourcePos pos, std::string message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(std::move(message)) {}

  const SourcePos& pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

private:
  SourcePos pos_;
  std::string message_;
};

namespace detail {

inline bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

enum class Tok { Ident, Zero, One, Plus, Dot, LParen, RParen, Mu, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
}

inline std::vector<Token> lex_term(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    SourcePos start = pos;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      out.push_back({word == "mu" ? Tok::Mu : Tok::Ident, word, start});
      advance(j - i);
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      std::string num(src.substr(i, j - i));
      if (num != "0" && num != "1") throw ParseError(start, "only the constants 0 and 1 are allowed, got '" + num + "'");
      out.push_back({num == "0" ? Tok::Zero : Tok::One, num, start});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '.': kind = Tok::Dot; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class TermParser {
public:
  explicit TermParser(std::string_view src) : toks_(lex_term(src)) {}

  Term parse() {
    if (peek().kind == Tok::End) throw ParseError(peek().pos, "expected a term");
    Term t = sum();
    if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected " + describe(peek()));
    return t;
  }

private:
  const Token& peek() const { return toks_[at_]; }
  const Token& take() { return toks_[at_++]; }

  static bool starts_factor(Tok k) {
    return k == Tok::Ident || k == Tok::Zero || k == Tok::One || k == Tok::LParen || k == Tok::Mu;
  }

  Term sum() {
    Term l = product();
    while (peek().kind == Tok::Plus) {
      take();
      l = Term::sum(std::move(l), product());
    }
    return l;
  }

  Term product() {
    Term l = factor();
    for (;;) {
      if (peek().kind == Tok::Dot) {
        take();
      } else if (!starts_factor(peek().kind)) {
        break;
      }
      l = Term::prod(std::move(l), factor());
    }
    return l;
  }

  Term factor() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Ident:
        return Term::var(t.text);
      case Tok::Zero:
        return Term::zero();
      case Tok::One:
        return Term::one();
      case Tok::LParen: {
        Term inner = sum();
        if (peek().kind != Tok::RParen) throw ParseError(peek().pos, "expected ')' but found " + describe(peek()));
        take();
        return inner;
      }
      case Tok::Mu: {
        const Token& name = take();
        if (name.kind != Tok::Ident)
          throw ParseError(name.pos, "expected a binder name after 'mu' but found " + describe(name));
        const Token& dot = take();
        if (dot.kind != Tok::Dot) throw ParseError(dot.pos, "expected '.' after binder '" + name.text + "'");
        return Term::mu(Var(name.text), sum());
      }
      default:
        throw ParseError(t.pos, "expected a term but found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// level 0: anything; 1: sums need parentheses; 2: sums and products do.
// `open` means more tokens follow, so a μ (whose body extends right) must be closed off.
inline void print_rec(const Term& t, int level, bool open, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::One:
      out += '1';
      return;
    case TermKind::Var:
      out += t.var_name().name();
      return;
    case TermKind::Sum:
      if (level >= 1) {
        out += '(';
        print_rec(t, 0, false, out);
        out += ')';
        return;
      }
      print_rec(t.lhs(), 0, true, out);
      out += " + ";
      print_rec(t.rhs(), 1, open, out);
      return;
    case TermKind::Prod:
      if (level >= 2) {
        out += '(';
        print_rec(t, 0, false, out);
        out += ')';
        return;
      }
      print_rec(t.lhs(), 1, true, out);
      out += ' ';
      print_rec(t.rhs(), 2, open, out);
      return;
    case TermKind::Mu:
      if (open) {
        out += '(';
        print_rec(t, 0, false, out);
        out += ')';
        return;
      }
      out += "mu ";
      out += t.var_name().name();
      out += ". ";
      print_rec(t.body(), 0, false, out);
      return;
  }
}

}  // namespace detail

/// Parses a μ-expression. Product is juxtaposition or '.', binding tighter
/// than '+'; both are left-associative; `mu x. t` extends as far right as
/// possible. Throws ParseError.
inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

/// Prints with the fewest parentheses that reparse to the same tree.
inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_rec(t, 0, false, out);
  return out;
}

/// Grammar files: `N -> alt | alt | ...`, one nonterminal per line, `eps`
/// for the empty alternative, `#` comments. An empty right-hand side
/// declares a nonterminal without alternatives.
inline Grammar parse_grammar(std::string_view text) {
  struct Line {
    Var lhs;
    std::vector<Alternative> alts;
  };
  std::vector<Line> lines;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    struct Tk {
      std::string text;
      std::size_t col;
    };
    std::vector<Tk> toks;
    for (std::size_t i = 0; i < raw.size();) {
      char c = raw[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (detail::ident_start(c)) {
        std::size_t j = i;
        while (j < raw.size() && detail::ident_char(raw[j])) ++j;
        toks.push_back({std::string(raw.substr(i, j - i)), i + 1});
        i = j;
      } else if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        toks.push_back({"->", i + 1});
        i += 2;
      } else if (c == '|') {
        toks.push_back({"|", i + 1});
        ++i;
      } else {
        throw ParseError({line_no, i + 1}, std::string("unexpected character '") + c + "'");
      }
    }
    if (toks.empty()) continue;

    auto is_symbol = [](const std::string& s) { return s != "->" && s != "|"; };
    if (!is_symbol(toks[0].text))
      throw ParseError({line_no, toks[0].col}, "expected a nonterminal at the start of the line");
    if (toks[0].text == "eps" || toks[0].text == "mu")
      throw ParseError({line_no, toks[0].col}, "'" + toks[0].text + "' is reserved");
    if (toks.size() < 2 || toks[1].text != "->")
      throw ParseError({line_no, toks.size() < 2 ? raw.size() + 1 : toks[1].col}, "expected '->'");

    Line line{Var(toks[0].text), {}};
    Alternative alt;
    bool has_eps = false;
    std::size_t alt_col = toks[1].col + 2;
    auto finish = [&](std::size_t col) {
      if (alt.empty() && !has_eps) throw ParseError({line_no, col}, "empty alternative (write 'eps')");
      line.alts.push_back(std::move(alt));
      alt.clear();
      has_eps = false;
    };
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const auto& tk = toks[i];
      if (tk.text == "|") {
        finish(tk.col);
        alt_col = tk.col + 1;
        continue;
      }
      if (tk.text == "->") throw ParseError({line_no, tk.col}, "unexpected '->'");
      if (tk.text == "mu") throw ParseError({line_no, tk.col}, "'mu' is reserved");
      if (tk.text == "eps") {
        if (has_eps || !alt.empty()) throw ParseError({line_no, tk.col}, "'eps' must stand alone");
        has_eps = true;
        continue;
      }
      if (has_eps) throw ParseError({line_no, tk.col}, "'eps' must stand alone");
      alt.emplace_back(tk.text);
    }
    if (toks.size() > 2) finish(alt_col);
    lines.push_back(std::move(line));
  }

  if (lines.empty()) throw ParseError({1, 1}, "grammar has no productions");
  Grammar g(lines.front().lhs);
  for (const auto& line : lines) g.declare(line.lhs);
  for (auto& line : lines)
    for (auto& alt : line.alts) g.add_alternative(line.lhs, std::move(alt));
  return g;
}

inline std::string print_grammar(const Grammar& g) {
  std::string out;
  for (const auto& nt : g.nonterminals()) {
    out += nt.name();
    out += " ->";
    bool first = true;
    for (const auto& alt : g.alternatives(nt)) {
      out += first ? " " : " | ";
      first = false;
      if (alt.empty()) {
        out += "eps";
        continue;
      }
      for (std::size_t i = 0; i < alt.size(); ++i) {
        if (i > 0) out += ' ';
        out += alt[i].name();
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace mucfl

#endif  // MUCFL_IO_HPP
