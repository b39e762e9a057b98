#include <gtest/gtest.h>

#include <random>

#include "mucfl/io.hpp"
#include "mucfl/random.hpp"
#include "oracles.hpp"

using namespace mucfl;

namespace {
Term v(const char* n) { return Term::var(n); }
}  // namespace

TEST(ParseTerm, Precedence) {
  EXPECT_EQ(parse_term("mu x. 1 + a x"), Term::mu(Var("x"), Term::sum(Term::one(), Term::prod(v("a"), v("x")))));
  EXPECT_EQ(parse_term("a + b c"), Term::sum(v("a"), Term::prod(v("b"), v("c"))));
  EXPECT_EQ(parse_term("a.b.c"), Term::prod(Term::prod(v("a"), v("b")), v("c")));
  EXPECT_EQ(parse_term("a + b + c"), Term::sum(Term::sum(v("a"), v("b")), v("c")));
  EXPECT_EQ(parse_term("  (a+b)\n c "), Term::prod(Term::sum(v("a"), v("b")), v("c")));
}

TEST(ParseTerm, MuBodyExtendsRight) {
  EXPECT_EQ(parse_term("a mu x. x + b"), Term::prod(v("a"), Term::mu(Var("x"), Term::sum(v("x"), v("b")))));
  EXPECT_EQ(parse_term("(mu x. x) b"), Term::prod(Term::mu(Var("x"), v("x")), v("b")));
}

TEST(ParseTerm, MultiCharacterIdentifiers) {
  EXPECT_EQ(parse_term("ab"), v("ab"));
  EXPECT_EQ(parse_term("a b"), Term::prod(v("a"), v("b")));
  EXPECT_EQ(parse_term("x' x_1"), Term::prod(v("x'"), v("x_1")));
}

TEST(ParseTerm, Errors) {
  try {
    parse_term("mu. x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 1u);
    EXPECT_EQ(e.pos().column, 3u);
    EXPECT_FALSE(e.message().empty());
  }
  EXPECT_THROW(parse_term(""), ParseError);
  EXPECT_THROW(parse_term("a +"), ParseError);
  EXPECT_THROW(parse_term("(a"), ParseError);
  EXPECT_THROW(parse_term("a)"), ParseError);
  EXPECT_THROW(parse_term("2"), ParseError);
  EXPECT_THROW(parse_term("mu x x"), ParseError);
  EXPECT_THROW(parse_term("a # b"), ParseError);
  EXPECT_THROW(parse_term("mu mu. x"), ParseError);
  try {
    parse_term("a +\n  * b");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 2u);
    EXPECT_EQ(e.pos().column, 3u);
  }
}

TEST(PrintTerm, Examples) {
  EXPECT_EQ(print_term(Term::mu(Var("x"), Term::sum(Term::one(), Term::prod(v("a"), v("x"))))), "mu x. 1 + a x");
  EXPECT_EQ(print_term(Term::prod(Term::sum(v("a"), v("b")), v("c"))), "(a + b) c");
  EXPECT_EQ(print_term(Term::zero()), "0");
}

TEST(PrintTerm, MinimalParentheses) {
  EXPECT_EQ(print_term(parse_term("a (b c)")), "a (b c)");
  EXPECT_EQ(print_term(parse_term("(a b) c")), "a b c");
  EXPECT_EQ(print_term(parse_term("a + (b + c)")), "a + (b + c)");
  EXPECT_EQ(print_term(parse_term("(mu x. x) + a")), "(mu x. x) + a");
  EXPECT_EQ(print_term(parse_term("a + (mu x. x)")), "a + mu x. x");
  EXPECT_EQ(print_term(parse_term("(a mu x. x) b")), "a (mu x. x) b");
  EXPECT_EQ(print_term(parse_term("(a + mu x. x) b")), "(a + mu x. x) b");
}

TEST(TermRoundTrip, RandomTermsReparseAlphaEquivalent) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Term t = random_term(oracle::gen(seed, 5, 3, {"a", "b", "c1"}));
    std::string text = print_term(t);
    Term back = parse_term(text);
    ASSERT_TRUE(alpha_eq(back, t)) << text;
    EXPECT_EQ(print_term(back), text);
  }
}

TEST(ParseTerm, TotalOnRandomInput) {
  const std::string alphabet = "ab01+.() mux\n#";
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    std::size_t len = rng() % 16;
    for (std::size_t j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
    try {
      Term t = parse_term(s);
      EXPECT_TRUE(alpha_eq(parse_term(print_term(t)), t)) << s;
    } catch (const ParseError& e) {
      EXPECT_GE(e.pos().line, 1u);
      EXPECT_GE(e.pos().column, 1u);
    }
  }
}

namespace {
const char* const kEqualAB = "S -> eps | a B | b A\nA -> a S | b A A\nB -> b S | a B B\n";
}

TEST(ParseGrammar, EqualCountsGrammar) {
  Grammar g = parse_grammar(kEqualAB);
  EXPECT_EQ(g.start(), Var("S"));
  EXPECT_EQ(g.nonterminals(), (std::vector<Var>{Var("S"), Var("A"), Var("B")}));
  EXPECT_EQ(g.alternatives(Var("S")),
            (std::vector<Alternative>{{}, {Var("a"), Var("B")}, {Var("b"), Var("A")}}));
  EXPECT_EQ(g.terminals(), (std::vector<Var>{Var("a"), Var("b")}));
}

TEST(ParseGrammar, CommentsBlankLinesAndMerging) {
  Grammar g = parse_grammar("# header\n\nS -> a S   # recursive\n\nS -> b | a S\n");
  EXPECT_EQ(g.alternatives(Var("S")), (std::vector<Alternative>{{Var("a"), Var("S")}, {Var("b")}}));
}

TEST(ParseGrammar, NoTerminatingProduction) {
  Grammar g = parse_grammar("S -> a S");
  EXPECT_EQ(g.nonterminals().size(), 1u);
  EXPECT_TRUE(g.is_nonterminal(Var("S")));
  EXPECT_FALSE(g.is_nonterminal(Var("a")));
}

TEST(ParseGrammar, Errors) {
  EXPECT_THROW(parse_grammar("S -> a eps b"), ParseError);
  EXPECT_THROW(parse_grammar("S -> eps eps"), ParseError);
  EXPECT_THROW(parse_grammar("S a b"), ParseError);
  EXPECT_THROW(parse_grammar("S -> a | | b"), ParseError);
  EXPECT_THROW(parse_grammar("S -> a |"), ParseError);
  EXPECT_THROW(parse_grammar("-> a"), ParseError);
  EXPECT_THROW(parse_grammar("eps -> a"), ParseError);
  EXPECT_THROW(parse_grammar("S -> a -> b"), ParseError);
  EXPECT_THROW(parse_grammar("S -> a $"), ParseError);
  EXPECT_THROW(parse_grammar("# only a comment\n"), ParseError);
  try {
    parse_grammar("S -> a\nA -> b eps\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 2u);
    EXPECT_EQ(e.pos().column, 8u);
  }
}

TEST(PrintGrammar, Examples) {
  EXPECT_EQ(print_grammar(parse_grammar(kEqualAB)), kEqualAB);
  EXPECT_EQ(print_grammar(parse_grammar("S -> eps")), "S -> eps\n");
  Grammar g(Var("S"));
  g.add_alternative(Var("S"), {});
  g.add_alternative(Var("S"), {Var("a")});
  EXPECT_EQ(print_grammar(g), "S -> eps | a\n");
}

TEST(PrintGrammar, NonterminalWithoutAlternatives) {
  Grammar g(Var("S"));
  g.add_alternative(Var("S"), {Var("a"), Var("T")});
  g.declare(Var("T"));
  std::string text = print_grammar(g);
  EXPECT_EQ(text, "S -> a T\nT ->\n");
  EXPECT_EQ(parse_grammar(text), g);
}

TEST(GrammarRoundTrip, ToGrammarOutputsReparseExactly) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Grammar g = to_grammar(random_term(oracle::gen(seed, 4, 2)));
    ASSERT_EQ(parse_grammar(print_grammar(g)), g) << print_grammar(g);
  }
}
