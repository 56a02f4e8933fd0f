#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdtt/parser.hpp"
#include "gdtt/print.hpp"
#include "gdtt/syntax.hpp"

using namespace gdtt;

TEST_CASE("alpha equivalence ignores bound names") {
  ExprPtr a = parse_expr_string("\\x. x");
  ExprPtr b = parse_expr_string("\\y. y");
  CHECK(alpha_eq(a, b));
  CHECK_FALSE(alpha_eq(a, parse_expr_string("\\y. 0")));
}

TEST_CASE("alpha equivalence covers delayed substitution binders") {
  ExprPtr a = parse_expr_string("\\t. next[k; x <- t] x");
  ExprPtr b = parse_expr_string("\\t. next[k; y <- t] y");
  CHECK(alpha_eq(a, b));
  ExprPtr c = parse_expr_string("\\t. next[k; y <- t] t");
  CHECK_FALSE(alpha_eq(a, c));
}

TEST_CASE("free variables") {
  ExprPtr e = parse_expr_string("\\x. f x y");
  FreeVars fv = free_vars(e);
  CHECK(fv.terms.count("f") == 1);
  CHECK(fv.terms.count("y") == 1);
  CHECK(fv.terms.count("x") == 0);
}

TEST_CASE("free clocks: binders and the constant clock") {
  ExprPtr e = parse_expr_string("clam k. next[k] (next[k2] 0)");
  CHECK_FALSE(clock_is_free(e, "k"));
  CHECK(clock_is_free(e, "k2"));
  FreeVars fv = free_vars(parse_expr_string("next[k0] 0"));
  CHECK(fv.clocks.empty());  // k0 is a constant, not a variable
}

TEST_CASE("numeral sugar builds successor chains") {
  ExprPtr three = parse_expr_string("3");
  CHECK(three->kind == Kind::Succ);
  CHECK(alpha_eq(three, mk::lit(3)));
}

TEST_CASE("unicode aliases parse to the same tree as ascii") {
  CHECK(alpha_eq(parse_expr_string("Later[k] Nat"),
                 parse_expr_string("▶[k] Nat")));
  CHECK(alpha_eq(parse_expr_string("forall k. Nat"),
                 parse_expr_string("∀k. Nat")));
  CHECK(alpha_eq(parse_expr_string("clam k. 0"),
                 parse_expr_string("Λ k. 0")));
  CHECK(alpha_eq(parse_expr_string("\\x. x"),
                 parse_expr_string("λx. x")));
}

TEST_CASE("applicative splat desugars to a two-entry delayed substitution") {
  ExprPtr e = parse_expr_string("\\f x. f <*>[k] x");
  ExprPtr expect = parse_expr_string("\\f x. next[k; g <- f, y <- x] (g y)");
  CHECK(alpha_eq(e, expect));
}

TEST_CASE("print then parse is the identity up to alpha") {
  const char* samples[] = {
      "\\x. x",
      "fix[k] s. (0 , s)",
      "\\t u. next[k; x <- t, y <- u] (x y)",
      "clam k. prev[k1] (next[k1] 7) @ k",
      "Pi (n : Nat). Sg (b : Bool). Id Nat n n",
      "natrec (x. Nat) 0 (p ih. succ ih) 3",
      "J (u v r. Id Nat u v) (z. refl) refl",
      "if true as b. Nat then 1 else 0",
  };
  for (const char* s : samples) {
    ExprPtr e = parse_expr_string(s);
    ExprPtr round = parse_expr_string(print(e));
    CHECK_MESSAGE(alpha_eq(e, round), s);
  }
}

TEST_CASE("expression parse errors carry positions") {
  CHECK_THROWS_AS(parse_expr_string("\\x."), ParseError);
  CHECK_THROWS_AS(parse_expr_string("(1 , 2"), ParseError);
}
