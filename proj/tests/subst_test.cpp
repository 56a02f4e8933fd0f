#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdtt/parser.hpp"
#include "gdtt/print.hpp"
#include "gdtt/subst.hpp"

using namespace gdtt;

TEST_CASE("substitution avoids capture") {
  // (\x. y)[y := x] must rename the binder, not capture.
  ExprPtr e = parse_expr_string("\\x. y");
  ExprPtr r = subst1(e, "y", mk::var("x"));
  CHECK(r->kind == Kind::Lam);
  CHECK(r->name != "x");
  CHECK(alpha_eq(r, parse_expr_string("\\z. x")));
}

TEST_CASE("substitution under delayed substitutions") {
  // The entry binder x scopes only over the body; the entry term is open.
  ExprPtr e = parse_expr_string("next[k; x <- t] (f x)");
  ExprPtr r = subst1(e, "t", mk::var("u"));
  CHECK(alpha_eq(r, parse_expr_string("next[k; x <- u] (f x)")));
  // Substituting for the bound entry variable leaves the body alone.
  ExprPtr s = subst1(e, "x", mk::var("u"));
  CHECK(alpha_eq(s, e));
}

TEST_CASE("simultaneous substitution is not sequential") {
  ExprPtr e = parse_expr_string("f x y");
  Substitution sub{{"x", mk::var("y")}, {"y", mk::var("x")}};
  CHECK(alpha_eq(subst(e, sub), parse_expr_string("f y x")));
}

TEST_CASE("clock substitution") {
  ExprPtr e = parse_expr_string("next[k2] 0");
  ExprPtr r = clock_subst(e, Clock::variable("k2"), Clock::variable("k"));
  CHECK(alpha_eq(r, parse_expr_string("next[k] 0")));
  // Bound clocks are untouched.
  ExprPtr cl = parse_expr_string("clam k2. next[k2] 0");
  CHECK(alpha_eq(clock_subst(cl, Clock::variable("k2"), Clock::variable("k")), cl));
}

TEST_CASE("clock substitution on universes takes the set image") {
  ExprPtr u = mk::universe({"k", "k2"});
  ExprPtr r = clock_subst(u, Clock::variable("k2"), Clock::variable("k"));
  CHECK(r->kind == Kind::TyUniverse);
  CHECK(r->clocks == ClockSet{"k"});
}

TEST_CASE("advance turns entries into instantiated prev") {
  // [x <- y] with y a variable: x maps to the stuck neutral (prev k. y) @ k.
  DSubst xi{{"x", mk::var("y")}};
  Substitution s = gdtt::advance("k", xi);
  REQUIRE(s.count("x") == 1);
  ExprPtr img = s.at("x");
  REQUIRE(img->kind == Kind::ClockApp);
  CHECK(img->clock == Clock::variable("k"));
  REQUIRE(img->kids[0]->kind == Kind::Prev);
  CHECK(img->kids[0]->name == "k");
  CHECK(alpha_eq(img->kids[0]->kids[0], mk::var("y")));
}

TEST_CASE("clock parameter instantiation handles swaps") {
  ExprPtr e = parse_expr_string("next[k1] (next[k2] 0)");
  ExprPtr r = instantiate_clocks(e, {"k1", "k2"},
                                 {Clock::variable("k2"), Clock::variable("k1")});
  CHECK(alpha_eq(r, parse_expr_string("next[k2] (next[k1] 0)")));
}

TEST_CASE("freshen avoids the given names") {
  std::string f = freshen("x", {"x", "x'"});
  CHECK(f != "x");
  CHECK(f != "x'");
}
