#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace gdtt;
using testutil::check_text;

TEST_CASE("well-typed declarations pass") {
  CHECK(check_text("def id : Nat -> Nat := \\x. x").code == 0);
  CHECK(check_text("clock k\n"
                   "def d : Later[k] Nat := next[k] 3")
            .code == 0);
  CHECK(check_text("clock k\n"
                   "def S [k] : U{k} := fix[k] s. cNat c* cLater[k] s\n"
                   "def ones [k] : El S[k] := fix[k] o. (1 , o)")
            .code == 0);
}

TEST_CASE("unguarded fix at Nat is rejected") {
  auto r = check_text("clock k\ndef bad : Nat := fix[k] x. x");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "ConversionFailed");
}

TEST_CASE("prev requires a context without the bound clock") {
  auto r = check_text(
      "clock k\n"
      "def bad [k] : Later[k] Nat -> forall k. Nat := \\t. prev[k] t");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "ClockNotFresh");
}

TEST_CASE("universe membership tracks the ambient clock context") {
  auto r = check_text(
      "clock k\n"
      "def c [k] : U{k} := cLater[k] (next[k] cNat)\n"
      "def bad : U{} := c[k]");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "UniverseEscape");
}

TEST_CASE("delayed substitution entries must have later type") {
  auto r = check_text(
      "clock k\n"
      "def bad : Nat -> Later[k] Nat := \\n. next[k; x <- n] x");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "NotLaterTyped");
}

TEST_CASE("next against a later type on another clock fails conversion") {
  auto r = check_text(
      "clock k1\nclock k2\n"
      "def bad : Later[k1] Nat := next[k2] 0");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "ConversionFailed");
}

TEST_CASE("unbound identifiers are reported by kind") {
  CHECK(check_text("def bad : Nat := y").outcome.first_error_kind ==
        "UnboundVariable");
  CHECK(check_text("def bad : Later[k9] Nat := next[k9] 0")
            .outcome.first_error_kind == "UnboundClock");
}

TEST_CASE("eq declarations check both sides and compare") {
  CHECK(check_text("eq (\\(x : Nat). x) 4 == 4 : Nat").code == 0);
  auto r = check_text("eq 3 == 4 : Nat");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_rule == "Eq");
}

TEST_CASE("tyeq declarations compare types") {
  CHECK(check_text("tyeq El cNat == Nat").code == 0);
  CHECK(check_text("tyeq El cNat == Bool").code == 1);
}

TEST_CASE("reflection only accepts identity proofs") {
  auto r = check_text(
      "def bad : Nat -> Nat := \\n. reflect n n");
  CHECK(r.code == 1);
  CHECK(r.outcome.first_error_kind == "ReflectionRefused");
}

TEST_CASE("reflection rewrites the hypothesis while checking the subject") {
  auto r = check_text(
      "def plus : Nat -> Nat -> Nat := \\m n. natrec (x. Nat) n (p ih. succ ih) m\n"
      "def use : Pi (n : Nat). Id Nat n 3 -> Id Nat (plus n 1) 4 :=\n"
      "  \\n p. reflect p refl");
  CHECK(r.code == 0);
}

TEST_CASE("inferred types of checked definitions are well-formed") {
  auto r = check_text(
      "clock k\n"
      "def S [k] : U{k} := fix[k] s. cNat c* cLater[k] s\n"
      "def ones [k] : El S[k] := fix[k] o. (1 , o)\n"
      "def tl [k] : El S[k] -> Later[k] (El S[k]) := \\s. snd s");
  REQUIRE(r.code == 0);
  Kernel kern;
  kern.defs = &r.outcome.defs;
  ClockSet D = r.outcome.clocks;
  ExprPtr e = parse_expr_string("tl[k] ones[k]", {"tl", "ones", "S"});
  ExprPtr ty = kern.infer(D, {}, e);
  kern.check_type_wf(D, {}, ty);  // must not throw
  Fuel fuel = kern.fresh_fuel();
  CHECK(kern.conv(D, {}, ty,
                  parse_expr_string("Later[k] (El S[k])", {"S"}), fuel));
}

TEST_CASE("trace mode emits RULE lines") {
  CheckOptions opt;
  opt.trace = true;
  auto r = check_text(
      "clock k\n"
      "eq (\\(t : Later[k] Nat). next[k; x <- t] 5)\n"
      "  == (\\(t : Later[k] Nat). next[k] 5)\n"
      "  : Later[k] Nat -> Later[k] Nat",
      opt);
  CHECK(r.code == 0);
  CHECK(r.out.find("RULE ") != std::string::npos);
}
