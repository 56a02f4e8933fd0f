#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace gdtt;

namespace {

const char* kPrelude = R"(
clock k
def plus : Nat -> Nat -> Nat := \m n. natrec (x. Nat) n (p ih. succ ih) m
def Str[k] : U{k} := fix[k] s. cNat c* cLater[k] s
def ones[k] : El Str[k] := fix[k] o. (1 , o)
)";

struct Fixture {
  CheckOutcome outcome;
  Kernel kernel;
  ClockSet D;

  Fixture() {
    auto r = testutil::check_text(kPrelude);
    REQUIRE(r.code == 0);
    outcome = std::move(r.outcome);
    kernel.defs = &outcome.defs;
    D = outcome.clocks;
    D.insert("k");
  }

  ExprPtr parse(const std::string& s) {
    return parse_expr_string(s, {"plus", "Str", "ones"});
  }
  bool conv(const std::string& a, const std::string& b,
            const Telescope& G = {}) {
    Fuel fuel = kernel.fresh_fuel();
    return kernel.conv(D, G, parse(a), parse(b), fuel);
  }
  bool conv_at(const std::string& ty, const std::string& a,
               const std::string& b) {
    Fuel fuel = kernel.fresh_fuel();
    return kernel.conv_term(D, {}, parse(ty), parse(a), parse(b), fuel);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "beta and numerals") {
  CHECK(conv("(\\(x : Nat). succ x) 1", "2"));
  CHECK(conv("plus 2 2", "4"));
  CHECK_FALSE(conv("plus 2 2", "5"));
}

TEST_CASE_FIXTURE(Fixture, "eta for functions and pairs") {
  Telescope G{{"f", parse("Nat -> Nat")},
              {"p", parse("Nat * Nat")}};
  CHECK(conv("\\(x : Nat). f x", "f", G));
  CHECK(conv("(fst p , snd p)", "p", G));
}

TEST_CASE_FIXTURE(Fixture, "delayed substitution laws") {
  Telescope G{{"t", parse("Later[k] Nat")}, {"u", parse("Later[k] Nat")}};
  // Weak: unused entries drop.
  CHECK(conv("next[k; x <- t] 5", "next[k] 5", G));
  // Var: the trivial substitution collapses.
  CHECK(conv("next[k; x <- t] x", "t", G));
  // Exch: independent entries commute.
  CHECK(conv("next[k; x <- t, y <- u] (plus x y)",
             "next[k; y <- u, x <- t] (plus x y)", G));
  // Force: next-form entries substitute away.
  CHECK(conv("next[k; y <- next[k; x <- t] x] y", "next[k; x <- t] x", G));
  CHECK(conv("next[k; y <- next[k] 1] (succ y)", "next[k] 2", G));
  // Entries with genuinely different contents do not identify.
  CHECK_FALSE(conv("next[k; x <- t] x", "next[k; x <- u] x", G));
}

TEST_CASE_FIXTURE(Fixture, "fix unfolds one step and spends fuel") {
  CHECK(conv("ones[k]", "(1 , next[k] ones[k])"));
  // Two extensionally different streams are not convertible.
  CHECK_FALSE(conv("ones[k]", "(1 , next[k] (2 , next[k] ones[k]))"));
}

TEST_CASE_FIXTURE(Fixture, "divergent comparisons exhaust fuel") {
  Fuel fuel{8};
  ExprPtr a = parse("fix[k] o. (1 , o)");
  ExprPtr b = parse("fix[k] o. (1 , next[k; oo <- o] (1 , oo))");
  CHECK_THROWS_AS(kernel.conv(D, {}, a, b, fuel), FuelExhaustedError);
}

TEST_CASE_FIXTURE(Fixture, "clock abstraction: beta, eta, freshness") {
  Telescope G{{"g", parse("forall k2. Nat")}};
  CHECK(conv("(clam k2. next[k2] 3) @ k", "next[k] 3"));
  CHECK(conv("clam k2. g @ k2", "g", G));
  CHECK(conv_at("Nat -> forall k2. Nat", "\\n. clam k2. n",
                "\\n. clam k3. n"));
}

TEST_CASE_FIXTURE(Fixture, "prev beta") {
  CHECK(conv("clam k2. prev[k1] (next[k1] 7) @ k2", "clam k2. 7"));
}

TEST_CASE_FIXTURE(Fixture, "later commutes with Id at the type level") {
  CHECK(conv("Later[k] (Id Nat 1 1)",
             "Id (Later[k] Nat) (next[k] 1) (next[k] 1)"));
}

TEST_CASE_FIXTURE(Fixture, "code decoding") {
  CHECK(conv("El (cPi (x : cNat). cBool)", "Nat -> Bool"));
  CHECK(conv("El Str[k]", "Nat * Later[k] (El Str[k])"));
  CHECK_FALSE(conv("El cNat", "Bool"));
}
