#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace gdtt;

namespace {

struct Streams {
  CheckOutcome outcome;
  Kernel kernel;
  ClockSet D;

  Streams() {
    auto r = testutil::check_path(std::string(CORPUS_DIR) +
                                  "/positive/streams.gdtt");
    REQUIRE(r.code == 0);
    outcome = std::move(r.outcome);
    kernel.defs = &outcome.defs;
    D = outcome.clocks;
    D.insert("k");
  }

  Observation eval_def(const std::string& name, int depth) {
    const Def* d = outcome.defs.find(name);
    REQUIRE(d != nullptr);
    return eval_at_depth(kernel, D, d->term, d->type, depth);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Streams, "ones observes as [1,1,1] at depth 3") {
  // Oracle: unfolding the fixed point by hand three times gives
  // (1 , next (1 , next (1 , next ones))) whose depth-3 observation is
  // (1,(1,(1,*))).
  Observation o = eval_def("ones", 3);
  CHECK(print_observation(o) == "[1,1,1]");
  Observation expect = Observation::pairv(
      Observation::numeral(1),
      Observation::laterv(Observation::pairv(
          Observation::numeral(1),
          Observation::laterv(Observation::pairv(Observation::numeral(1),
                                                 Observation::star())))));
  CHECK(o == expect);
}

TEST_CASE_FIXTURE(Streams, "zipWith plus ones ones observes as [2,2,2]") {
  // Oracle: unfolding zipWith three steps, each head is plus 1 1 = 2.
  Observation o = eval_def("twos", 3);
  CHECK(print_observation(o) == "[2,2,2]");
}

TEST_CASE_FIXTURE(Streams, "nats observes successive numerals") {
  const Def* d = outcome.defs.find("nats");
  REQUIRE(d != nullptr);
  ExprPtr t = parse_expr_string("nats[k] 0", {"nats"});
  ExprPtr A = parse_expr_string("El Str[k]", {"Str"});
  Observation o = eval_at_depth(kernel, D, t, A, 3);
  CHECK(print_observation(o) == "[0,1,2]");
}

TEST_CASE_FIXTURE(Streams, "restriction: deeper observations truncate to shallower ones") {
  for (int n = 2; n <= 5; ++n) {
    Observation deep = eval_def("twos", n);
    Observation shallow = eval_def("twos", n - 1);
    CHECK(truncate_observation(deep, n - 1) == shallow);
  }
}

TEST_CASE_FIXTURE(Streams, "prefix agreement links conversion to the model") {
  const Def* twos = outcome.defs.find("twos");
  REQUIRE(twos != nullptr);
  ExprPtr lhs = parse_expr_string("zipWith[k] plus ones[k] ones[k]",
                                  {"zipWith", "plus", "ones"});
  CHECK(prefix_agree(kernel, D, lhs, twos->term, twos->type, 5));
  // And a pair the kernel refuses to identify must disagree at some depth.
  ExprPtr onesT = outcome.defs.find("ones")->term;
  CHECK_FALSE(prefix_agree(kernel, D, onesT, twos->term, twos->type, 5));
}

TEST_CASE_FIXTURE(Streams, "base observations") {
  CHECK(eval_at_depth(kernel, D, parse_expr_string("plus 2 3", {"plus"}),
                      mk::ty_nat(), 1) == Observation::numeral(5));
  CHECK(eval_at_depth(kernel, D, parse_expr_string("false"), mk::ty_bool(),
                      2) == Observation::boolean(false));
  CHECK(eval_at_depth(kernel, D, parse_expr_string("tt"), mk::ty_unit(), 1) ==
        Observation::star());
}

TEST_CASE_FIXTURE(Streams, "later truncates at depth one") {
  ExprPtr t = parse_expr_string("next[k] 7");
  ExprPtr A = parse_expr_string("Later[k] Nat");
  CHECK(eval_at_depth(kernel, D, t, A, 1) == Observation::star());
  CHECK(eval_at_depth(kernel, D, t, A, 2) ==
        Observation::laterv(Observation::numeral(7)));
}

TEST_CASE_FIXTURE(Streams, "functions are not observable") {
  ExprPtr t = parse_expr_string("plus", {"plus"});
  ExprPtr A = parse_expr_string("Nat -> Nat -> Nat");
  CHECK_THROWS_AS(eval_at_depth(kernel, D, t, A, 2), NotObservable);
}
