#include <benchmark/benchmark.h>

#include <sstream>

#include "gdtt/driver.hpp"
#include "gdtt/model.hpp"

namespace {

const char* kStreams = R"(
clock k
def Str[k] : U{k} := fix[k] s. cNat c* cLater[k] s
def cons[k] : Nat -> Later[k] (El Str[k]) -> El Str[k] := \n t. (n , t)
def ones[k] : El Str[k] := fix[k] o. cons[k] 1 o
def zipWith[k] : (Nat -> Nat -> Nat) -> El Str[k] -> El Str[k] -> El Str[k] :=
  \f. fix[k] (z : El Str[k] -> El Str[k] -> El Str[k]). \xs ys.
    cons[k] (f (fst xs) (fst ys))
      (next[k; zz <- z, xt <- snd xs, yt <- snd ys] (zz xt yt))
def plus : Nat -> Nat -> Nat := \m n. natrec (x. Nat) n (p ih. succ ih) m
def twos[k] : El Str[k] := zipWith[k] plus ones[k] ones[k]
)";

gdtt::SourceFile parse_streams() { return gdtt::parse_file(kStreams); }

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_streams());
  }
}
BENCHMARK(BM_Parse);

void BM_CheckFile(benchmark::State& state) {
  gdtt::SourceFile f = parse_streams();
  std::ostringstream sink;
  for (auto _ : state) {
    gdtt::CheckOutcome res =
        gdtt::check_source(f, "<bench>", gdtt::CheckOptions{}, sink, sink);
    benchmark::DoNotOptimize(res.exit_code);
  }
}
BENCHMARK(BM_CheckFile);

void BM_ConvStreams(benchmark::State& state) {
  gdtt::SourceFile f = parse_streams();
  std::ostringstream sink;
  gdtt::CheckOutcome res =
      gdtt::check_source(f, "<bench>", gdtt::CheckOptions{}, sink, sink);
  gdtt::Kernel k;
  k.defs = &res.defs;
  gdtt::ExprPtr lhs = gdtt::parse_expr_string("twos[k]", {"twos"});
  gdtt::ExprPtr rhs = gdtt::parse_expr_string(
      "cons[k] 2 (next[k; t <- snd twos[k]] t)", {"twos", "cons"});
  gdtt::Telescope empty;
  for (auto _ : state) {
    gdtt::Fuel fuel{256};
    benchmark::DoNotOptimize(k.conv(res.clocks, empty, lhs, rhs, fuel));
  }
}
BENCHMARK(BM_ConvStreams);

void BM_EvalDepth(benchmark::State& state) {
  gdtt::SourceFile f = parse_streams();
  std::ostringstream sink;
  gdtt::CheckOutcome res =
      gdtt::check_source(f, "<bench>", gdtt::CheckOptions{}, sink, sink);
  const gdtt::Def* d = res.defs.find("twos");
  gdtt::ClockSet D = res.clocks;
  gdtt::Kernel k;
  k.defs = &res.defs;
  int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gdtt::eval_at_depth(k, D, d->term, d->type, depth));
  }
}
BENCHMARK(BM_EvalDepth)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
