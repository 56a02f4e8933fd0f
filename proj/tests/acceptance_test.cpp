// Acceptance gate: one line per criterion, exit nonzero on any failure.
#include <iostream>
#include <sstream>

#include "test_util.hpp"

using namespace gdtt;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& why = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!ok && !why.empty()) std::cout << " -- " << why;
  std::cout << "\n";
  if (!ok) ++failures;
}

// 1. Every positive corpus file checks with exit 0 under the default budget.
void criterion_positive() {
  std::string why;
  bool ok = true;
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) {
    auto r = testutil::check_path(p);
    if (r.code != 0) {
      ok = false;
      why += p.filename().string() + " exit " + std::to_string(r.code) + "; ";
    }
  }
  report("positive corpus type-checks (fuel <= 64)", ok, why);
}

// 2. At least ten mutations are rejected, each naming the failing rule, and
//    the four required mutation classes are present.
void criterion_negative() {
  auto files = testutil::corpus_files("negative", ".gdtt");
  std::string why;
  bool ok = files.size() >= 10;
  if (!ok) why = "fewer than 10 files";
  std::set<std::string> kinds;
  for (auto& p : files) {
    std::string expect = testutil::expected_error(p);
    auto r = testutil::check_path(p);
    bool rejected = r.code == (expect == "FuelExhausted" ? 3 : 1) &&
                    r.outcome.first_error_kind == expect &&
                    !r.outcome.first_error_rule.empty();
    if (!rejected) {
      ok = false;
      why += p.filename().string() + "; ";
    }
    kinds.insert(expect);
  }
  for (const char* k : {"ConversionFailed", "ClockNotFresh", "UniverseEscape",
                        "NotLaterTyped"}) {
    if (!kinds.count(k)) {
      ok = false;
      why += std::string("missing class ") + k + "; ";
    }
  }
  report("negative corpus rejected with named rules", ok, why);
}

// 3. The equality suite holds definitionally, with no fuel exhaustion.
void criterion_equalities() {
  std::string why;
  bool ok = true;
  for (auto& p : testutil::corpus_files("equalities", ".eq")) {
    auto r = testutil::check_path(p);
    if (r.code != 0) {
      ok = false;
      why += p.filename().string() + " exit " + std::to_string(r.code) + "; ";
    }
  }
  report("equality suite holds definitionally", ok, why);
}

// 4. Model oracle: convertible observable terms agree at depths 1..5, and the
//    recorded prefixes for ones and zipWith plus ones ones come out.
void criterion_model() {
  std::string why;
  bool ok = true;
  std::string path = std::string(CORPUS_DIR) + "/positive/streams.gdtt";
  auto r = testutil::check_path(path);
  if (r.code != 0) {
    report("model oracle agreement", false, "streams corpus failed");
    return;
  }
  Kernel kern;
  kern.defs = &r.outcome.defs;
  ClockSet D = r.outcome.clocks;
  auto eval_str = [&](const std::string& name, int depth) {
    const Def* d = r.outcome.defs.find(name);
    return print_observation(eval_at_depth(kern, D, d->term, d->type, depth));
  };
  if (eval_str("ones", 3) != "[1,1,1]") {
    ok = false;
    why += "ones depth 3 = " + eval_str("ones", 3) + "; ";
  }
  if (eval_str("twos", 3) != "[2,2,2]") {
    ok = false;
    why += "twos depth 3 = " + eval_str("twos", 3) + "; ";
  }
  // Convertible pairs of observable closed type agree at depths 1..5.
  const Def* twos = r.outcome.defs.find("twos");
  ExprPtr zipped = parse_expr_string("zipWith[k] plus ones[k] ones[k]",
                                     {"zipWith", "plus", "ones"});
  if (!prefix_agree(kern, D, zipped, twos->term, twos->type, 5)) {
    ok = false;
    why += "prefix disagreement for twos; ";
  }
  report("model oracle agreement at depths 1..5", ok, why);
}

// 5. Metatheory spot-checks by re-running the checker on transformed input.
void criterion_metatheory() {
  std::string why;
  bool ok = true;

  // Substitution lemma instance: a checked open body stays well-typed after
  // substituting a checked closed term for the variable.
  {
    auto base = testutil::check_text(
        "def plus : Nat -> Nat -> Nat := \\m n. natrec (x. Nat) n (p ih. succ ih) m\n"
        "def openbody : Nat -> Nat := \\n. plus n 2");
    if (base.code != 0) {
      ok = false;
      why += "substitution base failed; ";
    } else {
      Kernel kern;
      kern.defs = &base.outcome.defs;
      ExprPtr body = parse_expr_string("plus n 2", {"plus"});
      ExprPtr inst = subst1(body, "n", parse_expr_string("plus 1 1", {"plus"}));
      try {
        kern.check({}, {}, inst, mk::ty_nat());
      } catch (const std::exception& e) {
        ok = false;
        why += std::string("substitution lemma: ") + e.what() + "; ";
      }
    }
  }

  // Clock weakening: every positive file still checks with an extra ambient
  // clock declared up front.
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) {
    std::string widened = "clock kextra\n" + testutil::slurp(p);
    if (testutil::check_text(widened).code != 0) {
      ok = false;
      why += "clock weakening on " + p.filename().string() + "; ";
    }
  }

  // Clock substitution stability: a clock-parameterized definition can be
  // re-used twice at distinct ambient clocks in one file.
  {
    auto r = testutil::check_text(
        "clock ka\nclock kb\n"
        "def S [k] : U{k} := fix[k] s. cNat c* cLater[k] s\n"
        "def ones [k] : El S[k] := fix[k] o. (1 , o)\n"
        "def usea : El S[ka] := ones[ka]\n"
        "def useb : El S[kb] := ones[kb]");
    if (r.code != 0) {
      ok = false;
      why += "clock substitution stability; ";
    }
  }

  // Inferred-type well-formedness on a synthesizing corpus term.
  {
    std::string path = std::string(CORPUS_DIR) + "/positive/streams.gdtt";
    auto r = testutil::check_path(path);
    Kernel kern;
    kern.defs = &r.outcome.defs;
    ClockSet D = r.outcome.clocks;
    try {
      ExprPtr e = parse_expr_string("tl[k] (zipWith[k] plus ones[k] ones[k])",
                                    {"tl", "zipWith", "plus", "ones"});
      ExprPtr ty = kern.infer(D, {}, e);
      kern.check_type_wf(D, {}, ty);
    } catch (const std::exception& e) {
      ok = false;
      why += std::string("inferred-type wf: ") + e.what() + "; ";
    }
  }

  report("metatheory spot-checks", ok, why);
}

// 6. Round-trip fixpoint on all corpus files.
void criterion_roundtrip() {
  std::string why;
  bool ok = true;
  std::vector<std::filesystem::path> all;
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) all.push_back(p);
  for (auto& p : testutil::corpus_files("negative", ".gdtt")) all.push_back(p);
  for (auto& p : testutil::corpus_files("equalities", ".eq")) all.push_back(p);
  for (auto& p : all) {
    std::ostringstream out, err;
    if (run_fmt(p.string(), out, err) != 0) {
      ok = false;
      why += p.filename().string() + " fmt failed; ";
      continue;
    }
    SourceFile a, b;
    try {
      a = parse_file(testutil::slurp(p));
      b = parse_file(out.str());
    } catch (const ParseError&) {
      ok = false;
      why += p.filename().string() + " reparse failed; ";
      continue;
    }
    bool same = a.decls.size() == b.decls.size();
    auto eq = [](const ExprPtr& x, const ExprPtr& y) {
      if (!x || !y) return x == y;
      return alpha_eq(x, y);
    };
    for (size_t i = 0; same && i < a.decls.size(); ++i) {
      const Decl &da = a.decls[i], &db = b.decls[i];
      same = da.kind == db.kind && da.name == db.name &&
             da.clock_params == db.clock_params && eq(da.type, db.type) &&
             eq(da.term, db.term) && eq(da.lhs, db.lhs) && eq(da.rhs, db.rhs);
    }
    if (!same) {
      ok = false;
      why += p.filename().string() + " not alpha-stable; ";
    }
  }
  report("round-trip parse/print fixpoint", ok, why);
}

}  // namespace

int main() {
  criterion_positive();
  criterion_negative();
  criterion_equalities();
  criterion_model();
  criterion_metatheory();
  criterion_roundtrip();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
