#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "test_util.hpp"

using namespace gdtt;

TEST_CASE("positive corpus checks with exit 0") {
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) {
    auto r = testutil::check_path(p);
    CHECK_MESSAGE(r.code == 0, p.string(), ": ", r.err);
  }
}

TEST_CASE("equality corpus checks with exit 0") {
  for (auto& p : testutil::corpus_files("equalities", ".eq")) {
    auto r = testutil::check_path(p);
    CHECK_MESSAGE(r.code == 0, p.string(), ": ", r.err);
  }
}

TEST_CASE("negative corpus is rejected with the declared error kind") {
  auto files = testutil::corpus_files("negative", ".gdtt");
  CHECK(files.size() >= 10);
  for (auto& p : files) {
    std::string expect = testutil::expected_error(p);
    REQUIRE_MESSAGE(!expect.empty(), p.string(), ": missing pragma");
    auto r = testutil::check_path(p);
    int want_code = expect == "FuelExhausted" ? 3 : 1;
    CHECK_MESSAGE(r.code == want_code, p.string(), ": ", r.err);
    CHECK_MESSAGE(r.outcome.first_error_kind == expect, p.string(), ": got ",
                  r.outcome.first_error_kind);
    // Each rejection names the failing rule in the report.
    CHECK(r.err.find("[" + r.outcome.first_error_rule + "]") !=
          std::string::npos);
  }
}

TEST_CASE("error reports carry positions in the spec format") {
  auto files = testutil::corpus_files("negative", ".gdtt");
  REQUIRE(!files.empty());
  auto r = testutil::check_path(files.front());
  std::string prefix = "ERROR " + files.front().string() + ":";
  CHECK(r.err.rfind(prefix, 0) == 0);
}

TEST_CASE("round-trip: parse then print then parse is a fixpoint") {
  std::vector<std::filesystem::path> all;
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) all.push_back(p);
  for (auto& p : testutil::corpus_files("negative", ".gdtt")) all.push_back(p);
  for (auto& p : testutil::corpus_files("equalities", ".eq")) all.push_back(p);
  for (auto& p : all) {
    std::ostringstream out, err;
    int rc = run_fmt(p.string(), out, err);
    REQUIRE_MESSAGE(rc == 0, p.string(), ": ", err.str());
    SourceFile a = parse_file(testutil::slurp(p));
    SourceFile b = parse_file(out.str());
    REQUIRE_MESSAGE(a.decls.size() == b.decls.size(), p.string());
    for (size_t i = 0; i < a.decls.size(); ++i) {
      const Decl &da = a.decls[i], &db = b.decls[i];
      CHECK(da.kind == db.kind);
      CHECK(da.name == db.name);
      CHECK(da.clock_params == db.clock_params);
      auto same = [&](const ExprPtr& x, const ExprPtr& y) {
        if (!x || !y) return x == y;
        return alpha_eq(x, y);
      };
      CHECK_MESSAGE(same(da.type, db.type), p.string(), " decl ", i);
      CHECK_MESSAGE(same(da.term, db.term), p.string(), " decl ", i);
      CHECK_MESSAGE(same(da.lhs, db.lhs), p.string(), " decl ", i);
      CHECK_MESSAGE(same(da.rhs, db.rhs), p.string(), " decl ", i);
    }
  }
}

TEST_CASE("exit codes are deterministic across runs and job counts") {
  std::vector<std::filesystem::path> all;
  for (auto& p : testutil::corpus_files("positive", ".gdtt")) all.push_back(p);
  for (auto& p : testutil::corpus_files("negative", ".gdtt")) all.push_back(p);
  for (auto& p : all) {
    int first = testutil::check_path(p).code;
    CHECK(testutil::check_path(p).code == first);
    CheckOptions par;
    par.jobs = 4;
    CHECK_MESSAGE(testutil::check_path(p, par).code == first, p.string());
  }
}

TEST_CASE("eval entry point prints stream prefixes") {
  std::ostringstream out, err;
  std::string path = std::string(CORPUS_DIR) + "/positive/streams.gdtt";
  int rc = run_eval(path, "ones", 3, CheckOptions{}, out, err);
  CHECK(rc == 0);
  CHECK(out.str() == "[1,1,1]\n");

  std::ostringstream out2, err2;
  rc = run_eval(path, "twos", 3, CheckOptions{}, out2, err2);
  CHECK(rc == 0);
  CHECK(out2.str() == "[2,2,2]\n");
}

TEST_CASE("missing files and syntax errors exit 2") {
  std::ostringstream out, err;
  CHECK(run_check("/nonexistent/nope.gdtt", CheckOptions{}, out, err) == 2);
  CHECK(testutil::check_text("def := :=").code == 2);
}

TEST_CASE("exhausting the unfolding budget exits 3") {
  CheckOptions tiny;
  tiny.fuel = 0;
  auto r = testutil::check_path(
      std::string(CORPUS_DIR) + "/positive/streams.gdtt", tiny);
  CHECK(r.code == 3);
}
