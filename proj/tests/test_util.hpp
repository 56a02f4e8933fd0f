// Shared helpers for the test binaries: file loading and one-call checking.
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gdtt/driver.hpp"
#include "gdtt/model.hpp"
#include "gdtt/parser.hpp"
#include "gdtt/print.hpp"
#include "gdtt/typecheck.hpp"

namespace testutil {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = 0;
  gdtt::CheckOutcome outcome;
  std::string out, err;
};

inline RunResult check_text(const std::string& src,
                            gdtt::CheckOptions opt = {},
                            const std::string& name = "<mem>") {
  RunResult r;
  std::ostringstream out, err;
  try {
    gdtt::SourceFile f = gdtt::parse_file(src);
    r.outcome = gdtt::check_source(f, name, opt, out, err);
    r.code = r.outcome.exit_code;
  } catch (const gdtt::ParseError& e) {
    err << "ERROR " << name << ":" << e.line << ":" << e.col
        << " [Parse] " << e.detail << "\n";
    r.code = 2;
  }
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline RunResult check_path(const std::filesystem::path& p,
                            gdtt::CheckOptions opt = {}) {
  return check_text(slurp(p), opt, p.string());
}

inline std::vector<std::filesystem::path> corpus_files(
    const std::string& subdir, const std::string& ext) {
  std::vector<std::filesystem::path> v;
  for (auto& e :
       std::filesystem::directory_iterator(std::string(CORPUS_DIR) + "/" + subdir)) {
    if (e.path().extension() == ext) v.push_back(e.path());
  }
  std::sort(v.begin(), v.end());
  return v;
}

// Reads the `-- expect-error: <Kind>` pragma of a negative corpus file.
inline std::string expected_error(const std::filesystem::path& p) {
  std::string src = slurp(p);
  auto pos = src.find("expect-error:");
  if (pos == std::string::npos) return "";
  pos += std::string("expect-error:").size();
  while (pos < src.size() && src[pos] == ' ') ++pos;
  auto end = src.find_first_of(" \t\r\n", pos);
  return src.substr(pos, end - pos);
}

}  // namespace testutil
