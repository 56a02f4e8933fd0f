// Batch driver: checks parsed source files against the kernel and backs the
// command-line front end (check / eval / fmt).
#pragma once

#include <iosfwd>
#include <string>

#include "gdtt/parser.hpp"
#include "gdtt/typecheck.hpp"

namespace gdtt {

struct CheckOptions {
  int fuel = 64;
  bool trace = false;
  int jobs = 1;
};

// Result of checking a whole file.
struct CheckOutcome {
  int exit_code = 0;  // 0 ok, 1 type error, 3 fuel exhausted
  ClockSet clocks;    // ambient clock context declared in the file
  Defs defs;          // all definitions (populated even past a failure)
  std::string first_error_rule;  // rule name of the first failure, if any
  std::string first_error_kind;  // err_kind_name of the first failure
};

// Checks every declaration of `f`. Diagnostics go to `err` in the format
//   ERROR <filename>:<line>:<col> [<RuleName>] expected <T1> got <T2>
// Trace lines (when enabled) go to `out` as `RULE <name> AT <path>`.
CheckOutcome check_source(const SourceFile& f, const std::string& filename,
                          const CheckOptions& opt, std::ostream& out,
                          std::ostream& err);

// CLI entry points; return the process exit code
// (0 ok, 1 type error, 2 parse/IO error, 3 fuel exhausted).
int run_check(const std::string& path, const CheckOptions& opt,
              std::ostream& out, std::ostream& err);
int run_eval(const std::string& path, const std::string& def_name, int depth,
             const CheckOptions& opt, std::ostream& out, std::ostream& err);
int run_fmt(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace gdtt
