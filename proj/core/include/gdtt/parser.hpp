// Surface-syntax parser and elaborator: lexing, precedence parsing, sugar
// expansion (numerals, arrows, sums, applicative splat, case), and resolution
// of identifiers to local variables vs. top-level definitions.
#pragma once

#include <string>
#include <vector>

#include "gdtt/errors.hpp"
#include "gdtt/syntax.hpp"

namespace gdtt {

struct Decl {
  enum class K { Def, Eq, TyEq, ClockDecl };
  K kind{K::Def};
  std::string name;                      // Def: definition name; ClockDecl: clock
  std::vector<std::string> clock_params; // Def / Eq / TyEq
  ExprPtr type;                          // Def: annotation; Eq: classifier
  ExprPtr term;                          // Def: body
  ExprPtr lhs, rhs;                      // Eq / TyEq
  int line{1}, col{1};
};

struct SourceFile {
  std::vector<Decl> decls;
};

// Parses a whole file. Throws ParseError on syntax errors.
SourceFile parse_file(const std::string& src);

// Parses a single expression (for tests). `def_names` lists identifiers that
// resolve to top-level constants.
ExprPtr parse_expr_string(const std::string& src,
                          const std::vector<std::string>& def_names = {});

}  // namespace gdtt
