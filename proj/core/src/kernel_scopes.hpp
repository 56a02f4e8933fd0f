// RAII helpers shared by the conversion and typechecking translation units.
#pragma once

#include "gdtt/typecheck.hpp"

namespace gdtt {

struct PathScope {
  Kernel* k;
  PathScope(Kernel& kk, std::string seg) : k(&kk) {
    k->path_.push_back(std::move(seg));
  }
  ~PathScope() { k->path_.pop_back(); }
};

struct RewriteScope {
  Kernel* k;
  RewriteScope(Kernel& kk, ExprPtr lhs, ExprPtr rhs) : k(&kk) {
    k->rewrites_.emplace_back(std::move(lhs), std::move(rhs));
  }
  ~RewriteScope() { k->rewrites_.pop_back(); }
};

}  // namespace gdtt
