// Capture-avoiding substitution for term variables and clock variables,
// plus the `advance` operation on delayed substitutions.
#pragma once

#include <map>
#include <string>

#include "gdtt/syntax.hpp"

namespace gdtt {

using Substitution = std::map<std::string, ExprPtr>;

// Pick a name based on `base` that is not in `avoid` (appends apostrophes).
std::string freshen(const std::string& base, const std::set<std::string>& avoid);

// Simultaneous capture-avoiding substitution of term variables.
ExprPtr subst(const ExprPtr& e, const Substitution& s);
ExprPtr subst1(const ExprPtr& e, const std::string& x, const ExprPtr& t);

// Substitute clock `target` (a variable or k0) by clock `repl` throughout.
ExprPtr clock_subst(const ExprPtr& e, const Clock& target, const Clock& repl);

// advance(k, xi): the substitution sending each xi entry x <- t to
// (prev k. t)[k].  The prev binder deliberately captures free occurrences of
// k in t.
Substitution advance(const std::string& k, const DSubst& xi);

// Simultaneous instantiation of clock parameters (renames through temporaries
// so one argument may coincide with another parameter).
ExprPtr instantiate_clocks(ExprPtr e, const std::vector<std::string>& params,
                           const std::vector<Clock>& args);

// Rename delayed-substitution entry variables in `body` (helper for aligning
// entry lists): plain variable-for-variable substitution.
ExprPtr rename_vars(const ExprPtr& e, const std::map<std::string, std::string>& ren);

}  // namespace gdtt
