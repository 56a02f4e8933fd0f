// Core syntax for a guarded dependent type theory with clocks:
// expressions, clocks, delayed substitutions, alpha equivalence, free variables.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gdtt {

// A clock is either the constant clock k0 or a clock variable.
struct Clock {
  bool is_const{true};
  std::string var;  // meaningful when !is_const

  static Clock k0() { return Clock{}; }
  static Clock variable(std::string n) { return Clock{false, std::move(n)}; }
  bool operator==(const Clock&) const = default;
};

// A clock context (and universe annotation) is a finite set of clock variables.
using ClockSet = std::set<std::string>;

enum class Kind {
  // Types
  TyUnit,
  TyBool,
  TyNat,
  TyPi,        // Pi (name : kids[0]). kids[1]
  TySigma,     // Sg (name : kids[0]). kids[1]
  TyId,        // Id kids[0] kids[1] kids[2]
  TyUniverse,  // U{clocks}
  TyEl,        // El kids[0]
  TyLater,     // Later[clock; dsubst] kids[0]
  TyForall,    // forall name. kids[0]   (name is a clock variable)
  // Terms
  Var,    // name
  Const,  // name[clock_args]  -- reference to a top-level definition
  Lam,    // \(name : kids[0]). kids[1]  or  \name. kids[0]
  App,    // kids[0] kids[1]
  Pair,   // (kids[0] , kids[1])
  Fst,
  Snd,
  TT,
  True,
  False,
  If,       // if kids[i] then ... else ...; optional motive binder `name`
  Zero,
  Succ,     // succ kids[0]
  NatElim,  // natrec (name. kids[0]) kids[1] (names[0] names[1]. kids[2]) kids[3]
  Refl,     // refl  (optionally with payload kids[0])
  J,        // J (names[0] names[1] names[2]. kids[0]) (names[3]. kids[1]) kids[2]
  CodeUnit,
  CodeBool,
  CodeNat,
  CodePi,     // cPi (name : kids[0]). kids[1]
  CodeSigma,  // cSg (name : kids[0]). kids[1]
  CodeLater,  // cLater[clock] kids[0]
  CodeForall, // cForall kids[0]
  Next,       // next[clock; dsubst] kids[0]
  Fix,        // fix[clock] name. body; kids = {body} or {result type, body}
  Prev,       // prev[name] kids[0]     (name is a clock variable)
  ClockAbs,   // clam name. kids[0]
  ClockApp,   // kids[0] @ clock
  Reflect,    // reflect kids[0] kids[1]
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One entry of a delayed substitution: var <- term.
struct DEntry {
  std::string var;
  ExprPtr term;
};

using DSubst = std::vector<DEntry>;

struct Expr {
  Kind kind;
  std::string name;                 // variable / const / primary binder
  std::vector<std::string> names;   // extra binders (NatElim, J)
  Clock clock;                      // TyLater, Next, Fix, CodeLater, ClockApp
  std::vector<Clock> clock_args;    // Const
  ClockSet clocks;                  // TyUniverse
  DSubst dsubst;                    // TyLater, Next
  std::vector<ExprPtr> kids;
  bool has_motive{false};           // If

  bool is_type() const {
    return kind >= Kind::TyUnit && kind <= Kind::TyForall;
  }
};

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------
namespace mk {

ExprPtr node(Kind k);
ExprPtr ty_unit();
ExprPtr ty_bool();
ExprPtr ty_nat();
ExprPtr pi(std::string x, ExprPtr dom, ExprPtr cod);
ExprPtr sigma(std::string x, ExprPtr dom, ExprPtr cod);
ExprPtr id(ExprPtr a, ExprPtr t, ExprPtr u);
ExprPtr universe(ClockSet ks);
ExprPtr el(ExprPtr code);
ExprPtr later(Clock k, DSubst xi, ExprPtr body);
ExprPtr forall(std::string k, ExprPtr body);

ExprPtr var(std::string x);
ExprPtr cst(std::string name, std::vector<Clock> args = {});
ExprPtr lam(std::string x, ExprPtr body);
ExprPtr lam_ann(std::string x, ExprPtr ann, ExprPtr body);
ExprPtr app(ExprPtr f, ExprPtr a);
ExprPtr pair(ExprPtr a, ExprPtr b);
ExprPtr fst(ExprPtr t);
ExprPtr snd(ExprPtr t);
ExprPtr tt();
ExprPtr tru();
ExprPtr fls();
ExprPtr ifte(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr ifte_motive(std::string x, ExprPtr motive, ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr zero();
ExprPtr succ(ExprPtr t);
ExprPtr lit(std::uint64_t n);
ExprPtr natelim(std::string x, ExprPtr motive, ExprPtr base, std::string k,
                std::string ih, ExprPtr step, ExprPtr scrut);
ExprPtr refl();
ExprPtr refl_at(ExprPtr t);
ExprPtr j(std::string x, std::string y, std::string p, ExprPtr motive,
          std::string z, ExprPtr d, ExprPtr q);
ExprPtr code_unit();
ExprPtr code_bool();
ExprPtr code_nat();
ExprPtr code_pi(std::string x, ExprPtr dom, ExprPtr cod);
ExprPtr code_sigma(std::string x, ExprPtr dom, ExprPtr cod);
ExprPtr code_later(Clock k, ExprPtr t);
ExprPtr code_forall(ExprPtr t);
ExprPtr next(Clock k, DSubst xi, ExprPtr body);
ExprPtr fix(Clock k, std::string x, ExprPtr body);
ExprPtr fix_ann(Clock k, std::string x, ExprPtr ann, ExprPtr body);
ExprPtr prev(std::string k, ExprPtr body);
ExprPtr clock_abs(std::string k, ExprPtr body);
ExprPtr clock_app(ExprPtr t, Clock k);
ExprPtr reflect(ExprPtr proof, ExprPtr subject);

}  // namespace mk

// Body / annotation accessors for Lam and Fix (annotation optional).
ExprPtr body_of(const ExprPtr& lam_or_fix);
ExprPtr ann_of(const ExprPtr& lam_or_fix);  // nullptr when absent

// If accessors.
ExprPtr if_motive(const ExprPtr& e);  // nullptr when absent
ExprPtr if_cond(const ExprPtr& e);
ExprPtr if_then(const ExprPtr& e);
ExprPtr if_else(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Alpha equivalence and free variables
// ---------------------------------------------------------------------------
bool alpha_eq(const ExprPtr& a, const ExprPtr& b);

struct FreeVars {
  std::set<std::string> terms;
  std::set<std::string> clocks;  // free clock variables (k0 excluded)
};

FreeVars free_vars(const ExprPtr& e);
bool is_free(const ExprPtr& e, const std::string& x);
bool clock_is_free(const ExprPtr& e, const std::string& k);

// Every occurrence of any clock (variables and k0) in e.
std::set<Clock, bool (*)(const Clock&, const Clock&)> clocks_of(const ExprPtr& e);
bool clock_less(const Clock& a, const Clock& b);

}  // namespace gdtt
