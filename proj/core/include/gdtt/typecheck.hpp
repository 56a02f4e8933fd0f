// The kernel: definitional equality (conversion, whnf, delayed-substitution
// normalization) and bidirectional typechecking.
#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gdtt/errors.hpp"
#include "gdtt/subst.hpp"
#include "gdtt/syntax.hpp"

namespace gdtt {

// Top-level definitions, possibly clock-parameterized.
struct Def {
  std::vector<std::string> clock_params;
  ExprPtr type;
  ExprPtr term;
};

struct Defs {
  std::vector<std::pair<std::string, Def>> order;

  const Def* find(const std::string& n) const {
    for (auto& [name, d] : order) {
      if (name == n) return &d;
    }
    return nullptr;
  }
  void add(std::string n, Def d) { order.emplace_back(std::move(n), std::move(d)); }
};

// Typing context: ordered telescope of (variable, type).
using Telescope = std::vector<std::pair<std::string, ExprPtr>>;

ExprPtr telescope_lookup(const Telescope& g, const std::string& x);

using TraceFn = std::function<void(const std::string& rule, const std::string& path)>;

class Kernel {
 public:
  const Defs* defs = nullptr;
  TraceFn trace;
  int default_fuel = 64;

  Fuel fresh_fuel() const { return Fuel{default_fuel}; }

  // --- conversion ---------------------------------------------------------

  // Weak head normalization (terms and types). `unfold_head` gates
  // delta/fix unfolding of the returned head; eliminated positions always
  // unfold.
  ExprPtr whnf(const ClockSet& D, const Telescope& G, ExprPtr e, Fuel& fuel,
               bool unfold_head = true);

  // Normalize a delayed substitution against its body: generalized Force
  // (flattening) + Weak. Returns the new entry list and body.
  std::pair<DSubst, ExprPtr> normalize_dsubst(const ClockSet& D,
                                              const Telescope& G, const Clock& k,
                                              DSubst xi, ExprPtr body, Fuel& fuel);

  // Definitional equality of two terms or two types.
  bool conv(const ClockSet& D, const Telescope& G, ExprPtr a, ExprPtr b,
            Fuel& fuel);

  // Type-directed at the outside: eta-expands both sides along the
  // classifier so binders enter the context with their types.
  bool conv_term(const ClockSet& D, const Telescope& G, const ExprPtr& classifier,
                 ExprPtr t, ExprPtr u, Fuel& fuel);
  bool conv_type(const ClockSet& D, const Telescope& G, ExprPtr a, ExprPtr b,
                 Fuel& fuel) {
    return conv(D, G, std::move(a), std::move(b), fuel);
  }

  // --- typechecking -------------------------------------------------------

  void check_clock(const ClockSet& D, const Clock& k) const;

  // Checks a delayed substitution; returns the full telescope of entries
  // (including hoisted implicit entries) paired with its entry list.
  struct DsResult {
    DSubst entries;     // possibly extended with hoisted entries
    Telescope types;    // same length: variable -> type
  };
  DsResult check_dsubst(const ClockSet& D, const Clock& k, const DSubst& xi,
                        const Telescope& G);

  void check_type_wf(const ClockSet& D, const Telescope& G, const ExprPtr& a);

  ExprPtr infer(const ClockSet& D, const Telescope& G, const ExprPtr& t);
  void check(const ClockSet& D, const Telescope& G, const ExprPtr& t,
             const ExprPtr& a);

  // --- helpers shared between conversion and typechecking ------------------

  // Align entries of `sub` (each matched by conversion of entry terms) against
  // `super`; returns a renaming sub-var -> super-var, or nullopt. When
  // `bijective`, every super entry must be matched too.
  std::optional<std::map<std::string, std::string>> align_dsubst(
      const ClockSet& D, const Telescope& G, const DSubst& super,
      const DSubst& sub, Fuel& fuel, bool bijective);

  std::string print_hint(const ExprPtr& e) const;  // for error messages

 private:
  // Reflection rewrites active while checking a `reflect` subject.
  std::vector<std::pair<ExprPtr, ExprPtr>> rewrites_;
  std::vector<std::string> path_;
  int fresh_counter_ = 0;

  friend struct PathScope;
  friend struct RewriteScope;

  void emit(const char* rule);
  std::string fresh_clock_name();

  ExprPtr whnf_step_el(const ClockSet& D, const Telescope& G, const ExprPtr& e,
                       Fuel& fuel, bool& progressed);
  ExprPtr try_rewrites(const ClockSet& D, const Telescope& G, const ExprPtr& e,
                       Fuel& fuel, bool& progressed);
  bool conv_whnf(const ClockSet& D, const Telescope& G, ExprPtr a, ExprPtr b,
                 Fuel& fuel);
  bool conv_structural(const ClockSet& D, const Telescope& G, const ExprPtr& a,
                       const ExprPtr& b, Fuel& fuel);
  bool try_fresh_quotient(const ClockSet& D, const Telescope& G, const ExprPtr& a,
                          const ExprPtr& b, Fuel& fuel);
  bool clock_eq(const Clock& a, const Clock& b) const { return a == b; }

  ExprPtr infer_core(const ClockSet& D, const Telescope& G, const ExprPtr& t);
  void check_core(const ClockSet& D, const Telescope& G, const ExprPtr& t,
                  const ExprPtr& a);
  ExprPtr instantiate_const(const ExprPtr& t) const;  // def body w/ clock args
};

}  // namespace gdtt
