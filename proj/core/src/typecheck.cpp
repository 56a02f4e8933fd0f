// Bidirectional typechecking for the guarded dependent type theory.
#include <functional>

#include "gdtt/print.hpp"
#include "gdtt/typecheck.hpp"

#include "kernel_scopes.hpp"

namespace gdtt {

namespace {

bool isclock(const ClockSet& s, const Clock& k) {
  return k.is_const || s.count(k.var) > 0;
}

// Replace every subterm alpha-equal to `from` by `to` (used for motive
// recovery when checking a motive-less if against a type mentioning the
// scrutinee).
ExprPtr replace_subterm(const ExprPtr& e, const ExprPtr& from, const ExprPtr& to) {
  if (alpha_eq(e, from)) return to;
  Expr out = *e;
  bool changed = false;
  for (auto& d : out.dsubst) {
    ExprPtr t = replace_subterm(d.term, from, to);
    if (t.get() != d.term.get()) changed = true;
    d.term = t;
  }
  for (auto& k : out.kids) {
    ExprPtr t = replace_subterm(k, from, to);
    if (t.get() != k.get()) changed = true;
    k = t;
  }
  if (!changed) return e;
  return std::make_shared<const Expr>(std::move(out));
}

}  // namespace

void Kernel::check_clock(const ClockSet& D, const Clock& k) const {
  if (!k.is_const && !D.count(k.var)) {
    throw TypeError(ErrKind::UnboundClock, "Clock",
                    "clock variable " + k.var + " not in scope");
  }
}

Kernel::DsResult Kernel::check_dsubst(const ClockSet& D, const Clock& k,
                                      const DSubst& xi, const Telescope& G) {
  check_clock(D, k);
  {
    std::set<std::string> seen;
    for (auto& ent : xi) {
      if (!seen.insert(ent.var).second) {
        throw TypeError(ErrKind::DSubstMismatch, "DS-Cons",
                        "duplicate delayed-substitution variable " + ent.var);
      }
    }
  }
  DsResult res;
  std::set<std::string> used;
  for (auto& ent : xi) used.insert(ent.var);
  for (auto& [x, ty] : G) used.insert(x);

  std::function<void(const std::string&, const ExprPtr&, int)> add_entry =
      [&](const std::string& var, const ExprPtr& term, int depth) {
        if (depth > 16) {
          throw TypeError(ErrKind::DSubstMismatch, "DS-Cons",
                          "delayed substitution alignment diverged");
        }
        ExprPtr T = infer(D, G, term);
        Fuel fuel = fresh_fuel();
        ExprPtr w = whnf(D, G, T, fuel, true);
        if (w->kind != Kind::TyLater || !(w->clock == k)) {
          throw TypeError(ErrKind::NotLaterTyped, "DS-Cons",
                          "entry " + var + " <- " + print(term),
                          "Later[" + print_clock(k) + "] _", print(w));
        }
        std::map<std::string, std::string> ren;
        for (auto& inner : w->dsubst) {
          ExprPtr it = rename_vars(inner.term, ren);
          bool matched = false;
          for (size_t j = 0; j < res.entries.size() && !matched; ++j) {
            Fuel f2 = fresh_fuel();
            if (conv(D, G, res.entries[j].term, it, f2)) {
              ren[inner.var] = res.entries[j].var;
              matched = true;
            }
          }
          if (!matched) {
            std::string v2 = freshen(inner.var, used);
            used.insert(v2);
            add_entry(v2, it, depth + 1);
            ren[inner.var] = v2;
          }
        }
        res.entries.push_back(DEntry{var, term});
        res.types.emplace_back(var, rename_vars(w->kids[0], ren));
      };

  for (auto& ent : xi) add_entry(ent.var, ent.term, 0);
  return res;
}

void Kernel::check_type_wf(const ClockSet& D, const Telescope& G,
                           const ExprPtr& a) {
  switch (a->kind) {
    case Kind::TyUnit:
    case Kind::TyBool:
    case Kind::TyNat:
      return;
    case Kind::TyPi:
    case Kind::TySigma: {
      check_type_wf(D, G, a->kids[0]);
      Telescope G2 = G;
      G2.emplace_back(a->name, a->kids[0]);
      check_type_wf(D, G2, a->kids[1]);
      return;
    }
    case Kind::TyId: {
      check_type_wf(D, G, a->kids[0]);
      check(D, G, a->kids[1], a->kids[0]);
      check(D, G, a->kids[2], a->kids[0]);
      return;
    }
    case Kind::TyUniverse: {
      for (auto& k : a->clocks) {
        if (!D.count(k)) {
          throw TypeError(ErrKind::UniverseEscape, "Univ",
                          "universe clock " + k + " not in the clock context");
        }
      }
      return;
    }
    case Kind::TyEl: {
      ExprPtr T = infer(D, G, a->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TyUniverse) {
        throw TypeError(ErrKind::ConversionFailed, "El", "", "U{..}", print(w));
      }
      return;
    }
    case Kind::TyLater: {
      DsResult ds = check_dsubst(D, a->clock, a->dsubst, G);
      Telescope G2 = G;
      for (auto& e : ds.types) G2.push_back(e);
      check_type_wf(D, G2, a->kids[0]);
      return;
    }
    case Kind::TyForall: {
      if (D.count(a->name)) {
        throw TypeError(ErrKind::ClockNotFresh, "Tf-forall",
                        "clock " + a->name + " is already in scope");
      }
      ClockSet D2 = D;
      D2.insert(a->name);
      check_type_wf(D2, G, a->kids[0]);
      return;
    }
    default:
      throw TypeError(ErrKind::ConversionFailed, "Tf", "expected a type",
                      "", print(a));
  }
}

ExprPtr Kernel::infer(const ClockSet& D, const Telescope& G, const ExprPtr& t) {
  return infer_core(D, G, t);
}

ExprPtr Kernel::infer_core(const ClockSet& D, const Telescope& G,
                           const ExprPtr& t) {
  switch (t->kind) {
    case Kind::Var: {
      ExprPtr ty = telescope_lookup(G, t->name);
      if (!ty) {
        throw TypeError(ErrKind::UnboundVariable, "Var",
                        "variable " + t->name + " not in scope");
      }
      return ty;
    }
    case Kind::Const: {
      const Def* d = defs ? defs->find(t->name) : nullptr;
      if (!d) {
        throw TypeError(ErrKind::UnboundVariable, "Const",
                        "unknown definition " + t->name);
      }
      if (d->clock_params.size() != t->clock_args.size()) {
        throw TypeError(ErrKind::UnboundClock, "Const",
                        "definition " + t->name + " expects " +
                            std::to_string(d->clock_params.size()) +
                            " clock argument(s)");
      }
      for (auto& c : t->clock_args) check_clock(D, c);
      return instantiate_clocks(d->type, d->clock_params, t->clock_args);
    }
    case Kind::Lam: {
      ExprPtr ann = ann_of(t);
      if (!ann) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-Lam",
                        "cannot infer an unannotated lambda");
      }
      check_type_wf(D, G, ann);
      Telescope G2 = G;
      G2.emplace_back(t->name, ann);
      ExprPtr B = infer(D, G2, body_of(t));
      return mk::pi(t->name, ann, B);
    }
    case Kind::App: {
      ExprPtr F = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, F, fuel, true);
      if (w->kind != Kind::TyPi) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-app",
                        "applied term is not a function", "Pi (_ : _). _",
                        print(w));
      }
      check(D, G, t->kids[1], w->kids[0]);
      return subst1(w->kids[1], w->name, t->kids[1]);
    }
    case Kind::Pair:
      throw TypeError(ErrKind::ConversionFailed, "Ty-pair",
                      "cannot infer the type of a bare pair");
    case Kind::Fst: {
      ExprPtr T = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TySigma) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-fst", "",
                        "Sg (_ : _). _", print(w));
      }
      return w->kids[0];
    }
    case Kind::Snd: {
      ExprPtr T = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TySigma) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-snd", "",
                        "Sg (_ : _). _", print(w));
      }
      return subst1(w->kids[1], w->name, mk::fst(t->kids[0]));
    }
    case Kind::TT:
      return mk::ty_unit();
    case Kind::True:
    case Kind::False:
      return mk::ty_bool();
    case Kind::If: {
      check(D, G, if_cond(t), mk::ty_bool());
      if (t->has_motive) {
        Telescope G2 = G;
        G2.emplace_back(t->name, mk::ty_bool());
        check_type_wf(D, G2, t->kids[0]);
        check(D, G, if_then(t), subst1(t->kids[0], t->name, mk::tru()));
        check(D, G, if_else(t), subst1(t->kids[0], t->name, mk::fls()));
        return subst1(t->kids[0], t->name, if_cond(t));
      }
      ExprPtr A = infer(D, G, if_then(t));
      ExprPtr B = infer(D, G, if_else(t));
      Fuel fuel = fresh_fuel();
      ExprPtr Aw = whnf(D, G, A, fuel);
      ExprPtr Bw = whnf(D, G, B, fuel);
      // Codes from different universes join by cumulativity.
      if (Aw->kind == Kind::TyUniverse && Bw->kind == Kind::TyUniverse) {
        ClockSet joined = Aw->clocks;
        joined.insert(Bw->clocks.begin(), Bw->clocks.end());
        return mk::universe(std::move(joined));
      }
      if (!conv(D, G, A, B, fuel)) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-if",
                        "branch types disagree", print(A), print(B));
      }
      return A;
    }
    case Kind::Zero:
      return mk::ty_nat();
    case Kind::Succ:
      check(D, G, t->kids[0], mk::ty_nat());
      return mk::ty_nat();
    case Kind::NatElim: {
      Telescope Gm = G;
      Gm.emplace_back(t->name, mk::ty_nat());
      check_type_wf(D, Gm, t->kids[0]);
      check(D, G, t->kids[1], subst1(t->kids[0], t->name, mk::zero()));
      Telescope Gs = G;
      Gs.emplace_back(t->names[0], mk::ty_nat());
      Gs.emplace_back(t->names[1],
                      subst1(t->kids[0], t->name, mk::var(t->names[0])));
      check(D, Gs, t->kids[2],
            subst1(t->kids[0], t->name, mk::succ(mk::var(t->names[0]))));
      check(D, G, t->kids[3], mk::ty_nat());
      return subst1(t->kids[0], t->name, t->kids[3]);
    }
    case Kind::Refl: {
      if (t->kids.empty()) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-refl",
                        "cannot infer the type of refl");
      }
      ExprPtr A = infer(D, G, t->kids[0]);
      return mk::id(A, t->kids[0], t->kids[0]);
    }
    case Kind::J: {
      ExprPtr Tq = infer(D, G, t->kids[2]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, Tq, fuel, true);
      if (w->kind != Kind::TyId) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-J", "", "Id _ _ _",
                        print(w));
      }
      const ExprPtr& A = w->kids[0];
      Telescope Gm = G;
      Gm.emplace_back(t->names[0], A);
      Gm.emplace_back(t->names[1], A);
      Gm.emplace_back(t->names[2],
                      mk::id(A, mk::var(t->names[0]), mk::var(t->names[1])));
      check_type_wf(D, Gm, t->kids[0]);
      Telescope Gd = G;
      Gd.emplace_back(t->names[3], A);
      Substitution sd;
      sd[t->names[0]] = mk::var(t->names[3]);
      sd[t->names[1]] = mk::var(t->names[3]);
      sd[t->names[2]] = mk::refl();
      check(D, Gd, t->kids[1], subst(t->kids[0], sd));
      Substitution sr;
      sr[t->names[0]] = w->kids[1];
      sr[t->names[1]] = w->kids[2];
      sr[t->names[2]] = t->kids[2];
      return subst(t->kids[0], sr);
    }
    case Kind::CodeUnit:
    case Kind::CodeBool:
    case Kind::CodeNat:
      return mk::universe({});
    case Kind::CodePi:
    case Kind::CodeSigma: {
      ExprPtr Sa = infer(D, G, t->kids[0]);
      Fuel f1 = fresh_fuel();
      ExprPtr wa = whnf(D, G, Sa, f1, true);
      if (wa->kind != Kind::TyUniverse) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-code", "", "U{..}",
                        print(wa));
      }
      Telescope G2 = G;
      G2.emplace_back(t->name, mk::el(t->kids[0]));
      ExprPtr Sb = infer(D, G2, t->kids[1]);
      Fuel f2 = fresh_fuel();
      ExprPtr wb = whnf(D, G2, Sb, f2, true);
      if (wb->kind != Kind::TyUniverse) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-code", "", "U{..}",
                        print(wb));
      }
      ClockSet u = wa->clocks;
      u.insert(wb->clocks.begin(), wb->clocks.end());
      return mk::universe(std::move(u));
    }
    case Kind::CodeLater: {
      check_clock(D, t->clock);
      ExprPtr T = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TyLater || !(w->clock == t->clock) ||
          !w->dsubst.empty()) {
        throw TypeError(ErrKind::NotLaterTyped, "Ty-LaterCode", "",
                        "Later[" + print_clock(t->clock) + "] U{..}", print(w));
      }
      Fuel f2 = fresh_fuel();
      ExprPtr wu = whnf(D, G, w->kids[0], f2, true);
      if (wu->kind != Kind::TyUniverse) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-LaterCode", "", "U{..}",
                        print(wu));
      }
      if (!isclock(wu->clocks, t->clock)) {
        throw TypeError(ErrKind::UniverseEscape, "Ty-LaterCode",
                        "clock " + print_clock(t->clock) +
                            " must belong to the code's universe");
      }
      return mk::universe(wu->clocks);
    }
    case Kind::CodeForall: {
      ExprPtr T = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TyForall) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-forall-code", "",
                        "forall _. U{..}", print(w));
      }
      ClockSet D2 = D;
      D2.insert(w->name);
      Fuel f2 = fresh_fuel();
      ExprPtr wu = whnf(D2, G, w->kids[0], f2, true);
      if (wu->kind != Kind::TyUniverse) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-forall-code", "",
                        "forall _. U{..}", print(wu));
      }
      ClockSet s = wu->clocks;
      s.erase(w->name);
      return mk::universe(std::move(s));
    }
    case Kind::Next: {
      DsResult ds = check_dsubst(D, t->clock, t->dsubst, G);
      Telescope G2 = G;
      for (auto& e : ds.types) G2.push_back(e);
      ExprPtr A = infer(D, G2, t->kids[0]);
      return mk::later(t->clock, ds.entries, A);
    }
    case Kind::Fix: {
      check_clock(D, t->clock);
      ExprPtr ann = ann_of(t);
      if (!ann) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-fix",
                        "cannot infer an unannotated fix");
      }
      check_type_wf(D, G, ann);
      Telescope G2 = G;
      G2.emplace_back(t->name, mk::later(t->clock, {}, ann));
      check(D, G2, body_of(t), ann);
      return ann;
    }
    case Kind::Prev: {
      for (auto& [x, ty] : G) {
        if (ty && clock_is_free(ty, t->name)) {
          throw TypeError(ErrKind::ClockNotFresh, "Ty-prev",
                          "context variable " + x + " mentions clock " +
                              t->name);
        }
      }
      if (D.count(t->name)) {
        throw TypeError(ErrKind::ClockNotFresh, "Ty-prev",
                        "clock " + t->name + " is already in scope");
      }
      ClockSet D2 = D;
      D2.insert(t->name);
      ExprPtr T = infer(D2, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D2, G, T, fuel, true);
      if (w->kind != Kind::TyLater || w->clock.is_const ||
          w->clock.var != t->name) {
        throw TypeError(ErrKind::NotLaterTyped, "Ty-prev", "",
                        "Later[" + t->name + "] _", print(w));
      }
      return mk::forall(t->name,
                        subst(w->kids[0], advance(t->name, w->dsubst)));
    }
    case Kind::ClockAbs: {
      if (D.count(t->name)) {
        throw TypeError(ErrKind::ClockNotFresh, "Ty-Lambda",
                        "clock " + t->name + " is already in scope");
      }
      ClockSet D2 = D;
      D2.insert(t->name);
      ExprPtr A = infer(D2, G, t->kids[0]);
      return mk::forall(t->name, A);
    }
    case Kind::ClockApp: {
      check_clock(D, t->clock);
      ExprPtr T = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, T, fuel, true);
      if (w->kind != Kind::TyForall) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-app-clock", "",
                        "forall _. _", print(w));
      }
      return clock_subst(w->kids[0], Clock::variable(w->name), t->clock);
    }
    case Kind::Reflect: {
      ExprPtr P = infer(D, G, t->kids[0]);
      Fuel fuel = fresh_fuel();
      ExprPtr w = whnf(D, G, P, fuel, true);
      if (w->kind != Kind::TyId) {
        throw TypeError(ErrKind::ReflectionRefused, "Reflect",
                        "proof is not an identity", "Id _ _ _", print(w));
      }
      RewriteScope rs(*this, w->kids[1], w->kids[2]);
      return infer(D, G, t->kids[1]);
    }
    default:
      throw TypeError(ErrKind::ConversionFailed, "Ty",
                      "cannot infer: " + print(t));
  }
}

void Kernel::check(const ClockSet& D, const Telescope& G, const ExprPtr& t,
                   const ExprPtr& a) {
  check_core(D, G, t, a);
}

void Kernel::check_core(const ClockSet& D, const Telescope& G, const ExprPtr& t,
                        const ExprPtr& a) {
  Fuel fuel = fresh_fuel();
  switch (t->kind) {
    case Kind::Lam: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyPi) break;
      if (ExprPtr ann = ann_of(t)) {
        check_type_wf(D, G, ann);
        Fuel f2 = fresh_fuel();
        if (!conv(D, G, ann, w->kids[0], f2)) {
          throw TypeError(ErrKind::ConversionFailed, "Ty-Lam",
                          "annotation mismatch", print(w->kids[0]), print(ann));
        }
      }
      std::set<std::string> avoid = free_vars(w->kids[1]).terms;
      for (auto& f : free_vars(body_of(t)).terms) avoid.insert(f);
      std::string x = freshen(t->name, avoid);
      ExprPtr body =
          x == t->name ? body_of(t) : subst1(body_of(t), t->name, mk::var(x));
      ExprPtr cod =
          x == w->name ? w->kids[1] : subst1(w->kids[1], w->name, mk::var(x));
      Telescope G2 = G;
      G2.emplace_back(x, w->kids[0]);
      check(D, G2, body, cod);
      return;
    }
    case Kind::Pair: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TySigma) break;
      check(D, G, t->kids[0], w->kids[0]);
      check(D, G, t->kids[1], subst1(w->kids[1], w->name, t->kids[0]));
      return;
    }
    case Kind::Refl: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyId) break;
      Fuel f2 = fresh_fuel();
      if (!conv(D, G, w->kids[1], w->kids[2], f2)) {
        throw TypeError(ErrKind::ConversionFailed, "Ty-refl",
                        "sides of the identity are not equal",
                        print(w->kids[1]), print(w->kids[2]));
      }
      if (!t->kids.empty()) {
        Fuel f3 = fresh_fuel();
        if (!conv(D, G, t->kids[0], w->kids[1], f3)) {
          throw TypeError(ErrKind::ConversionFailed, "Ty-refl",
                          "refl payload mismatch", print(w->kids[1]),
                          print(t->kids[0]));
        }
      }
      return;
    }
    case Kind::Fix: {
      check_clock(D, t->clock);
      ExprPtr target = a;
      if (ExprPtr ann = ann_of(t)) {
        check_type_wf(D, G, ann);
        Fuel f2 = fresh_fuel();
        if (!conv(D, G, ann, a, f2)) {
          throw TypeError(ErrKind::ConversionFailed, "Ty-fix",
                          "annotation mismatch", print(a), print(ann));
        }
        target = ann;
      }
      Telescope G2 = G;
      G2.emplace_back(t->name, mk::later(t->clock, {}, target));
      check(D, G2, body_of(t), target);
      return;
    }
    case Kind::ClockAbs: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyForall) break;
      if (D.count(t->name)) {
        throw TypeError(ErrKind::ClockNotFresh, "Ty-Lambda",
                        "clock " + t->name + " is already in scope");
      }
      ClockSet D2 = D;
      D2.insert(t->name);
      ExprPtr body_ty =
          t->name == w->name
              ? w->kids[0]
              : clock_subst(w->kids[0], Clock::variable(w->name),
                            Clock::variable(t->name));
      check(D2, G, t->kids[0], body_ty);
      return;
    }
    case Kind::Next: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyLater) break;
      if (!(w->clock == t->clock)) break;  // synthesize and compare
      if (w->dsubst.size() == t->dsubst.size()) {
        // Positional path: reuse the expected entry types.
        DsResult ds;
        bool positional = true;
        try {
          ds = check_dsubst(D, w->clock, w->dsubst, G);
        } catch (const TypeError&) {
          positional = false;
        }
        if (positional && ds.entries.size() == w->dsubst.size()) {
          std::map<std::string, std::string> ren;
          for (size_t i = 0; i < w->dsubst.size() && positional; ++i) {
            Fuel f2 = fresh_fuel();
            if (conv(D, G, t->dsubst[i].term, w->dsubst[i].term, f2)) {
              ren[w->dsubst[i].var] = t->dsubst[i].var;
            } else {
              positional = false;
            }
          }
          if (positional) {
            Telescope G2 = G;
            for (size_t i = 0; i < t->dsubst.size(); ++i) {
              G2.emplace_back(t->dsubst[i].var,
                              rename_vars(ds.types[i].second, ren));
            }
            check(D, G2, t->kids[0], rename_vars(w->kids[0], ren));
            return;
          }
        }
      }
      break;  // fall back to synthesis + conversion
    }
    case Kind::If: {
      if (t->has_motive) break;  // synthesis handles the motive form
      check(D, G, if_cond(t), mk::ty_bool());
      ExprPtr cond = if_cond(t);
      check(D, G, if_then(t), replace_subterm(a, cond, mk::tru()));
      check(D, G, if_else(t), replace_subterm(a, cond, mk::fls()));
      return;
    }
    case Kind::Reflect: {
      ExprPtr P = infer(D, G, t->kids[0]);
      Fuel f2 = fresh_fuel();
      ExprPtr w = whnf(D, G, P, f2, true);
      if (w->kind != Kind::TyId) {
        throw TypeError(ErrKind::ReflectionRefused, "Reflect",
                        "proof is not an identity", "Id _ _ _", print(w));
      }
      RewriteScope rs(*this, w->kids[1], w->kids[2]);
      check(D, G, t->kids[1], a);
      return;
    }
    case Kind::CodePi:
    case Kind::CodeSigma: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyUniverse) break;
      check(D, G, t->kids[0], w);
      Telescope G2 = G;
      G2.emplace_back(t->name, mk::el(t->kids[0]));
      check(D, G2, t->kids[1], w);
      return;
    }
    case Kind::CodeLater: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyUniverse) break;
      check_clock(D, t->clock);
      if (!isclock(w->clocks, t->clock)) {
        throw TypeError(ErrKind::UniverseEscape, "Ty-LaterCode",
                        "clock " + print_clock(t->clock) +
                            " must belong to the code's universe");
      }
      check(D, G, t->kids[0], mk::later(t->clock, {}, w));
      return;
    }
    case Kind::CodeForall: {
      ExprPtr w = whnf(D, G, a, fuel, true);
      if (w->kind != Kind::TyUniverse) break;
      std::string kf = t->kids[0]->kind == Kind::ClockAbs ? t->kids[0]->name : "k";
      std::set<std::string> avoid = D;
      avoid.insert(w->clocks.begin(), w->clocks.end());
      kf = freshen(kf, avoid);
      ClockSet s = w->clocks;
      s.insert(kf);
      check(D, G, t->kids[0], mk::forall(kf, mk::universe(std::move(s))));
      return;
    }
    default:
      break;
  }
  // Default: synthesize and compare, with universe subsumption.
  ExprPtr B = infer(D, G, t);
  Fuel f2 = fresh_fuel();
  ExprPtr wb = whnf(D, G, B, f2, true);
  Fuel f3 = fresh_fuel();
  ExprPtr wa = whnf(D, G, a, f3, true);
  if (wa->kind == Kind::TyUniverse && wb->kind == Kind::TyUniverse) {
    bool subset = true;
    for (auto& k : wb->clocks) subset = subset && wa->clocks.count(k) > 0;
    if (subset) return;
    throw TypeError(ErrKind::UniverseEscape, "Univ", "universe not included",
                    print(wa), print(wb));
  }
  Fuel f4 = fresh_fuel();
  if (!conv(D, G, B, a, f4)) {
    throw TypeError(ErrKind::ConversionFailed, "Conv", "", print(a), print(B));
  }
}

}  // namespace gdtt
