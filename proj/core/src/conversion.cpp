// Definitional equality: weak head normalization, delayed-substitution
// normalization, and the conversion check.
#include <algorithm>

#include "gdtt/conversion.hpp"
#include "gdtt/print.hpp"
#include "kernel_scopes.hpp"
#include "gdtt/typecheck.hpp"

namespace gdtt {

ExprPtr telescope_lookup(const Telescope& g, const std::string& x) {
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    if (it->first == x) return it->second;
  }
  return nullptr;
}

namespace {

ExprPtr rebuild(const Expr& proto, std::vector<ExprPtr> kids) {
  Expr out = proto;
  out.kids = std::move(kids);
  return std::make_shared<const Expr>(std::move(out));
}

std::set<std::string> entry_vars(const DSubst& xi) {
  std::set<std::string> s;
  for (auto& e : xi) s.insert(e.var);
  return s;
}

}  // namespace

void Kernel::emit(const char* rule) {
  if (!trace) return;
  std::string p;
  for (auto& seg : path_) {
    if (!p.empty()) p += ".";
    p += seg;
  }
  if (p.empty()) p = "<top>";
  trace(rule, p);
}

std::string Kernel::fresh_clock_name() {
  return "k#" + std::to_string(++fresh_counter_);
}

std::string Kernel::print_hint(const ExprPtr& e) const { return print(e); }

// ---------------------------------------------------------------------------
// Rewrites installed by `reflect` (matched up to the fresh-clock quotient).
// ---------------------------------------------------------------------------
ExprPtr Kernel::try_rewrites(const ClockSet& D, const Telescope& G,
                             const ExprPtr& e, Fuel& fuel, bool& progressed) {
  if (rewrites_.empty()) return e;
  for (auto& [lhs, rhs] : rewrites_) {
    if (alpha_eq(e, lhs) || try_fresh_quotient(D, G, e, lhs, fuel)) {
      fuel.spend();
      emit("Reflect");
      progressed = true;
      return rhs;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Weak head normalization
// ---------------------------------------------------------------------------
ExprPtr Kernel::instantiate_const(const ExprPtr& t) const {
  const Def* d = defs ? defs->find(t->name) : nullptr;
  if (!d || !d->term) return nullptr;
  return instantiate_clocks(d->term, d->clock_params, t->clock_args);
}

ExprPtr Kernel::whnf(const ClockSet& D, const Telescope& G, ExprPtr e, Fuel& fuel,
                     bool unfold_head) {
  for (;;) {
    switch (e->kind) {
      case Kind::Var: {
        bool prog = false;
        ExprPtr r = try_rewrites(D, G, e, fuel, prog);
        if (prog) { e = r; continue; }
        return e;
      }
      case Kind::Const: {
        if (!unfold_head) return e;
        ExprPtr body = instantiate_const(e);
        if (!body) return e;  // no definition: stuck
        e = body;
        continue;
      }
      case Kind::Fix: {
        if (!unfold_head) return e;
        fuel.spend();
        emit("TmEq-Fix");
        e = subst1(body_of(e), e->name, mk::next(e->clock, {}, e));
        continue;
      }
      case Kind::App: {
        ExprPtr f = whnf(D, G, e->kids[0], fuel, true);
        if (f->kind == Kind::Lam) {
          e = subst1(body_of(f), f->name, e->kids[1]);
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {f, e->kids[1]});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::Fst:
      case Kind::Snd: {
        ExprPtr t = whnf(D, G, e->kids[0], fuel, true);
        if (t->kind == Kind::Pair) {
          e = t->kids[e->kind == Kind::Fst ? 0 : 1];
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {t});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::If: {
        ExprPtr c = whnf(D, G, if_cond(e), fuel, true);
        if (c->kind == Kind::True) { e = if_then(e); continue; }
        if (c->kind == Kind::False) { e = if_else(e); continue; }
        std::vector<ExprPtr> kids = e->kids;
        kids[e->has_motive ? 1 : 0] = c;
        bool prog = false;
        ExprPtr stuck = rebuild(*e, std::move(kids));
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::NatElim: {
        ExprPtr n = whnf(D, G, e->kids[3], fuel, true);
        if (n->kind == Kind::Zero) { e = e->kids[1]; continue; }
        if (n->kind == Kind::Succ) {
          Substitution s;
          s[e->names[0]] = n->kids[0];
          s[e->names[1]] =
              rebuild(*e, {e->kids[0], e->kids[1], e->kids[2], n->kids[0]});
          e = subst(e->kids[2], s);
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {e->kids[0], e->kids[1], e->kids[2], n});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::J: {
        ExprPtr q = whnf(D, G, e->kids[2], fuel, true);
        if (q->kind == Kind::Refl && !q->kids.empty()) {
          e = subst1(e->kids[1], e->names[3], q->kids[0]);
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {e->kids[0], e->kids[1], q});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::ClockApp: {
        ExprPtr f = whnf(D, G, e->kids[0], fuel, true);
        if (f->kind == Kind::ClockAbs) {
          emit("TmEq-forall-beta");
          e = clock_subst(f->kids[0], Clock::variable(f->name), e->clock);
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {f});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::Prev: {
        ClockSet D2 = D;
        D2.insert(e->name);
        ExprPtr t = whnf(D2, G, e->kids[0], fuel, true);
        if (t->kind == Kind::Next && !t->clock.is_const &&
            t->clock.var == e->name) {
          emit("TmEq-prev-beta");
          e = mk::clock_abs(e->name, subst(t->kids[0], advance(e->name, t->dsubst)));
          continue;
        }
        bool prog = false;
        ExprPtr stuck = rebuild(*e, {t});
        stuck = try_rewrites(D, G, stuck, fuel, prog);
        if (prog) { e = stuck; continue; }
        return stuck;
      }
      case Kind::Reflect:
        e = e->kids[1];
        continue;
      case Kind::ClockAbs: {
        // eta-contract clam k. (t @ k) when k is not free in t.
        const ExprPtr& b = e->kids[0];
        if (b->kind == Kind::ClockApp && !b->clock.is_const &&
            b->clock.var == e->name && !clock_is_free(b->kids[0], e->name)) {
          emit("TmEq-forall-eta");
          e = b->kids[0];
          continue;
        }
        return e;
      }
      case Kind::Next: {
        // TmEq-prev-eta: next[k] ((prev k'. t) @ k)  ==  t[k/k'].
        ExprPtr b = e->kids[0];
        if (e->dsubst.empty() && !e->clock.is_const) {
          b = whnf(D, G, b, fuel, true);
        }
        if (e->dsubst.empty() && b->kind == Kind::ClockApp &&
            b->clock == e->clock && b->kids[0]->kind == Kind::Prev &&
            !e->clock.is_const) {
          emit("TmEq-prev-eta");
          e = clock_subst(b->kids[0]->kids[0],
                          Clock::variable(b->kids[0]->name), e->clock);
          continue;
        }
        auto [xi, body] = normalize_dsubst(D, G, e->clock, e->dsubst, b, fuel);
        if (body->kind == Kind::Var && xi.size() == 1 && xi[0].var == body->name) {
          emit("TmEq-Next-Var");
          e = xi[0].term;
          continue;
        }
        if (xi.size() == e->dsubst.size() && alpha_eq(body, b)) {
          bool same = true;
          for (size_t i = 0; i < xi.size(); ++i) {
            same = same && xi[i].var == e->dsubst[i].var &&
                   xi[i].term.get() == e->dsubst[i].term.get();
          }
          if (same) return e;
        }
        Expr out = *e;
        out.dsubst = std::move(xi);
        out.kids = {body};
        e = std::make_shared<const Expr>(std::move(out));
        return e;
      }
      // ----- types -----
      case Kind::TyEl: {
        bool progressed = false;
        ExprPtr r = whnf_step_el(D, G, e, fuel, progressed);
        if (progressed) { e = r; continue; }
        return r;
      }
      case Kind::TyLater: {
        auto [xi, body] =
            normalize_dsubst(D, G, e->clock, e->dsubst, e->kids[0], fuel);
        // Canonical orientation: push the later modality into identity types,
        // i.e. Later[xi] (Id A l r) reads as Id (Later[xi] A) (next l) (next r).
        ExprPtr bw = whnf(D, G, body, fuel, true);
        if (bw->kind == Kind::TyId) {
          emit("TyEq-Later");
          e = mk::id(mk::later(e->clock, xi, bw->kids[0]),
                     mk::next(e->clock, xi, bw->kids[1]),
                     mk::next(e->clock, xi, bw->kids[2]));
          continue;
        }
        Expr out = *e;
        out.dsubst = std::move(xi);
        out.kids = {body};
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::TyId: {
        ExprPtr a = whnf(D, G, e->kids[0], fuel, true);
        if (a->kind == Kind::TyForall) {
          emit("TyEq-forall-Id");
          std::string kv = a->name;
          FreeVars f1 = free_vars(e->kids[1]), f2 = free_vars(e->kids[2]);
          std::set<std::string> avoid = f1.clocks;
          avoid.insert(f2.clocks.begin(), f2.clocks.end());
          avoid.insert(D.begin(), D.end());
          std::string kf = freshen(kv, avoid);
          ExprPtr body = a->kids[0];
          if (kf != kv) {
            body = clock_subst(body, Clock::variable(kv), Clock::variable(kf));
          }
          Clock ck = Clock::variable(kf);
          e = mk::forall(kf, mk::id(body, mk::clock_app(e->kids[1], ck),
                                    mk::clock_app(e->kids[2], ck)));
          continue;
        }
        return rebuild(*e, {a, e->kids[1], e->kids[2]});
      }
      default:
        return e;
    }
  }
}

// One pass of El-code computation; `progressed` reports whether a rule fired.
ExprPtr Kernel::whnf_step_el(const ClockSet& D, const Telescope& G,
                             const ExprPtr& e, Fuel& fuel, bool& progressed) {
  ExprPtr c = whnf(D, G, e->kids[0], fuel, true);
  progressed = true;
  switch (c->kind) {
    case Kind::CodeUnit: return mk::ty_unit();
    case Kind::CodeBool: return mk::ty_bool();
    case Kind::CodeNat: return mk::ty_nat();
    case Kind::CodePi:
      return mk::pi(c->name, mk::el(c->kids[0]), mk::el(c->kids[1]));
    case Kind::CodeSigma:
      return mk::sigma(c->name, mk::el(c->kids[0]), mk::el(c->kids[1]));
    case Kind::CodeLater: {
      ExprPtr t = whnf(D, G, c->kids[0], fuel, true);
      if (t->kind == Kind::Next && t->clock == c->clock) {
        emit("TyEq-El-Later");
        return mk::later(c->clock, t->dsubst, mk::el(t->kids[0]));
      }
      progressed = false;
      return mk::el(mk::code_later(c->clock, t));
    }
    case Kind::CodeForall: {
      ExprPtr t = whnf(D, G, c->kids[0], fuel, true);
      if (t->kind == Kind::ClockAbs) {
        emit("TyEq-forall-el");
        return mk::forall(t->name, mk::el(t->kids[0]));
      }
      progressed = false;
      return mk::el(mk::code_forall(t));
    }
    default:
      progressed = false;
      return mk::el(c);
  }
}

// ---------------------------------------------------------------------------
// Delayed-substitution normalization: generalized Force + Weak.
// ---------------------------------------------------------------------------
std::pair<DSubst, ExprPtr> Kernel::normalize_dsubst(const ClockSet& D,
                                                    const Telescope& G,
                                                    const Clock& k, DSubst xi,
                                                    ExprPtr body, Fuel& fuel) {
  int budget = static_cast<int>(xi.size()) * 6 + 12;
  bool changed = true;
  while (changed && budget-- > 0) {
    changed = false;
    // Weak: drop entries whose variable is not free in the body.
    {
      FreeVars f = free_vars(body);
      DSubst kept;
      for (auto& ent : xi) {
        if (f.terms.count(ent.var)) {
          kept.push_back(ent);
        } else {
          emit("TmEq-Next-Weak");
          changed = true;
        }
      }
      xi = std::move(kept);
    }
    // Force (flattening): an entry x <- next[k; xi0] s is eliminated; each
    // xi0 entry is matched against a preceding entry up to conversion or
    // hoisted in front of x.
    for (size_t i = 0; i < xi.size(); ++i) {
      ExprPtr w = whnf(D, G, xi[i].term, fuel, true);
      if (w->kind != Kind::Next || !(w->clock == k)) continue;
      std::map<std::string, std::string> ren;
      DSubst hoisted;
      std::set<std::string> used = entry_vars(xi);
      for (auto& fv : free_vars(body).terms) used.insert(fv);
      for (auto& inner : w->dsubst) {
        // Renaming of previously handled inner entries applies to this term.
        ExprPtr it = rename_vars(inner.term, ren);
        bool matched = false;
        for (size_t j = 0; j < i && !matched; ++j) {
          if (conv(D, G, xi[j].term, it, fuel)) {
            ren[inner.var] = xi[j].var;
            matched = true;
          }
        }
        if (!matched) {
          for (auto& h : hoisted) {
            if (conv(D, G, h.term, it, fuel)) {
              ren[inner.var] = h.var;
              matched = true;
              break;
            }
          }
        }
        if (!matched) {
          std::string v2 = freshen(inner.var, used);
          used.insert(v2);
          hoisted.push_back(DEntry{v2, it});
          ren[inner.var] = v2;
        }
      }
      emit("TmEq-Force");
      ExprPtr wb = rename_vars(w->kids[0], ren);
      body = subst1(body, xi[i].var, wb);
      DSubst next_xi(xi.begin(), xi.begin() + static_cast<long>(i));
      for (auto& h : hoisted) next_xi.push_back(h);
      for (size_t j = i + 1; j < xi.size(); ++j) next_xi.push_back(xi[j]);
      xi = std::move(next_xi);
      changed = true;
      break;
    }
    // Expose redexes created by forcing (head reductions only, no unfolding)
    // so the variable-collapse and weakening passes can see them.
    if (changed) {
      ExprPtr bw = whnf(D, G, body, fuel, false);
      if (bw.get() != body.get()) body = bw;
    }
  }
  return {std::move(xi), std::move(body)};
}

std::optional<std::map<std::string, std::string>> Kernel::align_dsubst(
    const ClockSet& D, const Telescope& G, const DSubst& super,
    const DSubst& sub, Fuel& fuel, bool bijective) {
  std::vector<bool> used(super.size(), false);
  std::map<std::string, std::string> ren;
  for (auto& ent : sub) {
    bool matched = false;
    for (size_t j = 0; j < super.size() && !matched; ++j) {
      if (used[j]) continue;
      if (conv(D, G, super[j].term, rename_vars(ent.term, ren), fuel)) {
        used[j] = true;
        ren[ent.var] = super[j].var;
        matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (bijective) {
    for (bool u : used) {
      if (!u) return std::nullopt;
    }
  }
  return ren;
}

// ---------------------------------------------------------------------------
// Conversion
// ---------------------------------------------------------------------------
bool Kernel::conv(const ClockSet& D, const Telescope& G, ExprPtr a, ExprPtr b,
                  Fuel& fuel) {
  if (a.get() == b.get()) return true;
  if (alpha_eq(a, b)) return true;
  return conv_whnf(D, G, std::move(a), std::move(b), fuel);
}

bool Kernel::conv_whnf(const ClockSet& D, const Telescope& G, ExprPtr a,
                       ExprPtr b, Fuel& fuel) {
  ExprPtr wa = whnf(D, G, a, fuel, false);
  ExprPtr wb = whnf(D, G, b, fuel, false);
  for (;;) {
    if (alpha_eq(wa, wb)) return true;
    if (conv_structural(D, G, wa, wb, fuel)) return true;
    // Unfold delta/fix heads and retry.
    bool progressed = false;
    if (wa->kind == Kind::Const || wa->kind == Kind::Fix) {
      ExprPtr wa2 = whnf(D, G, wa, fuel, true);
      if (wa2.get() != wa.get()) {
        wa = wa2;
        progressed = true;
      }
    }
    if (wb->kind == Kind::Const || wb->kind == Kind::Fix) {
      ExprPtr wb2 = whnf(D, G, wb, fuel, true);
      if (wb2.get() != wb.get()) {
        wb = wb2;
        progressed = true;
      }
    }
    if (progressed) continue;
    // TmEq-Next-Comm / TyEq-later exchange: swap nested layers on the left
    // and retry once.
    bool comm_terms = wa->kind == Kind::Next &&
                      wa->kids[0]->kind == Kind::Next &&
                      wb->kind == Kind::Next;
    bool comm_types = wa->kind == Kind::TyLater &&
                      wa->kids[0]->kind == Kind::TyLater &&
                      wb->kind == Kind::TyLater;
    if (comm_terms || comm_types) {
      const ExprPtr inner = wa->kids[0];
      // Only safe when the two entry lists bind disjoint variables and do
      // not capture one another.
      std::set<std::string> outer_vars = entry_vars(wa->dsubst);
      bool indep = true;
      for (auto& ent : inner->dsubst) {
        if (outer_vars.count(ent.var)) indep = false;
        for (auto& fv : free_vars(ent.term).terms) {
          if (outer_vars.count(fv)) indep = false;
        }
      }
      std::set<std::string> inner_vars = entry_vars(inner->dsubst);
      for (auto& ent : wa->dsubst) {
        for (auto& fv : free_vars(ent.term).terms) {
          if (inner_vars.count(fv)) indep = false;
        }
      }
      if (indep) {
        emit(comm_terms ? "TmEq-Next-Comm" : "TyEq-Later-Exch");
        ExprPtr swapped =
            comm_terms
                ? mk::next(inner->clock, inner->dsubst,
                           mk::next(wa->clock, wa->dsubst, inner->kids[0]))
                : mk::later(inner->clock, inner->dsubst,
                            mk::later(wa->clock, wa->dsubst, inner->kids[0]));
        ExprPtr ws = whnf(D, G, swapped, fuel, false);
        if (!alpha_eq(ws, wa) && conv_whnf(D, G, ws, wb, fuel)) return true;
      }
    }
    if (try_fresh_quotient(D, G, wa, wb, fuel)) return true;
    return false;
  }
}

bool Kernel::conv_structural(const ClockSet& D, const Telescope& G,
                             const ExprPtr& a, const ExprPtr& b, Fuel& fuel) {
  // Eta rules across different head kinds.
  auto eta_lam = [&](const ExprPtr& l, const ExprPtr& n) {
    std::set<std::string> avoid = free_vars(n).terms;
    for (auto& fv : free_vars(body_of(l)).terms) avoid.insert(fv);
    std::string x = freshen(l->name, avoid);
    Telescope G2 = G;
    G2.emplace_back(x, ann_of(l));
    ExprPtr lb = x == l->name ? body_of(l)
                              : subst1(body_of(l), l->name, mk::var(x));
    return conv(D, G2, lb, mk::app(n, mk::var(x)), fuel);
  };
  auto eta_pair = [&](const ExprPtr& p, const ExprPtr& n) {
    return conv(D, G, p->kids[0], mk::fst(n), fuel) &&
           conv(D, G, p->kids[1], mk::snd(n), fuel);
  };
  auto eta_clock = [&](const ExprPtr& l, const ExprPtr& n) {
    std::set<std::string> avoid = free_vars(n).clocks;
    for (auto& fv : free_vars(l->kids[0]).clocks) avoid.insert(fv);
    avoid.insert(D.begin(), D.end());
    std::string kf = freshen(l->name, avoid);
    ExprPtr lb = kf == l->name
                     ? l->kids[0]
                     : clock_subst(l->kids[0], Clock::variable(l->name),
                                   Clock::variable(kf));
    ClockSet D2 = D;
    D2.insert(kf);
    return conv(D2, G, lb, mk::clock_app(n, Clock::variable(kf)), fuel);
  };

  if (a->kind != b->kind) {
    if (a->kind == Kind::Lam) return eta_lam(a, b);
    if (b->kind == Kind::Lam) return eta_lam(b, a);
    if (a->kind == Kind::Pair) return eta_pair(a, b);
    if (b->kind == Kind::Pair) return eta_pair(b, a);
    if (a->kind == Kind::ClockAbs) return eta_clock(a, b);
    if (b->kind == Kind::ClockAbs) return eta_clock(b, a);
    return false;
  }

  auto bind_body = [&](const std::string& xa, const std::string& xb,
                       const ExprPtr& ba, const ExprPtr& bb, ExprPtr dom) {
    std::set<std::string> avoid = free_vars(ba).terms;
    for (auto& fv : free_vars(bb).terms) avoid.insert(fv);
    std::string x = freshen(xa, avoid);
    ExprPtr ra = x == xa ? ba : subst1(ba, xa, mk::var(x));
    ExprPtr rb = x == xb ? bb : subst1(bb, xb, mk::var(x));
    Telescope G2 = G;
    G2.emplace_back(x, std::move(dom));
    return conv(D, G2, ra, rb, fuel);
  };

  switch (a->kind) {
    case Kind::TyUnit:
    case Kind::TyBool:
    case Kind::TyNat:
    case Kind::TT:
    case Kind::True:
    case Kind::False:
    case Kind::Zero:
    case Kind::CodeUnit:
    case Kind::CodeBool:
    case Kind::CodeNat:
    case Kind::Refl:
      return true;
    case Kind::Var:
      return a->name == b->name;
    case Kind::Const: {
      if (a->name != b->name || a->clock_args != b->clock_args) return false;
      return true;
    }
    case Kind::TyUniverse:
      return a->clocks == b->clocks;
    case Kind::TyPi:
    case Kind::TySigma:
    case Kind::CodePi:
    case Kind::CodeSigma: {
      PathScope ps(*this, "binder");
      if (!conv(D, G, a->kids[0], b->kids[0], fuel)) return false;
      ExprPtr dom = (a->kind == Kind::CodePi || a->kind == Kind::CodeSigma)
                        ? mk::el(a->kids[0])
                        : a->kids[0];
      return bind_body(a->name, b->name, a->kids[1], b->kids[1], dom);
    }
    case Kind::TyId:
      return conv(D, G, a->kids[0], b->kids[0], fuel) &&
             conv(D, G, a->kids[1], b->kids[1], fuel) &&
             conv(D, G, a->kids[2], b->kids[2], fuel);
    case Kind::TyEl:
    case Kind::CodeForall:
    case Kind::Succ:
    case Kind::Fst:
    case Kind::Snd:
      return conv(D, G, a->kids[0], b->kids[0], fuel);
    case Kind::CodeLater:
      return a->clock == b->clock && conv(D, G, a->kids[0], b->kids[0], fuel);
    case Kind::TyLater:
    case Kind::Next: {
      if (!(a->clock == b->clock)) return false;
      // Both sides were already dsubst-normalized by whnf.
      auto ren = align_dsubst(D, G, a->dsubst, b->dsubst, fuel, true);
      if (!ren) return false;
      if (a->dsubst.size() != b->dsubst.size()) return false;
      Telescope G2 = G;
      for (auto& ent : a->dsubst) G2.emplace_back(ent.var, nullptr);
      return conv(D, G2, a->kids[0], rename_vars(b->kids[0], *ren), fuel);
    }
    case Kind::TyForall:
    case Kind::ClockAbs: {
      std::set<std::string> avoid = free_vars(a->kids[0]).clocks;
      for (auto& fv : free_vars(b->kids[0]).clocks) avoid.insert(fv);
      avoid.insert(D.begin(), D.end());
      std::string kf = freshen(a->name, avoid);
      ExprPtr ra = kf == a->name ? a->kids[0]
                                 : clock_subst(a->kids[0], Clock::variable(a->name),
                                               Clock::variable(kf));
      ExprPtr rb = kf == b->name ? b->kids[0]
                                 : clock_subst(b->kids[0], Clock::variable(b->name),
                                               Clock::variable(kf));
      ClockSet D2 = D;
      D2.insert(kf);
      return conv(D2, G, ra, rb, fuel);
    }
    case Kind::Lam: {
      return bind_body(a->name, b->name, body_of(a), body_of(b), ann_of(a));
    }
    case Kind::Fix: {
      if (!(a->clock == b->clock)) return false;
      return bind_body(a->name, b->name, body_of(a), body_of(b),
                       ann_of(a) ? mk::later(a->clock, {}, ann_of(a)) : nullptr);
    }
    case Kind::App:
    case Kind::Pair:
    case Kind::Reflect:
      return conv(D, G, a->kids[0], b->kids[0], fuel) &&
             conv(D, G, a->kids[1], b->kids[1], fuel);
    case Kind::If: {
      if (a->has_motive != b->has_motive) return false;
      if (a->has_motive &&
          !bind_body(a->name, b->name, a->kids[0], b->kids[0], mk::ty_bool())) {
        return false;
      }
      return conv(D, G, if_cond(a), if_cond(b), fuel) &&
             conv(D, G, if_then(a), if_then(b), fuel) &&
             conv(D, G, if_else(a), if_else(b), fuel);
    }
    case Kind::NatElim: {
      if (!bind_body(a->name, b->name, a->kids[0], b->kids[0], mk::ty_nat())) {
        return false;
      }
      if (!conv(D, G, a->kids[1], b->kids[1], fuel)) return false;
      // Two binders in the step.
      std::set<std::string> avoid;
      for (auto& fv : free_vars(a->kids[2]).terms) avoid.insert(fv);
      for (auto& fv : free_vars(b->kids[2]).terms) avoid.insert(fv);
      std::string kx = freshen(a->names[0], avoid);
      avoid.insert(kx);
      std::string ix = freshen(a->names[1], avoid);
      auto rn = [&](const ExprPtr& t, const std::string& n0, const std::string& n1) {
        Substitution s;
        if (n0 != kx) s[n0] = mk::var(kx);
        if (n1 != ix) s[n1] = mk::var(ix);
        return s.empty() ? t : subst(t, s);
      };
      Telescope G2 = G;
      G2.emplace_back(kx, mk::ty_nat());
      G2.emplace_back(ix, nullptr);
      if (!conv(D, G2, rn(a->kids[2], a->names[0], a->names[1]),
                rn(b->kids[2], b->names[0], b->names[1]), fuel)) {
        return false;
      }
      return conv(D, G, a->kids[3], b->kids[3], fuel);
    }
    case Kind::J: {
      // Compare motives, refl cases, and scrutinees (congruence only).
      std::set<std::string> avoid;
      for (auto& fv : free_vars(a->kids[0]).terms) avoid.insert(fv);
      for (auto& fv : free_vars(b->kids[0]).terms) avoid.insert(fv);
      std::vector<std::string> fresh;
      for (int i = 0; i < 3; ++i) {
        std::string n = freshen(a->names[static_cast<size_t>(i)], avoid);
        avoid.insert(n);
        fresh.push_back(n);
      }
      auto rn3 = [&](const ExprPtr& t, const std::vector<std::string>& ns) {
        Substitution s;
        for (int i = 0; i < 3; ++i) {
          if (ns[static_cast<size_t>(i)] != fresh[static_cast<size_t>(i)]) {
            s[ns[static_cast<size_t>(i)]] = mk::var(fresh[static_cast<size_t>(i)]);
          }
        }
        return s.empty() ? t : subst(t, s);
      };
      Telescope G2 = G;
      for (auto& n : fresh) G2.emplace_back(n, nullptr);
      if (!conv(D, G2, rn3(a->kids[0], {a->names[0], a->names[1], a->names[2]}),
                rn3(b->kids[0], {b->names[0], b->names[1], b->names[2]}), fuel)) {
        return false;
      }
      if (!bind_body(a->names[3], b->names[3], a->kids[1], b->kids[1], nullptr)) {
        return false;
      }
      return conv(D, G, a->kids[2], b->kids[2], fuel);
    }
    case Kind::ClockApp: {
      if (!conv(D, G, a->kids[0], b->kids[0], fuel)) return false;
      if (a->clock == b->clock) return true;
      // TmEq-forall-fresh (direct form): v @ k1 == v @ k2 when the
      // classifier forall k. A has k not free in A.
      try {
        ExprPtr t = infer(D, G, a->kids[0]);
        Fuel f2 = fresh_fuel();
        ExprPtr w = whnf(D, G, t, f2, true);
        if (w->kind == Kind::TyForall && !clock_is_free(w->kids[0], w->name)) {
          emit("TmEq-forall-fresh");
          return true;
        }
      } catch (const TypeError&) {
      }
      return false;
    }
    case Kind::Prev: {
      if (a->name == b->name) return conv(D, G, a->kids[0], b->kids[0], fuel);
      std::set<std::string> avoid = free_vars(a->kids[0]).clocks;
      for (auto& fv : free_vars(b->kids[0]).clocks) avoid.insert(fv);
      avoid.insert(D.begin(), D.end());
      std::string kf = freshen(a->name, avoid);
      ClockSet D2 = D;
      D2.insert(kf);
      return conv(D2, G,
                  clock_subst(a->kids[0], Clock::variable(a->name),
                              Clock::variable(kf)),
                  clock_subst(b->kids[0], Clock::variable(b->name),
                              Clock::variable(kf)),
                  fuel);
    }
    default:
      return false;
  }
}

// TmEq-forall-fresh, generalized: abstract one clock on each side by a shared
// fresh clock; if the sides agree and the type of the common term does not
// mention the fresh clock, the terms are equal.
bool Kernel::try_fresh_quotient(const ClockSet& D, const Telescope& G,
                                const ExprPtr& a, const ExprPtr& b, Fuel& fuel) {
  static thread_local int depth = 0;
  if (depth > 2) return false;
  auto ca = clocks_of(a);
  auto cb = clocks_of(b);
  if (ca.empty() || cb.empty()) return false;
  std::string kf = fresh_clock_name();
  Clock fresh = Clock::variable(kf);
  for (auto& c1 : ca) {
    for (auto& c2 : cb) {
      if (c1 == c2) continue;
      ExprPtr m1 = clock_subst(a, c1, fresh);
      ExprPtr m2 = clock_subst(b, c2, fresh);
      if (!alpha_eq(m1, m2)) continue;
      ClockSet D2 = D;
      D2.insert(kf);
      ++depth;
      try {
        ExprPtr t = infer(D2, G, m1);
        Fuel f2 = fresh_fuel();
        ExprPtr w = whnf(D2, G, t, f2, true);
        --depth;
        if (!clock_is_free(w, kf)) {
          (void)fuel;
          emit("TmEq-forall-fresh");
          return true;
        }
      } catch (const TypeError&) {
        --depth;
      }
    }
  }
  return false;
}

bool Kernel::conv_term(const ClockSet& D, const Telescope& G,
                       const ExprPtr& classifier, ExprPtr t, ExprPtr u,
                       Fuel& fuel) {
  if (!classifier) return conv(D, G, std::move(t), std::move(u), fuel);
  ExprPtr c = whnf(D, G, classifier, fuel, true);
  switch (c->kind) {
    case Kind::TyPi: {
      std::set<std::string> avoid;
      for (auto& [v, ty] : G) avoid.insert(v);
      FreeVars ft = free_vars(t), fu = free_vars(u);
      avoid.insert(ft.terms.begin(), ft.terms.end());
      avoid.insert(fu.terms.begin(), fu.terms.end());
      std::string x = freshen(c->name, avoid);
      Telescope G2 = G;
      G2.emplace_back(x, c->kids[0]);
      ExprPtr cod = subst1(c->kids[1], c->name, mk::var(x));
      return conv_term(D, G2, cod, mk::app(t, mk::var(x)),
                       mk::app(u, mk::var(x)), fuel);
    }
    case Kind::TySigma: {
      ExprPtr cod = subst1(c->kids[1], c->name, mk::fst(t));
      return conv_term(D, G, c->kids[0], mk::fst(t), mk::fst(u), fuel) &&
             conv_term(D, G, cod, mk::snd(t), mk::snd(u), fuel);
    }
    case Kind::TyForall: {
      std::set<std::string> avoid = D;
      FreeVars ft = free_vars(t), fu = free_vars(u);
      avoid.insert(ft.clocks.begin(), ft.clocks.end());
      avoid.insert(fu.clocks.begin(), fu.clocks.end());
      std::string kf = freshen(c->name, avoid);
      ClockSet D2 = D;
      D2.insert(kf);
      Clock ck = Clock::variable(kf);
      ExprPtr body = c->kids[0];
      if (kf != c->name) {
        body = clock_subst(body, Clock::variable(c->name), ck);
      }
      return conv_term(D2, G, body, mk::clock_app(t, ck),
                       mk::clock_app(u, ck), fuel);
    }
    default:
      return conv(D, G, std::move(t), std::move(u), fuel);
  }
}

// Free-function façade.
ExprPtr whnf(Kernel& k, const ClockSet& D, const Telescope& G, ExprPtr e,
             Fuel& fuel) {
  return k.whnf(D, G, std::move(e), fuel);
}
bool conv_term(Kernel& k, const ClockSet& D, const Telescope& G,
               const ExprPtr& classifier, ExprPtr t, ExprPtr u, Fuel& fuel) {
  return k.conv_term(D, G, classifier, std::move(t), std::move(u), fuel);
}
bool conv_type(Kernel& k, const ClockSet& D, const Telescope& G, ExprPtr a,
               ExprPtr b, Fuel& fuel) {
  return k.conv_type(D, G, std::move(a), std::move(b), fuel);
}

}  // namespace gdtt
