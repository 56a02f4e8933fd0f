#include "gdtt/syntax.hpp"

#include <map>

namespace gdtt {

namespace mk {

static ExprPtr finish(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr node(Kind k) { return finish(Expr{k}); }

ExprPtr ty_unit() { static ExprPtr e = node(Kind::TyUnit); return e; }
ExprPtr ty_bool() { static ExprPtr e = node(Kind::TyBool); return e; }
ExprPtr ty_nat() { static ExprPtr e = node(Kind::TyNat); return e; }

ExprPtr pi(std::string x, ExprPtr dom, ExprPtr cod) {
  Expr e{Kind::TyPi};
  e.name = std::move(x);
  e.kids = {std::move(dom), std::move(cod)};
  return finish(std::move(e));
}
ExprPtr sigma(std::string x, ExprPtr dom, ExprPtr cod) {
  Expr e{Kind::TySigma};
  e.name = std::move(x);
  e.kids = {std::move(dom), std::move(cod)};
  return finish(std::move(e));
}
ExprPtr id(ExprPtr a, ExprPtr t, ExprPtr u) {
  Expr e{Kind::TyId};
  e.kids = {std::move(a), std::move(t), std::move(u)};
  return finish(std::move(e));
}
ExprPtr universe(ClockSet ks) {
  Expr e{Kind::TyUniverse};
  e.clocks = std::move(ks);
  return finish(std::move(e));
}
ExprPtr el(ExprPtr code) {
  Expr e{Kind::TyEl};
  e.kids = {std::move(code)};
  return finish(std::move(e));
}
ExprPtr later(Clock k, DSubst xi, ExprPtr body) {
  Expr e{Kind::TyLater};
  e.clock = std::move(k);
  e.dsubst = std::move(xi);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr forall(std::string k, ExprPtr body) {
  Expr e{Kind::TyForall};
  e.name = std::move(k);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}

ExprPtr var(std::string x) {
  Expr e{Kind::Var};
  e.name = std::move(x);
  return finish(std::move(e));
}
ExprPtr cst(std::string name, std::vector<Clock> args) {
  Expr e{Kind::Const};
  e.name = std::move(name);
  e.clock_args = std::move(args);
  return finish(std::move(e));
}
ExprPtr lam(std::string x, ExprPtr body) {
  Expr e{Kind::Lam};
  e.name = std::move(x);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr lam_ann(std::string x, ExprPtr ann, ExprPtr body) {
  Expr e{Kind::Lam};
  e.name = std::move(x);
  e.kids = {std::move(ann), std::move(body)};
  return finish(std::move(e));
}
ExprPtr app(ExprPtr f, ExprPtr a) {
  Expr e{Kind::App};
  e.kids = {std::move(f), std::move(a)};
  return finish(std::move(e));
}
ExprPtr pair(ExprPtr a, ExprPtr b) {
  Expr e{Kind::Pair};
  e.kids = {std::move(a), std::move(b)};
  return finish(std::move(e));
}
ExprPtr fst(ExprPtr t) {
  Expr e{Kind::Fst};
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr snd(ExprPtr t) {
  Expr e{Kind::Snd};
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr tt() { static ExprPtr e = node(Kind::TT); return e; }
ExprPtr tru() { static ExprPtr e = node(Kind::True); return e; }
ExprPtr fls() { static ExprPtr e = node(Kind::False); return e; }
ExprPtr ifte(ExprPtr c, ExprPtr t, ExprPtr e_) {
  Expr e{Kind::If};
  e.kids = {std::move(c), std::move(t), std::move(e_)};
  return finish(std::move(e));
}
ExprPtr ifte_motive(std::string x, ExprPtr motive, ExprPtr c, ExprPtr t, ExprPtr e_) {
  Expr e{Kind::If};
  e.has_motive = true;
  e.name = std::move(x);
  e.kids = {std::move(motive), std::move(c), std::move(t), std::move(e_)};
  return finish(std::move(e));
}
ExprPtr zero() { static ExprPtr e = node(Kind::Zero); return e; }
ExprPtr succ(ExprPtr t) {
  Expr e{Kind::Succ};
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr lit(std::uint64_t n) {
  ExprPtr e = zero();
  for (std::uint64_t i = 0; i < n; ++i) e = succ(e);
  return e;
}
ExprPtr natelim(std::string x, ExprPtr motive, ExprPtr base, std::string k,
                std::string ih, ExprPtr step, ExprPtr scrut) {
  Expr e{Kind::NatElim};
  e.name = std::move(x);
  e.names = {std::move(k), std::move(ih)};
  e.kids = {std::move(motive), std::move(base), std::move(step), std::move(scrut)};
  return finish(std::move(e));
}
ExprPtr refl() { static ExprPtr e = node(Kind::Refl); return e; }
ExprPtr refl_at(ExprPtr t) {
  Expr e{Kind::Refl};
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr j(std::string x, std::string y, std::string p, ExprPtr motive,
          std::string z, ExprPtr d, ExprPtr q) {
  Expr e{Kind::J};
  e.names = {std::move(x), std::move(y), std::move(p), std::move(z)};
  e.kids = {std::move(motive), std::move(d), std::move(q)};
  return finish(std::move(e));
}
ExprPtr code_unit() { static ExprPtr e = node(Kind::CodeUnit); return e; }
ExprPtr code_bool() { static ExprPtr e = node(Kind::CodeBool); return e; }
ExprPtr code_nat() { static ExprPtr e = node(Kind::CodeNat); return e; }
ExprPtr code_pi(std::string x, ExprPtr dom, ExprPtr cod) {
  Expr e{Kind::CodePi};
  e.name = std::move(x);
  e.kids = {std::move(dom), std::move(cod)};
  return finish(std::move(e));
}
ExprPtr code_sigma(std::string x, ExprPtr dom, ExprPtr cod) {
  Expr e{Kind::CodeSigma};
  e.name = std::move(x);
  e.kids = {std::move(dom), std::move(cod)};
  return finish(std::move(e));
}
ExprPtr code_later(Clock k, ExprPtr t) {
  Expr e{Kind::CodeLater};
  e.clock = std::move(k);
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr code_forall(ExprPtr t) {
  Expr e{Kind::CodeForall};
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr next(Clock k, DSubst xi, ExprPtr body) {
  Expr e{Kind::Next};
  e.clock = std::move(k);
  e.dsubst = std::move(xi);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr fix(Clock k, std::string x, ExprPtr body) {
  Expr e{Kind::Fix};
  e.clock = std::move(k);
  e.name = std::move(x);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr fix_ann(Clock k, std::string x, ExprPtr ann, ExprPtr body) {
  Expr e{Kind::Fix};
  e.clock = std::move(k);
  e.name = std::move(x);
  e.kids = {std::move(ann), std::move(body)};
  return finish(std::move(e));
}
ExprPtr prev(std::string k, ExprPtr body) {
  Expr e{Kind::Prev};
  e.name = std::move(k);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr clock_abs(std::string k, ExprPtr body) {
  Expr e{Kind::ClockAbs};
  e.name = std::move(k);
  e.kids = {std::move(body)};
  return finish(std::move(e));
}
ExprPtr clock_app(ExprPtr t, Clock k) {
  Expr e{Kind::ClockApp};
  e.clock = std::move(k);
  e.kids = {std::move(t)};
  return finish(std::move(e));
}
ExprPtr reflect(ExprPtr proof, ExprPtr subject) {
  Expr e{Kind::Reflect};
  e.kids = {std::move(proof), std::move(subject)};
  return finish(std::move(e));
}

}  // namespace mk

ExprPtr body_of(const ExprPtr& e) {
  return e->kids.size() == 2 ? e->kids[1] : e->kids[0];
}
ExprPtr ann_of(const ExprPtr& e) {
  return e->kids.size() == 2 ? e->kids[0] : nullptr;
}

ExprPtr if_motive(const ExprPtr& e) { return e->has_motive ? e->kids[0] : nullptr; }
ExprPtr if_cond(const ExprPtr& e) { return e->kids[e->has_motive ? 1 : 0]; }
ExprPtr if_then(const ExprPtr& e) { return e->kids[e->has_motive ? 2 : 1]; }
ExprPtr if_else(const ExprPtr& e) { return e->kids[e->has_motive ? 3 : 2]; }

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------
namespace {

struct AlphaEnv {
  // name -> binder level on each side
  std::map<std::string, int> l, r;
  std::map<std::string, int> lc, rc;  // clocks
  int depth = 0, cdepth = 0;

  AlphaEnv bind(const std::string& a, const std::string& b) const {
    AlphaEnv e = *this;
    e.l[a] = e.depth;
    e.r[b] = e.depth;
    ++e.depth;
    return e;
  }
  AlphaEnv bind_clock(const std::string& a, const std::string& b) const {
    AlphaEnv e = *this;
    e.lc[a] = e.cdepth;
    e.rc[b] = e.cdepth;
    ++e.cdepth;
    return e;
  }
  bool var_eq(const std::string& a, const std::string& b) const {
    auto ia = l.find(a), ib = r.find(b);
    if (ia != l.end() || ib != r.end()) {
      return ia != l.end() && ib != r.end() && ia->second == ib->second;
    }
    return a == b;
  }
  bool clock_var_eq(const std::string& a, const std::string& b) const {
    auto ia = lc.find(a), ib = rc.find(b);
    if (ia != lc.end() || ib != rc.end()) {
      return ia != lc.end() && ib != rc.end() && ia->second == ib->second;
    }
    return a == b;
  }
  bool clock_eq(const Clock& a, const Clock& b) const {
    if (a.is_const != b.is_const) return false;
    if (a.is_const) return true;
    return clock_var_eq(a.var, b.var);
  }
  bool clockset_eq(const ClockSet& a, const ClockSet& b) const {
    if (a.size() != b.size()) return false;
    // Canonicalize each side through the binder environment.
    std::set<std::string> ca, cb;
    for (auto& k : a) {
      auto it = lc.find(k);
      ca.insert(it == lc.end() ? "f:" + k : "b:" + std::to_string(it->second));
    }
    for (auto& k : b) {
      auto it = rc.find(k);
      cb.insert(it == rc.end() ? "f:" + k : "b:" + std::to_string(it->second));
    }
    return ca == cb;
  }
};

bool aeq(const ExprPtr& a, const ExprPtr& b, const AlphaEnv& env);

bool aeq_kids_same_env(const ExprPtr& a, const ExprPtr& b, const AlphaEnv& env) {
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i) {
    if (!aeq(a->kids[i], b->kids[i], env)) return false;
  }
  return true;
}

bool aeq(const ExprPtr& a, const ExprPtr& b, const AlphaEnv& env) {
  if (a.get() == b.get() && env.depth == 0 && env.cdepth == 0) return true;
  if (a->kind != b->kind) return false;
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
      return true;
    case Kind::Refl:
      return aeq_kids_same_env(a, b, env);
    case Kind::Var:
      return env.var_eq(a->name, b->name);
    case Kind::Const: {
      if (a->name != b->name) return false;
      if (a->clock_args.size() != b->clock_args.size()) return false;
      for (size_t i = 0; i < a->clock_args.size(); ++i) {
        if (!env.clock_eq(a->clock_args[i], b->clock_args[i])) return false;
      }
      return true;
    }
    case Kind::TyUniverse:
      return env.clockset_eq(a->clocks, b->clocks);
    case Kind::TyPi:
    case Kind::TySigma:
    case Kind::CodePi:
    case Kind::CodeSigma:
      return aeq(a->kids[0], b->kids[0], env) &&
             aeq(a->kids[1], b->kids[1], env.bind(a->name, b->name));
    case Kind::TyId:
    case Kind::TyEl:
    case Kind::App:
    case Kind::Pair:
    case Kind::Fst:
    case Kind::Snd:
    case Kind::Succ:
    case Kind::CodeForall:
    case Kind::Reflect:
      return aeq_kids_same_env(a, b, env);
    case Kind::TyLater:
    case Kind::Next: {
      if (!env.clock_eq(a->clock, b->clock)) return false;
      if (a->dsubst.size() != b->dsubst.size()) return false;
      AlphaEnv inner = env;
      for (size_t i = 0; i < a->dsubst.size(); ++i) {
        if (!aeq(a->dsubst[i].term, b->dsubst[i].term, env)) return false;
        inner = inner.bind(a->dsubst[i].var, b->dsubst[i].var);
      }
      return aeq(a->kids[0], b->kids[0], inner);
    }
    case Kind::TyForall:
    case Kind::Prev:
    case Kind::ClockAbs:
      return aeq(a->kids[0], b->kids[0], env.bind_clock(a->name, b->name));
    case Kind::Lam: {
      ExprPtr aa = ann_of(a), ba = ann_of(b);
      if ((aa == nullptr) != (ba == nullptr)) return false;
      if (aa && !aeq(aa, ba, env)) return false;
      return aeq(body_of(a), body_of(b), env.bind(a->name, b->name));
    }
    case Kind::Fix: {
      if (!env.clock_eq(a->clock, b->clock)) return false;
      ExprPtr aa = ann_of(a), ba = ann_of(b);
      if ((aa == nullptr) != (ba == nullptr)) return false;
      if (aa && !aeq(aa, ba, env)) return false;
      return aeq(body_of(a), body_of(b), env.bind(a->name, b->name));
    }
    case Kind::If: {
      if (a->has_motive != b->has_motive) return false;
      if (a->has_motive &&
          !aeq(a->kids[0], b->kids[0], env.bind(a->name, b->name))) {
        return false;
      }
      return aeq(if_cond(a), if_cond(b), env) &&
             aeq(if_then(a), if_then(b), env) && aeq(if_else(a), if_else(b), env);
    }
    case Kind::NatElim:
      return aeq(a->kids[0], b->kids[0], env.bind(a->name, b->name)) &&
             aeq(a->kids[1], b->kids[1], env) &&
             aeq(a->kids[2], b->kids[2],
                 env.bind(a->names[0], b->names[0]).bind(a->names[1], b->names[1])) &&
             aeq(a->kids[3], b->kids[3], env);
    case Kind::J:
      return aeq(a->kids[0], b->kids[0],
                 env.bind(a->names[0], b->names[0])
                     .bind(a->names[1], b->names[1])
                     .bind(a->names[2], b->names[2])) &&
             aeq(a->kids[1], b->kids[1], env.bind(a->names[3], b->names[3])) &&
             aeq(a->kids[2], b->kids[2], env);
    case Kind::CodeLater:
      return env.clock_eq(a->clock, b->clock) && aeq(a->kids[0], b->kids[0], env);
    case Kind::ClockApp:
      return env.clock_eq(a->clock, b->clock) && aeq(a->kids[0], b->kids[0], env);
  }
  return false;
}

}  // namespace

bool alpha_eq(const ExprPtr& a, const ExprPtr& b) {
  return aeq(a, b, AlphaEnv{});
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------
namespace {

struct FvEnv {
  std::set<std::string> bound;
  std::set<std::string> bound_clocks;
};

void fv(const ExprPtr& e, FvEnv env, FreeVars& out) {
  auto add_clock = [&](const Clock& c) {
    if (!c.is_const && !env.bound_clocks.count(c.var)) out.clocks.insert(c.var);
  };
  switch (e->kind) {
    case Kind::Var:
      if (!env.bound.count(e->name)) out.terms.insert(e->name);
      return;
    case Kind::Const:
      for (auto& c : e->clock_args) add_clock(c);
      return;
    case Kind::TyUniverse:
      for (auto& k : e->clocks) {
        if (!env.bound_clocks.count(k)) out.clocks.insert(k);
      }
      return;
    case Kind::TyPi:
    case Kind::TySigma:
    case Kind::CodePi:
    case Kind::CodeSigma: {
      fv(e->kids[0], env, out);
      FvEnv inner = env;
      inner.bound.insert(e->name);
      fv(e->kids[1], inner, out);
      return;
    }
    case Kind::TyLater:
    case Kind::Next: {
      add_clock(e->clock);
      FvEnv inner = env;
      for (auto& ent : e->dsubst) {
        fv(ent.term, env, out);
        inner.bound.insert(ent.var);
      }
      fv(e->kids[0], inner, out);
      return;
    }
    case Kind::TyForall:
    case Kind::Prev:
    case Kind::ClockAbs: {
      FvEnv inner = env;
      inner.bound_clocks.insert(e->name);
      fv(e->kids[0], inner, out);
      return;
    }
    case Kind::Lam: {
      if (ExprPtr a = ann_of(e)) fv(a, env, out);
      FvEnv inner = env;
      inner.bound.insert(e->name);
      fv(body_of(e), inner, out);
      return;
    }
    case Kind::Fix: {
      add_clock(e->clock);
      if (ExprPtr a = ann_of(e)) fv(a, env, out);
      FvEnv inner = env;
      inner.bound.insert(e->name);
      fv(body_of(e), inner, out);
      return;
    }
    case Kind::If: {
      if (e->has_motive) {
        FvEnv inner = env;
        inner.bound.insert(e->name);
        fv(e->kids[0], inner, out);
      }
      fv(if_cond(e), env, out);
      fv(if_then(e), env, out);
      fv(if_else(e), env, out);
      return;
    }
    case Kind::NatElim: {
      FvEnv m = env;
      m.bound.insert(e->name);
      fv(e->kids[0], m, out);
      fv(e->kids[1], env, out);
      FvEnv s = env;
      s.bound.insert(e->names[0]);
      s.bound.insert(e->names[1]);
      fv(e->kids[2], s, out);
      fv(e->kids[3], env, out);
      return;
    }
    case Kind::J: {
      FvEnv m = env;
      m.bound.insert(e->names[0]);
      m.bound.insert(e->names[1]);
      m.bound.insert(e->names[2]);
      fv(e->kids[0], m, out);
      FvEnv d = env;
      d.bound.insert(e->names[3]);
      fv(e->kids[1], d, out);
      fv(e->kids[2], env, out);
      return;
    }
    case Kind::CodeLater:
    case Kind::ClockApp:
      add_clock(e->clock);
      fv(e->kids[0], env, out);
      return;
    default:
      for (auto& k : e->kids) fv(k, env, out);
      return;
  }
}

}  // namespace

FreeVars free_vars(const ExprPtr& e) {
  FreeVars out;
  fv(e, FvEnv{}, out);
  return out;
}

bool is_free(const ExprPtr& e, const std::string& x) {
  return free_vars(e).terms.count(x) > 0;
}

bool clock_is_free(const ExprPtr& e, const std::string& k) {
  return free_vars(e).clocks.count(k) > 0;
}

bool clock_less(const Clock& a, const Clock& b) {
  if (a.is_const != b.is_const) return a.is_const;
  if (a.is_const) return false;
  return a.var < b.var;
}

std::set<Clock, bool (*)(const Clock&, const Clock&)> clocks_of(const ExprPtr& e) {
  std::set<Clock, bool (*)(const Clock&, const Clock&)> out(clock_less);
  // Free clock variables, plus k0 if it occurs anywhere.
  FreeVars f = free_vars(e);
  for (auto& k : f.clocks) out.insert(Clock::variable(k));
  // k0 occurrence detection, restricted to kinds that carry a clock.
  struct Walk2 {
    bool found = false;
    void go(const ExprPtr& x) {
      if (found) return;
      switch (x->kind) {
        case Kind::TyLater:
        case Kind::Next:
        case Kind::Fix:
        case Kind::CodeLater:
        case Kind::ClockApp:
          if (x->clock.is_const) { found = true; return; }
          break;
        case Kind::Const:
          for (auto& c : x->clock_args) {
            if (c.is_const) { found = true; return; }
          }
          break;
        default:
          break;
      }
      for (auto& d : x->dsubst) go(d.term);
      for (auto& k : x->kids) go(k);
    }
  } w2;
  w2.go(e);
  if (w2.found) out.insert(Clock::k0());
  return out;
}

}  // namespace gdtt
