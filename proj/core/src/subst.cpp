#include "gdtt/subst.hpp"

namespace gdtt {

std::string freshen(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += "'";
  return n;
}

namespace {

struct Subster {
  Substitution s;
  std::set<std::string> avoid;  // range free vars plus domain

  static Subster make(const Substitution& s0) {
    Subster st;
    st.s = s0;
    for (auto& [k, v] : s0) {
      st.avoid.insert(k);
      if (v) {
        for (auto& f : free_vars(v).terms) st.avoid.insert(f);
      }
    }
    return st;
  }

  // Enter a binder named x over the given bodies: returns the (possibly
  // renamed) binder and an adjusted Subster for the scope of the binder.
  std::pair<std::string, Subster> bind(const std::string& x,
                                       std::vector<ExprPtr> bodies) const {
    Subster inner = *this;
    inner.s.erase(x);
    if (inner.s.empty()) return {x, inner};
    if (!avoid.count(x)) return {x, inner};
    std::set<std::string> av = avoid;
    for (auto& b : bodies) {
      if (b) {
        for (auto& f : free_vars(b).terms) av.insert(f);
      }
    }
    std::string x2 = freshen(x, av);
    inner.s[x] = mk::var(x2);
    inner.avoid.insert(x2);
    return {x2, inner};
  }

  ExprPtr go(const ExprPtr& e) const {
    if (s.empty()) return e;
    switch (e->kind) {
      case Kind::Var: {
        auto it = s.find(e->name);
        return it == s.end() ? e : it->second;
      }
      case Kind::TyUnit:
      case Kind::TyBool:
      case Kind::TyNat:
      case Kind::TyUniverse:
      case Kind::TT:
      case Kind::True:
      case Kind::False:
      case Kind::Zero:
      case Kind::CodeUnit:
      case Kind::CodeBool:
      case Kind::CodeNat:
      case Kind::Const:
        return e;
      case Kind::TyPi:
      case Kind::TySigma:
      case Kind::CodePi:
      case Kind::CodeSigma: {
        ExprPtr dom = go(e->kids[0]);
        auto [x2, inner] = bind(e->name, {e->kids[1]});
        Expr out = *e;
        out.name = x2;
        out.kids = {dom, inner.go(e->kids[1])};
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::TyLater:
      case Kind::Next: {
        Expr out = *e;
        out.dsubst.clear();
        Subster inner = *this;
        std::vector<ExprPtr> scope = {e->kids[0]};
        for (auto& ent : e->dsubst) {
          ExprPtr t2 = go(ent.term);
          auto [v2, next_inner] = inner.bind(ent.var, scope);
          out.dsubst.push_back(DEntry{v2, t2});
          inner = next_inner;
        }
        out.kids = {inner.go(e->kids[0])};
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::Lam: {
        ExprPtr a = ann_of(e);
        ExprPtr a2 = a ? go(a) : nullptr;
        auto [x2, inner] = bind(e->name, {body_of(e)});
        Expr out = *e;
        out.name = x2;
        out.kids.clear();
        if (a2) out.kids.push_back(a2);
        out.kids.push_back(inner.go(body_of(e)));
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::Fix: {
        ExprPtr a = ann_of(e);
        ExprPtr a2 = a ? go(a) : nullptr;
        auto [x2, inner] = bind(e->name, {body_of(e)});
        Expr out = *e;
        out.name = x2;
        out.kids.clear();
        if (a2) out.kids.push_back(a2);
        out.kids.push_back(inner.go(body_of(e)));
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::If: {
        Expr out = *e;
        if (e->has_motive) {
          auto [x2, inner] = bind(e->name, {e->kids[0]});
          out.name = x2;
          out.kids[0] = inner.go(e->kids[0]);
          out.kids[1] = go(e->kids[1]);
          out.kids[2] = go(e->kids[2]);
          out.kids[3] = go(e->kids[3]);
        } else {
          for (size_t i = 0; i < out.kids.size(); ++i) out.kids[i] = go(e->kids[i]);
        }
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::NatElim: {
        Expr out = *e;
        auto [m2, minner] = bind(e->name, {e->kids[0]});
        out.name = m2;
        out.kids[0] = minner.go(e->kids[0]);
        out.kids[1] = go(e->kids[1]);
        auto [k2, kin] = bind(e->names[0], {e->kids[2]});
        auto [ih2, sin] = kin.bind(e->names[1], {e->kids[2]});
        out.names = {k2, ih2};
        out.kids[2] = sin.go(e->kids[2]);
        out.kids[3] = go(e->kids[3]);
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::J: {
        Expr out = *e;
        auto [x2, i1] = bind(e->names[0], {e->kids[0]});
        auto [y2, i2] = i1.bind(e->names[1], {e->kids[0]});
        auto [p2, i3] = i2.bind(e->names[2], {e->kids[0]});
        out.kids[0] = i3.go(e->kids[0]);
        auto [z2, iz] = bind(e->names[3], {e->kids[1]});
        out.kids[1] = iz.go(e->kids[1]);
        out.names = {x2, y2, p2, z2};
        out.kids[2] = go(e->kids[2]);
        return std::make_shared<const Expr>(std::move(out));
      }
      default: {
        Expr out = *e;
        for (size_t i = 0; i < out.kids.size(); ++i) out.kids[i] = go(e->kids[i]);
        return std::make_shared<const Expr>(std::move(out));
      }
    }
  }
};

}  // namespace

ExprPtr subst(const ExprPtr& e, const Substitution& s) {
  if (s.empty()) return e;
  return Subster::make(s).go(e);
}

ExprPtr subst1(const ExprPtr& e, const std::string& x, const ExprPtr& t) {
  return subst(e, Substitution{{x, t}});
}

ExprPtr rename_vars(const ExprPtr& e, const std::map<std::string, std::string>& ren) {
  Substitution s;
  for (auto& [a, b] : ren) {
    if (a != b) s[a] = mk::var(b);
  }
  return subst(e, s);
}

// ---------------------------------------------------------------------------
// Clock substitution
// ---------------------------------------------------------------------------
namespace {

struct ClockSubster {
  Clock target, repl;

  Clock go_clock(const Clock& c) const { return c == target ? repl : c; }

  // Binder of a clock variable k; may need renaming when k equals the
  // replacement variable (capture) and may shadow the target.
  std::pair<std::string, ClockSubster> bind_clock(const std::string& k,
                                                  const ExprPtr& body) const {
    ClockSubster inner = *this;
    if (!target.is_const && target.var == k) {
      // Shadowed: substitution stops below. Mark with an impossible target.
      inner.target = Clock::variable("\x01shadowed");
      return {k, inner};
    }
    if (!repl.is_const && repl.var == k) {
      // Rename binder to avoid capturing the replacement clock.
      FreeVars f = free_vars(body);
      std::set<std::string> avoid = f.clocks;
      avoid.insert(repl.var);
      if (!target.is_const) avoid.insert(target.var);
      std::string k2 = freshen(k, avoid);
      // We realize the renaming by first substituting k -> k2 in the body
      // (done by the caller via recursion with a renamer).
      return {k2, inner};
    }
    return {k, inner};
  }

  ExprPtr go(const ExprPtr& e) const {
    switch (e->kind) {
      case Kind::TyForall:
      case Kind::Prev:
      case Kind::ClockAbs: {
        auto [k2, inner] = bind_clock(e->name, e->kids[0]);
        ExprPtr body = e->kids[0];
        if (k2 != e->name) {
          body = ClockSubster{Clock::variable(e->name), Clock::variable(k2)}.go(body);
        }
        Expr out = *e;
        out.name = k2;
        out.kids = {inner.go(body)};
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::TyUniverse: {
        if (target.is_const || !e->clocks.count(target.var)) return e;
        Expr out = *e;
        out.clocks.erase(target.var);
        if (!repl.is_const) out.clocks.insert(repl.var);
        return std::make_shared<const Expr>(std::move(out));
      }
      case Kind::Const: {
        Expr out = *e;
        for (auto& c : out.clock_args) c = go_clock(c);
        return std::make_shared<const Expr>(std::move(out));
      }
      default: {
        Expr out = *e;
        out.clock = go_clock(out.clock);
        for (auto& d : out.dsubst) d.term = go(d.term);
        for (size_t i = 0; i < out.kids.size(); ++i) out.kids[i] = go(e->kids[i]);
        return std::make_shared<const Expr>(std::move(out));
      }
    }
  }
};

}  // namespace

ExprPtr clock_subst(const ExprPtr& e, const Clock& target, const Clock& repl) {
  if (target == repl) return e;
  return ClockSubster{target, repl}.go(e);
}

ExprPtr instantiate_clocks(ExprPtr e, const std::vector<std::string>& params,
                           const std::vector<Clock>& args) {
  std::vector<std::string> temps;
  for (size_t i = 0; i < params.size(); ++i) {
    std::string tmp = "\x01clk" + std::to_string(i);
    temps.push_back(tmp);
    e = clock_subst(e, Clock::variable(params[i]), Clock::variable(tmp));
  }
  for (size_t i = 0; i < params.size() && i < args.size(); ++i) {
    e = clock_subst(e, Clock::variable(temps[i]), args[i]);
  }
  return e;
}

Substitution advance(const std::string& k, const DSubst& xi) {
  Substitution out;
  for (auto& ent : xi) {
    // (prev k. t)[k] -- the prev binder intentionally captures k in t.
    out[ent.var] = mk::clock_app(mk::prev(k, ent.term), Clock::variable(k));
  }
  return out;
}

}  // namespace gdtt
