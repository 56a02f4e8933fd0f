#include "gdtt/print.hpp"

#include <optional>
#include <sstream>

namespace gdtt {

std::string print_clock(const Clock& c) { return c.is_const ? "k0" : c.var; }

namespace {

// Precedence levels, loosest to tightest.
enum Prec { P_EXPR = 0, P_ARROW, P_SUM, P_PROD, P_APP, P_ATOM };

std::string go(const ExprPtr& e, int prec);

std::string wrap(int needed, int prec, const std::string& s) {
  return prec > needed ? "(" + s + ")" : s;
}

std::optional<std::uint64_t> numeral(const ExprPtr& e) {
  std::uint64_t n = 0;
  const Expr* cur = e.get();
  while (cur->kind == Kind::Succ) {
    ++n;
    cur = cur->kids[0].get();
  }
  if (cur->kind == Kind::Zero) return n;
  return std::nullopt;
}

std::string dsubst_str(const Clock& k, const DSubst& xi) {
  std::string s = "[" + print_clock(k);
  if (!xi.empty()) {
    s += "; ";
    for (size_t i = 0; i < xi.size(); ++i) {
      if (i) s += ", ";
      s += xi[i].var + " <- " + go(xi[i].term, P_EXPR);
    }
  }
  return s + "]";
}

std::string go(const ExprPtr& e, int prec) {
  switch (e->kind) {
    case Kind::TyUnit: return "Unit";
    case Kind::TyBool: return "Bool";
    case Kind::TyNat: return "Nat";
    case Kind::TT: return "tt";
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Zero: return "0";
    case Kind::CodeUnit: return "cUnit";
    case Kind::CodeBool: return "cBool";
    case Kind::CodeNat: return "cNat";
    case Kind::Refl: return "refl";
    case Kind::Var: return e->name;
    case Kind::Const: {
      if (e->clock_args.empty()) return e->name;
      std::string s = e->name + "[";
      for (size_t i = 0; i < e->clock_args.size(); ++i) {
        if (i) s += ", ";
        s += print_clock(e->clock_args[i]);
      }
      return s + "]";
    }
    case Kind::TyUniverse: {
      std::string s = "U{";
      bool first = true;
      for (auto& k : e->clocks) {
        if (!first) s += ",";
        first = false;
        s += k;
      }
      return s + "}";
    }
    case Kind::TyPi: {
      if (!is_free(e->kids[1], e->name)) {
        return wrap(P_ARROW, prec,
                    go(e->kids[0], P_SUM) + " -> " + go(e->kids[1], P_ARROW));
      }
      return wrap(P_EXPR, prec, "Pi (" + e->name + " : " + go(e->kids[0], P_EXPR) +
                                    "). " + go(e->kids[1], P_EXPR));
    }
    case Kind::TySigma: {
      if (!is_free(e->kids[1], e->name)) {
        return wrap(P_PROD, prec,
                    go(e->kids[0], P_APP) + " * " + go(e->kids[1], P_PROD));
      }
      return wrap(P_EXPR, prec, "Sg (" + e->name + " : " + go(e->kids[0], P_EXPR) +
                                    "). " + go(e->kids[1], P_EXPR));
    }
    case Kind::CodePi:
      return wrap(P_EXPR, prec, "cPi (" + e->name + " : " + go(e->kids[0], P_EXPR) +
                                    "). " + go(e->kids[1], P_EXPR));
    case Kind::CodeSigma: {
      if (!is_free(e->kids[1], e->name)) {
        return wrap(P_PROD, prec,
                    go(e->kids[0], P_APP) + " c* " + go(e->kids[1], P_PROD));
      }
      return wrap(P_EXPR, prec, "cSg (" + e->name + " : " + go(e->kids[0], P_EXPR) +
                                    "). " + go(e->kids[1], P_EXPR));
    }
    case Kind::TyId:
      return wrap(P_APP, prec, "Id " + go(e->kids[0], P_ATOM) + " " +
                                   go(e->kids[1], P_ATOM) + " " +
                                   go(e->kids[2], P_ATOM));
    case Kind::TyEl:
      return wrap(P_APP, prec, "El " + go(e->kids[0], P_ATOM));
    case Kind::TyLater:
      return wrap(P_APP, prec,
                  "Later" + dsubst_str(e->clock, e->dsubst) + " " +
                      go(e->kids[0], P_ATOM));
    case Kind::TyForall:
      return wrap(P_EXPR, prec, "forall " + e->name + ". " + go(e->kids[0], P_EXPR));
    case Kind::Lam: {
      std::string bind =
          ann_of(e) ? "(" + e->name + " : " + go(ann_of(e), P_EXPR) + ")" : e->name;
      return wrap(P_EXPR, prec, "\\" + bind + ". " + go(body_of(e), P_EXPR));
    }
    case Kind::App:
      return wrap(P_APP, prec, go(e->kids[0], P_APP) + " " + go(e->kids[1], P_ATOM));
    case Kind::Pair:
      return "(" + go(e->kids[0], P_EXPR) + " , " + go(e->kids[1], P_EXPR) + ")";
    case Kind::Fst:
      return wrap(P_APP, prec, "fst " + go(e->kids[0], P_ATOM));
    case Kind::Snd:
      return wrap(P_APP, prec, "snd " + go(e->kids[0], P_ATOM));
    case Kind::If: {
      std::string s = "if " + go(if_cond(e), P_APP);
      if (e->has_motive) s += " as " + e->name + ". " + go(e->kids[0], P_APP);
      s += " then " + go(if_then(e), P_EXPR) + " else " + go(if_else(e), P_EXPR);
      return wrap(P_EXPR, prec, s);
    }
    case Kind::Succ: {
      if (auto n = numeral(e)) return std::to_string(*n);
      return wrap(P_APP, prec, "succ " + go(e->kids[0], P_ATOM));
    }
    case Kind::NatElim:
      return wrap(P_APP, prec,
                  "natrec (" + e->name + ". " + go(e->kids[0], P_EXPR) + ") " +
                      go(e->kids[1], P_ATOM) + " (" + e->names[0] + " " +
                      e->names[1] + ". " + go(e->kids[2], P_EXPR) + ") " +
                      go(e->kids[3], P_ATOM));
    case Kind::J:
      return wrap(P_APP, prec,
                  "J (" + e->names[0] + " " + e->names[1] + " " + e->names[2] +
                      ". " + go(e->kids[0], P_EXPR) + ") (" + e->names[3] + ". " +
                      go(e->kids[1], P_EXPR) + ") " + go(e->kids[2], P_ATOM));
    case Kind::CodeLater:
      return wrap(P_APP, prec, "cLater[" + print_clock(e->clock) + "] " +
                                   go(e->kids[0], P_ATOM));
    case Kind::CodeForall:
      return wrap(P_APP, prec, "cForall " + go(e->kids[0], P_ATOM));
    case Kind::Next:
      return wrap(P_APP, prec, "next" + dsubst_str(e->clock, e->dsubst) + " " +
                                   go(e->kids[0], P_ATOM));
    case Kind::Fix: {
      std::string bind =
          ann_of(e) ? "(" + e->name + " : " + go(ann_of(e), P_EXPR) + ")" : e->name;
      return wrap(P_EXPR, prec, "fix[" + print_clock(e->clock) + "] " + bind +
                                    ". " + go(body_of(e), P_EXPR));
    }
    case Kind::Prev:
      return wrap(P_APP, prec, "prev[" + e->name + "] " + go(e->kids[0], P_ATOM));
    case Kind::ClockAbs:
      return wrap(P_EXPR, prec, "clam " + e->name + ". " + go(e->kids[0], P_EXPR));
    case Kind::ClockApp:
      return wrap(P_APP, prec,
                  go(e->kids[0], P_APP) + " @ " + print_clock(e->clock));
    case Kind::Reflect:
      return wrap(P_APP, prec, "reflect " + go(e->kids[0], P_ATOM) + " " +
                                   go(e->kids[1], P_ATOM));
  }
  return "?";
}

}  // namespace

std::string print(const ExprPtr& e) { return e ? go(e, P_EXPR) : "<null>"; }

}  // namespace gdtt
