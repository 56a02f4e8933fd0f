#include "gdtt/model.hpp"

#include "gdtt/print.hpp"

namespace gdtt {

namespace {

struct Evaluator {
  Kernel& k;
  const ClockSet& D;
  Fuel fuel;
  Telescope empty;

  ExprPtr norm(const ExprPtr& e) { return k.whnf(D, empty, e, fuel, true); }

  ExprPtr content(const ExprPtr& s) {
    ExprPtr w = norm(s);
    if (w->kind != Kind::Next) {
      throw NotObservable("expected a next-value, got " + print(w));
    }
    return subst(w->kids[0], content_map(w->dsubst));
  }

  Substitution content_map(const DSubst& xi) {
    Substitution m;
    for (auto& ent : xi) m[ent.var] = content(ent.term);
    return m;
  }

  Observation obs(const ExprPtr& t, const ExprPtr& A, int n) {
    ExprPtr w = norm(A);
    switch (w->kind) {
      case Kind::TyUnit:
        return Observation::star();
      case Kind::TyBool: {
        ExprPtr v = norm(t);
        if (v->kind == Kind::True) return Observation::boolean(true);
        if (v->kind == Kind::False) return Observation::boolean(false);
        throw NotObservable("boolean did not normalize: " + print(v));
      }
      case Kind::TyNat: {
        std::uint64_t c = 0;
        ExprPtr cur = t;
        for (;;) {
          ExprPtr v = norm(cur);
          if (v->kind == Kind::Zero) return Observation::numeral(c);
          if (v->kind == Kind::Succ) {
            ++c;
            cur = v->kids[0];
            continue;
          }
          throw NotObservable("numeral did not normalize: " + print(v));
        }
      }
      case Kind::TySigma: {
        Observation a = obs(mk::fst(t), w->kids[0], n);
        Observation b =
            obs(mk::snd(t), subst1(w->kids[1], w->name, mk::fst(t)), n);
        return Observation::pairv(std::move(a), std::move(b));
      }
      case Kind::TyLater: {
        if (n <= 1) return Observation::star();
        ExprPtr v = norm(t);
        if (v->kind != Kind::Next || !(v->clock == w->clock)) {
          throw NotObservable("later-value did not normalize: " + print(v));
        }
        ExprPtr body = subst(v->kids[0], content_map(v->dsubst));
        ExprPtr B = subst(w->kids[0], content_map(w->dsubst));
        return Observation::laterv(obs(body, B, n - 1));
      }
      default:
        throw NotObservable("type is not observable: " + print(w));
    }
  }
};

}  // namespace

Observation eval_at_depth(Kernel& k, const ClockSet& D, const ExprPtr& t,
                          const ExprPtr& A, int n) {
  if (n < 1) throw NotObservable("depth must be at least 1");
  // Generous budget: depth-n observation unfolds each fix at most n times per
  // stream position, but auxiliary definitions need headroom.
  int budget = (k.default_fuel < 64 ? 64 : k.default_fuel) * (n + 4) * 16;
  Evaluator ev{k, D, Fuel{budget}, {}};
  return ev.obs(t, A, n);
}

Observation truncate_observation(const Observation& o, int m) {
  switch (o.tag) {
    case Observation::Tag::LaterV:
      if (m <= 1) return Observation::star();
      return Observation::laterv(truncate_observation(o.kids[0], m - 1));
    case Observation::Tag::PairV:
      return Observation::pairv(truncate_observation(o.kids[0], m),
                                truncate_observation(o.kids[1], m));
    default:
      return o;
  }
}

bool prefix_agree(Kernel& k, const ClockSet& D, const ExprPtr& t,
                  const ExprPtr& u, const ExprPtr& A, int max_depth) {
  for (int d = 1; d <= max_depth; ++d) {
    if (!(eval_at_depth(k, D, t, A, d) == eval_at_depth(k, D, u, A, d))) {
      return false;
    }
  }
  return true;
}

namespace {

std::string tuple_form(const Observation& o) {
  switch (o.tag) {
    case Observation::Tag::Star: return "★";
    case Observation::Tag::BoolV: return o.b ? "true" : "false";
    case Observation::Tag::NatV: return std::to_string(o.n);
    case Observation::Tag::PairV:
      return "(" + tuple_form(o.kids[0]) + " , " + tuple_form(o.kids[1]) + ")";
    case Observation::Tag::LaterV:
      return "▶" + tuple_form(o.kids[0]);
  }
  return "?";
}

}  // namespace

std::string print_observation(const Observation& o) {
  // Stream-shaped observations flatten to a bracketed prefix.
  std::vector<std::string> elems;
  const Observation* cur = &o;
  bool flat = false;
  for (;;) {
    if (cur->tag == Observation::Tag::Star) {
      flat = true;
      break;
    }
    if (cur->tag == Observation::Tag::PairV &&
        (cur->kids[1].tag == Observation::Tag::LaterV ||
         cur->kids[1].tag == Observation::Tag::Star)) {
      elems.push_back(tuple_form(cur->kids[0]));
      if (cur->kids[1].tag == Observation::Tag::Star) {
        flat = true;
        break;
      }
      cur = &cur->kids[1].kids[0];
      continue;
    }
    break;
  }
  if (flat && !elems.empty()) {
    std::string s = "[";
    for (size_t i = 0; i < elems.size(); ++i) {
      if (i) s += ",";
      s += elems[i];
    }
    return s + "]";
  }
  return tuple_form(o);
}

}  // namespace gdtt
