#include "gdtt/parser.hpp"

#include <cstdint>
#include <map>
#include <set>

#include "gdtt/subst.hpp"

namespace gdtt {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Ident,
  Number,
  Sym,  // punctuation / operator, text in `text`
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t number{0};
  int line{1}, col{1};
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  // Recognizes a UTF-8 alias at the current position; returns its ASCII
  // spelling and byte length, or empty.
  std::pair<std::string, size_t> unicode_alias() const {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"▶", "Later"},   // ▶
        {"∀", "forall"},  // ∀
        {"Λ", "clam"},    // Λ
        {"λ", "\\"},      // λ
        {"⊛", "<*>"},     // ⊛
        {"→", "->"},      // →
        {"←", "<-"},      // ←
    };
    for (auto& [utf, ascii] : table) {
      if (src.compare(pos, utf.size(), utf) == 0) return {ascii, utf.size()};
    }
    return {"", 0};
  }

  Token next() {
    for (;;) {
      while (pos < src.size() &&
             (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
              src[pos] == '\n')) {
        advance();
      }
      if (peek() == '-' && peek(1) == '-') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = peek();
    if (auto [ascii, len] = unicode_alias(); len > 0) {
      advance(len);
      if (ascii == "Later" || ascii == "forall" || ascii == "clam") {
        t.kind = Tok::Ident;
      } else {
        t.kind = Tok::Sym;
      }
      t.text = ascii;
      return t;
    }
    if (ident_start(c)) {
      std::string s;
      while (ident_char(peek())) {
        s += peek();
        advance();
      }
      // `c*` / `c+` are single operator tokens when written without a space.
      if (s == "c" && (peek() == '*' || peek() == '+')) {
        t.kind = Tok::Sym;
        t.text = std::string("c") + peek();
        advance();
        return t;
      }
      t.kind = Tok::Ident;
      t.text = s;
      return t;
    }
    if (c >= '0' && c <= '9') {
      std::uint64_t n = 0;
      while (peek() >= '0' && peek() <= '9') {
        n = n * 10 + static_cast<std::uint64_t>(peek() - '0');
        advance();
      }
      t.kind = Tok::Number;
      t.number = n;
      return t;
    }
    t.kind = Tok::Sym;
    switch (c) {
      case '(': case ')': case '[': case ']': case '{': case '}':
      case ',': case '.': case ';': case '@': case '*': case '+':
      case '\\': case '|':
        t.text = std::string(1, c);
        advance();
        return t;
      case ':':
        advance();
        if (peek() == '=') {
          advance();
          t.text = ":=";
        } else {
          t.text = ":";
        }
        return t;
      case '=':
        advance();
        if (peek() == '=') {
          advance();
          t.text = "==";
          return t;
        }
        fail("unexpected '='; did you mean '==' or ':='?");
      case '-':
        advance();
        if (peek() == '>') {
          advance();
          t.text = "->";
          return t;
        }
        fail("unexpected '-'");
      case '<':
        advance();
        if (peek() == '-') {
          advance();
          t.text = "<-";
          return t;
        }
        if (peek() == '*' && peek(1) == '>') {
          advance(2);
          t.text = "<*>";
          return t;
        }
        fail("unexpected '<'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const std::set<std::string> kKeywords = {
    "Unit", "Bool", "Nat",  "U",      "Pi",      "Sg",      "Id",   "El",
    "Later", "forall", "fst", "snd",  "tt",      "true",    "false", "if",
    "as",   "then", "else", "succ",   "natrec",  "refl",    "J",    "cUnit",
    "cBool", "cNat", "cPi",  "cSg",   "cLater",  "cForall", "next", "fix",
    "prev", "clam", "reflect", "def", "eq",      "tyeq",    "clock", "case",
    "of",   "inl",  "inr",  "k0"};

struct Parser {
  Lexer lex;
  Token tok;
  int fresh = 0;

  explicit Parser(const std::string& src) : lex(src) { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok.line, tok.col, msg);
  }

  void bump() { tok = lex.next(); }

  bool at_sym(const std::string& s) const {
    return tok.kind == Tok::Sym && tok.text == s;
  }
  bool at_kw(const std::string& s) const {
    return tok.kind == Tok::Ident && tok.text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'");
    bump();
  }
  void expect_kw(const std::string& s) {
    if (!at_kw(s)) fail("expected '" + s + "'");
    bump();
  }

  std::string expect_name() {
    if (tok.kind != Tok::Ident) fail("expected an identifier");
    if (kKeywords.count(tok.text) && tok.text != "k0") {
      fail("'" + tok.text + "' is a keyword");
    }
    std::string s = tok.text;
    bump();
    return s;
  }

  std::string expect_var() {
    std::string s = expect_name();
    if (s == "k0") fail("'k0' is the constant clock, not a variable");
    return s;
  }

  Clock parse_clock() {
    if (tok.kind != Tok::Ident) fail("expected a clock");
    std::string s = tok.text;
    bump();
    if (s == "k0") return Clock::k0();
    if (kKeywords.count(s)) fail("'" + s + "' is a keyword");
    return Clock::variable(s);
  }

  std::string fresh_name(const char* base, const std::vector<ExprPtr>& avoid) {
    std::set<std::string> bad;
    for (auto& e : avoid) {
      if (!e) continue;
      auto fv = free_vars(e);
      bad.insert(fv.terms.begin(), fv.terms.end());
    }
    std::string n = base;
    while (bad.count(n)) n = std::string(base) + std::to_string(fresh++);
    return n;
  }

  // A type position: terms (universe codes) are coerced through El.
  static ExprPtr coerce_ty(ExprPtr e) {
    if (e->is_type()) return e;
    return mk::el(std::move(e));
  }

  // --- delayed substitutions ----------------------------------------------

  // Parses `[k]` or `[k; x <- t, y <- u]`.
  std::pair<Clock, DSubst> parse_dsubst() {
    expect_sym("[");
    Clock k = parse_clock();
    DSubst xi;
    if (at_sym(";")) {
      bump();
      for (;;) {
        std::string x = expect_var();
        expect_sym("<-");
        xi.push_back({x, parse_expr()});
        if (at_sym(",")) {
          bump();
          continue;
        }
        break;
      }
    }
    expect_sym("]");
    return {k, std::move(xi)};
  }

  // --- expressions ----------------------------------------------------------

  bool starts_atom() const {
    if (tok.kind == Tok::Number) return true;
    if (at_sym("(")) return true;
    if (tok.kind != Tok::Ident) return false;
    static const std::set<std::string> atom_kws = {
        "Unit", "Bool", "Nat", "U", "tt", "true", "false",
        "refl", "cUnit", "cBool", "cNat"};
    return !kKeywords.count(tok.text) || atom_kws.count(tok.text);
  }

  ExprPtr parse_atom() {
    if (tok.kind == Tok::Number) {
      std::uint64_t n = tok.number;
      bump();
      return mk::lit(n);
    }
    if (at_sym("(")) {
      bump();
      ExprPtr e = parse_expr();
      if (at_sym(",")) {
        std::vector<ExprPtr> parts{e};
        while (at_sym(",")) {
          bump();
          parts.push_back(parse_expr());
        }
        expect_sym(")");
        ExprPtr acc = parts.back();
        for (size_t i = parts.size() - 1; i-- > 0;) {
          acc = mk::pair(parts[i], acc);
        }
        return acc;
      }
      expect_sym(")");
      return e;
    }
    if (tok.kind != Tok::Ident) fail("expected an expression");
    std::string s = tok.text;
    if (s == "Unit") { bump(); return mk::ty_unit(); }
    if (s == "Bool") { bump(); return mk::ty_bool(); }
    if (s == "Nat") { bump(); return mk::ty_nat(); }
    if (s == "tt") { bump(); return mk::tt(); }
    if (s == "true") { bump(); return mk::tru(); }
    if (s == "false") { bump(); return mk::fls(); }
    if (s == "refl") { bump(); return mk::refl(); }
    if (s == "cUnit") { bump(); return mk::code_unit(); }
    if (s == "cBool") { bump(); return mk::code_bool(); }
    if (s == "cNat") { bump(); return mk::code_nat(); }
    if (s == "U") {
      bump();
      ClockSet ks;
      if (at_sym("{")) {
        bump();
        if (!at_sym("}")) {
          for (;;) {
            ks.insert(expect_var());
            if (at_sym(",")) {
              bump();
              continue;
            }
            break;
          }
        }
        expect_sym("}");
      }
      return mk::universe(std::move(ks));
    }
    if (kKeywords.count(s)) fail("unexpected '" + s + "'");
    bump();
    if (at_sym("[")) {
      // Instantiation of a clock-parameterized definition: name[k, ...].
      bump();
      std::vector<Clock> args;
      for (;;) {
        args.push_back(parse_clock());
        if (at_sym(",")) {
          bump();
          continue;
        }
        break;
      }
      expect_sym("]");
      return mk::cst(s, std::move(args));
    }
    return mk::var(s);
  }

  // Application level: keyword-led prefix forms, juxtaposition, `@ k`.
  ExprPtr parse_app() {
    ExprPtr acc;
    if (at_kw("fst")) {
      bump();
      acc = mk::fst(parse_atom());
    } else if (at_kw("snd")) {
      bump();
      acc = mk::snd(parse_atom());
    } else if (at_kw("succ")) {
      bump();
      acc = mk::succ(parse_atom());
    } else if (at_kw("El")) {
      bump();
      acc = mk::el(parse_atom());
    } else if (at_kw("inl")) {
      bump();
      acc = mk::pair(mk::tru(), parse_atom());
    } else if (at_kw("inr")) {
      bump();
      acc = mk::pair(mk::fls(), parse_atom());
    } else if (at_kw("Id")) {
      bump();
      ExprPtr a = coerce_ty(parse_atom());
      ExprPtr t = parse_atom();
      ExprPtr u = parse_atom();
      acc = mk::id(a, t, u);
    } else if (at_kw("reflect")) {
      bump();
      ExprPtr p = parse_atom();
      ExprPtr t = parse_atom();
      acc = mk::reflect(p, t);
    } else if (at_kw("cForall")) {
      bump();
      acc = mk::code_forall(parse_atom());
    } else if (at_kw("cLater")) {
      bump();
      expect_sym("[");
      Clock k = parse_clock();
      expect_sym("]");
      acc = mk::code_later(k, parse_atom());
    } else if (at_kw("Later")) {
      bump();
      auto [k, xi] = parse_dsubst();
      acc = mk::later(k, std::move(xi), coerce_ty(parse_atom()));
    } else if (at_kw("next")) {
      bump();
      auto [k, xi] = parse_dsubst();
      acc = mk::next(k, std::move(xi), parse_atom());
    } else if (at_kw("prev")) {
      bump();
      expect_sym("[");
      std::string k = expect_var();
      expect_sym("]");
      acc = mk::prev(k, parse_atom());
    } else if (at_kw("natrec")) {
      bump();
      expect_sym("(");
      std::string x = expect_var();
      expect_sym(".");
      ExprPtr motive = coerce_ty(parse_expr());
      expect_sym(")");
      ExprPtr base = parse_atom();
      expect_sym("(");
      std::string n = expect_var();
      std::string ih = expect_var();
      expect_sym(".");
      ExprPtr step = parse_expr();
      expect_sym(")");
      ExprPtr scrut = parse_atom();
      acc = mk::natelim(x, motive, base, n, ih, step, scrut);
    } else if (at_kw("J")) {
      bump();
      expect_sym("(");
      std::string x = expect_var();
      std::string y = expect_var();
      std::string p = expect_var();
      expect_sym(".");
      ExprPtr motive = coerce_ty(parse_expr());
      expect_sym(")");
      expect_sym("(");
      std::string z = expect_var();
      expect_sym(".");
      ExprPtr d = parse_expr();
      expect_sym(")");
      ExprPtr q = parse_atom();
      acc = mk::j(x, y, p, motive, z, d, q);
    } else {
      acc = parse_atom();
    }
    for (;;) {
      if (at_sym("@")) {
        bump();
        acc = mk::clock_app(acc, parse_clock());
        continue;
      }
      if (starts_atom()) {
        acc = mk::app(acc, parse_atom());
        continue;
      }
      break;
    }
    return acc;
  }

  ExprPtr parse_prod() {
    ExprPtr a = parse_app();
    if (at_sym("*")) {
      bump();
      return mk::sigma("_", coerce_ty(a), coerce_ty(parse_prod()));
    }
    if (at_sym("c*")) {
      bump();
      return mk::code_sigma("_", a, parse_prod());
    }
    return a;
  }

  // Applicative splat: f <*>[k; ...] a  ==>  next[k; ...; g <- f, x <- a](g x)
  ExprPtr parse_splat() {
    ExprPtr a = parse_prod();
    while (at_sym("<*>")) {
      bump();
      auto [k, xi] = parse_dsubst();
      ExprPtr b = parse_prod();
      std::string g = fresh_name("g", {a, b});
      std::string x = fresh_name("x", {a, b});
      xi.push_back({g, a});
      xi.push_back({x, b});
      a = mk::next(k, std::move(xi), mk::app(mk::var(g), mk::var(x)));
    }
    return a;
  }

  ExprPtr parse_sum() {
    ExprPtr a = parse_splat();
    if (at_sym("c+")) {
      bump();
      ExprPtr b = parse_sum();
      std::string bb = fresh_name("b", {a, b});
      return mk::code_sigma(bb, mk::code_bool(),
                            mk::ifte(mk::var(bb), a, b));
    }
    return a;
  }

  ExprPtr parse_arrow() {
    ExprPtr a = parse_sum();
    if (at_sym("->")) {
      bump();
      return mk::pi("_", coerce_ty(a), coerce_ty(parse_expr()));
    }
    return a;
  }

  // One lambda binder: `x` or `(x : A)`.
  std::pair<std::string, ExprPtr> parse_binder() {
    if (at_sym("(")) {
      bump();
      std::string x = expect_var();
      expect_sym(":");
      ExprPtr a = coerce_ty(parse_expr());
      expect_sym(")");
      return {x, a};
    }
    return {expect_var(), nullptr};
  }

  ExprPtr parse_expr() {
    if (at_sym("\\")) {
      bump();
      std::vector<std::pair<std::string, ExprPtr>> binders;
      while (!at_sym(".")) binders.push_back(parse_binder());
      expect_sym(".");
      ExprPtr body = parse_expr();
      for (size_t i = binders.size(); i-- > 0;) {
        auto& [x, a] = binders[i];
        body = a ? mk::lam_ann(x, a, body) : mk::lam(x, body);
      }
      return body;
    }
    if (at_kw("Pi") || at_kw("Sg") || at_kw("cPi") || at_kw("cSg")) {
      std::string head = tok.text;
      bump();
      expect_sym("(");
      std::string x = expect_var();
      expect_sym(":");
      ExprPtr dom = parse_expr();
      expect_sym(")");
      expect_sym(".");
      ExprPtr cod = parse_expr();
      if (head == "Pi") return mk::pi(x, coerce_ty(dom), coerce_ty(cod));
      if (head == "Sg") return mk::sigma(x, coerce_ty(dom), coerce_ty(cod));
      if (head == "cPi") return mk::code_pi(x, dom, cod);
      return mk::code_sigma(x, dom, cod);
    }
    if (at_kw("forall")) {
      bump();
      std::string k = expect_var();
      expect_sym(".");
      return mk::forall(k, coerce_ty(parse_expr()));
    }
    if (at_kw("clam")) {
      bump();
      std::string k = expect_var();
      expect_sym(".");
      return mk::clock_abs(k, parse_expr());
    }
    if (at_kw("fix")) {
      bump();
      expect_sym("[");
      Clock k = parse_clock();
      expect_sym("]");
      auto [x, a] = parse_binder();
      expect_sym(".");
      ExprPtr body = parse_expr();
      return a ? mk::fix_ann(k, x, a, body) : mk::fix(k, x, body);
    }
    if (at_kw("if")) {
      bump();
      ExprPtr c = parse_app();
      std::string x;
      ExprPtr motive;
      if (at_kw("as")) {
        bump();
        x = expect_var();
        expect_sym(".");
        motive = coerce_ty(parse_app());
      }
      expect_kw("then");
      ExprPtr t = parse_expr();
      expect_kw("else");
      ExprPtr e = parse_expr();
      if (motive) return mk::ifte_motive(x, motive, c, t, e);
      return mk::ifte(c, t, e);
    }
    if (at_kw("case")) return parse_case();
    return parse_arrow();
  }

  // case[a, b] s as x. C of inl y. t | inr z. u
  //
  // Sums are encoded: El (a c+ b) = Sg (bb : Bool). El (if bb then a else b),
  // so the branch split is a motive-annotated if applied to the payload:
  //   (if (fst s) as bb. Pi (y0 : El (if bb then a else b)). C[(bb , y0)/x]
  //    then \y. t else \z. u) (snd s)
  ExprPtr parse_case() {
    expect_kw("case");
    expect_sym("[");
    ExprPtr ca = parse_expr();
    expect_sym(",");
    ExprPtr cb = parse_expr();
    expect_sym("]");
    ExprPtr s = parse_app();
    expect_kw("as");
    std::string x = expect_var();
    expect_sym(".");
    ExprPtr motive = coerce_ty(parse_app());
    expect_kw("of");
    expect_kw("inl");
    std::string y = expect_var();
    expect_sym(".");
    ExprPtr t = parse_expr();
    expect_sym("|");
    expect_kw("inr");
    std::string z = expect_var();
    expect_sym(".");
    ExprPtr u = parse_expr();

    std::string bb = fresh_name("b", {ca, cb, motive, s});
    std::string y0 = fresh_name("y", {ca, cb, motive, s});
    ExprPtr payload_ty = mk::el(mk::ifte(mk::var(bb), ca, cb));
    ExprPtr branch_pi =
        mk::pi(y0, payload_ty,
               subst1(motive, x, mk::pair(mk::var(bb), mk::var(y0))));
    ExprPtr split = mk::ifte_motive(bb, branch_pi, mk::fst(s),
                                    mk::lam(y, t), mk::lam(z, u));
    return mk::app(split, mk::snd(s));
  }

  // --- declarations ---------------------------------------------------------

  std::vector<std::string> parse_clock_params() {
    std::vector<std::string> ps;
    if (at_sym("[")) {
      bump();
      for (;;) {
        ps.push_back(expect_var());
        if (at_sym(",")) {
          bump();
          continue;
        }
        break;
      }
      expect_sym("]");
    }
    return ps;
  }

  SourceFile parse_source() {
    SourceFile f;
    while (tok.kind != Tok::End) {
      Decl d;
      d.line = tok.line;
      d.col = tok.col;
      if (at_kw("clock")) {
        bump();
        d.kind = Decl::K::ClockDecl;
        d.name = expect_var();
      } else if (at_kw("def")) {
        bump();
        d.kind = Decl::K::Def;
        d.name = expect_var();
        d.clock_params = parse_clock_params();
        expect_sym(":");
        d.type = Parser::coerce_ty(parse_expr());
        expect_sym(":=");
        d.term = parse_expr();
      } else if (at_kw("eq")) {
        bump();
        d.kind = Decl::K::Eq;
        d.clock_params = parse_clock_params();
        d.lhs = parse_expr();
        expect_sym("==");
        d.rhs = parse_expr();
        expect_sym(":");
        d.type = Parser::coerce_ty(parse_expr());
      } else if (at_kw("tyeq")) {
        bump();
        d.kind = Decl::K::TyEq;
        d.clock_params = parse_clock_params();
        d.lhs = Parser::coerce_ty(parse_expr());
        expect_sym("==");
        d.rhs = Parser::coerce_ty(parse_expr());
      } else {
        fail("expected a declaration (def, eq, tyeq, clock)");
      }
      f.decls.push_back(std::move(d));
    }
    return f;
  }
};

// ---------------------------------------------------------------------------
// Resolution: rewrite free Var occurrences of top-level names to Const.
// ---------------------------------------------------------------------------

struct Resolver {
  const std::set<std::string>& defs;

  ExprPtr go(const ExprPtr& e, std::set<std::string> bound) const {
    if (!e) return e;
    switch (e->kind) {
      case Kind::Var:
        if (defs.count(e->name) && !bound.count(e->name)) {
          return mk::cst(e->name);
        }
        return e;
      default:
        break;
    }
    Expr out = *e;
    bool changed = false;
    auto rec = [&](const ExprPtr& kid, const std::set<std::string>& b) {
      ExprPtr r = go(kid, b);
      if (r != kid) changed = true;
      return r;
    };
    // Delayed substitutions: entry terms in the outer scope, entry variables
    // bound sequentially and in the body.
    if (e->kind == Kind::TyLater || e->kind == Kind::Next) {
      std::set<std::string> inner = bound;
      for (size_t i = 0; i < out.dsubst.size(); ++i) {
        out.dsubst[i].term = rec(out.dsubst[i].term, inner);
        inner.insert(out.dsubst[i].var);
      }
      out.kids[0] = rec(out.kids[0], inner);
      return changed ? std::make_shared<const Expr>(std::move(out)) : e;
    }
    switch (e->kind) {
      case Kind::TyPi:
      case Kind::TySigma:
      case Kind::CodePi:
      case Kind::CodeSigma: {
        out.kids[0] = rec(out.kids[0], bound);
        auto b = bound;
        b.insert(e->name);
        out.kids[1] = rec(out.kids[1], b);
        break;
      }
      case Kind::Lam: {
        auto b = bound;
        b.insert(e->name);
        if (out.kids.size() == 2) {
          out.kids[0] = rec(out.kids[0], bound);
          out.kids[1] = rec(out.kids[1], b);
        } else {
          out.kids[0] = rec(out.kids[0], b);
        }
        break;
      }
      case Kind::Fix: {
        auto b = bound;
        b.insert(e->name);
        if (out.kids.size() == 2) {
          out.kids[0] = rec(out.kids[0], bound);
          out.kids[1] = rec(out.kids[1], b);
        } else {
          out.kids[0] = rec(out.kids[0], b);
        }
        break;
      }
      case Kind::If: {
        size_t i = 0;
        if (e->has_motive) {
          auto b = bound;
          b.insert(e->name);
          out.kids[0] = rec(out.kids[0], b);
          i = 1;
        }
        for (; i < out.kids.size(); ++i) out.kids[i] = rec(out.kids[i], bound);
        break;
      }
      case Kind::NatElim: {
        auto bm = bound;
        bm.insert(e->name);
        out.kids[0] = rec(out.kids[0], bm);
        out.kids[1] = rec(out.kids[1], bound);
        auto bs = bound;
        bs.insert(e->names[0]);
        bs.insert(e->names[1]);
        out.kids[2] = rec(out.kids[2], bs);
        out.kids[3] = rec(out.kids[3], bound);
        break;
      }
      case Kind::J: {
        auto bm = bound;
        bm.insert(e->names[0]);
        bm.insert(e->names[1]);
        bm.insert(e->names[2]);
        out.kids[0] = rec(out.kids[0], bm);
        auto bd = bound;
        bd.insert(e->names[3]);
        out.kids[1] = rec(out.kids[1], bd);
        out.kids[2] = rec(out.kids[2], bound);
        break;
      }
      default:
        for (auto& kid : out.kids) kid = rec(kid, bound);
        break;
    }
    return changed ? std::make_shared<const Expr>(std::move(out)) : e;
  }
};

}  // namespace

SourceFile parse_file(const std::string& src) {
  Parser p(src);
  SourceFile f = p.parse_source();
  std::set<std::string> names;
  for (auto& d : f.decls) {
    Resolver r{names};
    if (d.type) d.type = r.go(d.type, {});
    if (d.term) d.term = r.go(d.term, {});
    if (d.lhs) d.lhs = r.go(d.lhs, {});
    if (d.rhs) d.rhs = r.go(d.rhs, {});
    if (d.kind == Decl::K::Def) names.insert(d.name);
  }
  return f;
}

ExprPtr parse_expr_string(const std::string& src,
                          const std::vector<std::string>& def_names) {
  Parser p(src);
  ExprPtr e = p.parse_expr();
  if (p.tok.kind != Tok::End) p.fail("trailing input after expression");
  std::set<std::string> names(def_names.begin(), def_names.end());
  return Resolver{names}.go(e, {});
}

}  // namespace gdtt
