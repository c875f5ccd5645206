#include <algorithm>

#include "senscheck/syntax.hpp"

namespace senscheck {

namespace {

class Parser {
public:
  Parser(std::vector<Token> toks, ParseOptions opts)
      : toks_(std::move(toks)), opts_(std::move(opts)) {
    for (const auto& p : opts_.extern_prims) prims_.push_back(p);
  }

  SourceProgram program() {
    SourceProgram prog;
    while (at_kw("primitive")) prog.prelude.push_back(decl());
    if (at_kw("check")) {
      next();
      prog.body = term();
      expect(Tok::Colon, "':'");
      prog.goal = type(/*restricted=*/true);
    } else {
      prog.body = term();
    }
    expect(Tok::Eof, "end of input");
    return prog;
  }

  std::vector<std::pair<std::string, Type>> prelude_file() {
    std::vector<std::pair<std::string, Type>> decls;
    while (at_kw("primitive")) decls.push_back(decl());
    expect(Tok::Eof, "end of input");
    return decls;
  }

  Sens sens_only() {
    Sens s = sens(false);
    expect(Tok::Eof, "end of input");
    return s;
  }

  Type type_only() {
    Type t = type(false);
    expect(Tok::Eof, "end of input");
    return t;
  }

private:
  std::vector<Token> toks_;
  ParseOptions opts_;
  size_t pos_ = 0;
  std::vector<std::string> bound_;  // term variables in scope
  std::vector<std::string> prims_;  // declared primitive names

  const Token& peek(int ahead = 0) const {
    size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }
  bool eat(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool eat_kw(const char* kw) {
    if (!at_kw(kw)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw Diag(peek().loc, "expected " + expected + ", found '" + peek().text + "'");
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return next();
  }
  Token expect_kw(const char* kw) {
    if (!at_kw(kw)) fail(std::string("'") + kw + "'");
    return next();
  }
  std::string ident() {
    if (!at(Tok::Ident)) fail("identifier");
    return next().text;
  }

  std::pair<std::string, Type> decl() {
    expect_kw("primitive");
    std::string name = ident();
    expect(Tok::Colon, "':'");
    Type ty = type(/*restricted=*/true);
    expect(Tok::Semi, "';'");
    prims_.push_back(name);
    return {name, ty};
  }

  Kind kind() {
    if (eat_kw("size")) return Kind::Size;
    if (eat_kw("sens")) return Kind::Sens;
    fail("'size' or 'sens'");
  }

  // --- index expressions ---------------------------------------------------

  Rational number() {
    Token t = expect(Tok::Number, "number");
    auto q = parse_rational(t.text);
    if (!q) throw Diag(t.loc, "malformed number '" + t.text + "'");
    return *q;
  }

  Sens sens(bool restricted) {
    Sens acc = sens_term(restricted);
    while (eat(Tok::Plus)) acc = Sens::plus(acc, sens_term(restricted));
    return acc;
  }

  Sens sens_term(bool restricted) {
    Sens acc = sens_atom(restricted);
    while (eat(Tok::Star)) acc = Sens::times(acc, sens_atom(restricted));
    return acc;
  }

  void check_extended_allowed(bool restricted, SrcLoc loc, const char* what) {
    if (restricted && !opts_.allow_extended_annotations)
      throw Diag(loc, std::string(what) +
                          " is not allowed in annotations "
                          "(pass --allow-extended-annotations to enable)");
  }

  Sens sens_atom(bool restricted) {
    SrcLoc here = peek().loc;
    if (at(Tok::Number)) return Sens::konst(ExtReal(number()));
    if (eat_kw("inf")) return Sens::infinity();
    if (at(Tok::Ident)) return Sens::var(next().text);
    if (at_kw("max")) {
      check_extended_allowed(restricted, here, "max");
      next();
      expect(Tok::LParen, "'('");
      Sens l = sens(restricted);
      expect(Tok::Comma, "','");
      Sens r = sens(restricted);
      expect(Tok::RParen, "')'");
      return Sens::smax(l, r);
    }
    if (at_kw("sup")) {
      check_extended_allowed(restricted, here, "sup");
      next();
      expect(Tok::LParen, "'('");
      std::string binder = ident();
      expect(Tok::Colon, "':'");
      Kind k = kind();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return Sens::sup(binder, k, sens(restricted));
    }
    if (at_kw("scase")) {
      check_extended_allowed(restricted, here, "scase");
      next();
      Sens scrut = sens(restricted);
      expect(Tok::LBrace, "'{'");
      Token zero = expect(Tok::Number, "'0'");
      if (zero.text != "0") throw Diag(zero.loc, "case pattern must be 0");
      expect(Tok::Arrow, "'=>'");
      Sens z = sens(restricted);
      expect(Tok::Pipe, "'|'");
      std::string binder = ident();
      expect(Tok::Plus, "'+'");
      Token one = expect(Tok::Number, "'1'");
      if (one.text != "1") throw Diag(one.loc, "successor pattern must be +1");
      expect(Tok::Arrow, "'=>'");
      Sens s = sens(restricted);
      expect(Tok::RBrace, "'}'");
      return Sens::scase(scrut, z, binder, s);
    }
    if (eat(Tok::LParen)) {
      Sens inner = sens(restricted);
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("an index expression");
  }

  // --- types ---------------------------------------------------------------

  Type type(bool restricted) {
    if (at(Tok::Bang)) {
      next();
      expect(Tok::LBracket, "'['");
      Sens ann = sens(restricted);
      expect(Tok::RBracket, "']'");
      Type dom = type_amp(restricted);
      expect(Tok::Lolli, "'-o'");
      Type cod = type(restricted);
      return Type::lolli(ann, dom, cod);
    }
    return type_amp(restricted);
  }

  Type type_amp(bool restricted) {
    Type acc = type_tensor(restricted);
    while (eat(Tok::Amp)) acc = Type::with(acc, type_tensor(restricted));
    return acc;
  }

  Type type_tensor(bool restricted) {
    Type acc = type_atom(restricted);
    while (eat(Tok::Star)) acc = Type::tensor(acc, type_atom(restricted));
    return acc;
  }

  Type type_atom(bool restricted) {
    if (eat_kw("real")) {
      if (eat(Tok::LBracket)) {
        Sens idx = sens(restricted);
        expect(Tok::RBracket, "']'");
        return Type::real_sing(idx);
      }
      return Type::real();
    }
    if (eat_kw("nat")) {
      expect(Tok::LBracket, "'['");
      Sens idx = sens(restricted);
      expect(Tok::RBracket, "']'");
      return Type::nat_sing(idx);
    }
    if (eat_kw("forall")) {
      std::string binder = ident();
      expect(Tok::Colon, "':'");
      Kind k = kind();
      expect(Tok::Dot, "'.'");
      return Type::forall(binder, k, type(restricted));
    }
    if (eat(Tok::LParen)) {
      Type inner = type(restricted);
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::Ident)) {
      std::string head = next().text;
      std::vector<Type::Arg> args;
      if (eat(Tok::LParen)) {
        args.emplace_back(type(restricted));
        while (eat(Tok::Comma)) args.emplace_back(type(restricted));
        expect(Tok::RParen, "')'");
      }
      while (at(Tok::LBracket)) {
        next();
        args.emplace_back(sens(restricted));
        expect(Tok::RBracket, "']'");
      }
      return Type::opaque(head, std::move(args));
    }
    fail("a type");
  }

  // --- terms ---------------------------------------------------------------

  bool is_bound(const std::string& name) const {
    return std::find(bound_.begin(), bound_.end(), name) != bound_.end();
  }

  Term term() {
    SrcLoc here = peek().loc;
    if (at_kw("fun")) {
      next();
      expect(Tok::LParen, "'('");
      std::string x = ident();
      expect(Tok::Colon, "':'");
      expect(Tok::LBracket, "'['");
      Sens ann = sens(/*restricted=*/true);
      expect(Tok::RBracket, "']'");
      Type ty = type(/*restricted=*/true);
      expect(Tok::RParen, "')'");
      expect(Tok::LBrace, "'{'");
      bound_.push_back(x);
      Term body = term();
      bound_.pop_back();
      expect(Tok::RBrace, "'}'");
      return Term::lam(x, ann, ty, body, here);
    }
    if (at_kw("fix")) {
      next();
      expect(Tok::LParen, "'('");
      std::string x = ident();
      expect(Tok::Colon, "':'");
      Type ty = type(/*restricted=*/true);
      expect(Tok::RParen, "')'");
      expect(Tok::LBrace, "'{'");
      bound_.push_back(x);
      Term body = term();
      bound_.pop_back();
      expect(Tok::RBrace, "'}'");
      return Term::fix(x, ty, body, here);
    }
    if (at_kw("idxlam")) {
      next();
      expect(Tok::LParen, "'('");
      std::string i = ident();
      expect(Tok::Colon, "':'");
      Kind k = kind();
      expect(Tok::RParen, "')'");
      expect(Tok::LBrace, "'{'");
      Term body = term();
      expect(Tok::RBrace, "'}'");
      return Term::idx_lam(i, k, body, here);
    }
    if (at_kw("let")) {
      next();
      expect(Tok::LParen, "'('");
      std::string x = ident();
      expect(Tok::Comma, "','");
      std::string y = ident();
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      Term scrut = term();
      expect_kw("in");
      bound_.push_back(x);
      bound_.push_back(y);
      Term body = term();
      bound_.pop_back();
      bound_.pop_back();
      return Term::let_pair(x, y, scrut, body, here);
    }
    if (at_kw("case")) {
      next();
      Term scrut = term();
      expect_kw("return");
      Type ret = type(/*restricted=*/true);
      expect_kw("of");
      Token zero = expect(Tok::Number, "'0'");
      if (zero.text != "0") throw Diag(zero.loc, "case pattern must be 0");
      expect(Tok::Arrow, "'=>'");
      Term zbody = term();
      expect(Tok::Pipe, "'|'");
      std::string binder = ident();
      expect(Tok::LBracket, "'['");
      std::string idx = ident();
      expect(Tok::RBracket, "']'");
      expect(Tok::Plus, "'+'");
      Token one = expect(Tok::Number, "'1'");
      if (one.text != "1") throw Diag(one.loc, "successor pattern must be +1");
      expect(Tok::Arrow, "'=>'");
      bound_.push_back(binder);
      Term sbody = term();
      bound_.pop_back();
      return Term::nat_case(scrut, ret, zbody, binder, idx, sbody, here);
    }
    return app_term();
  }

  bool at_atom_start() const {
    return at(Tok::Ident) || at(Tok::Number) || at(Tok::LParen) || at(Tok::Lt) ||
           at_kw("succ") || at_kw("pi1") || at_kw("pi2") || at_kw("fun") ||
           at_kw("fix") || at_kw("idxlam");
  }

  Term app_term() {
    Term acc = atom();
    for (;;) {
      SrcLoc here = peek().loc;
      if (at(Tok::LBracket)) {
        next();
        Sens idx = sens(/*restricted=*/true);
        expect(Tok::RBracket, "']'");
        acc = Term::idx_app(acc, idx, here);
        continue;
      }
      if (at_atom_start()) {
        acc = Term::app(acc, atom(), here);
        continue;
      }
      return acc;
    }
  }

  Term atom() {
    SrcLoc here = peek().loc;
    if (at(Tok::Ident)) {
      std::string name = next().text;
      if (is_bound(name)) return Term::var(name, here);
      return Term::prim(name, here);
    }
    if (at(Tok::Number)) {
      Rational v = number();
      if (is_integer(v) && toks_[pos_ - 1].text.find('.') == std::string::npos &&
          toks_[pos_ - 1].text.find('/') == std::string::npos)
        return Term::nat_lit(to_uint(v), here);
      return Term::real_lit(v, here);
    }
    if (eat_kw("succ")) return Term::succ(atom(), here);
    if (eat_kw("pi1")) return Term::proj(1, atom(), here);
    if (eat_kw("pi2")) return Term::proj(2, atom(), here);
    if (at_kw("fun") || at_kw("fix") || at_kw("idxlam")) return term();
    if (eat(Tok::Lt)) {
      Term l = term();
      expect(Tok::Comma, "','");
      Term r = term();
      expect(Tok::Gt, "'>'");
      return Term::with_pair(l, r, here);
    }
    if (eat(Tok::LParen)) {
      Term l = term();
      if (eat(Tok::Comma)) {
        Term r = term();
        expect(Tok::RParen, "')'");
        return Term::tensor_pair(l, r, here);
      }
      expect(Tok::RParen, "')'");
      return l;
    }
    fail("a term");
  }
};

}  // namespace

SourceProgram parse_program(const std::string& text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return p.program();
}

std::vector<std::pair<std::string, Type>> parse_prelude(const std::string& text,
                                                        const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return p.prelude_file();
}

Sens parse_sens(const std::string& text) {
  ParseOptions opts;
  opts.allow_extended_annotations = true;
  Parser p(lex(text), opts);
  return p.sens_only();
}

Type parse_type(const std::string& text) {
  ParseOptions opts;
  opts.allow_extended_annotations = true;
  Parser p(lex(text), opts);
  return p.type_only();
}

}  // namespace senscheck
