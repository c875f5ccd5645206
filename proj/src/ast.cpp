#include "senscheck/ast.hpp"

#include <functional>

namespace senscheck {

Sens Sens::wrap(SensNode n) {
  Sens s;
  s.p_ = std::make_shared<const SensNode>(std::move(n));
  return s;
}

Type Type::wrap(TypeNode n) {
  Type t;
  t.p_ = std::make_shared<const TypeNode>(std::move(n));
  return t;
}

Term Term::wrap(TermNode n) {
  Term t;
  t.p_ = std::make_shared<const TermNode>(std::move(n));
  return t;
}

std::string SrcLoc::str() const {
  return std::to_string(line) + ":" + std::to_string(col);
}

// ---------------------------------------------------------------------------
// Sens
// ---------------------------------------------------------------------------

Sens Sens::konst(ExtReal v) {
  SensNode n;
  n.tag = Tag::Const;
  n.value = std::move(v);
  return wrap(std::move(n));
}

Sens Sens::var(std::string name) {
  SensNode n;
  n.tag = Tag::Var;
  n.name = std::move(name);
  return wrap(std::move(n));
}

Sens Sens::plus(Sens l, Sens r) {
  SensNode n;
  n.tag = Tag::Plus;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Sens Sens::times(Sens l, Sens r) {
  SensNode n;
  n.tag = Tag::Times;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Sens Sens::smax(Sens l, Sens r) {
  SensNode n;
  n.tag = Tag::Max;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Sens Sens::sup(std::string binder, Kind k, Sens body) {
  SensNode n;
  n.tag = Tag::Sup;
  n.name = std::move(binder);
  n.binder_kind = k;
  n.a = std::move(body);
  return wrap(std::move(n));
}

Sens Sens::scase(Sens scrutinee, Sens zero, std::string binder, Sens succ) {
  SensNode n;
  n.tag = Tag::Case;
  n.a = std::move(scrutinee);
  n.b = std::move(zero);
  n.name = std::move(binder);
  n.c = std::move(succ);
  return wrap(std::move(n));
}

bool Sens::is_standard() const {
  switch (tag()) {
    case Tag::Const:
    case Tag::Var:
      return true;
    case Tag::Plus:
    case Tag::Times:
      return p_->a.is_standard() && p_->b.is_standard();
    default:
      return false;
  }
}

bool Sens::mentions_infinity() const {
  switch (tag()) {
    case Tag::Const:
      return p_->value.is_infinite();
    case Tag::Var:
      return false;
    case Tag::Plus:
    case Tag::Times:
    case Tag::Max:
      return p_->a.mentions_infinity() || p_->b.mentions_infinity();
    case Tag::Sup:
      return p_->a.mentions_infinity();
    case Tag::Case:
      return p_->a.mentions_infinity() || p_->b.mentions_infinity() ||
             p_->c.mentions_infinity();
  }
  return false;
}

bool Sens::operator==(const Sens& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (tag() != o.tag()) return false;
  const SensNode& x = *p_;
  const SensNode& y = *o.p_;
  switch (tag()) {
    case Tag::Const:
      return x.value == y.value;
    case Tag::Var:
      return x.name == y.name;
    case Tag::Plus:
    case Tag::Times:
    case Tag::Max:
      return x.a == y.a && x.b == y.b;
    case Tag::Sup:
      return x.name == y.name && x.binder_kind == y.binder_kind && x.a == y.a;
    case Tag::Case:
      return x.a == y.a && x.b == y.b && x.name == y.name && x.c == y.c;
  }
  return false;
}

std::optional<Kind> idx_lookup(const IdxEnv& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

Kind kind_check(const IdxEnv& env, const Sens& s) {
  switch (s.tag()) {
    case Sens::Tag::Const: {
      const ExtReal& v = s.node().value;
      if (!v.is_infinite() && is_integer(v.value())) return Kind::Size;
      return Kind::Sens;
    }
    case Sens::Tag::Var: {
      auto k = idx_lookup(env, s.node().name);
      if (!k) throw KindError("unbound index variable '" + s.node().name + "'");
      return *k;
    }
    case Sens::Tag::Plus:
    case Sens::Tag::Times: {
      Kind a = kind_check(env, s.node().a);
      Kind b = kind_check(env, s.node().b);
      return (a == Kind::Size && b == Kind::Size) ? Kind::Size : Kind::Sens;
    }
    case Sens::Tag::Max: {
      kind_check(env, s.node().a);
      kind_check(env, s.node().b);
      return Kind::Sens;
    }
    case Sens::Tag::Sup: {
      IdxEnv inner = env;
      inner.emplace_back(s.node().name, s.node().binder_kind);
      kind_check(inner, s.node().a);
      return Kind::Sens;
    }
    case Sens::Tag::Case: {
      if (kind_check(env, s.node().a) != Kind::Size)
        throw KindError("case scrutinee must have size kind");
      kind_check(env, s.node().b);
      IdxEnv inner = env;
      inner.emplace_back(s.node().name, Kind::Size);
      kind_check(inner, s.node().c);
      return Kind::Sens;
    }
  }
  throw KindError("kind_check: bad node");
}

std::set<std::string> free_vars(const Sens& s) {
  std::set<std::string> out;
  std::function<void(const Sens&, std::vector<std::string>&)> go =
      [&](const Sens& t, std::vector<std::string>& bound) {
        switch (t.tag()) {
          case Sens::Tag::Const:
            return;
          case Sens::Tag::Var: {
            for (const auto& b : bound)
              if (b == t.node().name) return;
            out.insert(t.node().name);
            return;
          }
          case Sens::Tag::Plus:
          case Sens::Tag::Times:
          case Sens::Tag::Max:
            go(t.node().a, bound);
            go(t.node().b, bound);
            return;
          case Sens::Tag::Sup:
            bound.push_back(t.node().name);
            go(t.node().a, bound);
            bound.pop_back();
            return;
          case Sens::Tag::Case:
            go(t.node().a, bound);
            go(t.node().b, bound);
            bound.push_back(t.node().name);
            go(t.node().c, bound);
            bound.pop_back();
            return;
        }
      };
  std::vector<std::string> bound;
  go(s, bound);
  return out;
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  std::string stem = base;
  auto cut = stem.find('_');
  if (cut != std::string::npos && cut + 1 < stem.size()) {
    bool digits = true;
    for (size_t i = cut + 1; i < stem.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(stem[i]))) digits = false;
    if (digits) stem = stem.substr(0, cut);
  }
  if (!used.count(base)) {
    used.insert(base);
    return base;
  }
  for (int k = 1;; ++k) {
    std::string cand = stem + "_" + std::to_string(k);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

Sens subst(const Sens& s, const std::string& var, const Sens& replacement) {
  switch (s.tag()) {
    case Sens::Tag::Const:
      return s;
    case Sens::Tag::Var:
      return s.node().name == var ? replacement : s;
    case Sens::Tag::Plus:
      return Sens::plus(subst(s.node().a, var, replacement),
                        subst(s.node().b, var, replacement));
    case Sens::Tag::Times:
      return Sens::times(subst(s.node().a, var, replacement),
                         subst(s.node().b, var, replacement));
    case Sens::Tag::Max:
      return Sens::smax(subst(s.node().a, var, replacement),
                        subst(s.node().b, var, replacement));
    case Sens::Tag::Sup: {
      const auto& n = s.node();
      if (n.name == var) return s;  // shadowed
      if (free_vars(replacement).count(n.name)) {
        std::set<std::string> used = free_vars(n.a);
        for (const auto& v : free_vars(replacement)) used.insert(v);
        used.insert(var);
        std::string r = fresh_name(n.name, used);
        Sens body = subst(n.a, n.name, Sens::var(r));
        return Sens::sup(r, n.binder_kind, subst(body, var, replacement));
      }
      return Sens::sup(n.name, n.binder_kind, subst(n.a, var, replacement));
    }
    case Sens::Tag::Case: {
      const auto& n = s.node();
      Sens scrut = subst(n.a, var, replacement);
      Sens zero = subst(n.b, var, replacement);
      if (n.name == var) return Sens::scase(scrut, zero, n.name, n.c);
      if (free_vars(replacement).count(n.name)) {
        std::set<std::string> used = free_vars(n.c);
        for (const auto& v : free_vars(replacement)) used.insert(v);
        used.insert(var);
        std::string r = fresh_name(n.name, used);
        Sens succ = subst(n.c, n.name, Sens::var(r));
        return Sens::scase(scrut, zero, r, subst(succ, var, replacement));
      }
      return Sens::scase(scrut, zero, n.name, subst(n.c, var, replacement));
    }
  }
  return s;
}

bool alpha_eq(const Sens& a, const Sens& b) {
  if (a.tag() != b.tag()) return false;
  const auto& x = a.node();
  const auto& y = b.node();
  switch (a.tag()) {
    case Sens::Tag::Const:
      return x.value == y.value;
    case Sens::Tag::Var:
      return x.name == y.name;
    case Sens::Tag::Plus:
    case Sens::Tag::Times:
    case Sens::Tag::Max:
      return alpha_eq(x.a, y.a) && alpha_eq(x.b, y.b);
    case Sens::Tag::Sup: {
      if (x.binder_kind != y.binder_kind) return false;
      std::set<std::string> used = free_vars(x.a);
      for (const auto& v : free_vars(y.a)) used.insert(v);
      std::string f = fresh_name("#a", used);
      return alpha_eq(subst(x.a, x.name, Sens::var(f)),
                      subst(y.a, y.name, Sens::var(f)));
    }
    case Sens::Tag::Case: {
      if (!alpha_eq(x.a, y.a) || !alpha_eq(x.b, y.b)) return false;
      std::set<std::string> used = free_vars(x.c);
      for (const auto& v : free_vars(y.c)) used.insert(v);
      std::string f = fresh_name("#a", used);
      return alpha_eq(subst(x.c, x.name, Sens::var(f)),
                      subst(y.c, y.name, Sens::var(f)));
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Type
// ---------------------------------------------------------------------------

Type Type::real() {
  TypeNode n;
  n.tag = Tag::Real;
  return wrap(std::move(n));
}

Type Type::real_sing(Sens idx) {
  TypeNode n;
  n.tag = Tag::RealSing;
  n.idx = std::move(idx);
  return wrap(std::move(n));
}

Type Type::nat_sing(Sens idx) {
  TypeNode n;
  n.tag = Tag::NatSing;
  n.idx = std::move(idx);
  return wrap(std::move(n));
}

Type Type::lolli(Sens ann, Type dom, Type cod) {
  TypeNode n;
  n.tag = Tag::Lolli;
  n.idx = std::move(ann);
  n.a = std::move(dom);
  n.b = std::move(cod);
  return wrap(std::move(n));
}

Type Type::forall(std::string binder, Kind k, Type body) {
  TypeNode n;
  n.tag = Tag::Forall;
  n.name = std::move(binder);
  n.binder_kind = k;
  n.a = std::move(body);
  return wrap(std::move(n));
}

Type Type::tensor(Type l, Type r) {
  TypeNode n;
  n.tag = Tag::Tensor;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Type Type::with(Type l, Type r) {
  TypeNode n;
  n.tag = Tag::With;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Type Type::opaque(std::string name, std::vector<Arg> args) {
  TypeNode n;
  n.tag = Tag::Opaque;
  n.name = std::move(name);
  n.args = std::move(args);
  return wrap(std::move(n));
}

bool Type::operator==(const Type& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (tag() != o.tag()) return false;
  const TypeNode& x = *p_;
  const TypeNode& y = *o.p_;
  switch (tag()) {
    case Tag::Real:
      return true;
    case Tag::RealSing:
    case Tag::NatSing:
      return x.idx == y.idx;
    case Tag::Lolli:
      return x.idx == y.idx && x.a == y.a && x.b == y.b;
    case Tag::Forall:
      return x.name == y.name && x.binder_kind == y.binder_kind && x.a == y.a;
    case Tag::Tensor:
    case Tag::With:
      return x.a == y.a && x.b == y.b;
    case Tag::Opaque: {
      if (x.name != y.name || x.args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x.args.size(); ++i)
        if (x.args[i] != y.args[i]) return false;
      return true;
    }
  }
  return false;
}

bool Type::has_extended_index() const {
  switch (tag()) {
    case Tag::Real:
      return false;
    case Tag::RealSing:
    case Tag::NatSing:
      return !node().idx.is_standard();
    case Tag::Lolli:
      return !node().idx.is_standard() || node().a.has_extended_index() ||
             node().b.has_extended_index();
    case Tag::Forall:
      return node().a.has_extended_index();
    case Tag::Tensor:
    case Tag::With:
      return node().a.has_extended_index() || node().b.has_extended_index();
    case Tag::Opaque: {
      for (const auto& a : node().args) {
        if (std::holds_alternative<Sens>(a)) {
          if (!std::get<Sens>(a).is_standard()) return true;
        } else if (std::get<Type>(a).has_extended_index()) {
          return true;
        }
      }
      return false;
    }
  }
  return false;
}

void check_type_kinds(const IdxEnv& env, const Type& t) {
  switch (t.tag()) {
    case Type::Tag::Real:
      return;
    case Type::Tag::RealSing:
      kind_check(env, t.node().idx);
      return;
    case Type::Tag::NatSing:
      if (kind_check(env, t.node().idx) != Kind::Size)
        throw KindError("nat[-] index must have size kind");
      return;
    case Type::Tag::Lolli:
      kind_check(env, t.node().idx);
      check_type_kinds(env, t.node().a);
      check_type_kinds(env, t.node().b);
      return;
    case Type::Tag::Forall: {
      IdxEnv inner = env;
      inner.emplace_back(t.node().name, t.node().binder_kind);
      check_type_kinds(inner, t.node().a);
      return;
    }
    case Type::Tag::Tensor:
    case Type::Tag::With:
      check_type_kinds(env, t.node().a);
      check_type_kinds(env, t.node().b);
      return;
    case Type::Tag::Opaque:
      for (const auto& a : t.node().args) {
        if (std::holds_alternative<Sens>(a))
          kind_check(env, std::get<Sens>(a));
        else
          check_type_kinds(env, std::get<Type>(a));
      }
      return;
  }
}

std::set<std::string> type_free_idx_vars(const Type& t) {
  std::set<std::string> out;
  switch (t.tag()) {
    case Type::Tag::Real:
      return out;
    case Type::Tag::RealSing:
    case Type::Tag::NatSing:
      return free_vars(t.node().idx);
    case Type::Tag::Lolli: {
      out = free_vars(t.node().idx);
      for (const auto& v : type_free_idx_vars(t.node().a)) out.insert(v);
      for (const auto& v : type_free_idx_vars(t.node().b)) out.insert(v);
      return out;
    }
    case Type::Tag::Forall: {
      out = type_free_idx_vars(t.node().a);
      out.erase(t.node().name);
      return out;
    }
    case Type::Tag::Tensor:
    case Type::Tag::With: {
      out = type_free_idx_vars(t.node().a);
      for (const auto& v : type_free_idx_vars(t.node().b)) out.insert(v);
      return out;
    }
    case Type::Tag::Opaque: {
      for (const auto& a : t.node().args) {
        if (std::holds_alternative<Sens>(a))
          for (const auto& v : free_vars(std::get<Sens>(a))) out.insert(v);
        else
          for (const auto& v : type_free_idx_vars(std::get<Type>(a))) out.insert(v);
      }
      return out;
    }
  }
  return out;
}

Type type_subst(const Type& t, const std::string& var, const Sens& replacement) {
  switch (t.tag()) {
    case Type::Tag::Real:
      return t;
    case Type::Tag::RealSing:
      return Type::real_sing(subst(t.node().idx, var, replacement));
    case Type::Tag::NatSing:
      return Type::nat_sing(subst(t.node().idx, var, replacement));
    case Type::Tag::Lolli:
      return Type::lolli(subst(t.node().idx, var, replacement),
                         type_subst(t.node().a, var, replacement),
                         type_subst(t.node().b, var, replacement));
    case Type::Tag::Forall: {
      const auto& n = t.node();
      if (n.name == var) return t;
      if (free_vars(replacement).count(n.name)) {
        std::set<std::string> used = type_free_idx_vars(n.a);
        for (const auto& v : free_vars(replacement)) used.insert(v);
        used.insert(var);
        std::string r = fresh_name(n.name, used);
        Type body = type_subst(n.a, n.name, Sens::var(r));
        return Type::forall(r, n.binder_kind, type_subst(body, var, replacement));
      }
      return Type::forall(n.name, n.binder_kind,
                          type_subst(n.a, var, replacement));
    }
    case Type::Tag::Tensor:
      return Type::tensor(type_subst(t.node().a, var, replacement),
                          type_subst(t.node().b, var, replacement));
    case Type::Tag::With:
      return Type::with(type_subst(t.node().a, var, replacement),
                        type_subst(t.node().b, var, replacement));
    case Type::Tag::Opaque: {
      std::vector<Type::Arg> args;
      for (const auto& a : t.node().args) {
        if (std::holds_alternative<Sens>(a))
          args.emplace_back(subst(std::get<Sens>(a), var, replacement));
        else
          args.emplace_back(type_subst(std::get<Type>(a), var, replacement));
      }
      return Type::opaque(t.node().name, std::move(args));
    }
  }
  return t;
}

bool type_alpha_eq(const Type& a, const Type& b) {
  if (a.tag() != b.tag()) return false;
  const auto& x = a.node();
  const auto& y = b.node();
  switch (a.tag()) {
    case Type::Tag::Real:
      return true;
    case Type::Tag::RealSing:
    case Type::Tag::NatSing:
      return alpha_eq(x.idx, y.idx);
    case Type::Tag::Lolli:
      return alpha_eq(x.idx, y.idx) && type_alpha_eq(x.a, y.a) &&
             type_alpha_eq(x.b, y.b);
    case Type::Tag::Forall: {
      if (x.binder_kind != y.binder_kind) return false;
      std::set<std::string> used = type_free_idx_vars(x.a);
      for (const auto& v : type_free_idx_vars(y.a)) used.insert(v);
      std::string f = fresh_name("#a", used);
      return type_alpha_eq(type_subst(x.a, x.name, Sens::var(f)),
                           type_subst(y.a, y.name, Sens::var(f)));
    }
    case Type::Tag::Tensor:
    case Type::Tag::With:
      return type_alpha_eq(x.a, y.a) && type_alpha_eq(x.b, y.b);
    case Type::Tag::Opaque: {
      if (x.name != y.name || x.args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x.args.size(); ++i) {
        const auto& p = x.args[i];
        const auto& q = y.args[i];
        if (p.index() != q.index()) return false;
        if (std::holds_alternative<Sens>(p)) {
          if (!alpha_eq(std::get<Sens>(p), std::get<Sens>(q))) return false;
        } else if (!type_alpha_eq(std::get<Type>(p), std::get<Type>(q))) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

Term Term::var(std::string name, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Var;
  n.name = std::move(name);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::prim(std::string name, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Prim;
  n.name = std::move(name);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::real_lit(Rational v, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::RealLit;
  n.lit = std::move(v);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::nat_lit(std::uint64_t v, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::NatLit;
  n.nat = v;
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::succ(Term e, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Succ;
  n.a = std::move(e);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::fix(std::string x, Type ty, Term body, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Fix;
  n.name = std::move(x);
  n.ty = std::move(ty);
  n.a = std::move(body);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::lam(std::string x, Sens ann, Type ty, Term body, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Lam;
  n.name = std::move(x);
  n.ann = std::move(ann);
  n.ty = std::move(ty);
  n.a = std::move(body);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::app(Term f, Term a, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::App;
  n.a = std::move(f);
  n.b = std::move(a);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::idx_lam(std::string i, Kind k, Term body, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::IdxLam;
  n.name = std::move(i);
  n.kind = k;
  n.a = std::move(body);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::idx_app(Term e, Sens idx, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::IdxApp;
  n.a = std::move(e);
  n.ann = std::move(idx);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::with_pair(Term l, Term r, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::WithPair;
  n.a = std::move(l);
  n.b = std::move(r);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::proj(int which, Term e, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::Proj;
  n.which = which;
  n.a = std::move(e);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::tensor_pair(Term l, Term r, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::TensorPair;
  n.a = std::move(l);
  n.b = std::move(r);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::let_pair(std::string x, std::string y, Term e, Term body, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::LetPair;
  n.name = std::move(x);
  n.name2 = std::move(y);
  n.a = std::move(e);
  n.b = std::move(body);
  n.loc = loc;
  return wrap(std::move(n));
}

Term Term::nat_case(Term scrut, Type ret, Term zero, std::string binder,
                    std::string idx_binder, Term succ_body, SrcLoc loc) {
  TermNode n;
  n.tag = Tag::NatCase;
  n.a = std::move(scrut);
  n.ty = std::move(ret);
  n.b = std::move(zero);
  n.name2 = std::move(binder);
  n.idx_name = std::move(idx_binder);
  n.c = std::move(succ_body);
  n.loc = loc;
  return wrap(std::move(n));
}

bool Term::annotations_standard() const {
  const TermNode& n = node();
  auto type_ok = [](const Type& t) { return t.null() || !t.has_extended_index(); };
  switch (tag()) {
    case Tag::Var:
    case Tag::Prim:
    case Tag::RealLit:
    case Tag::NatLit:
      return true;
    case Tag::Succ:
    case Tag::Proj:
      return n.a.annotations_standard();
    case Tag::Lam:
      return n.ann.is_standard() && type_ok(n.ty) && n.a.annotations_standard();
    case Tag::Fix:
      return type_ok(n.ty) && n.a.annotations_standard();
    case Tag::IdxApp:
      return n.ann.is_standard() && n.a.annotations_standard();
    case Tag::IdxLam:
      return n.a.annotations_standard();
    case Tag::App:
    case Tag::WithPair:
    case Tag::TensorPair:
    case Tag::LetPair:
      return n.a.annotations_standard() && n.b.annotations_standard();
    case Tag::NatCase:
      return type_ok(n.ty) && n.a.annotations_standard() &&
             n.b.annotations_standard() && n.c.annotations_standard();
  }
  return true;
}

Term term_rename_var(const Term& e, const std::string& from, const std::string& to) {
  if (from == to) return e;
  const auto& n = e.node();
  switch (e.tag()) {
    case Term::Tag::Var:
      return n.name == from ? Term::var(to, n.loc) : e;
    case Term::Tag::Prim:
    case Term::Tag::RealLit:
    case Term::Tag::NatLit:
      return e;
    case Term::Tag::Succ:
      return Term::succ(term_rename_var(n.a, from, to), n.loc);
    case Term::Tag::Proj:
      return Term::proj(n.which, term_rename_var(n.a, from, to), n.loc);
    case Term::Tag::Fix:
      if (n.name == from) return e;
      return Term::fix(n.name, n.ty, term_rename_var(n.a, from, to), n.loc);
    case Term::Tag::Lam:
      if (n.name == from) return e;
      return Term::lam(n.name, n.ann, n.ty, term_rename_var(n.a, from, to), n.loc);
    case Term::Tag::App:
      return Term::app(term_rename_var(n.a, from, to),
                       term_rename_var(n.b, from, to), n.loc);
    case Term::Tag::IdxLam:
      return Term::idx_lam(n.name, n.kind, term_rename_var(n.a, from, to), n.loc);
    case Term::Tag::IdxApp:
      return Term::idx_app(term_rename_var(n.a, from, to), n.ann, n.loc);
    case Term::Tag::WithPair:
      return Term::with_pair(term_rename_var(n.a, from, to),
                             term_rename_var(n.b, from, to), n.loc);
    case Term::Tag::TensorPair:
      return Term::tensor_pair(term_rename_var(n.a, from, to),
                               term_rename_var(n.b, from, to), n.loc);
    case Term::Tag::LetPair: {
      Term scrut = term_rename_var(n.a, from, to);
      if (n.name == from || n.name2 == from)
        return Term::let_pair(n.name, n.name2, scrut, n.b, n.loc);
      return Term::let_pair(n.name, n.name2, scrut,
                            term_rename_var(n.b, from, to), n.loc);
    }
    case Term::Tag::NatCase: {
      Term scrut = term_rename_var(n.a, from, to);
      Term zero = term_rename_var(n.b, from, to);
      Term succ = n.name2 == from ? n.c : term_rename_var(n.c, from, to);
      return Term::nat_case(scrut, n.ty, zero, n.name2, n.idx_name, succ, n.loc);
    }
  }
  return e;
}

Term term_subst_idx(const Term& e, const std::string& var, const Sens& repl) {
  const auto& n = e.node();
  auto ty = [&](const Type& t) {
    return t.null() ? t : type_subst(t, var, repl);
  };
  switch (e.tag()) {
    case Term::Tag::Var:
    case Term::Tag::Prim:
    case Term::Tag::RealLit:
    case Term::Tag::NatLit:
      return e;
    case Term::Tag::Succ:
      return Term::succ(term_subst_idx(n.a, var, repl), n.loc);
    case Term::Tag::Proj:
      return Term::proj(n.which, term_subst_idx(n.a, var, repl), n.loc);
    case Term::Tag::Fix:
      return Term::fix(n.name, ty(n.ty), term_subst_idx(n.a, var, repl), n.loc);
    case Term::Tag::Lam:
      return Term::lam(n.name, subst(n.ann, var, repl), ty(n.ty),
                       term_subst_idx(n.a, var, repl), n.loc);
    case Term::Tag::App:
      return Term::app(term_subst_idx(n.a, var, repl),
                       term_subst_idx(n.b, var, repl), n.loc);
    case Term::Tag::IdxLam:
      if (n.name == var) return e;
      // Binder capture is avoided by the typing engine choosing fresh names
      // before substituting; assert the precondition here.
      if (free_vars(repl).count(n.name))
        throw std::logic_error("term_subst_idx: capture of " + n.name);
      return Term::idx_lam(n.name, n.kind, term_subst_idx(n.a, var, repl), n.loc);
    case Term::Tag::IdxApp:
      return Term::idx_app(term_subst_idx(n.a, var, repl),
                           subst(n.ann, var, repl), n.loc);
    case Term::Tag::WithPair:
      return Term::with_pair(term_subst_idx(n.a, var, repl),
                             term_subst_idx(n.b, var, repl), n.loc);
    case Term::Tag::TensorPair:
      return Term::tensor_pair(term_subst_idx(n.a, var, repl),
                               term_subst_idx(n.b, var, repl), n.loc);
    case Term::Tag::LetPair:
      return Term::let_pair(n.name, n.name2, term_subst_idx(n.a, var, repl),
                            term_subst_idx(n.b, var, repl), n.loc);
    case Term::Tag::NatCase: {
      Term scrut = term_subst_idx(n.a, var, repl);
      Type ret = ty(n.ty);
      Term zero = term_subst_idx(n.b, var, repl);
      if (n.idx_name == var)
        return Term::nat_case(scrut, ret, zero, n.name2, n.idx_name, n.c, n.loc);
      if (free_vars(repl).count(n.idx_name))
        throw std::logic_error("term_subst_idx: capture of " + n.idx_name);
      return Term::nat_case(scrut, ret, zero, n.name2, n.idx_name,
                            term_subst_idx(n.c, var, repl), n.loc);
    }
  }
  return e;
}

}  // namespace senscheck
