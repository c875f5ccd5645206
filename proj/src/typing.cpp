#include <algorithm>

#include "senscheck/syntax.hpp"
#include "senscheck/typing.hpp"

namespace senscheck {

const Type* prelude_lookup(const Prelude& p, const std::string& name) {
  for (const auto& [n, ty] : p)
    if (n == name) return &ty;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Subtyping
// ---------------------------------------------------------------------------

namespace {

struct SubtypeCtx {
  const ConstraintOrigin& origin;
  std::vector<Constraint> out;

  void leaf(const IdxEnv& idx, const RefinementSet& refs, Sens lhs, Sens rhs) {
    if (lhs == rhs) return;  // reflexive leaves carry no content
    out.push_back({idx, refs, std::move(lhs), std::move(rhs), origin});
  }

  [[noreturn]] void mismatch(const Type& sub, const Type& sup,
                             const std::string& path) {
    throw Diag(origin.loc, "type mismatch" +
                               (path.empty() ? "" : " at " + path) + ": " +
                               pretty(sub) + " is not a subtype of " +
                               pretty(sup) + " (" + origin.rule + ")");
  }

  void go(IdxEnv idx, const RefinementSet& refs, const Type& sub,
          const Type& sup, const std::string& path) {
    if (sub == sup) return;
    if (sub.tag() != sup.tag()) mismatch(sub, sup, path);
    const TypeNode& x = sub.node();
    const TypeNode& y = sup.node();
    switch (sub.tag()) {
      case Type::Tag::Real:
        return;
      case Type::Tag::RealSing:
      case Type::Tag::NatSing:
        // Singleton indices are forced equal.
        leaf(idx, refs, x.idx, y.idx);
        leaf(idx, refs, y.idx, x.idx);
        return;
      case Type::Tag::Lolli:
        leaf(idx, refs, y.idx, x.idx);  // annotation grows rightward
        go(idx, refs, y.a, x.a, path + ".dom");
        go(idx, refs, x.b, y.b, path + ".cod");
        return;
      case Type::Tag::Forall: {
        if (x.binder_kind != y.binder_kind) mismatch(sub, sup, path);
        // The binder name is reused when nothing outside shadows it, so the
        // emitted constraints read like the source types.
        std::set<std::string> used;
        for (const auto& [n, k] : idx) used.insert(n);
        for (const auto& v : type_free_idx_vars(x.a))
          if (v != x.name) used.insert(v);
        for (const auto& v : type_free_idx_vars(y.a))
          if (v != y.name) used.insert(v);
        std::string f = fresh_name(x.name, used);
        IdxEnv inner = idx;
        inner.emplace_back(f, x.binder_kind);
        go(std::move(inner), refs, type_subst(x.a, x.name, Sens::var(f)),
           type_subst(y.a, y.name, Sens::var(f)), path + ".body");
        return;
      }
      case Type::Tag::Tensor:
      case Type::Tag::With:
        go(idx, refs, x.a, y.a, path + ".1");
        go(idx, refs, x.b, y.b, path + ".2");
        return;
      case Type::Tag::Opaque: {
        if (x.name != y.name || x.args.size() != y.args.size())
          mismatch(sub, sup, path);
        for (size_t i = 0; i < x.args.size(); ++i) {
          const auto& a = x.args[i];
          const auto& b = y.args[i];
          if (a.index() != b.index()) mismatch(sub, sup, path);
          std::string here = path + ".arg" + std::to_string(i + 1);
          if (std::holds_alternative<Sens>(a)) {
            leaf(idx, refs, std::get<Sens>(a), std::get<Sens>(b));
            leaf(idx, refs, std::get<Sens>(b), std::get<Sens>(a));
          } else {
            // Invariant in type arguments.
            go(idx, refs, std::get<Type>(a), std::get<Type>(b), here);
            go(idx, refs, std::get<Type>(b), std::get<Type>(a), here);
          }
        }
        return;
      }
    }
  }
};

}  // namespace

std::vector<Constraint> subtype(const IdxEnv& idx, const RefinementSet& refs,
                                const Type& sub, const Type& sup,
                                const ConstraintOrigin& origin) {
  SubtypeCtx ctx{origin, {}};
  ctx.go(idx, refs, sub, sup, "");
  return std::move(ctx.out);
}

std::vector<Constraint> env_subtype(const IdxEnv& idx, const RefinementSet& refs,
                                    const VarEnv& sub, const VarEnv& sup,
                                    const ConstraintOrigin& origin) {
  if (!sub.same_domain(sup))
    throw Diag(origin.loc, "environment domains differ (" + origin.rule + ")");
  std::vector<Constraint> out;
  for (const auto& b : sub.bindings()) {
    const Binding* s = sup.find(b.name);
    if (s->type != b.type)
      throw Diag(origin.loc, "environment binding '" + b.name +
                                 "' has mismatched types (" + origin.rule + ")");
    if (s->ann.is_box()) continue;
    Sens lhs = box_elim(b.ann);
    if (lhs == s->ann.sens_expr()) continue;
    out.push_back({idx, refs, lhs, s->ann.sens_expr(), origin});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

namespace {

VarEnv all_box(const VarEnv& skeleton) {
  VarEnv out;
  for (const auto& b : skeleton.bindings())
    out.bind(b.name, Annotation::box(), b.type);
  return out;
}

class Inferencer {
public:
  Inferencer(const Prelude& prelude, const InferOptions& opts)
      : prelude_(prelude), opts_(opts) {}

  InferenceResult run(const IdxEnv& idx, const RefinementSet& refs,
                      const VarEnv& skeleton, const Term& e) {
    seed_used_names(idx, skeleton, e);
    auto [env, ty] = go(idx, refs, skeleton, e);
    return {std::move(env), std::move(ty), std::move(constraints_)};
  }

private:
  const Prelude& prelude_;
  InferOptions opts_;
  std::vector<Constraint> constraints_;
  std::set<std::string> used_;

  void seed_used_names(const IdxEnv& idx, const VarEnv& skeleton, const Term& e) {
    for (const auto& [n, k] : idx) used_.insert(n);
    for (const auto& b : skeleton.bindings()) {
      used_.insert(b.name);
      for (const auto& v : type_free_idx_vars(b.type)) used_.insert(v);
    }
    collect_names(e);
  }

  void collect_names(const Term& e) {
    const TermNode& n = e.node();
    if (!n.name.empty()) used_.insert(n.name);
    if (!n.name2.empty()) used_.insert(n.name2);
    if (!n.idx_name.empty()) used_.insert(n.idx_name);
    if (!n.ann.null())
      for (const auto& v : free_vars(n.ann)) used_.insert(v);
    if (!n.ty.null())
      for (const auto& v : type_free_idx_vars(n.ty)) used_.insert(v);
    if (!n.a.null()) collect_names(n.a);
    if (!n.b.null()) collect_names(n.b);
    if (!n.c.null()) collect_names(n.c);
  }

  std::string fresh(const std::string& base) { return fresh_name(base, used_); }

  void emit(const IdxEnv& idx, const RefinementSet& refs, Sens lhs, Sens rhs,
            SrcLoc loc, const char* rule) {
    if (lhs == rhs) return;
    if (!opts_.allow_extended_annotations && !lhs.is_standard())
      throw std::logic_error(
          "internal: extended constraint lhs under standard annotations: " +
          pretty(lhs));
    constraints_.push_back({idx, refs, std::move(lhs), std::move(rhs),
                            {loc, rule}});
  }

  void append(std::vector<Constraint> cs) {
    for (auto& c : cs) constraints_.push_back(std::move(c));
  }

  Kind kind_of(const IdxEnv& idx, const Sens& s, SrcLoc loc) {
    try {
      return kind_check(idx, s);
    } catch (const KindError& e) {
      throw Diag(loc, e.what());
    }
  }

  void check_kinds(const IdxEnv& idx, const Type& t, SrcLoc loc) {
    try {
      check_type_kinds(idx, t);
    } catch (const KindError& e) {
      throw Diag(loc, e.what());
    }
  }

  std::pair<VarEnv, Type> go(const IdxEnv& idx, const RefinementSet& refs,
                             const VarEnv& skel, const Term& e) {
    const TermNode& n = e.node();
    switch (e.tag()) {
      case Term::Tag::Var: {
        const Binding* b = skel.find(n.name);
        if (!b) throw Diag(n.loc, "unbound variable '" + n.name + "'");
        VarEnv env = all_box(skel);
        env.find(n.name)->ann = Annotation::sens(Sens::konst(1));
        return {std::move(env), b->type};
      }

      case Term::Tag::Prim: {
        const Type* ty = prelude_lookup(prelude_, n.name);
        if (!ty) throw Diag(n.loc, "unknown identifier '" + n.name + "'");
        return {all_box(skel), *ty};
      }

      case Term::Tag::RealLit:
        return {all_box(skel), Type::real()};

      case Term::Tag::NatLit:
        return {all_box(skel), Type::nat_sing(Sens::konst((long)n.nat))};

      case Term::Tag::Succ: {
        auto [env, ty] = go(idx, refs, skel, n.a);
        if (ty.tag() != Type::Tag::NatSing)
          throw Diag(n.loc, "succ expects a nat[-] argument, got " + pretty(ty));
        return {std::move(env),
                Type::nat_sing(sens_plus(ty.node().idx, Sens::konst(1)))};
      }

      case Term::Tag::Lam: {
        check_kinds(idx, n.ty, n.loc);
        kind_of(idx, n.ann, n.loc);
        if (!opts_.allow_extended_annotations && !n.ann.is_standard())
          throw Diag(n.loc, "extended annotation on '" + n.name + "'");
        std::string x = n.name;
        Term body = n.a;
        if (skel.find(x)) {
          std::string r = fresh(x);
          body = term_rename_var(body, x, r);
          x = r;
        }
        VarEnv inner_skel = skel;
        inner_skel.bind(x, Annotation::box(), n.ty);
        auto [env, cod] = go(idx, refs, inner_skel, body);
        Binding popped = env.pop(x);
        emit(idx, refs, n.ann, box_elim(popped.ann), n.loc, "fun");
        return {std::move(env), Type::lolli(n.ann, n.ty, cod)};
      }

      case Term::Tag::App: {
        auto [fenv, fty] = go(idx, refs, skel, n.a);
        if (fty.tag() != Type::Tag::Lolli)
          throw Diag(n.loc, "applying a non-function of type " + pretty(fty));
        auto [aenv, aty] = go(idx, refs, skel, n.b);
        append(subtype(idx, refs, aty, fty.node().a, {n.loc, "app"}));
        VarEnv env = env_add(fenv, env_scale(fty.node().idx, aenv));
        return {std::move(env), fty.node().b};
      }

      case Term::Tag::Fix: {
        check_kinds(idx, n.ty, n.loc);
        if (!opts_.allow_extended_annotations && n.ty.has_extended_index())
          throw Diag(n.loc, "extended annotation on fixpoint type");
        std::string x = n.name;
        Term body = n.a;
        if (skel.find(x)) {
          std::string r = fresh(x);
          body = term_rename_var(body, x, r);
          x = r;
        }
        VarEnv inner_skel = skel;
        inner_skel.bind(x, Annotation::box(), n.ty);
        auto [env, bty] = go(idx, refs, inner_skel, body);
        env.pop(x);
        append(subtype(idx, refs, bty, n.ty, {n.loc, "fix"}));
        return {env_scale(Sens::infinity(), env), n.ty};
      }

      case Term::Tag::IdxLam: {
        std::string i = n.name;
        Term body = n.a;
        if (idx_lookup(idx, i)) {
          std::string r = fresh(i);
          body = term_subst_idx(body, i, Sens::var(r));
          i = r;
        } else {
          used_.insert(i);
        }
        IdxEnv inner = idx;
        inner.emplace_back(i, n.kind);
        auto [env, ty] = go(inner, refs, skel, body);
        return {env_join_sup(i, n.kind, env), Type::forall(i, n.kind, ty)};
      }

      case Term::Tag::IdxApp: {
        auto [env, ty] = go(idx, refs, skel, n.a);
        if (ty.tag() != Type::Tag::Forall)
          throw Diag(n.loc, "index application to a non-quantified type " +
                                pretty(ty));
        Kind have = kind_of(idx, n.ann, n.loc);
        Kind want = ty.node().binder_kind;
        if (want == Kind::Size && have != Kind::Size)
          throw Diag(n.loc, "index argument must have size kind");
        if (!opts_.allow_extended_annotations && !n.ann.is_standard())
          throw Diag(n.loc, "extended index argument");
        return {std::move(env), type_subst(ty.node().a, ty.node().name, n.ann)};
      }

      case Term::Tag::TensorPair: {
        auto [lenv, lty] = go(idx, refs, skel, n.a);
        auto [renv, rty] = go(idx, refs, skel, n.b);
        return {env_add(lenv, renv), Type::tensor(lty, rty)};
      }

      case Term::Tag::LetPair: {
        auto [senv, sty] = go(idx, refs, skel, n.a);
        if (sty.tag() != Type::Tag::Tensor)
          throw Diag(n.loc, "let pair scrutinee has non-pair type " + pretty(sty));
        std::string x = n.name, y = n.name2;
        Term body = n.b;
        if (x == y) {
          // The second binder shadows the first; occurrences in the body all
          // refer to it, so the first is renamed without touching the body.
          x = fresh(x);
        } else if (skel.find(x)) {
          std::string r = fresh(x);
          body = term_rename_var(body, x, r);
          x = r;
        }
        if (skel.find(y)) {
          std::string r = fresh(y);
          body = term_rename_var(body, y, r);
          y = r;
        }
        VarEnv inner_skel = skel;
        inner_skel.bind(x, Annotation::box(), sty.node().a);
        inner_skel.bind(y, Annotation::box(), sty.node().b);
        auto [benv, bty] = go(idx, refs, inner_skel, body);
        Binding bx = benv.pop(x);
        Binding by = benv.pop(y);
        Sens scale = Sens::smax(box_elim(bx.ann), box_elim(by.ann));
        return {env_add(benv, env_scale(scale, senv)), bty};
      }

      case Term::Tag::WithPair: {
        auto [lenv, lty] = go(idx, refs, skel, n.a);
        auto [renv, rty] = go(idx, refs, skel, n.b);
        return {env_join_max(lenv, renv), Type::with(lty, rty)};
      }

      case Term::Tag::Proj: {
        auto [env, ty] = go(idx, refs, skel, n.a);
        if (ty.tag() != Type::Tag::With)
          throw Diag(n.loc, "projection from non-& type " + pretty(ty));
        return {std::move(env), n.which == 1 ? ty.node().a : ty.node().b};
      }

      case Term::Tag::NatCase: {
        check_kinds(idx, n.ty, n.loc);
        if (!opts_.allow_extended_annotations && n.ty.has_extended_index())
          throw Diag(n.loc, "extended annotation on case return type");
        auto [senv, sty] = go(idx, refs, skel, n.a);
        if (sty.tag() != Type::Tag::NatSing)
          throw Diag(n.loc, "case scrutinee has type " + pretty(sty) +
                                ", expected nat[-]");
        const Sens& scrut_idx = sty.node().idx;

        RefinementSet zero_refs = refs;
        zero_refs.push_back(Refinement::is_zero(scrut_idx));
        auto [zenv, zty] = go(idx, zero_refs, skel, n.b);
        append(subtype(idx, zero_refs, zty, n.ty, {n.loc, "case-zero"}));

        std::string i = fresh(n.idx_name);
        Term sbody = n.c;
        if (i != n.idx_name) sbody = term_subst_idx(sbody, n.idx_name, Sens::var(i));
        std::string x = n.name2;
        if (skel.find(x)) {
          std::string r = fresh(x);
          sbody = term_rename_var(sbody, x, r);
          x = r;
        }
        IdxEnv succ_idx = idx;
        succ_idx.emplace_back(i, Kind::Size);
        RefinementSet succ_refs = refs;
        succ_refs.push_back(Refinement::is_succ(scrut_idx, i));
        VarEnv succ_skel = skel;
        succ_skel.bind(x, Annotation::box(), Type::nat_sing(Sens::var(i)));
        auto [cenv, cty] = go(succ_idx, succ_refs, succ_skel, sbody);
        Binding bx = cenv.pop(x);
        append(subtype(succ_idx, succ_refs, cty, n.ty, {n.loc, "case-succ"}));

        VarEnv branches = env_join_case(scrut_idx, zenv, i, cenv);
        Sens scrut_scale =
            Sens::scase(scrut_idx, Sens::konst(0), i, box_elim(bx.ann));
        VarEnv env = env_add(branches, env_scale(scrut_scale, senv));
        return {std::move(env), n.ty};
      }
    }
    throw Diag(n.loc, "internal: unknown term form");
  }
};

}  // namespace

InferenceResult infer(const IdxEnv& idx, const RefinementSet& refs,
                      const VarEnv& skeleton, const Term& e,
                      const Prelude& prelude, const InferOptions& opts) {
  Inferencer inf(prelude, opts);
  return inf.run(idx, refs, skeleton, e);
}

std::vector<Constraint> check(const Prelude& prelude, const Term& e,
                              const Type& goal, const InferOptions& opts) {
  check_type_kinds({}, goal);
  if (!type_free_idx_vars(goal).empty())
    throw Diag({}, "goal type has free index variables");
  if (!opts.allow_extended_annotations && goal.has_extended_index())
    throw Diag({}, "goal type uses extended index terms");
  InferenceResult res = infer({}, {}, {}, e, prelude, opts);
  auto subs = subtype({}, {}, res.type, goal, {e.loc(), "goal"});
  for (auto& c : subs) res.constraints.push_back(std::move(c));
  return std::move(res.constraints);
}

}  // namespace senscheck
