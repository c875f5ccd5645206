#include "senscheck/interp.hpp"

namespace senscheck {

std::string Value::str() const {
  switch (tag) {
    case Tag::Real:
      return rational_str(real);
    case Tag::Nat:
      return std::to_string(nat);
    case Tag::Tensor:
      return "(" + l->str() + ", " + r->str() + ")";
    case Tag::With:
      return "<" + l->str() + ", " + r->str() + ">";
    case Tag::Closure:
    case Tag::IdxClosure:
    case Tag::FixThunk:
      return "<fun>";
    case Tag::Prim:
      return "<" + prim_name + "/" + std::to_string(prim_args.size()) + ">";
  }
  return "?";
}

ValuePtr make_real(Rational v) {
  auto out = std::make_shared<Value>();
  out->tag = Value::Tag::Real;
  out->real = std::move(v);
  return out;
}

ValuePtr make_nat(std::uint64_t n) {
  auto out = std::make_shared<Value>();
  out->tag = Value::Tag::Nat;
  out->nat = n;
  return out;
}

const std::map<std::string, PrimDef>& default_prims() {
  static const std::map<std::string, PrimDef> prims = [] {
    std::map<std::string, PrimDef> m;
    m["plus"] = {2, [](const std::vector<ValuePtr>& a) {
                   if (a[0]->tag != Value::Tag::Real ||
                       a[1]->tag != Value::Tag::Real)
                     throw EvalError(EvalError::Kind::Stuck, "plus: non-real");
                   return make_real(a[0]->real + a[1]->real);
                 }};
    m["neg"] = {1, [](const std::vector<ValuePtr>& a) {
                  if (a[0]->tag != Value::Tag::Real)
                    throw EvalError(EvalError::Kind::Stuck, "neg: non-real");
                  return make_real(-a[0]->real);
                }};
    m["times"] = {2, [](const std::vector<ValuePtr>& a) {
                    if (a[0]->tag != Value::Tag::Nat ||
                        a[1]->tag != Value::Tag::Real)
                      throw EvalError(EvalError::Kind::Stuck,
                                      "times: expected nat and real");
                    return make_real(Rational((long)a[0]->nat) * a[1]->real);
                  }};
    return m;
  }();
  return prims;
}

namespace {

ValuePtr force(const ValuePtr& v, long& fuel);

ValuePtr eval_rec(const Term& e, const std::shared_ptr<EvalEnv>& env,
                  long& fuel) {
  if (--fuel <= 0)
    throw EvalError(EvalError::Kind::OutOfFuel, "evaluation fuel exhausted");
  const TermNode& n = e.node();
  switch (e.tag()) {
    case Term::Tag::Var: {
      auto it = env->vars.find(n.name);
      if (it == env->vars.end())
        throw EvalError(EvalError::Kind::Stuck, "unbound '" + n.name + "'");
      return force(it->second, fuel);
    }
    case Term::Tag::Prim: {
      auto out = std::make_shared<Value>();
      out->tag = Value::Tag::Prim;
      out->prim_name = n.name;
      return out;
    }
    case Term::Tag::RealLit:
      return make_real(n.lit);
    case Term::Tag::NatLit:
      return make_nat(n.nat);
    case Term::Tag::Succ: {
      ValuePtr v = eval_rec(n.a, env, fuel);
      if (v->tag != Value::Tag::Nat)
        throw EvalError(EvalError::Kind::Stuck, "succ of non-natural");
      return make_nat(v->nat + 1);
    }
    case Term::Tag::Lam:
    case Term::Tag::IdxLam: {
      auto out = std::make_shared<Value>();
      out->tag = e.tag() == Term::Tag::Lam ? Value::Tag::Closure
                                           : Value::Tag::IdxClosure;
      out->code = e;
      out->env = env;
      return out;
    }
    case Term::Tag::Fix: {
      auto self = std::make_shared<Value>();
      self->tag = Value::Tag::FixThunk;
      self->code = e;
      self->env = env;
      auto inner = std::make_shared<EvalEnv>(*env);
      inner->vars[n.name] = self;
      return eval_rec(n.a, inner, fuel);
    }
    case Term::Tag::App: {
      ValuePtr f = eval_rec(n.a, env, fuel);
      ValuePtr a = eval_rec(n.b, env, fuel);
      return apply_value(f, a, fuel);
    }
    case Term::Tag::IdxApp: {
      ValuePtr f = eval_rec(n.a, env, fuel);
      static const ProbeConfig probes = ProbeConfig::defaults();
      ExtReal v = eval_sens(n.ann, env->idx, probes);
      return apply_index(f, v, fuel);
    }
    case Term::Tag::WithPair:
    case Term::Tag::TensorPair: {
      auto out = std::make_shared<Value>();
      out->tag = e.tag() == Term::Tag::WithPair ? Value::Tag::With
                                                : Value::Tag::Tensor;
      out->l = eval_rec(n.a, env, fuel);
      out->r = eval_rec(n.b, env, fuel);
      return out;
    }
    case Term::Tag::Proj: {
      ValuePtr v = eval_rec(n.a, env, fuel);
      if (v->tag != Value::Tag::With)
        throw EvalError(EvalError::Kind::Stuck, "projection from non-pair");
      return n.which == 1 ? v->l : v->r;
    }
    case Term::Tag::LetPair: {
      ValuePtr v = eval_rec(n.a, env, fuel);
      if (v->tag != Value::Tag::Tensor)
        throw EvalError(EvalError::Kind::Stuck, "let pair of non-pair");
      auto inner = std::make_shared<EvalEnv>(*env);
      inner->vars[n.name] = v->l;
      inner->vars[n.name2] = v->r;
      return eval_rec(n.b, inner, fuel);
    }
    case Term::Tag::NatCase: {
      ValuePtr v = eval_rec(n.a, env, fuel);
      if (v->tag != Value::Tag::Nat)
        throw EvalError(EvalError::Kind::Stuck, "case on non-natural");
      if (v->nat == 0) return eval_rec(n.b, env, fuel);
      auto inner = std::make_shared<EvalEnv>(*env);
      inner->vars[n.name2] = make_nat(v->nat - 1);
      inner->idx.values[n.idx_name] = ExtReal::of((long)(v->nat - 1));
      return eval_rec(n.c, inner, fuel);
    }
  }
  throw EvalError(EvalError::Kind::Stuck, "unknown term form");
}

ValuePtr force(const ValuePtr& v, long& fuel) {
  if (v->tag != Value::Tag::FixThunk) return v;
  return eval_rec(v->code, v->env, fuel);
}

}  // namespace

ValuePtr apply_value(const ValuePtr& f0, const ValuePtr& arg, long& fuel) {
  long dummy = fuel;
  ValuePtr f = f0;
  if (f->tag == Value::Tag::FixThunk) f = eval_rec(f->code, f->env, fuel);
  (void)dummy;
  switch (f->tag) {
    case Value::Tag::Closure: {
      const TermNode& lam = f->code.node();
      auto inner = std::make_shared<EvalEnv>(*f->env);
      inner->vars[lam.name] = arg;
      return eval_rec(lam.a, inner, fuel);
    }
    case Value::Tag::Prim: {
      auto it = default_prims().find(f->prim_name);
      if (it == default_prims().end())
        throw EvalError(EvalError::Kind::Stuck,
                        "primitive '" + f->prim_name + "' is not executable");
      auto out = std::make_shared<Value>(*f);
      out->prim_args.push_back(arg);
      if ((int)out->prim_args.size() == it->second.arity)
        return it->second.fn(out->prim_args);
      return out;
    }
    default:
      throw EvalError(EvalError::Kind::Stuck, "applying a non-function");
  }
}

ValuePtr apply_index(const ValuePtr& f0, const ExtReal& idx_value, long& fuel) {
  ValuePtr f = f0;
  if (f->tag == Value::Tag::FixThunk) f = eval_rec(f->code, f->env, fuel);
  if (f->tag == Value::Tag::Prim) return f;  // primitives erase indices
  if (f->tag != Value::Tag::IdxClosure)
    throw EvalError(EvalError::Kind::Stuck, "index application to non-function");
  const TermNode& lam = f->code.node();
  auto inner = std::make_shared<EvalEnv>(*f->env);
  inner->idx.values[lam.name] = idx_value;
  return eval_rec(lam.a, inner, fuel);
}

ValuePtr eval_term(const Term& e, const std::shared_ptr<EvalEnv>& env,
                   const Valuation& idx, long& fuel) {
  auto seeded = std::make_shared<EvalEnv>(env ? *env : EvalEnv{});
  for (const auto& [k, v] : idx.values) seeded->idx.values[k] = v;
  return eval_rec(e, seeded, fuel);
}

}  // namespace senscheck
