#include "senscheck/env.hpp"

namespace senscheck {

Sens box_elim(const Annotation& a) {
  return a.is_box() ? Sens::konst(0) : a.sens_expr();
}

namespace {

bool is_const(const Sens& s, long v) {
  return s.tag() == Sens::Tag::Const && s.node().value == ExtReal::of(v);
}

}  // namespace

Sens sens_plus(const Sens& a, const Sens& b) {
  if (a.tag() == Sens::Tag::Const && b.tag() == Sens::Tag::Const)
    return Sens::konst(a.node().value + b.node().value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return Sens::plus(a, b);
}

Sens sens_times(const Sens& a, const Sens& b) {
  if (a.tag() == Sens::Tag::Const && b.tag() == Sens::Tag::Const)
    return Sens::konst(a.node().value * b.node().value);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  return Sens::times(a, b);
}

VarEnv VarEnv::skeleton(std::vector<std::pair<std::string, Type>> bindings) {
  VarEnv env;
  for (auto& [name, ty] : bindings) env.bind(name, Annotation::box(), ty);
  return env;
}

void VarEnv::bind(std::string name, Annotation ann, Type ty) {
  if (find(name)) throw EnvError("duplicate binding '" + name + "'");
  bindings_.push_back({std::move(name), std::move(ann), std::move(ty)});
}

const Binding* VarEnv::find(const std::string& name) const {
  for (const auto& b : bindings_)
    if (b.name == name) return &b;
  return nullptr;
}

Binding* VarEnv::find(const std::string& name) {
  for (auto& b : bindings_)
    if (b.name == name) return &b;
  return nullptr;
}

Binding VarEnv::pop(const std::string& name) {
  for (auto it = bindings_.begin(); it != bindings_.end(); ++it) {
    if (it->name == name) {
      Binding out = *it;
      bindings_.erase(it);
      return out;
    }
  }
  throw EnvError("pop: no binding '" + name + "'");
}

bool VarEnv::same_domain(const VarEnv& o) const {
  if (size() != o.size()) return false;
  for (const auto& b : bindings_)
    if (!o.find(b.name)) return false;
  return true;
}

static Annotation ann_add(const Annotation& x, const Annotation& y) {
  if (x.is_box()) return y;
  if (y.is_box()) return x;
  return Annotation::sens(sens_plus(x.sens_expr(), y.sens_expr()));
}

VarEnv env_add(const VarEnv& a, const VarEnv& b) {
  VarEnv out;
  for (const auto& bind : a.bindings()) {
    const Binding* other = b.find(bind.name);
    if (!other) {
      out.bind(bind.name, bind.ann, bind.type);
      continue;
    }
    if (other->type != bind.type)
      throw EnvError("environment addition: '" + bind.name +
                     "' bound at two different types");
    out.bind(bind.name, ann_add(bind.ann, other->ann), bind.type);
  }
  for (const auto& bind : b.bindings())
    if (!a.find(bind.name)) out.bind(bind.name, bind.ann, bind.type);
  return out;
}

VarEnv env_scale(const Sens& r, const VarEnv& env) {
  VarEnv out;
  for (const auto& b : env.bindings()) {
    Annotation ann = b.ann.is_box()
                         ? Annotation::box()
                         : Annotation::sens(sens_times(r, b.ann.sens_expr()));
    out.bind(b.name, std::move(ann), b.type);
  }
  return out;
}

static void require_joinable(const VarEnv& a, const VarEnv& b, const char* op) {
  if (!a.same_domain(b))
    throw EnvError(std::string(op) + ": environments have different domains");
  for (const auto& x : a.bindings()) {
    const Binding* y = b.find(x.name);
    if (y->type != x.type)
      throw EnvError(std::string(op) + ": '" + x.name +
                     "' bound at two different types");
  }
}

VarEnv env_join_max(const VarEnv& a, const VarEnv& b) {
  require_joinable(a, b, "max");
  VarEnv out;
  for (const auto& x : a.bindings()) {
    const Binding* y = b.find(x.name);
    Annotation ann;
    if (x.ann.is_box() && y->ann.is_box())
      ann = Annotation::box();
    else if (x.ann.is_box())
      ann = y->ann;
    else if (y->ann.is_box())
      ann = x.ann;
    else
      ann = Annotation::sens(Sens::smax(x.ann.sens_expr(), y->ann.sens_expr()));
    out.bind(x.name, std::move(ann), x.type);
  }
  return out;
}

VarEnv env_join_sup(const std::string& binder, Kind k, const VarEnv& env) {
  VarEnv out;
  for (const auto& b : env.bindings()) {
    Annotation ann =
        b.ann.is_box()
            ? Annotation::box()
            : Annotation::sens(Sens::sup(binder, k, b.ann.sens_expr()));
    out.bind(b.name, std::move(ann), b.type);
  }
  return out;
}

VarEnv env_join_case(const Sens& scrutinee, const VarEnv& zero_env,
                     const std::string& binder, const VarEnv& succ_env) {
  require_joinable(zero_env, succ_env, "case");
  VarEnv out;
  for (const auto& z : zero_env.bindings()) {
    const Binding* s = succ_env.find(z.name);
    Annotation ann;
    if (z.ann.is_box() && s->ann.is_box())
      ann = Annotation::box();
    else
      ann = Annotation::sens(
          Sens::scase(scrutinee, box_elim(z.ann), binder, box_elim(s->ann)));
    out.bind(z.name, std::move(ann), z.type);
  }
  return out;
}

VarEnv box_erase(const VarEnv& env) {
  VarEnv out;
  for (const auto& b : env.bindings())
    if (!b.ann.is_box()) out.bind(b.name, b.ann, b.type);
  return out;
}

}  // namespace senscheck
