#ifndef SENSCHECK_ENV_HPP
#define SENSCHECK_ENV_HPP

#include <optional>
#include <string>
#include <vector>

#include "senscheck/ast.hpp"

namespace senscheck {

/// Per-binding usage annotation: either an index term or the "no usage
/// recorded" marker. The marker is not an index term and never appears
/// inside one.
struct Annotation {
  static Annotation box() { return Annotation{}; }
  static Annotation sens(Sens s) {
    Annotation a;
    a.s_ = std::move(s);
    return a;
  }

  bool is_box() const { return s_.null(); }
  const Sens& sens_expr() const { return s_; }

  bool operator==(const Annotation& o) const {
    if (is_box() || o.is_box()) return is_box() == o.is_box();
    return s_ == o.s_;
  }

private:
  Sens s_;
};

/// The marker erases to zero where an index term is required.
Sens box_elim(const Annotation& a);

/// Smart constructors over the absorbing algebra. Only identities that hold
/// for every extended-real value are applied: constants combine, zero is
/// dropped from sums, one from products. Zero is NOT absorbing for products
/// (0 * inf = inf here), so 0 * x stays put.
Sens sens_plus(const Sens& a, const Sens& b);
Sens sens_times(const Sens& a, const Sens& b);

struct Binding {
  std::string name;
  Annotation ann;
  Type type;
};

struct EnvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A typing environment; order is the binding order, names are distinct.
class VarEnv {
public:
  VarEnv() = default;

  static VarEnv skeleton(std::vector<std::pair<std::string, Type>> bindings);

  void bind(std::string name, Annotation ann, Type ty);
  const Binding* find(const std::string& name) const;
  Binding* find(const std::string& name);
  /// Removes and returns the binding (must exist).
  Binding pop(const std::string& name);

  bool empty() const { return bindings_.empty(); }
  size_t size() const { return bindings_.size(); }
  const std::vector<Binding>& bindings() const { return bindings_; }
  std::vector<Binding>& bindings() { return bindings_; }

  bool same_domain(const VarEnv& o) const;

private:
  std::vector<Binding> bindings_;
};

/// Union of domains; shared names add their annotations with the Box marker
/// as the neutral element. Shared names must carry syntactically equal types.
VarEnv env_add(const VarEnv& a, const VarEnv& b);

/// Multiplies every recorded annotation by `r`; Box stays Box.
VarEnv env_scale(const Sens& r, const VarEnv& env);

/// Pointwise max over two environments with equal domains and types.
VarEnv env_join_max(const VarEnv& a, const VarEnv& b);

/// Pointwise sup binding `binder` in every recorded annotation.
VarEnv env_join_sup(const std::string& binder, Kind k, const VarEnv& env);

/// Pointwise case split; branches with any usage recorded pass through
/// box elimination first.
VarEnv env_join_case(const Sens& scrutinee, const VarEnv& zero_env,
                     const std::string& binder, const VarEnv& succ_env);

/// Drops Box-annotated bindings.
VarEnv box_erase(const VarEnv& env);

}  // namespace senscheck

#endif
