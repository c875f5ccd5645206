#ifndef SENSCHECK_INTERP_HPP
#define SENSCHECK_INTERP_HPP

#include <functional>
#include <map>
#include <memory>

#include "senscheck/eval.hpp"
#include "senscheck/typing.hpp"

namespace senscheck {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct EvalEnv {
  std::map<std::string, ValuePtr> vars;
  Valuation idx;
};

struct Value {
  enum class Tag { Real, Nat, Tensor, With, Closure, IdxClosure, Prim, FixThunk };
  Tag tag;
  Rational real;                  // Real
  std::uint64_t nat = 0;          // Nat
  ValuePtr l, r;                  // Tensor/With
  Term code;                      // Closure/IdxClosure/FixThunk
  std::shared_ptr<EvalEnv> env;   // captured environment
  std::string prim_name;          // Prim
  std::vector<ValuePtr> prim_args;

  std::string str() const;
};

struct EvalError : std::runtime_error {
  enum class Kind { OutOfFuel, Stuck };
  Kind kind;
  EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// One executable primitive: arity plus the applied meaning.
struct PrimDef {
  int arity;
  std::function<ValuePtr(const std::vector<ValuePtr>&)> fn;
};

/// Built-in executable primitives: plus, times (natural scaling), neg.
const std::map<std::string, PrimDef>& default_prims();

/// Call-by-value evaluation of a closed term. `fuel` bounds the number of
/// evaluation steps (fixpoint unrollings included); running out raises
/// EvalError::OutOfFuel, ill-formed applications raise Stuck.
ValuePtr eval_term(const Term& e, const std::shared_ptr<EvalEnv>& env,
                   const Valuation& idx, long& fuel);

/// Applies an evaluated function value to an argument.
ValuePtr apply_value(const ValuePtr& f, const ValuePtr& arg, long& fuel);

/// Applies an index abstraction value to an index value.
ValuePtr apply_index(const ValuePtr& f, const ExtReal& idx_value, long& fuel);

ValuePtr make_real(Rational v);
ValuePtr make_nat(std::uint64_t n);

}  // namespace senscheck

#endif
