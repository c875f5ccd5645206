#ifndef SENSCHECK_TRANSLATE_HPP
#define SENSCHECK_TRANSLATE_HPP

#include "senscheck/club.hpp"
#include "senscheck/formula.hpp"
#include "senscheck/typing.hpp"

namespace senscheck {

struct NonStandardLhs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result of removing the infinity constant from a constraint.
struct ElimResult {
  enum class Status {
    Valid,        // lhs rewrote to infinity: holds for every valuation
    Constraints,  // infinity-free residue in `constraints`
    Unresolved,   // embedded infinity under an extended lhs; caller reports
                  // Unknown
  };
  Status status = Status::Constraints;
  /// Infinity-free constraints equivalent to the input (for standard
  /// valuations); usually a single element.
  std::vector<Constraint> constraints;
  /// Contexts in which the right side rewrote to infinity while the left is
  /// finite: each translates to (forall env. refs => false).
  std::vector<Constraint> false_parts;

  bool resolved_valid() const { return status == Status::Valid; }
};

/// Rewrites with the absorbing algebra on both sides (inf + R -> inf,
/// inf * R -> inf, max(inf, R) -> inf, and the sup/case closures). A left
/// side that becomes infinity resolves to Valid; a right side that becomes
/// infinity under a finite left is recorded as a false part. An infinity
/// stuck under one branch of a case is expelled by splitting the constraint
/// along the case/max/sup inequality laws.
ElimResult eliminate_infinity(const Constraint& c);

/// First-order translation of an infinity-free constraint over mixed
/// natural/real sorts: forall env. refs => exists r1 r2. T(lhs)(r1) /\
/// T(rhs)(r2) /\ r1 >= r2.
Formula translate(const Constraint& c);

/// Uniform translation: every sort is the nonnegative extended reals, the
/// case translation gains the (0,1) |-> 0 clause, and the standard left side
/// compares directly: forall env. refs => exists r. T_U(rhs)(r) /\ lhs >= r.
/// Throws NonStandardLhs when the left side is extended.
Formula translate_uniform(const Constraint& c);

/// Alternation-free formula of an obligation. Uniform mode maps every
/// variable to the real sort.
Formula obligation_formula(const Obligation& o, bool uniform);

}  // namespace senscheck

#endif
