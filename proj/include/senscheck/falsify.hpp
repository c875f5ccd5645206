#ifndef SENSCHECK_FALSIFY_HPP
#define SENSCHECK_FALSIFY_HPP

#include <cstdint>
#include <optional>

#include "senscheck/club.hpp"
#include "senscheck/smt.hpp"

namespace senscheck {

/// Counterexample search by sampling: naturals weighted toward small values,
/// sensitivity values from a grid plus random rationals plus infinity, with
/// refinement-consistent repair. Returns the first violating valuation,
/// confirmed by evaluation. Deterministic under a fixed seed.
std::optional<Valuation> falsify(const Obligation& o, int budget,
                                 SolveMode mode = SolveMode::Mixed,
                                 std::uint64_t seed = 0);

/// Same search over a whole constraint (the right side may be extended; its
/// probe evaluation under-approximates, which keeps found witnesses sound).
std::optional<Valuation> falsify_constraint(const Constraint& c, int budget,
                                            SolveMode mode = SolveMode::Mixed,
                                            std::uint64_t seed = 0);

/// True when every refinement equation holds under the valuation.
bool refinements_hold(const RefinementSet& refs, const Valuation& rho,
                      SolveMode mode);

/// Greedily lowers witness coordinates toward small values while the
/// valuation still violates lhs >= rhs (refinement binders are re-derived).
Valuation shrink_witness(const IdxEnv& env, const RefinementSet& refs,
                         const Sens& lhs, const Sens& rhs, Valuation w,
                         SolveMode mode);

/// True when the valuation violates lhs >= rhs (and satisfies the
/// refinements), i.e. it witnesses invalidity.
bool confirms_violation(const IdxEnv& env, const RefinementSet& refs,
                        const Sens& lhs, const Sens& rhs, const Valuation& rho,
                        SolveMode mode);

}  // namespace senscheck

#endif
