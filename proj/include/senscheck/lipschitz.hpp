#ifndef SENSCHECK_LIPSCHITZ_HPP
#define SENSCHECK_LIPSCHITZ_HPP

#include <optional>

#include "senscheck/interp.hpp"

namespace senscheck {

struct LipschitzReport {
  Rational max_ratio;
  ExtReal bound;
  bool pass = false;
  int trials = 0;
  std::string str() const;
};

/// Empirically validates a sensitivity bound: samples pairs of distinct
/// inputs from [-100, 100] and checks that no difference quotient exceeds
/// the bound by more than 1e-9. Exact rational arithmetic throughout;
/// deterministic under the seed.
LipschitzReport lipschitz_test(const Term& f, const Sens& bound, int trials,
                               std::uint64_t seed, long fuel = 200000);

/// A unary real function extracted from a program body: size quantifiers are
/// instantiated at `size_value`, leading nat[-] arguments receive the matching
/// literal, until the type reaches ![R] real -o real. Returns the rewritten
/// term and the closed bound, or nothing if the type has a different shape.
struct FirstOrderSlice {
  Term fn;
  Sens bound;
};
std::optional<FirstOrderSlice> first_order_slice(const Term& body,
                                                 const Type& ty,
                                                 std::uint64_t size_value);

}  // namespace senscheck

#endif
