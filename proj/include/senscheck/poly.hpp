#ifndef SENSCHECK_POLY_HPP
#define SENSCHECK_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "senscheck/club.hpp"

namespace senscheck {

/// Sparse multivariate polynomial with rational coefficients. Monomial keys
/// are sorted (variable, exponent) lists.
class Poly {
public:
  using Monomial = std::vector<std::pair<std::string, int>>;

  Poly() = default;
  static Poly constant(Rational c);
  static Poly variable(const std::string& name);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;

  bool all_coeffs_nonneg() const;
  bool is_zero() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational eval(const std::map<std::string, Rational>& point) const;
  std::vector<std::string> variables() const;
  std::string str() const;

private:
  std::map<Monomial, Rational> terms_;
  void trim();
};

/// Expands a standard, infinity-free index term.
Poly poly_of_standard(const Sens& s);

/// Sound one-sided check: applies variable-scrutinee refinement
/// substitutions, expands lhs - rhs, and answers Valid when every
/// coefficient is nonnegative (all variables range over nonnegative values).
/// Right sides whose expansion drops a factor that can reach infinity are
/// declined, since 0 * inf = inf is invisible to the polynomial view.
/// Anything else is Unknown, reported as false here.
bool poly_dominate(const Obligation& o, bool uniform = false);

/// The obligation after refinement substitution, as a single difference
/// polynomial lhs - rhs (used by the falsifier and the grid search).
Poly obligation_difference(const Obligation& o);

/// Substitutes refinements whose scrutinee is a plain variable into the
/// obligation (IsZero: var := 0; IsSucc: var := binder + 1), dropping the
/// rest. Returns the rewritten lhs/rhs and the remaining free variables
/// paired with their kinds.
struct SubstitutedObligation {
  Sens lhs, rhs;
  IdxEnv vars;
};
SubstitutedObligation apply_refinements(const Obligation& o);

}  // namespace senscheck

#endif
