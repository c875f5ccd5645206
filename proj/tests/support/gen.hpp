#ifndef SENSCHECK_TESTS_GEN_HPP
#define SENSCHECK_TESTS_GEN_HPP

#include <random>

#include "senscheck/club.hpp"
#include "senscheck/eval.hpp"

namespace senscheck::test {

/// Random index-term and valuation generator for the property suites.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

  Rational small_rational() {
    static const long nums[] = {0, 1, 1, 2, 3, 5, 7, 3};
    static const long dens[] = {1, 1, 2, 1, 2, 1, 3, 4};
    size_t k = pick(8);
    return make_rational(nums[k], dens[k]);
  }

  /// Standard term over the given variables.
  Sens standard(int depth, const IdxEnv& vars) {
    if (depth <= 0 || pick(3) == 0) {
      if (!vars.empty() && pick(2) == 0)
        return Sens::var(vars[pick(vars.size())].first);
      return Sens::konst(ExtReal(small_rational()));
    }
    Sens a = standard(depth - 1, vars);
    Sens b = standard(depth - 1, vars);
    return pick(2) == 0 ? Sens::plus(a, b) : Sens::times(a, b);
  }

  /// Size-kinded standard term (natural constants and size variables only).
  Sens size_term(int depth, const IdxEnv& vars) {
    IdxEnv size_vars;
    for (const auto& v : vars)
      if (v.second == Kind::Size) size_vars.push_back(v);
    if (depth <= 0 || pick(3) == 0) {
      if (!size_vars.empty() && pick(3) != 0)
        return Sens::var(size_vars[pick(size_vars.size())].first);
      return Sens::konst((long)pick(4));
    }
    Sens a = size_term(depth - 1, vars);
    Sens b = size_term(depth - 1, vars);
    return pick(3) == 0 ? Sens::times(a, b) : Sens::plus(a, b);
  }

  /// Extended term: may use max, sup and case.
  Sens extended(int depth, IdxEnv vars, bool allow_inf = false) {
    if (depth <= 0) return leaf(vars, allow_inf);
    switch (pick(7)) {
      case 0:
        return leaf(vars, allow_inf);
      case 1:
        return Sens::plus(extended(depth - 1, vars, allow_inf),
                          extended(depth - 1, vars, allow_inf));
      case 2:
        return Sens::times(extended(depth - 1, vars, allow_inf),
                           extended(depth - 1, vars, allow_inf));
      case 3:
        return Sens::smax(extended(depth - 1, vars, allow_inf),
                          extended(depth - 1, vars, allow_inf));
      case 4: {
        std::string b = binder();
        Kind k = pick(2) == 0 ? Kind::Size : Kind::Sens;
        IdxEnv inner = vars;
        inner.emplace_back(b, k);
        return Sens::sup(b, k, extended(depth - 1, inner, allow_inf));
      }
      default: {
        Sens scrut = size_term(std::min(depth - 1, 2), vars);
        Sens zero = extended(depth - 1, vars, allow_inf);
        std::string b = binder();
        IdxEnv inner = vars;
        inner.emplace_back(b, Kind::Size);
        return Sens::scase(scrut, zero, b, extended(depth - 1, inner, allow_inf));
      }
    }
  }

  /// Standard-mode valuation: size variables get naturals, sensitivity
  /// variables extended reals (occasionally infinite).
  Valuation standard_valuation(const IdxEnv& vars, bool allow_inf = true) {
    Valuation rho;
    rho.mode = ValMode::Standard;
    for (const auto& [name, kind] : vars) {
      if (kind == Kind::Size) {
        rho.values[name] = ExtReal::of((long)pick(9));
      } else if (allow_inf && pick(8) == 0) {
        rho.values[name] = ExtReal::infinity();
      } else {
        rho.values[name] = ExtReal(small_rational());
      }
    }
    return rho;
  }

  /// Obligation with polynomial sides of degree <= 3 over <= 3 variables,
  /// occasionally guarded by variable-scrutinee refinements.
  Obligation random_obligation() {
    static const IdxEnv pool = {
        {"i", Kind::Size}, {"j", Kind::Size}, {"r", Kind::Sens}};
    IdxEnv vars;
    size_t n = pick(4);
    for (size_t k = 0; k < n; ++k) vars.push_back(pool[k]);
    Obligation o;
    o.outer_env = vars;
    o.lhs = poly_term(vars);
    o.rhs = poly_term(vars);
    if (!vars.empty() && vars[0].second == Kind::Size && pick(4) == 0) {
      if (pick(2) == 0) {
        o.outer_refs.push_back(Refinement::is_zero(Sens::var(vars[0].first)));
      } else {
        o.local_env.emplace_back("p", Kind::Size);
        o.local_refs.push_back(
            Refinement::is_succ(Sens::var(vars[0].first), "p"));
      }
    }
    o.origin = {{}, "gen"};
    return o;
  }

private:
  std::mt19937_64 rng_;
  int binder_count_ = 0;

  std::string binder() { return "b" + std::to_string(binder_count_++ % 4); }

  Sens leaf(const IdxEnv& vars, bool allow_inf) {
    if (allow_inf && pick(12) == 0) return Sens::infinity();
    if (!vars.empty() && pick(2) == 0)
      return Sens::var(vars[pick(vars.size())].first);
    return Sens::konst(ExtReal(small_rational()));
  }

  /// Sum of up to four monomials of degree <= 3.
  Sens poly_term(const IdxEnv& vars) {
    Sens acc = Sens::konst(ExtReal(small_rational()));
    size_t terms = 1 + pick(3);
    for (size_t t = 0; t < terms; ++t) {
      Sens mono = Sens::konst(ExtReal(small_rational()));
      size_t deg = pick(4);
      for (size_t d = 0; d < deg && !vars.empty(); ++d)
        mono = Sens::times(mono, Sens::var(vars[pick(vars.size())].first));
      acc = Sens::plus(acc, mono);
    }
    return acc;
  }
};

}  // namespace senscheck::test

#endif
