#ifndef SENSCHECK_EVAL_HPP
#define SENSCHECK_EVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "senscheck/ast.hpp"

namespace senscheck {

enum class ValMode { Standard, Uniform };

/// An assignment of index variables to values. In standard mode, size-kinded
/// variables are expected to hold naturals; in uniform mode everything ranges
/// over the extended nonnegative reals.
struct Valuation {
  std::map<std::string, ExtReal> values;
  ValMode mode = ValMode::Standard;

  bool has(const std::string& name) const { return values.count(name) > 0; }
  const ExtReal& get(const std::string& name) const { return values.at(name); }
  Valuation with(const std::string& name, ExtReal v) const {
    Valuation out = *this;
    out.values[name] = std::move(v);
    return out;
  }
};

/// Probe sets used to approximate sup from below. The result is exact when
/// the body is monotone in the binder (the probes include the top element).
struct ProbeConfig {
  std::vector<ExtReal> sens_probes;
  std::vector<ExtReal> size_probes;

  static ProbeConfig defaults();
  const std::vector<ExtReal>& probes(Kind k) const {
    return k == Kind::Size ? size_probes : sens_probes;
  }
};

/// Standard denotation. Sup is the max over the kind's probe set, a lower
/// bound of the true supremum; everything else is exact.
ExtReal eval_sens(const Sens& s, const Valuation& rho, const ProbeConfig& probes);

/// Uniform denotation: sup ranges over all extended reals regardless of the
/// binder kind, and case yields 0 on scrutinee values strictly between 0
/// and 1. A scrutinee of infinity takes the successor branch at infinity.
ExtReal eval_sens_uniform(const Sens& s, const Valuation& rho,
                          const ProbeConfig& probes);

}  // namespace senscheck

#endif
