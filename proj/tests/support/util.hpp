#ifndef SENSCHECK_TESTS_UTIL_HPP
#define SENSCHECK_TESTS_UTIL_HPP

#include <string>

#include "senscheck/driver.hpp"
#include "senscheck/syntax.hpp"
#include "senscheck/typing.hpp"

namespace senscheck::test {

inline Sens S(const std::string& text) { return parse_sens(text); }
inline Type T(const std::string& text) { return parse_type(text); }

inline Constraint mkc(IdxEnv idx, RefinementSet refs, Sens lhs, Sens rhs) {
  Constraint c;
  c.idx = std::move(idx);
  c.refs = std::move(refs);
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.origin = {{}, "test"};
  return c;
}

inline Valuation val(std::initializer_list<std::pair<std::string, ExtReal>> vs,
                     ValMode mode = ValMode::Standard) {
  Valuation rho;
  rho.mode = mode;
  for (const auto& [k, v] : vs) rho.values[k] = v;
  return rho;
}

inline ExtReal fin(long num, long den = 1) {
  return ExtReal(make_rational(num, den));
}

inline std::string corpus_path(const std::string& name) {
  return std::string(SENSCHECK_CORPUS_DIR) + "/" + name;
}

}  // namespace senscheck::test

#endif
