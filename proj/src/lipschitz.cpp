#include <random>

#include "senscheck/lipschitz.hpp"

namespace senscheck {

std::string LipschitzReport::str() const {
  return std::string(pass ? "pass" : "FAIL") + " max-ratio=" +
         rational_str(max_ratio) + " bound=" + bound.str() + " trials=" +
         std::to_string(trials);
}

std::optional<FirstOrderSlice> first_order_slice(const Term& body,
                                                 const Type& ty,
                                                 std::uint64_t size_value) {
  Term cur = body;
  Type t = ty;
  for (int guard = 0; guard < 16; ++guard) {
    if (t.tag() == Type::Tag::Forall) {
      if (t.node().binder_kind != Kind::Size) return std::nullopt;
      Sens inst = Sens::konst((long)size_value);
      cur = Term::idx_app(cur, inst);
      t = type_subst(t.node().a, t.node().name, inst);
      continue;
    }
    if (t.tag() == Type::Tag::Lolli) {
      const Type& dom = t.node().a;
      if (dom.tag() == Type::Tag::NatSing) {
        // Feed the singleton's value; the index must be closed by now.
        static const ProbeConfig probes = ProbeConfig::defaults();
        if (!free_vars(dom.node().idx).empty()) return std::nullopt;
        ExtReal v = eval_sens(dom.node().idx, {}, probes);
        if (v.is_infinite() || !is_integer(v.value())) return std::nullopt;
        cur = Term::app(cur, Term::nat_lit(to_uint(v.value())));
        t = t.node().b;
        continue;
      }
      if (dom.tag() == Type::Tag::Real && t.node().b.tag() == Type::Tag::Real) {
        if (!free_vars(t.node().idx).empty()) return std::nullopt;
        return FirstOrderSlice{cur, t.node().idx};
      }
      return std::nullopt;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

LipschitzReport lipschitz_test(const Term& f, const Sens& bound, int trials,
                               std::uint64_t seed, long fuel) {
  static const ProbeConfig probes = ProbeConfig::defaults();
  LipschitzReport report;
  report.bound = eval_sens(bound, {}, probes);
  report.trials = trials;
  report.max_ratio = 0;

  long budget = fuel;
  ValuePtr fv = eval_term(f, nullptr, {}, budget);

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  auto sample = [&]() {
    long den = 1 + (long)(rng() % 16);
    long num = (long)(rng() % (200 * den + 1)) - 100 * den;
    return make_rational(num, den);
  };

  for (int k = 0; k < trials; ++k) {
    Rational x = sample();
    Rational y = sample();
    if (x == y) {
      --k;
      continue;
    }
    long fuel1 = fuel, fuel2 = fuel;
    ValuePtr fx = apply_value(fv, make_real(x), fuel1);
    ValuePtr fy = apply_value(fv, make_real(y), fuel2);
    if (fx->tag != Value::Tag::Real || fy->tag != Value::Tag::Real)
      throw EvalError(EvalError::Kind::Stuck, "fuzzed function is not real-valued");
    Rational num = abs(fx->real - fy->real);
    Rational den = abs(x - y);
    Rational ratio = num / den;
    if (ratio > report.max_ratio) report.max_ratio = ratio;
  }

  if (report.bound.is_infinite()) {
    report.pass = true;
  } else {
    Rational slack = make_rational(1, 1000000000);
    report.pass = report.max_ratio <= report.bound.value() + slack;
  }
  return report;
}

}  // namespace senscheck
