#include "senscheck/eval.hpp"

namespace senscheck {

ProbeConfig ProbeConfig::defaults() {
  ProbeConfig cfg;
  cfg.sens_probes = {ExtReal::of(0),    ExtReal(make_rational(1, 2)),
                     ExtReal::of(1),    ExtReal::of(2),
                     ExtReal::of(5),    ExtReal::of(10),
                     ExtReal::of(1000), ExtReal::infinity()};
  for (long n = 0; n <= 16; ++n) cfg.size_probes.push_back(ExtReal::of(n));
  cfg.size_probes.push_back(ExtReal::infinity());
  return cfg;
}

static ExtReal eval_case_branches(const SensNode& n, const ExtReal& scrut,
                                  const Valuation& rho, const ProbeConfig& probes,
                                  bool uniform) {
  auto ev = [&](const Sens& s, const Valuation& r) {
    return uniform ? eval_sens_uniform(s, r, probes) : eval_sens(s, r, probes);
  };
  if (scrut.is_zero()) return ev(n.b, rho);
  if (scrut.is_infinite())
    return ev(n.c, rho.with(n.name, ExtReal::infinity()));
  if (scrut.value() >= 1)
    return ev(n.c, rho.with(n.name, ExtReal(scrut.value() - 1)));
  // Scrutinee strictly between 0 and 1: the uniform table gives 0. Standard
  // valuations never produce such a value for a size-kinded scrutinee, so
  // reusing the clause keeps the function total without affecting the
  // standard semantics.
  return ExtReal::of(0);
}

ExtReal eval_sens(const Sens& s, const Valuation& rho, const ProbeConfig& probes) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      return n.value;
    case Sens::Tag::Var:
      return rho.get(n.name);
    case Sens::Tag::Plus:
      return eval_sens(n.a, rho, probes) + eval_sens(n.b, rho, probes);
    case Sens::Tag::Times:
      return eval_sens(n.a, rho, probes) * eval_sens(n.b, rho, probes);
    case Sens::Tag::Max:
      return ext_max(eval_sens(n.a, rho, probes), eval_sens(n.b, rho, probes));
    case Sens::Tag::Sup: {
      ExtReal best = ExtReal::of(0);
      for (const ExtReal& p : probes.probes(n.binder_kind))
        best = ext_max(best, eval_sens(n.a, rho.with(n.name, p), probes));
      return best;
    }
    case Sens::Tag::Case:
      return eval_case_branches(n, eval_sens(n.a, rho, probes), rho, probes,
                                /*uniform=*/false);
  }
  return ExtReal::of(0);
}

ExtReal eval_sens_uniform(const Sens& s, const Valuation& rho,
                          const ProbeConfig& probes) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      return n.value;
    case Sens::Tag::Var:
      return rho.get(n.name);
    case Sens::Tag::Plus:
      return eval_sens_uniform(n.a, rho, probes) +
             eval_sens_uniform(n.b, rho, probes);
    case Sens::Tag::Times:
      return eval_sens_uniform(n.a, rho, probes) *
             eval_sens_uniform(n.b, rho, probes);
    case Sens::Tag::Max:
      return ext_max(eval_sens_uniform(n.a, rho, probes),
                     eval_sens_uniform(n.b, rho, probes));
    case Sens::Tag::Sup: {
      // The binder ranges over all extended reals here, whatever its kind.
      ExtReal best = ExtReal::of(0);
      for (const ExtReal& p : probes.sens_probes)
        best = ext_max(best, eval_sens_uniform(n.a, rho.with(n.name, p), probes));
      return best;
    }
    case Sens::Tag::Case:
      return eval_case_branches(n, eval_sens_uniform(n.a, rho, probes), rho,
                                probes, /*uniform=*/true);
  }
  return ExtReal::of(0);
}

}  // namespace senscheck
