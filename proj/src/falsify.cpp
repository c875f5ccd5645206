#include <random>

#include "senscheck/falsify.hpp"

namespace senscheck {

namespace {

ExtReal eval_by_mode(const Sens& s, const Valuation& rho, SolveMode mode) {
  static const ProbeConfig probes = ProbeConfig::defaults();
  return mode == SolveMode::Uniform ? eval_sens_uniform(s, rho, probes)
                                    : eval_sens(s, rho, probes);
}

class Sampler {
public:
  Sampler(std::uint64_t seed, SolveMode mode) : rng_(seed ^ 0x5e5ca11u), mode_(mode) {}

  ExtReal sample(Kind k) {
    if (mode_ == SolveMode::Mixed && k == Kind::Size) return natural();
    return sens_value();
  }

  ExtReal natural() {
    // Quadratic bias toward small values over {0..32}.
    double g = uniform01();
    return ExtReal::of((long)(g * g * 33));
  }

  ExtReal sens_value() {
    static const long grid_num[] = {0, 1, 1, 3, 2, 3, 5, 10, 1, 2};
    static const long grid_den[] = {1, 2, 1, 2, 1, 1, 1, 1, 4, 3};
    std::uint64_t pick = rng_() % 16;
    if (pick == 15) return ExtReal::infinity();
    if (pick < 10) return ExtReal(make_rational(grid_num[pick], grid_den[pick]));
    long num = (long)(rng_() % 201);
    long den = 1 + (long)(rng_() % 8);
    return ExtReal(make_rational(num, den));
  }

  double uniform01() {
    return (double)(rng_() % 1000000) / 1000000.0;
  }

private:
  std::mt19937_64 rng_;
  SolveMode mode_;
};

}  // namespace

bool refinements_hold(const RefinementSet& refs, const Valuation& rho,
                      SolveMode mode) {
  for (const auto& r : refs) {
    for (const auto& v : free_vars(r.scrutinee))
      if (!rho.has(v)) return false;
    ExtReal s = eval_by_mode(r.scrutinee, rho, mode);
    if (r.shape == Refinement::Shape::IsZero) {
      if (!s.is_zero()) return false;
    } else {
      if (!rho.has(r.binder)) return false;
      if (s != rho.get(r.binder) + ExtReal::of(1)) return false;
    }
  }
  return true;
}

bool confirms_violation(const IdxEnv& env, const RefinementSet& refs,
                        const Sens& lhs, const Sens& rhs, const Valuation& rho,
                        SolveMode mode) {
  for (const auto& [name, kind] : env)
    if (!rho.has(name)) return false;
  if (!refinements_hold(refs, rho, mode)) return false;
  return eval_by_mode(lhs, rho, mode) < eval_by_mode(rhs, rho, mode);
}

namespace {

/// Repairs the valuation toward refinement consistency (zero scrutinee
/// variables forced to zero, successor binders re-derived) and keeps it only
/// if it then witnesses a violation.
std::optional<Valuation> try_valuation(const RefinementSet& refs,
                                       const Sens& lhs, const Sens& rhs,
                                       Valuation rho, SolveMode mode) {
  for (const auto& r : refs) {
    if (r.shape == Refinement::Shape::IsZero) {
      if (r.scrutinee.tag() == Sens::Tag::Var)
        rho.values[r.scrutinee.node().name] = ExtReal::of(0);
      continue;
    }
    bool evaluable = true;
    for (const auto& v : free_vars(r.scrutinee))
      if (!rho.has(v)) evaluable = false;
    if (!evaluable) return std::nullopt;
    ExtReal s = eval_by_mode(r.scrutinee, rho, mode);
    if (s.is_infinite())
      rho.values[r.binder] = ExtReal::infinity();
    else if (s.value() >= 1)
      rho.values[r.binder] = ExtReal(s.value() - 1);
    else
      return std::nullopt;
  }
  if (!refinements_hold(refs, rho, mode)) return std::nullopt;
  if (eval_by_mode(lhs, rho, mode) < eval_by_mode(rhs, rho, mode)) return rho;
  return std::nullopt;
}

std::optional<Valuation> search(const IdxEnv& env, const RefinementSet& refs,
                                const Sens& lhs, const Sens& rhs, int budget,
                                SolveMode mode, std::uint64_t seed) {
  Sampler sampler(seed, mode);
  for (int trial = 0; trial < budget; ++trial) {
    Valuation rho;
    rho.mode = mode == SolveMode::Uniform ? ValMode::Uniform : ValMode::Standard;
    for (const auto& [name, kind] : env)
      rho.values[name] = sampler.sample(kind);
    if (auto w = try_valuation(refs, lhs, rhs, std::move(rho), mode)) return w;
  }
  return std::nullopt;
}

}  // namespace

Valuation shrink_witness(const IdxEnv& env, const RefinementSet& refs,
                         const Sens& lhs, const Sens& rhs, Valuation w,
                         SolveMode mode) {
  std::vector<ExtReal> ladder = {ExtReal::of(0),
                                 ExtReal(make_rational(1, 4)),
                                 ExtReal(make_rational(1, 2)),
                                 ExtReal(make_rational(3, 4)),
                                 ExtReal::of(1)};
  for (long n = 2; n <= 32; ++n) ladder.push_back(ExtReal::of(n));
  for (const auto& [name, kind] : env) {
    if (!w.has(name)) continue;
    for (const ExtReal& cand : ladder) {
      if (!(cand < w.get(name))) break;
      if (mode == SolveMode::Mixed && kind == Kind::Size &&
          (cand.is_infinite() || !is_integer(cand.value())))
        continue;
      Valuation t = w;
      t.values[name] = cand;
      if (auto better = try_valuation(refs, lhs, rhs, std::move(t), mode)) {
        w = std::move(*better);
        break;
      }
    }
  }
  return w;
}

std::optional<Valuation> falsify(const Obligation& o, int budget, SolveMode mode,
                                 std::uint64_t seed) {
  IdxEnv env = o.outer_env;
  for (const auto& v : o.local_env) env.push_back(v);
  RefinementSet refs = o.outer_refs;
  for (const auto& r : o.local_refs) refs.push_back(r);
  return search(env, refs, o.lhs, o.rhs, budget, mode, seed);
}

std::optional<Valuation> falsify_constraint(const Constraint& c, int budget,
                                            SolveMode mode, std::uint64_t seed) {
  return search(c.idx, c.refs, c.lhs, c.rhs, budget, mode, seed);
}

}  // namespace senscheck
