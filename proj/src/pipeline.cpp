#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include "senscheck/pipeline.hpp"
#include "senscheck/syntax.hpp"

namespace senscheck {

namespace {

std::string obligation_label(const Obligation& o) {
  Constraint c;
  c.idx = o.outer_env;
  for (const auto& v : o.local_env) c.idx.push_back(v);
  c.refs = o.outer_refs;
  for (const auto& r : o.local_refs) c.refs.push_back(r);
  c.lhs = o.lhs;
  c.rhs = o.rhs;
  return pretty(c);
}

Obligation obligation_of_constraint(const Constraint& c) {
  return {c.idx, c.refs, {}, {}, c.lhs, c.rhs, c.origin};
}

}  // namespace

std::vector<WorkItem> lower_constraints(const std::vector<Constraint>& cs,
                                        const LowerOptions& opts) {
  std::vector<WorkItem> items;
  bool uniform = opts.mode == SolveMode::Uniform;
  for (const Constraint& c : cs) {
    ElimResult elim = eliminate_infinity(c);
    if (elim.resolved_valid()) {
      WorkItem it;
      it.kind = WorkItem::Kind::Resolved;
      it.pre = Verdict::valid();
      it.source = c;
      it.label = pretty(c);
      items.push_back(std::move(it));
      continue;
    }
    if (elim.status == ElimResult::Status::Unresolved) {
      WorkItem it;
      it.kind = WorkItem::Kind::Resolved;
      it.pre = Verdict::unknown(UnknownReason::IncompleteInternalCheck);
      it.source = c;
      it.label = pretty(c);
      items.push_back(std::move(it));
      continue;
    }
    for (const Constraint& fp : elim.false_parts) {
      WorkItem it;
      it.kind = WorkItem::Kind::FalseContext;
      it.source = c;
      it.residual = fp;
      // forall env. refs => false
      std::vector<Formula> eqs;
      for (const auto& r : fp.refs) {
        Arith s = arith_of_standard(r.scrutinee);
        if (r.shape == Refinement::Shape::IsZero)
          eqs.push_back(Formula::cmp(CmpOp::Eq, s, Arith::konst(0)));
        else
          eqs.push_back(Formula::cmp(
              CmpOp::Eq, s, Arith::plus(Arith::var(r.binder), Arith::konst(1))));
      }
      Formula inner = eqs.empty()
                          ? Formula::falsity()
                          : Formula::implies(Formula::conj(std::move(eqs)),
                                             Formula::falsity());
      for (auto it2 = fp.idx.rbegin(); it2 != fp.idx.rend(); ++it2)
        inner = Formula::forall(
            it2->first,
            uniform || it2->second == Kind::Sens ? Sort::SensReal : Sort::Nat,
            std::move(inner));
      it.formula = std::move(inner);
      it.label = pretty(fp);
      items.push_back(std::move(it));
    }
    for (const Constraint& rc : elim.constraints) {
      if (opts.simplify && rc.lhs.is_standard()) {
        ClubExpr normal = normalize_club(push_leaves(to_club(rc.rhs)));
        for (Obligation& o : flatten(rc, normal)) {
          WorkItem it;
          it.kind = WorkItem::Kind::Obligation;
          it.ob = std::move(o);
          it.source = c;
          it.label = obligation_label(it.ob);
          items.push_back(std::move(it));
        }
      } else {
        WorkItem it;
        it.kind = WorkItem::Kind::Direct;
        it.formula = uniform ? translate_uniform(rc) : translate(rc);
        it.source = c;
        it.residual = rc;
        it.label = pretty(rc);
        items.push_back(std::move(it));
      }
    }
  }
  return items;
}

namespace {

void maybe_emit(const Formula& f, const DecideOptions& opts, int idx) {
  if (!opts.solver.emit_dir || idx < 0) return;
  std::filesystem::create_directories(*opts.solver.emit_dir);
  std::ofstream out(*opts.solver.emit_dir + "/obligation_" +
                    std::to_string(idx) + ".smt2");
  out << emit_smtlib(f, opts.solver.mode);
}

Verdict decide_obligation(const WorkItem& item, const DecideOptions& opts,
                          int idx) {
  const Obligation& o = item.ob;
  bool uniform = opts.solver.mode == SolveMode::Uniform;

  // The obligation terms are standard, so infinity folds completely.
  Constraint as_c;
  as_c.idx = o.outer_env;
  for (const auto& v : o.local_env) as_c.idx.push_back(v);
  as_c.refs = o.outer_refs;
  for (const auto& r : o.local_refs) as_c.refs.push_back(r);
  as_c.lhs = o.lhs;
  as_c.rhs = o.rhs;
  ElimResult elim = eliminate_infinity(as_c);
  if (elim.resolved_valid()) return Verdict::valid();
  if (!elim.false_parts.empty()) {
    // lhs >= infinity: invalid wherever the refinements are satisfiable.
    const Constraint& fp = elim.false_parts.front();
    Constraint probe = fp;
    probe.lhs = Sens::konst(0);
    probe.rhs = Sens::konst(1);
    if (auto w = falsify_constraint(probe, opts.falsify_budget,
                                    opts.solver.mode, opts.seed))
      return Verdict::invalid(std::move(*w));
    return Verdict::unknown(UnknownReason::IncompleteInternalCheck);
  }
  Obligation clean = o;
  clean.lhs = elim.constraints.front().lhs;
  clean.rhs = elim.constraints.front().rhs;
  clean.local_env.clear();
  clean.local_refs.clear();
  clean.outer_env = elim.constraints.front().idx;
  clean.outer_refs = elim.constraints.front().refs;

  if (poly_dominate(clean, uniform)) return Verdict::valid();

  Formula f = obligation_formula(clean, uniform);
  maybe_emit(f, opts, idx);
  Verdict v = solve(f, opts.solver);
  if (v.is_valid()) return v;
  const IdxEnv& env = clean.outer_env;
  const RefinementSet& refs = clean.outer_refs;
  if (v.is_invalid()) {
    if (confirms_violation(env, refs, clean.lhs, clean.rhs, v.witness,
                           opts.solver.mode)) {
      v.witness = shrink_witness(env, refs, clean.lhs, clean.rhs,
                                 std::move(v.witness), opts.solver.mode);
      return v;
    }
    v = Verdict::unknown(UnknownReason::SolverUnknown);
  }
  if (auto w = falsify(clean, opts.falsify_budget, opts.solver.mode, opts.seed))
    return Verdict::invalid(shrink_witness(env, refs, clean.lhs, clean.rhs,
                                           std::move(*w), opts.solver.mode));
  return v;
}

Verdict decide_direct(const WorkItem& item, const DecideOptions& opts, int idx) {
  maybe_emit(item.formula, opts, idx);
  const Constraint& rc = item.residual;
  Verdict v = solve(item.formula, opts.solver);
  if (v.is_valid()) return v;
  if (v.is_invalid()) {
    if (confirms_violation(rc.idx, rc.refs, rc.lhs, rc.rhs, v.witness,
                           opts.solver.mode)) {
      v.witness = shrink_witness(rc.idx, rc.refs, rc.lhs, rc.rhs,
                                 std::move(v.witness), opts.solver.mode);
      return v;
    }
    v = Verdict::unknown(UnknownReason::SolverUnknown);
  }
  if (auto w = falsify_constraint(rc, opts.falsify_budget, opts.solver.mode,
                                  opts.seed))
    return Verdict::invalid(shrink_witness(rc.idx, rc.refs, rc.lhs, rc.rhs,
                                           std::move(*w), opts.solver.mode));
  return v;
}

Verdict decide_false_context(const WorkItem& item, const DecideOptions& opts,
                             int idx) {
  Constraint probe = item.residual;
  probe.lhs = Sens::konst(0);
  probe.rhs = Sens::konst(1);
  if (auto w = falsify_constraint(probe, opts.falsify_budget, opts.solver.mode,
                                  opts.seed))
    return Verdict::invalid(shrink_witness(probe.idx, probe.refs, probe.lhs,
                                           probe.rhs, std::move(*w),
                                           opts.solver.mode));
  maybe_emit(item.formula, opts, idx);
  Verdict v = solve(item.formula, opts.solver);
  if (v.is_valid()) return v;  // refinements unsatisfiable: vacuously fine
  if (v.is_invalid()) return v;
  return Verdict::unknown(UnknownReason::IncompleteInternalCheck);
}

}  // namespace

Verdict decide(const WorkItem& item, const DecideOptions& opts, int item_index) {
  switch (item.kind) {
    case WorkItem::Kind::Resolved:
      return item.pre;
    case WorkItem::Kind::Obligation:
      return decide_obligation(item, opts, item_index);
    case WorkItem::Kind::Direct:
      return decide_direct(item, opts, item_index);
    case WorkItem::Kind::FalseContext:
      return decide_false_context(item, opts, item_index);
  }
  return Verdict::unknown(UnknownReason::IncompleteInternalCheck);
}

std::vector<DecidedItem> decide_all(const std::vector<WorkItem>& items,
                                    const DecideOptions& opts) {
  std::vector<DecidedItem> out(items.size());
  std::atomic<size_t> next{0};
  int jobs = std::max(1, opts.jobs);
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      auto t0 = std::chrono::steady_clock::now();
      out[i].verdict = decide(items[i], opts, (int)i);
      out[i].millis = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    }
  };
  if (jobs == 1 || items.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

Verdict::Kind overall_verdict(const std::vector<DecidedItem>& items) {
  bool any_unknown = false;
  for (const auto& it : items) {
    if (it.verdict.is_invalid()) return Verdict::Kind::Invalid;
    if (it.verdict.is_unknown()) any_unknown = true;
  }
  return any_unknown ? Verdict::Kind::Unknown : Verdict::Kind::Valid;
}

}  // namespace senscheck
