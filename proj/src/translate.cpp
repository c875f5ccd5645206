#include "senscheck/translate.hpp"

namespace senscheck {

// ---------------------------------------------------------------------------
// Infinity elimination
// ---------------------------------------------------------------------------

namespace {

bool is_inf_const(const Sens& s) {
  return s.tag() == Sens::Tag::Const && s.node().value.is_infinite();
}

/// Propagates the absorbing element upward as far as possible.
Sens fold_inf(const Sens& s) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
    case Sens::Tag::Var:
      return s;
    case Sens::Tag::Plus:
    case Sens::Tag::Times:
    case Sens::Tag::Max: {
      Sens a = fold_inf(n.a);
      Sens b = fold_inf(n.b);
      if (is_inf_const(a) || is_inf_const(b)) return Sens::infinity();
      if (s.tag() == Sens::Tag::Plus) return Sens::plus(a, b);
      if (s.tag() == Sens::Tag::Times) return Sens::times(a, b);
      return Sens::smax(a, b);
    }
    case Sens::Tag::Sup: {
      Sens body = fold_inf(n.a);
      if (is_inf_const(body)) return Sens::infinity();
      return Sens::sup(n.name, n.binder_kind, body);
    }
    case Sens::Tag::Case: {
      Sens scrut = fold_inf(n.a);
      Sens zero = fold_inf(n.b);
      Sens succ = fold_inf(n.c);
      if (is_inf_const(zero) && is_inf_const(succ)) return Sens::infinity();
      return Sens::scase(scrut, zero, n.name, succ);
    }
  }
  return s;
}

}  // namespace

ElimResult eliminate_infinity(const Constraint& c) {
  ElimResult res;
  Constraint folded = c;
  folded.lhs = fold_inf(c.lhs);
  folded.rhs = fold_inf(c.rhs);

  if (is_inf_const(folded.lhs)) {
    res.status = ElimResult::Status::Valid;
    return res;
  }
  if (is_inf_const(folded.rhs)) {
    if (folded.lhs.mentions_infinity()) {
      res.status = ElimResult::Status::Unresolved;
      return res;
    }
    res.false_parts.push_back(folded);
    return res;
  }
  if (!folded.lhs.mentions_infinity() && !folded.rhs.mentions_infinity()) {
    res.constraints.push_back(std::move(folded));
    return res;
  }
  if (folded.lhs.mentions_infinity() || !folded.lhs.is_standard()) {
    // An extended left side with a stuck infinity has no sound split here.
    res.status = ElimResult::Status::Unresolved;
    return res;
  }

  // The right side hides an infinity under a case branch. Splitting along
  // the max/sup/case inequality laws expels it; the resulting standard
  // leaves fold completely.
  for (Obligation& o :
       flatten(folded, normalize_club(push_leaves(to_club(folded.rhs))))) {
    Constraint part;
    part.idx = o.outer_env;
    for (const auto& v : o.local_env) part.idx.push_back(v);
    part.refs = o.outer_refs;
    for (const auto& r : o.local_refs) part.refs.push_back(r);
    part.lhs = o.lhs;
    part.rhs = fold_inf(o.rhs);
    part.origin = o.origin;
    if (is_inf_const(part.rhs))
      res.false_parts.push_back(std::move(part));
    else
      res.constraints.push_back(std::move(part));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Constraint translation
// ---------------------------------------------------------------------------

namespace {

Sort sort_of(Kind k) { return k == Kind::Size ? Sort::Nat : Sort::SensReal; }

class Translator {
public:
  Translator(const Constraint& c, bool uniform) : uniform_(uniform) {
    for (const auto& [n, k] : c.idx) used_.insert(n);
    for (const auto& v : free_vars(c.lhs)) used_.insert(v);
    for (const auto& v : free_vars(c.rhs)) used_.insert(v);
    for (const auto& r : c.refs) {
      for (const auto& v : free_vars(r.scrutinee)) used_.insert(v);
      if (!r.binder.empty()) used_.insert(r.binder);
    }
  }

  std::string fresh() { return fresh_name("r", used_); }

  Sort quant_sort(Kind k) const {
    return uniform_ ? Sort::SensReal : sort_of(k);
  }

  /// The defining predicate T(s)(target).
  Formula pred(const Sens& s, const std::string& target) {
    const SensNode& n = s.node();
    switch (s.tag()) {
      case Sens::Tag::Const:
        if (n.value.is_infinite())
          throw std::logic_error("translate: infinity not eliminated");
        return Formula::cmp(CmpOp::Eq, Arith::var(target),
                            Arith::konst(n.value.value()));
      case Sens::Tag::Var:
        return Formula::cmp(CmpOp::Eq, Arith::var(n.name), Arith::var(target));
      case Sens::Tag::Plus:
      case Sens::Tag::Times: {
        std::string r1 = fresh(), r2 = fresh();
        Arith combined =
            s.tag() == Sens::Tag::Plus
                ? Arith::plus(Arith::var(r1), Arith::var(r2))
                : Arith::times(Arith::var(r1), Arith::var(r2));
        Formula body = Formula::conj(
            {pred(n.a, r1), pred(n.b, r2),
             Formula::cmp(CmpOp::Eq, Arith::var(target), combined)});
        return Formula::exists(
            r1, Sort::SensReal,
            Formula::exists(r2, Sort::SensReal, std::move(body)));
      }
      case Sens::Tag::Max: {
        std::string r1 = fresh(), r2 = fresh();
        Formula pick = Formula::disj(
            {Formula::conj(
                 {Formula::cmp(CmpOp::Ge, Arith::var(r1), Arith::var(r2)),
                  Formula::cmp(CmpOp::Eq, Arith::var(target), Arith::var(r1))}),
             Formula::conj(
                 {Formula::cmp(CmpOp::Ge, Arith::var(r2), Arith::var(r1)),
                  Formula::cmp(CmpOp::Eq, Arith::var(target), Arith::var(r2))})});
        Formula body =
            Formula::conj({pred(n.a, r1), pred(n.b, r2), std::move(pick)});
        return Formula::exists(
            r1, Sort::SensReal,
            Formula::exists(r2, Sort::SensReal, std::move(body)));
      }
      case Sens::Tag::Case: {
        std::string rs = fresh();
        Sort scrut_sort = uniform_ ? Sort::SensReal : Sort::Nat;
        Formula zero = Formula::conj(
            {Formula::cmp(CmpOp::Eq, Arith::var(rs), Arith::konst(0)),
             pred(n.b, target)});
        // The binder may shadow an outer variable of the same name; the
        // quantifier scoping keeps that sound.
        std::vector<Formula> succ_parts;
        if (uniform_)
          succ_parts.push_back(
              Formula::cmp(CmpOp::Ge, Arith::var(n.name), Arith::konst(0)));
        succ_parts.push_back(
            Formula::cmp(CmpOp::Eq, Arith::var(rs),
                         Arith::plus(Arith::var(n.name), Arith::konst(1))));
        succ_parts.push_back(pred(n.c, target));
        Formula succ_body = Formula::conj(std::move(succ_parts));
        Formula succ =
            Formula::exists(n.name, scrut_sort, std::move(succ_body));
        std::vector<Formula> branches;
        branches.push_back(std::move(zero));
        if (uniform_) {
          branches.push_back(Formula::conj(
              {Formula::cmp(CmpOp::Gt, Arith::var(rs), Arith::konst(0)),
               Formula::cmp(CmpOp::Lt, Arith::var(rs), Arith::konst(1)),
               Formula::cmp(CmpOp::Eq, Arith::var(target), Arith::konst(0))}));
        }
        branches.push_back(std::move(succ));
        Formula body =
            Formula::conj({pred(n.a, rs), Formula::disj(std::move(branches))});
        return Formula::exists(rs, scrut_sort, std::move(body));
      }
      case Sens::Tag::Sup: {
        std::string rp = fresh();
        Formula b1 = bound(s, target);
        Formula minimal = Formula::forall(
            rp, Sort::SensReal,
            Formula::implies(bound(s, rp), Formula::cmp(CmpOp::Ge,
                                                        Arith::var(rp),
                                                        Arith::var(target))));
        return Formula::conj({std::move(b1), std::move(minimal)});
      }
    }
    throw std::logic_error("translate: bad node");
  }

  /// bound(i : kind, body, b) := forall i. exists r'. T(body)(r') /\ r' <= b.
  Formula bound(const Sens& sup, const std::string& b) {
    const SensNode& n = sup.node();
    std::string rp = fresh();
    Formula inner = Formula::exists(
        rp, Sort::SensReal,
        Formula::conj({pred(n.a, rp), Formula::cmp(CmpOp::Le, Arith::var(rp),
                                                   Arith::var(b))}));
    return Formula::forall(n.name, quant_sort(n.binder_kind), std::move(inner));
  }

private:
  bool uniform_;
  std::set<std::string> used_;
};

Formula refinement_formula(const RefinementSet& refs) {
  std::vector<Formula> eqs;
  for (const auto& r : refs) {
    Arith s = arith_of_standard(r.scrutinee);
    if (r.shape == Refinement::Shape::IsZero)
      eqs.push_back(Formula::cmp(CmpOp::Eq, s, Arith::konst(0)));
    else
      eqs.push_back(Formula::cmp(
          CmpOp::Eq, s, Arith::plus(Arith::var(r.binder), Arith::konst(1))));
  }
  return Formula::conj(std::move(eqs));
}

Formula close_over(const IdxEnv& idx, Formula body, bool uniform) {
  for (auto it = idx.rbegin(); it != idx.rend(); ++it)
    body = Formula::forall(it->first,
                           uniform ? Sort::SensReal : sort_of(it->second),
                           std::move(body));
  return body;
}

}  // namespace

Formula translate(const Constraint& c) {
  Translator tr(c, /*uniform=*/false);
  std::string r1 = tr.fresh(), r2 = tr.fresh();
  Formula goal = Formula::conj(
      {tr.pred(c.lhs, r1), tr.pred(c.rhs, r2),
       Formula::cmp(CmpOp::Ge, Arith::var(r1), Arith::var(r2))});
  Formula body = Formula::exists(
      r1, Sort::SensReal, Formula::exists(r2, Sort::SensReal, std::move(goal)));
  if (!c.refs.empty())
    body = Formula::implies(refinement_formula(c.refs), std::move(body));
  return close_over(c.idx, std::move(body), /*uniform=*/false);
}

Formula translate_uniform(const Constraint& c) {
  if (!c.lhs.is_standard())
    throw NonStandardLhs("uniform translation requires a standard left side: " +
                         std::string("got an extended term"));
  Translator tr(c, /*uniform=*/true);
  std::string r = tr.fresh();
  Formula goal = Formula::conj(
      {tr.pred(c.rhs, r),
       Formula::cmp(CmpOp::Ge, arith_of_standard(c.lhs), Arith::var(r))});
  Formula body = Formula::exists(r, Sort::SensReal, std::move(goal));
  if (!c.refs.empty())
    body = Formula::implies(refinement_formula(c.refs), std::move(body));
  return close_over(c.idx, std::move(body), /*uniform=*/true);
}

Formula obligation_formula(const Obligation& o, bool uniform) {
  RefinementSet all_refs = o.outer_refs;
  for (const auto& r : o.local_refs) all_refs.push_back(r);
  Formula body = Formula::cmp(CmpOp::Ge, arith_of_standard(o.lhs),
                              arith_of_standard(o.rhs));
  if (!all_refs.empty())
    body = Formula::implies(refinement_formula(all_refs), std::move(body));
  IdxEnv all_env = o.outer_env;
  for (const auto& v : o.local_env) all_env.push_back(v);
  return close_over(all_env, std::move(body), uniform);
}

}  // namespace senscheck
