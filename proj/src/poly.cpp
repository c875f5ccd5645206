#include <algorithm>
#include <sstream>

#include "senscheck/poly.hpp"

namespace senscheck {

void Poly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::constant(Rational c) {
  Poly p;
  if (c != 0) p.terms_[{}] = std::move(c);
  return p;
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.terms_[{{name, 1}}] = 1;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.terms_[m] += c;
  out.trim();
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.terms_[m] -= c;
  out.trim();
  return out;
}

static Poly::Monomial mono_mul(const Poly::Monomial& a, const Poly::Monomial& b) {
  Poly::Monomial out = a;
  for (const auto& [v, e] : b) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == v; });
    if (it == out.end())
      out.emplace_back(v, e);
    else
      it->second += e;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.terms_[mono_mul(m1, m2)] += c1 * c2;
  out.trim();
  return out;
}

bool Poly::all_coeffs_nonneg() const {
  for (const auto& [m, c] : terms_)
    if (c < 0) return false;
  return true;
}

bool Poly::is_zero() const { return terms_.empty(); }

Rational Poly::eval(const std::map<std::string, Rational>& point) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      const Rational& x = point.at(v);
      for (int k = 0; k < e; ++k) t *= x;
    }
    acc += t;
  }
  return acc;
}

std::vector<std::string> Poly::variables() const {
  std::vector<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rational_str(c);
    for (const auto& [v, e] : m) {
      os << "*" << v;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

Poly poly_of_standard(const Sens& s) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      if (n.value.is_infinite())
        throw std::logic_error("poly_of_standard: infinity");
      return Poly::constant(n.value.value());
    case Sens::Tag::Var:
      return Poly::variable(n.name);
    case Sens::Tag::Plus:
      return poly_of_standard(n.a) + poly_of_standard(n.b);
    case Sens::Tag::Times:
      return poly_of_standard(n.a) * poly_of_standard(n.b);
    default:
      throw std::logic_error("poly_of_standard: extended term");
  }
}

SubstitutedObligation apply_refinements(const Obligation& o) {
  SubstitutedObligation out;
  out.lhs = o.lhs;
  out.rhs = o.rhs;
  RefinementSet pending = o.outer_refs;
  for (const auto& r : o.local_refs) pending.push_back(r);

  // Later refinements may mention binders introduced by earlier ones, so
  // substitutions thread through the remaining set in order.
  for (size_t i = 0; i < pending.size(); ++i) {
    const Refinement& r = pending[i];
    if (r.scrutinee.tag() != Sens::Tag::Var) continue;  // dropped: weakening
    std::string v = r.scrutinee.node().name;
    Sens repl = r.shape == Refinement::Shape::IsZero
                    ? Sens::konst(0)
                    : Sens::plus(Sens::var(r.binder), Sens::konst(1));
    out.lhs = subst(out.lhs, v, repl);
    out.rhs = subst(out.rhs, v, repl);
    for (size_t j = i + 1; j < pending.size(); ++j)
      pending[j].scrutinee = subst(pending[j].scrutinee, v, repl);
  }

  std::set<std::string> free = free_vars(out.lhs);
  for (const auto& v : free_vars(out.rhs)) free.insert(v);
  for (const auto& [name, kind] : o.outer_env)
    if (free.count(name)) out.vars.emplace_back(name, kind);
  for (const auto& [name, kind] : o.local_env)
    if (free.count(name)) out.vars.emplace_back(name, kind);
  // Refinement binders not bound by either environment keep size kind.
  for (const auto& v : free) {
    bool seen = false;
    for (const auto& [name, kind] : out.vars)
      if (name == v) seen = true;
    if (!seen) out.vars.emplace_back(v, Kind::Size);
  }
  return out;
}

Poly obligation_difference(const Obligation& o) {
  SubstitutedObligation s = apply_refinements(o);
  return poly_of_standard(s.lhs) - poly_of_standard(s.rhs);
}

namespace {

bool mentions_unbounded_var(const Sens& s, const IdxEnv& vars, bool uniform) {
  for (const auto& v : free_vars(s)) {
    auto k = idx_lookup(vars, v);
    // Size-kinded variables stay finite under the standard interpretation;
    // everything ranges over the extended reals under the uniform one.
    if (uniform || !k || *k == Kind::Sens) return true;
  }
  return false;
}

/// A right side whose expansion drops a variable-carrying factor (zero
/// coefficient) is not safely comparable: at an infinite variable value the
/// dropped product contributes 0 * inf = inf, which the polynomial view
/// cannot see. Terms have no negative constants, so this is the only way a
/// monomial can vanish.
bool rhs_expansion_faithful(const Sens& s, const IdxEnv& vars, bool uniform) {
  switch (s.tag()) {
    case Sens::Tag::Const:
    case Sens::Tag::Var:
      return true;
    case Sens::Tag::Plus:
      return rhs_expansion_faithful(s.node().a, vars, uniform) &&
             rhs_expansion_faithful(s.node().b, vars, uniform);
    case Sens::Tag::Times: {
      const Sens& a = s.node().a;
      const Sens& b = s.node().b;
      if (!rhs_expansion_faithful(a, vars, uniform) ||
          !rhs_expansion_faithful(b, vars, uniform))
        return false;
      if (poly_of_standard(a).is_zero() && mentions_unbounded_var(b, vars, uniform))
        return false;
      if (poly_of_standard(b).is_zero() && mentions_unbounded_var(a, vars, uniform))
        return false;
      return true;
    }
    default:
      return false;
  }
}

}  // namespace

bool poly_dominate(const Obligation& o, bool uniform) {
  SubstitutedObligation s = apply_refinements(o);
  if (!rhs_expansion_faithful(s.rhs, s.vars, uniform)) return false;
  return (poly_of_standard(s.lhs) - poly_of_standard(s.rhs)).all_coeffs_nonneg();
}

}  // namespace senscheck
