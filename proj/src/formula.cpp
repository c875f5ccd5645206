#include <sstream>

#include "senscheck/formula.hpp"

namespace senscheck {

Arith Arith::wrap(ArithNode n) {
  Arith a;
  a.p_ = std::make_shared<const ArithNode>(std::move(n));
  return a;
}

Arith Arith::var(std::string name) {
  ArithNode n;
  n.tag = Tag::Var;
  n.name = std::move(name);
  return wrap(std::move(n));
}

Arith Arith::konst(Rational v) {
  ArithNode n;
  n.tag = Tag::Const;
  n.value = std::move(v);
  return wrap(std::move(n));
}

Arith Arith::plus(Arith l, Arith r) {
  ArithNode n;
  n.tag = Tag::Plus;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Arith Arith::times(Arith l, Arith r) {
  ArithNode n;
  n.tag = Tag::Times;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

Formula Formula::wrap(FormulaNode n) {
  Formula f;
  f.p_ = std::make_shared<const FormulaNode>(std::move(n));
  return f;
}

Formula Formula::truth() {
  FormulaNode n;
  n.tag = Tag::True;
  return wrap(std::move(n));
}

Formula Formula::falsity() {
  FormulaNode n;
  n.tag = Tag::False;
  return wrap(std::move(n));
}

Formula Formula::cmp(CmpOp op, Arith l, Arith r) {
  FormulaNode n;
  n.tag = Tag::Cmp;
  n.op = op;
  n.l = std::move(l);
  n.r = std::move(r);
  return wrap(std::move(n));
}

Formula Formula::conj(std::vector<Formula> parts) {
  if (parts.empty()) return truth();
  if (parts.size() == 1) return parts[0];
  FormulaNode n;
  n.tag = Tag::And;
  n.parts = std::move(parts);
  return wrap(std::move(n));
}

Formula Formula::disj(std::vector<Formula> parts) {
  if (parts.empty()) return falsity();
  if (parts.size() == 1) return parts[0];
  FormulaNode n;
  n.tag = Tag::Or;
  n.parts = std::move(parts);
  return wrap(std::move(n));
}

Formula Formula::negate(Formula f) {
  FormulaNode n;
  n.tag = Tag::Not;
  n.a = std::move(f);
  return wrap(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  FormulaNode n;
  n.tag = Tag::Implies;
  n.a = std::move(a);
  n.b = std::move(b);
  return wrap(std::move(n));
}

Formula Formula::forall(std::string var, Sort sort, Formula body) {
  FormulaNode n;
  n.tag = Tag::ForAll;
  n.var = std::move(var);
  n.sort = sort;
  n.a = std::move(body);
  return wrap(std::move(n));
}

Formula Formula::exists(std::string var, Sort sort, Formula body) {
  FormulaNode n;
  n.tag = Tag::Exists;
  n.var = std::move(var);
  n.sort = sort;
  n.a = std::move(body);
  return wrap(std::move(n));
}

int count_existentials(const Formula& f) {
  const FormulaNode& n = f.node();
  switch (f.tag()) {
    case Formula::Tag::True:
    case Formula::Tag::False:
    case Formula::Tag::Cmp:
      return 0;
    case Formula::Tag::And:
    case Formula::Tag::Or: {
      int k = 0;
      for (const auto& p : n.parts) k += count_existentials(p);
      return k;
    }
    case Formula::Tag::Not:
      return count_existentials(n.a);
    case Formula::Tag::Implies:
      return count_existentials(n.a) + count_existentials(n.b);
    case Formula::Tag::ForAll:
      return count_existentials(n.a);
    case Formula::Tag::Exists:
      return 1 + count_existentials(n.a);
  }
  return 0;
}

Arith arith_of_standard(const Sens& s) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      if (n.value.is_infinite())
        throw std::logic_error("arith_of_standard: infinity");
      return Arith::konst(n.value.value());
    case Sens::Tag::Var:
      return Arith::var(n.name);
    case Sens::Tag::Plus:
      return Arith::plus(arith_of_standard(n.a), arith_of_standard(n.b));
    case Sens::Tag::Times:
      return Arith::times(arith_of_standard(n.a), arith_of_standard(n.b));
    default:
      throw std::logic_error("arith_of_standard: extended term");
  }
}

static void arith_pp(std::ostream& os, const Arith& a) {
  switch (a.tag()) {
    case Arith::Tag::Var:
      os << a.node().name;
      return;
    case Arith::Tag::Const:
      os << rational_str(a.node().value);
      return;
    case Arith::Tag::Plus:
      os << "(";
      arith_pp(os, a.node().a);
      os << " + ";
      arith_pp(os, a.node().b);
      os << ")";
      return;
    case Arith::Tag::Times:
      os << "(";
      arith_pp(os, a.node().a);
      os << " * ";
      arith_pp(os, a.node().b);
      os << ")";
      return;
  }
}

static const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
  }
  return "?";
}

static void formula_pp(std::ostream& os, const Formula& f) {
  const FormulaNode& n = f.node();
  switch (f.tag()) {
    case Formula::Tag::True:
      os << "true";
      return;
    case Formula::Tag::False:
      os << "false";
      return;
    case Formula::Tag::Cmp:
      arith_pp(os, n.l);
      os << " " << cmp_str(n.op) << " ";
      arith_pp(os, n.r);
      return;
    case Formula::Tag::And:
    case Formula::Tag::Or: {
      const char* sep = f.tag() == Formula::Tag::And ? " /\\ " : " \\/ ";
      os << "(";
      for (size_t i = 0; i < n.parts.size(); ++i) {
        if (i) os << sep;
        formula_pp(os, n.parts[i]);
      }
      os << ")";
      return;
    }
    case Formula::Tag::Not:
      os << "~(";
      formula_pp(os, n.a);
      os << ")";
      return;
    case Formula::Tag::Implies:
      os << "(";
      formula_pp(os, n.a);
      os << " => ";
      formula_pp(os, n.b);
      os << ")";
      return;
    case Formula::Tag::ForAll:
    case Formula::Tag::Exists:
      os << (f.tag() == Formula::Tag::ForAll ? "forall " : "exists ") << n.var
         << " : " << (n.sort == Sort::Nat ? "nat" : "real") << ". ";
      formula_pp(os, n.a);
      return;
  }
}

std::string formula_str(const Formula& f) {
  std::ostringstream os;
  formula_pp(os, f);
  return os.str();
}

}  // namespace senscheck
