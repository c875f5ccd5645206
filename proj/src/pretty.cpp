#include <sstream>

#include "senscheck/syntax.hpp"
#include "senscheck/typing.hpp"

namespace senscheck {

// Precedence levels: 0 = open-ended (sup), 1 = +, 2 = *, 3 = atom.
static void sens_pp(std::ostream& os, const Sens& s, int prec, bool root) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      os << n.value.str();
      return;
    case Sens::Tag::Var:
      os << n.name;
      return;
    case Sens::Tag::Plus: {
      bool paren = prec > 1;
      if (paren) os << "(";
      sens_pp(os, n.a, 1, false);
      os << " + ";
      sens_pp(os, n.b, 2, false);
      if (paren) os << ")";
      return;
    }
    case Sens::Tag::Times: {
      bool paren = prec > 2;
      if (paren) os << "(";
      sens_pp(os, n.a, 2, false);
      os << " * ";
      sens_pp(os, n.b, 3, false);
      if (paren) os << ")";
      return;
    }
    case Sens::Tag::Max:
      os << "max(";
      sens_pp(os, n.a, 0, true);
      os << ", ";
      sens_pp(os, n.b, 0, true);
      os << ")";
      return;
    case Sens::Tag::Sup: {
      bool paren = !root;
      if (paren) os << "(";
      os << "sup (" << n.name << " : " << kind_name(n.binder_kind) << ") . ";
      sens_pp(os, n.a, 0, true);
      if (paren) os << ")";
      return;
    }
    case Sens::Tag::Case:
      os << "scase ";
      sens_pp(os, n.a, 1, false);
      os << " { 0 => ";
      sens_pp(os, n.b, 0, true);
      os << " | " << n.name << " + 1 => ";
      sens_pp(os, n.c, 0, true);
      os << " }";
      return;
  }
}

std::string pretty(const Sens& s) {
  std::ostringstream os;
  sens_pp(os, s, 0, true);
  return os.str();
}

// Levels: 0 = lolli/forall, 1 = &, 2 = *, 3 = atom.
static void type_pp(std::ostream& os, const Type& t, int prec, bool tail) {
  const TypeNode& n = t.node();
  switch (t.tag()) {
    case Type::Tag::Real:
      os << "real";
      return;
    case Type::Tag::RealSing:
      os << "real[";
      sens_pp(os, n.idx, 0, true);
      os << "]";
      return;
    case Type::Tag::NatSing:
      os << "nat[";
      sens_pp(os, n.idx, 0, true);
      os << "]";
      return;
    case Type::Tag::Lolli: {
      bool paren = prec > 0 || !tail;
      if (paren) os << "(";
      os << "![";
      sens_pp(os, n.idx, 0, true);
      os << "] ";
      type_pp(os, n.a, 1, false);
      os << " -o ";
      type_pp(os, n.b, 0, true);
      if (paren) os << ")";
      return;
    }
    case Type::Tag::Forall: {
      bool paren = prec > 0 || !tail;
      if (paren) os << "(";
      os << "forall " << n.name << " : " << kind_name(n.binder_kind) << " . ";
      type_pp(os, n.a, 0, true);
      if (paren) os << ")";
      return;
    }
    case Type::Tag::With: {
      bool paren = prec > 1;
      if (paren) os << "(";
      type_pp(os, n.a, 1, false);
      os << " & ";
      type_pp(os, n.b, 2, false);
      if (paren) os << ")";
      return;
    }
    case Type::Tag::Tensor: {
      bool paren = prec > 2;
      if (paren) os << "(";
      type_pp(os, n.a, 2, false);
      os << " * ";
      type_pp(os, n.b, 3, false);
      if (paren) os << ")";
      return;
    }
    case Type::Tag::Opaque: {
      os << n.name;
      std::vector<const Type*> tys;
      std::vector<const Sens*> idxs;
      for (const auto& a : n.args) {
        if (std::holds_alternative<Type>(a))
          tys.push_back(&std::get<Type>(a));
        else
          idxs.push_back(&std::get<Sens>(a));
      }
      if (!tys.empty()) {
        os << "(";
        for (size_t i = 0; i < tys.size(); ++i) {
          if (i) os << ", ";
          type_pp(os, *tys[i], 0, true);
        }
        os << ")";
      }
      for (const Sens* s : idxs) {
        os << "[";
        sens_pp(os, *s, 0, true);
        os << "]";
      }
      return;
    }
  }
}

std::string pretty(const Type& t) {
  std::ostringstream os;
  type_pp(os, t, 0, true);
  return os.str();
}

// Levels: 0 = open form (let/case), 1 = application, 2 = atom.
static void term_pp(std::ostream& os, const Term& e, int prec) {
  const TermNode& n = e.node();
  switch (e.tag()) {
    case Term::Tag::Var:
    case Term::Tag::Prim:
      os << n.name;
      return;
    case Term::Tag::RealLit: {
      if (is_integer(n.lit))
        os << n.lit.get_num().get_str() << ".0";
      else
        os << rational_str(n.lit);
      return;
    }
    case Term::Tag::NatLit:
      os << n.nat;
      return;
    case Term::Tag::Succ:
      os << "succ ";
      term_pp(os, n.a, 2);
      return;
    case Term::Tag::Proj:
      os << (n.which == 1 ? "pi1 " : "pi2 ");
      term_pp(os, n.a, 2);
      return;
    case Term::Tag::Lam:
      os << "fun (" << n.name << " :[";
      sens_pp(os, n.ann, 0, true);
      os << "] ";
      type_pp(os, n.ty, 0, true);
      os << ") { ";
      term_pp(os, n.a, 0);
      os << " }";
      return;
    case Term::Tag::Fix:
      os << "fix (" << n.name << " : ";
      type_pp(os, n.ty, 0, true);
      os << ") { ";
      term_pp(os, n.a, 0);
      os << " }";
      return;
    case Term::Tag::IdxLam:
      os << "idxlam (" << n.name << " : " << kind_name(n.kind) << ") { ";
      term_pp(os, n.a, 0);
      os << " }";
      return;
    case Term::Tag::App: {
      bool paren = prec > 1;
      if (paren) os << "(";
      term_pp(os, n.a, 1);
      os << " ";
      term_pp(os, n.b, 2);
      if (paren) os << ")";
      return;
    }
    case Term::Tag::IdxApp: {
      bool paren = prec > 1;
      if (paren) os << "(";
      term_pp(os, n.a, 1);
      os << "[";
      sens_pp(os, n.ann, 0, true);
      os << "]";
      if (paren) os << ")";
      return;
    }
    case Term::Tag::WithPair:
      os << "<";
      term_pp(os, n.a, 0);
      os << ", ";
      term_pp(os, n.b, 0);
      os << ">";
      return;
    case Term::Tag::TensorPair:
      os << "(";
      term_pp(os, n.a, 0);
      os << ", ";
      term_pp(os, n.b, 0);
      os << ")";
      return;
    case Term::Tag::LetPair: {
      bool paren = prec > 0;
      if (paren) os << "(";
      os << "let (" << n.name << ", " << n.name2 << ") = ";
      term_pp(os, n.a, 1);
      os << " in ";
      term_pp(os, n.b, 0);
      if (paren) os << ")";
      return;
    }
    case Term::Tag::NatCase: {
      bool paren = prec > 0;
      if (paren) os << "(";
      os << "case ";
      term_pp(os, n.a, 1);
      os << " return ";
      type_pp(os, n.ty, 0, true);
      os << " of 0 => ";
      term_pp(os, n.b, 1);
      os << " | " << n.name2 << "[" << n.idx_name << "] + 1 => ";
      term_pp(os, n.c, 0);
      if (paren) os << ")";
      return;
    }
  }
}

std::string pretty(const Term& e) {
  std::ostringstream os;
  term_pp(os, e, 0);
  return os.str();
}

std::string pretty(const Refinement& r) {
  std::ostringstream os;
  sens_pp(os, r.scrutinee, 1, false);
  if (r.shape == Refinement::Shape::IsZero)
    os << " = 0";
  else
    os << " = " << r.binder << " + 1";
  return os.str();
}

std::string pretty(const Constraint& c) {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < c.idx.size(); ++i) {
    if (i) os << ", ";
    os << c.idx[i].first << " : " << kind_name(c.idx[i].second);
    any = true;
  }
  if (!c.refs.empty()) {
    if (any) os << " ";
    os << "; ";
    for (size_t i = 0; i < c.refs.size(); ++i) {
      if (i) os << ", ";
      os << pretty(c.refs[i]);
    }
    any = true;
  }
  if (any) os << " ";
  os << "|= " << pretty(c.lhs) << " >= " << pretty(c.rhs);
  return os.str();
}

}  // namespace senscheck
