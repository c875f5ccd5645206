#ifndef SENSCHECK_FORMULA_HPP
#define SENSCHECK_FORMULA_HPP

#include <memory>
#include <string>
#include <vector>

#include "senscheck/ast.hpp"

namespace senscheck {

enum class Sort { Nat, SensReal };

struct ArithNode;

class Arith {
public:
  enum class Tag { Var, Const, Plus, Times };

  Arith() = default;
  static Arith var(std::string name);
  static Arith konst(Rational v);
  static Arith plus(Arith l, Arith r);
  static Arith times(Arith l, Arith r);

  bool null() const { return !p_; }
  Tag tag() const;
  const ArithNode& node() const { return *p_; }

private:
  static Arith wrap(ArithNode n);
  std::shared_ptr<const ArithNode> p_;
};

struct ArithNode {
  Arith::Tag tag;
  std::string name;
  Rational value;
  Arith a, b;
};

inline Arith::Tag Arith::tag() const { return p_->tag; }

enum class CmpOp { Ge, Le, Eq, Gt, Lt };

struct FormulaNode;

class Formula {
public:
  enum class Tag { True, False, Cmp, And, Or, Not, Implies, ForAll, Exists };

  Formula() = default;
  static Formula truth();
  static Formula falsity();
  static Formula cmp(CmpOp op, Arith l, Arith r);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negate(Formula f);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Sort sort, Formula body);
  static Formula exists(std::string var, Sort sort, Formula body);

  bool null() const { return !p_; }
  Tag tag() const;
  const FormulaNode& node() const { return *p_; }

private:
  static Formula wrap(FormulaNode n);
  std::shared_ptr<const FormulaNode> p_;
};

struct FormulaNode {
  Formula::Tag tag;
  CmpOp op = CmpOp::Ge;
  Arith l, r;
  std::vector<Formula> parts;  // And/Or
  Formula a, b;                // Not: a. Implies: a, b. Quantifier body: a.
  std::string var;
  Sort sort = Sort::SensReal;
};

inline Formula::Tag Formula::tag() const { return p_->tag; }

int count_existentials(const Formula& f);

/// Converts a standard, infinity-free index term to an arithmetic term.
Arith arith_of_standard(const Sens& s);

std::string formula_str(const Formula& f);

}  // namespace senscheck

#endif
