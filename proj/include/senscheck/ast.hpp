#ifndef SENSCHECK_AST_HPP
#define SENSCHECK_AST_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "senscheck/numeric.hpp"

namespace senscheck {

enum class Kind { Size, Sens };

inline const char* kind_name(Kind k) { return k == Kind::Size ? "size" : "sens"; }

struct SrcLoc {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
  std::string str() const;
};

/// Located error; thrown by the lexer, parser and the typing engine.
struct Diag : std::runtime_error {
  SrcLoc loc;
  Diag(SrcLoc l, const std::string& msg) : std::runtime_error(msg), loc(l) {}
};

// ---------------------------------------------------------------------------
// Index terms: sensitivity and size expressions.
// ---------------------------------------------------------------------------

struct SensNode;

class Sens {
public:
  enum class Tag { Const, Var, Plus, Times, Max, Sup, Case };

  Sens() = default;

  static Sens konst(ExtReal v);
  static Sens konst(long n) { return konst(ExtReal::of(n)); }
  static Sens infinity() { return konst(ExtReal::infinity()); }
  static Sens var(std::string name);
  static Sens plus(Sens l, Sens r);
  static Sens times(Sens l, Sens r);
  static Sens smax(Sens l, Sens r);
  static Sens sup(std::string binder, Kind k, Sens body);
  static Sens scase(Sens scrutinee, Sens zero, std::string binder, Sens succ);

  bool null() const { return !p_; }
  Tag tag() const;
  const SensNode& node() const { return *p_; }

  /// No Max, Sup or Case anywhere.
  bool is_standard() const;
  /// Mentions the infinity constant.
  bool mentions_infinity() const;

  bool operator==(const Sens& o) const;  // syntactic equality
  bool operator!=(const Sens& o) const { return !(*this == o); }

private:
  static Sens wrap(SensNode n);
  std::shared_ptr<const SensNode> p_;
};

struct SensNode {
  Sens::Tag tag;
  ExtReal value;       // Const
  std::string name;    // Var; binder for Sup/Case
  Kind binder_kind = Kind::Sens;  // Sup
  Sens a, b, c;        // Plus/Times/Max: a,b. Sup: a = body.
                       // Case: a = scrutinee, b = zero branch, c = succ branch.
};

inline Sens::Tag Sens::tag() const { return p_->tag; }

using IdxEnv = std::vector<std::pair<std::string, Kind>>;

std::optional<Kind> idx_lookup(const IdxEnv& env, const std::string& name);

struct Refinement {
  enum class Shape { IsZero, IsSucc };
  Shape shape;
  Sens scrutinee;
  std::string binder;  // IsSucc only

  static Refinement is_zero(Sens s) { return {Shape::IsZero, std::move(s), {}}; }
  static Refinement is_succ(Sens s, std::string b) {
    return {Shape::IsSucc, std::move(s), std::move(b)};
  }
};

using RefinementSet = std::vector<Refinement>;

struct KindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Kind inference for index terms. Size only for standard terms built from
/// natural constants and size variables; Sens for every other well-scoped
/// term. Throws KindError on unbound variables and on Case scrutinees that
/// are not of size kind.
Kind kind_check(const IdxEnv& env, const Sens& s);

/// Capture-avoiding substitution of `replacement` for free `var`.
Sens subst(const Sens& s, const std::string& var, const Sens& replacement);

std::set<std::string> free_vars(const Sens& s);

bool alpha_eq(const Sens& a, const Sens& b);

/// A name based on `base` not present in `used`; inserts the result.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

// ---------------------------------------------------------------------------
// Types.
// ---------------------------------------------------------------------------

struct TypeNode;

class Type {
public:
  enum class Tag { Real, RealSing, NatSing, Lolli, Forall, Tensor, With, Opaque };

  Type() = default;

  static Type real();
  static Type real_sing(Sens idx);
  static Type nat_sing(Sens idx);
  static Type lolli(Sens ann, Type dom, Type cod);
  static Type forall(std::string binder, Kind k, Type body);
  static Type tensor(Type l, Type r);
  static Type with(Type l, Type r);

  bool null() const { return !p_; }
  Tag tag() const;
  const TypeNode& node() const { return *p_; }

  bool operator==(const Type& o) const;  // syntactic equality
  bool operator!=(const Type& o) const { return !(*this == o); }

  /// Contains a Max/Sup/Case index term somewhere.
  bool has_extended_index() const;

  using Arg = std::variant<Type, Sens>;
  static Type opaque(std::string name, std::vector<Arg> args);

private:
  static Type wrap(TypeNode n);
  std::shared_ptr<const TypeNode> p_;
};

struct TypeNode {
  Type::Tag tag;
  Sens idx;            // RealSing/NatSing index, Lolli annotation
  Type a, b;           // Lolli: dom/cod. Tensor/With: l/r. Forall: a = body.
  std::string name;    // Forall binder, Opaque head
  Kind binder_kind = Kind::Size;
  std::vector<Type::Arg> args;  // Opaque
};

inline Type::Tag Type::tag() const { return p_->tag; }

/// Checks index positions: nat[S] wants size kind, annotations any kind.
/// Throws KindError.
void check_type_kinds(const IdxEnv& env, const Type& t);

std::set<std::string> type_free_idx_vars(const Type& t);

/// Capture-avoiding index substitution in a type.
Type type_subst(const Type& t, const std::string& var, const Sens& replacement);

bool type_alpha_eq(const Type& a, const Type& b);

// ---------------------------------------------------------------------------
// Terms.
// ---------------------------------------------------------------------------

struct TermNode;

class Term {
public:
  enum class Tag {
    Var, Prim, RealLit, NatLit, Succ, Fix, Lam, App, IdxLam, IdxApp,
    WithPair, Proj, TensorPair, LetPair, NatCase
  };

  Term() = default;

  static Term var(std::string name, SrcLoc loc = {});
  static Term prim(std::string name, SrcLoc loc = {});
  static Term real_lit(Rational v, SrcLoc loc = {});
  static Term nat_lit(std::uint64_t n, SrcLoc loc = {});
  static Term succ(Term e, SrcLoc loc = {});
  static Term fix(std::string x, Type ty, Term body, SrcLoc loc = {});
  static Term lam(std::string x, Sens ann, Type ty, Term body, SrcLoc loc = {});
  static Term app(Term f, Term a, SrcLoc loc = {});
  static Term idx_lam(std::string i, Kind k, Term body, SrcLoc loc = {});
  static Term idx_app(Term e, Sens idx, SrcLoc loc = {});
  static Term with_pair(Term l, Term r, SrcLoc loc = {});
  static Term proj(int which, Term e, SrcLoc loc = {});
  static Term tensor_pair(Term l, Term r, SrcLoc loc = {});
  static Term let_pair(std::string x, std::string y, Term e, Term body, SrcLoc loc = {});
  static Term nat_case(Term scrut, Type ret, Term zero, std::string binder,
                       std::string idx_binder, Term succ_body, SrcLoc loc = {});

  bool null() const { return !p_; }
  Tag tag() const;
  const TermNode& node() const { return *p_; }
  SrcLoc loc() const;

  /// Every Lam annotation, Fix/Lam/NatCase type annotation and every index
  /// application argument is a standard index term.
  bool annotations_standard() const;

private:
  static Term wrap(TermNode n);
  std::shared_ptr<const TermNode> p_;
};

struct TermNode {
  Term::Tag tag;
  SrcLoc loc;
  std::string name;     // Var/Prim; binder for Fix/Lam/IdxLam; LetPair first
  std::string name2;    // LetPair second binder; NatCase term binder
  std::string idx_name; // NatCase index binder
  Rational lit;         // RealLit
  std::uint64_t nat = 0;  // NatLit
  int which = 0;        // Proj: 1 or 2
  Sens ann;             // Lam annotation; IdxApp index
  Type ty;              // Lam/Fix annotation; NatCase return type
  Kind kind = Kind::Size;  // IdxLam
  Term a, b, c;         // children
};

inline Term::Tag Term::tag() const { return p_->tag; }
inline SrcLoc Term::loc() const { return p_->loc; }

/// Capture-avoiding renaming of a free term variable.
Term term_rename_var(const Term& e, const std::string& from, const std::string& to);

/// Capture-avoiding substitution of an index variable throughout a term
/// (annotations, types and index applications).
Term term_subst_idx(const Term& e, const std::string& var, const Sens& replacement);

}  // namespace senscheck

#endif
