#ifndef SENSCHECK_CLUB_HPP
#define SENSCHECK_CLUB_HPP

#include <memory>
#include <vector>

#include "senscheck/eval.hpp"
#include "senscheck/typing.hpp"

namespace senscheck {

struct ClubNode;
struct ClubEntry;

/// Expressions over the constrained-least-upper-bound operator: a club is a
/// maximum over guarded entries, each entry binding local index variables
/// subject to local refinements.
class ClubExpr {
public:
  enum class Tag { Leaf, Plus, Times, Club };

  ClubExpr() = default;

  static ClubExpr leaf(Sens s);
  static ClubExpr plus(ClubExpr l, ClubExpr r);
  static ClubExpr times(ClubExpr l, ClubExpr r);
  static ClubExpr club(std::vector<ClubEntry> entries);

  bool null() const { return !p_; }
  Tag tag() const;
  const ClubNode& node() const { return *p_; }

private:
  static ClubExpr wrap(ClubNode n);
  std::shared_ptr<const ClubNode> p_;
};

struct ClubEntry {
  IdxEnv locals;
  RefinementSet refs;
  ClubExpr body;
};

struct ClubNode {
  ClubExpr::Tag tag;
  Sens leaf;           // Leaf
  ClubExpr a, b;       // Plus/Times
  std::vector<ClubEntry> entries;  // Club
};

inline ClubExpr::Tag ClubExpr::tag() const { return p_->tag; }

/// Homomorphic encoding of the extended constructs: max becomes a two-entry
/// club, sup binds its variable in a one-entry club, case becomes the two
/// refined entries; standard subterms stay as leaves.
ClubExpr to_club(const Sens& s);

/// Pushes standard factors and addends into club entries until none is
/// applied to a whole club. Entry binders are renamed when a pushed term
/// would be captured.
ClubExpr push_leaves(const ClubExpr& q);

struct NormalizeStats {
  int steps = 0;
  int input_clubs = 0;
};

/// Reduces to a single flat club whose entry bodies are all standard leaves.
/// Entry merges freshen local binders to keep domains disjoint. The step
/// count never exceeds the number of club nodes in the input.
ClubExpr normalize_club(const ClubExpr& q, NormalizeStats* stats = nullptr,
                        std::vector<ClubExpr>* trace = nullptr);

/// An alternation-free proof obligation: under both environments and both
/// refinement sets, lhs >= rhs, with lhs and rhs standard.
struct Obligation {
  IdxEnv outer_env;
  RefinementSet outer_refs;
  IdxEnv local_env;
  RefinementSet local_refs;
  Sens lhs, rhs;
  ConstraintOrigin origin;
};

/// One obligation per club entry; an empty club yields the single trivial
/// obligation lhs >= 0.
std::vector<Obligation> flatten(const Constraint& c, const ClubExpr& normal_rhs);

/// Probe interpretation of club expressions, matching eval_sens on encoded
/// terms: sup-bound locals range over the kind's probe set, refinement-bound
/// locals are pinned by their equations.
ExtReal club_eval(const ClubExpr& q, const Valuation& rho,
                  const ProbeConfig& probes);

int count_club_nodes(const ClubExpr& q);

}  // namespace senscheck

#endif
