#ifndef SENSCHECK_TYPING_HPP
#define SENSCHECK_TYPING_HPP

#include <map>
#include <string>
#include <vector>

#include "senscheck/ast.hpp"
#include "senscheck/env.hpp"

namespace senscheck {

struct ConstraintOrigin {
  SrcLoc loc;
  std::string rule;
};

/// An index-term inequality judgment: under the index environment and the
/// refinement assumptions, lhs >= rhs for every valuation.
struct Constraint {
  IdxEnv idx;
  RefinementSet refs;
  Sens lhs, rhs;
  ConstraintOrigin origin;
};

using Prelude = std::vector<std::pair<std::string, Type>>;

const Type* prelude_lookup(const Prelude& p, const std::string& name);

/// Structural subtype check; returns the leaf inequality constraints.
/// Functions are contravariant in domain and annotation, pairs covariant,
/// singleton indices and opaque index arguments constrain in both directions.
/// Throws Diag on a head mismatch (the path names the offending position).
std::vector<Constraint> subtype(const IdxEnv& idx, const RefinementSet& refs,
                                const Type& sub, const Type& sup,
                                const ConstraintOrigin& origin);

/// Environment subtype per the Box discipline: equal domains, syntactically
/// equal types; a Box on the right yields no constraint.
std::vector<Constraint> env_subtype(const IdxEnv& idx, const RefinementSet& refs,
                                    const VarEnv& sub, const VarEnv& sup,
                                    const ConstraintOrigin& origin);

struct InferenceResult {
  VarEnv env;
  Type type;
  std::vector<Constraint> constraints;
};

struct InferOptions {
  bool allow_extended_annotations = false;
};

/// Syntax-directed sensitivity inference over a Box-annotated skeleton.
/// Collects all numeric side conditions as constraints; fails eagerly only
/// on structural errors (unbound names, head mismatches, kind errors).
InferenceResult infer(const IdxEnv& idx, const RefinementSet& refs,
                      const VarEnv& skeleton, const Term& e,
                      const Prelude& prelude, const InferOptions& opts = {});

/// Inference at the empty environment followed by a subtype check against
/// `goal`; returns every collected constraint.
std::vector<Constraint> check(const Prelude& prelude, const Term& e,
                              const Type& goal, const InferOptions& opts = {});

}  // namespace senscheck

#endif
