#ifndef SENSCHECK_SMT_HPP
#define SENSCHECK_SMT_HPP

#include <optional>
#include <string>

#include "senscheck/eval.hpp"
#include "senscheck/formula.hpp"

namespace senscheck {

enum class SolveMode { Mixed, Uniform };

struct SolverConfig {
  std::string command = "z3 -in";
  double timeout_seconds = 10.0;
  SolveMode mode = SolveMode::Mixed;
  std::optional<std::string> emit_dir;
};

enum class UnknownReason { Timeout, SolverUnknown, IncompleteInternalCheck };

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  Valuation witness;                             // Invalid
  UnknownReason reason = UnknownReason::SolverUnknown;  // Unknown

  static Verdict valid() { return {Kind::Valid, {}, {}}; }
  static Verdict invalid(Valuation w) { return {Kind::Invalid, std::move(w), {}}; }
  static Verdict unknown(UnknownReason r) { return {Kind::Unknown, {}, r}; }

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  std::string str() const;
};

/// Deterministic SMT-LIB2 script asserting the negation of the closed
/// formula: validity shows up as unsat. Nat-sorted quantifiers become Int
/// with a nonnegativity guard, real quantifiers carry the same guard over
/// Real. Byte-identical output for identical input.
std::string emit_smtlib(const Formula& f, SolveMode mode);

/// Feeds the script to the external solver. unsat maps to Valid, sat to
/// Invalid with the model parsed into a valuation (a second, skolemized
/// query recovers the witness for universally quantified formulas); anything
/// else maps to Unknown. Never throws on solver failure.
Verdict solve(const Formula& f, const SolverConfig& cfg);

/// Model text parsing, exposed for tests: accepts (define-fun x () Int 3)
/// style bindings with integer, decimal, fraction and negated literals.
std::optional<Valuation> parse_model(const std::string& text, SolveMode mode);

/// The command actually used: the SENSCHECK_SOLVER environment variable
/// overrides cfg.command when set.
std::string effective_solver_command(const SolverConfig& cfg);

}  // namespace senscheck

#endif
