#ifndef SENSCHECK_PIPELINE_HPP
#define SENSCHECK_PIPELINE_HPP

#include "senscheck/falsify.hpp"
#include "senscheck/poly.hpp"
#include "senscheck/translate.hpp"

namespace senscheck {

/// One schedulable unit of constraint discharge.
struct WorkItem {
  enum class Kind {
    Resolved,     // settled during infinity elimination
    Obligation,   // alternation-free obligation (simplify path)
    Direct,       // whole-constraint first-order translation
    FalseContext  // requires lhs >= infinity: invalid wherever refs hold
  };
  Kind kind;
  Verdict pre;          // Resolved
  Obligation ob;        // Obligation
  Formula formula;      // Direct / FalseContext
  Constraint source;    // the originating constraint, for reports
  Constraint residual;  // infinity-free residue used by the falsifier
  std::string label;    // pretty form for the report
};

struct LowerOptions {
  bool simplify = true;
  SolveMode mode = SolveMode::Mixed;
};

/// Infinity elimination followed by either the club pipeline (producing
/// alternation-free obligations) or the direct first-order translation.
std::vector<WorkItem> lower_constraints(const std::vector<Constraint>& cs,
                                        const LowerOptions& opts);

struct DecideOptions {
  SolverConfig solver;
  int falsify_budget = 4096;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Cheap sound checks first, then the external solver, then the sampling
/// falsifier to upgrade Unknown to a confirmed Invalid.
Verdict decide(const WorkItem& item, const DecideOptions& opts,
               int item_index = -1);

struct DecidedItem {
  Verdict verdict;
  double millis = 0;
};

/// Decides every item over a bounded worker pool.
std::vector<DecidedItem> decide_all(const std::vector<WorkItem>& items,
                                    const DecideOptions& opts);

/// The meet of all verdicts: Valid only if all are, Invalid if any is.
Verdict::Kind overall_verdict(const std::vector<DecidedItem>& items);

}  // namespace senscheck

#endif
