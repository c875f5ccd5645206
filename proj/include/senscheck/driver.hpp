#ifndef SENSCHECK_DRIVER_HPP
#define SENSCHECK_DRIVER_HPP

#include <iosfwd>
#include <optional>

#include "senscheck/lipschitz.hpp"
#include "senscheck/pipeline.hpp"
#include "senscheck/syntax.hpp"

namespace senscheck {

struct RunOptions {
  std::string file;
  bool check_mode = true;  // false: infer
  SolveMode mode = SolveMode::Mixed;
  std::optional<bool> simplify;  // defaults to "annotations are standard"
  std::string solver = "z3 -in";
  double timeout_seconds = 10.0;
  std::optional<std::string> emit_smt_dir;
  int fuzz_trials = 0;
  bool fuzz_json = false;
  bool json = false;
  bool allow_extended_annotations = false;
  int jobs = 0;  // 0: hardware concurrency
  std::vector<std::string> prelude_files;
  std::uint64_t seed = 1;
};

struct ObligationRow {
  std::string rule;
  std::string loc;
  std::string constraint;
  Verdict verdict;
  double millis = 0;
};

struct FuzzRow {
  std::uint64_t size_value = 0;
  bool ran = false;
  LipschitzReport report;
};

struct RunReport {
  std::string file;
  Verdict::Kind overall = Verdict::Kind::Unknown;
  std::vector<ObligationRow> obligations;
  double parse_ms = 0, infer_ms = 0, lower_ms = 0, solve_ms = 0;
  std::optional<std::string> inferred_type;
  std::vector<FuzzRow> fuzz;
  std::optional<std::string> error;  // located diagnostic, exit 3
  SrcLoc error_loc;

  std::string to_json() const;
  std::string fuzz_json() const;
  void write_text(std::ostream& os) const;
  int exit_code() const;
};

/// Parse, infer or check, lower, discharge, optionally fuzz; never throws.
RunReport run(const RunOptions& opts);

}  // namespace senscheck

#endif
