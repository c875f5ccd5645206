#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "senscheck/driver.hpp"

namespace senscheck {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string verdict_word(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::Invalid: return "invalid";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

nlohmann::json witness_json(const Valuation& w) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : w.values) out[k] = v.str();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Diag({}, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int RunReport::exit_code() const {
  if (error) return 3;
  switch (overall) {
    case Verdict::Kind::Valid: return 0;
    case Verdict::Kind::Invalid: return 1;
    case Verdict::Kind::Unknown: return 2;
  }
  return 2;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["file"] = file;
  if (error) {
    j["error"] = *error;
    j["loc"] = error_loc.known() ? error_loc.str() : "";
    return j.dump(2);
  }
  j["overall"] = verdict_word(overall);
  j["obligations"] = nlohmann::json::array();
  for (const auto& row : obligations) {
    nlohmann::json o;
    o["rule"] = row.rule;
    o["loc"] = row.loc;
    o["constraint"] = row.constraint;
    o["verdict"] = verdict_word(row.verdict.kind);
    if (row.verdict.is_invalid()) o["witness"] = witness_json(row.verdict.witness);
    if (row.verdict.is_unknown()) {
      switch (row.verdict.reason) {
        case UnknownReason::Timeout: o["reason"] = "timeout"; break;
        case UnknownReason::SolverUnknown: o["reason"] = "solver-unknown"; break;
        case UnknownReason::IncompleteInternalCheck:
          o["reason"] = "incomplete-internal-check";
          break;
      }
    }
    o["millis"] = row.millis;
    j["obligations"].push_back(std::move(o));
  }
  j["phases"] = {{"parse", parse_ms},
                 {"infer", infer_ms},
                 {"lower", lower_ms},
                 {"solve", solve_ms}};
  if (inferred_type) j["type"] = *inferred_type;
  if (!fuzz.empty()) {
    j["fuzz"] = nlohmann::json::array();
    for (const auto& f : fuzz) {
      nlohmann::json o;
      o["size"] = f.size_value;
      o["ran"] = f.ran;
      if (f.ran) {
        o["pass"] = f.report.pass;
        o["max_ratio"] = rational_str(f.report.max_ratio);
        o["bound"] = f.report.bound.str();
        o["trials"] = f.report.trials;
      }
      j["fuzz"].push_back(std::move(o));
    }
  }
  return j.dump(2);
}

std::string RunReport::fuzz_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : fuzz) {
    nlohmann::json o;
    o["size"] = f.size_value;
    o["ran"] = f.ran;
    if (f.ran) {
      o["pass"] = f.report.pass;
      o["max_ratio"] = rational_str(f.report.max_ratio);
      o["bound"] = f.report.bound.str();
      o["trials"] = f.report.trials;
    }
    j.push_back(std::move(o));
  }
  return j.dump(2);
}

void RunReport::write_text(std::ostream& os) const {
  if (error) {
    os << file << ":";
    if (error_loc.known()) os << error_loc.str() << ":";
    os << " error: " << *error << "\n";
    return;
  }
  if (inferred_type) os << file << ": " << *inferred_type << "\n";
  for (const auto& row : obligations) {
    os << "  [" << row.rule << "] " << (row.loc.empty() ? "-" : row.loc) << "  "
       << row.constraint << "  => " << row.verdict.str();
    if (row.verdict.is_invalid() && !row.verdict.witness.values.empty()) {
      os << " at";
      for (const auto& [k, v] : row.verdict.witness.values)
        os << " " << k << "=" << v.str();
    }
    os << "\n";
  }
  for (const auto& f : fuzz) {
    os << "  fuzz i=" << f.size_value << ": ";
    if (f.ran)
      os << f.report.str() << "\n";
    else
      os << "skipped (not a unary real function at this instantiation)\n";
  }
  os << file << ": " << verdict_word(overall) << "\n";
}

RunReport run(const RunOptions& opts) {
  RunReport report;
  report.file = opts.file;
  try {
    auto t0 = Clock::now();
    ParseOptions popts;
    popts.allow_extended_annotations = opts.allow_extended_annotations;
    Prelude prelude;
    for (const auto& pf : opts.prelude_files) {
      for (auto& [name, ty] : parse_prelude(read_file(pf), popts)) {
        if (prelude_lookup(prelude, name))
          throw Diag({}, "duplicate primitive '" + name + "'");
        prelude.emplace_back(name, ty);
      }
    }
    for (const auto& [name, ty] : prelude) popts.extern_prims.push_back(name);
    SourceProgram prog = parse_program(read_file(opts.file), popts);
    for (auto& [name, ty] : prog.prelude) {
      if (prelude_lookup(prelude, name))
        throw Diag({}, "duplicate primitive '" + name + "'");
      prelude.emplace_back(name, ty);
    }
    for (const auto& [name, ty] : prelude) {
      check_type_kinds({}, ty);
      if (!type_free_idx_vars(ty).empty())
        throw Diag({}, "primitive '" + name + "' has free index variables");
    }
    report.parse_ms = ms_since(t0);

    if (opts.check_mode && !prog.goal)
      throw Diag({}, "check mode requires a 'check <term> : <type>' goal");

    t0 = Clock::now();
    InferOptions iopts;
    iopts.allow_extended_annotations = opts.allow_extended_annotations;
    std::vector<Constraint> constraints;
    Type fuzz_type;
    if (opts.check_mode) {
      constraints = check(prelude, prog.body, *prog.goal, iopts);
      fuzz_type = *prog.goal;
    } else {
      InferenceResult res = infer({}, {}, {}, prog.body, prelude, iopts);
      constraints = std::move(res.constraints);
      report.inferred_type = pretty(res.type);
      fuzz_type = res.type;
    }
    report.infer_ms = ms_since(t0);

    t0 = Clock::now();
    bool standard = prog.body.annotations_standard() &&
                    (!prog.goal || !prog.goal->has_extended_index());
    LowerOptions lopts;
    lopts.simplify = opts.simplify.value_or(standard);
    lopts.mode = opts.mode;
    std::vector<WorkItem> items = lower_constraints(constraints, lopts);
    report.lower_ms = ms_since(t0);

    t0 = Clock::now();
    DecideOptions dopts;
    dopts.solver.command = opts.solver;
    dopts.solver.timeout_seconds = opts.timeout_seconds;
    dopts.solver.mode = opts.mode;
    dopts.solver.emit_dir = opts.emit_smt_dir;
    dopts.seed = opts.seed;
    dopts.jobs = opts.jobs > 0 ? opts.jobs
                               : (int)std::thread::hardware_concurrency();
    std::vector<DecidedItem> decided = decide_all(items, dopts);
    report.solve_ms = ms_since(t0);

    for (size_t i = 0; i < items.size(); ++i) {
      ObligationRow row;
      row.rule = items[i].source.origin.rule;
      row.loc = items[i].source.origin.loc.known()
                    ? items[i].source.origin.loc.str()
                    : "";
      row.constraint = items[i].label;
      row.verdict = decided[i].verdict;
      row.millis = decided[i].millis;
      report.obligations.push_back(std::move(row));
    }
    report.overall = overall_verdict(decided);

    if (opts.fuzz_trials > 0) {
      for (std::uint64_t size_value : {0ull, 1ull, 5ull}) {
        FuzzRow row;
        row.size_value = size_value;
        auto slice = first_order_slice(prog.body, fuzz_type, size_value);
        if (slice) {
          row.ran = true;
          row.report = lipschitz_test(slice->fn, slice->bound, opts.fuzz_trials,
                                      opts.seed + size_value);
        }
        report.fuzz.push_back(std::move(row));
      }
    }
  } catch (const Diag& d) {
    report.error = d.what();
    report.error_loc = d.loc;
  } catch (const std::exception& e) {
    report.error = e.what();
    report.error_loc = {};
  }
  return report;
}

}  // namespace senscheck
