#include <iostream>

#include <CLI11.hpp>

#include "senscheck/driver.hpp"

using namespace senscheck;

int main(int argc, char** argv) {
  CLI::App app{"senscheck: sensitivity type checking for indexed linear programs"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string mode = "mixed";
  bool simplify_on = false, simplify_off = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", opts.file, "program file (.dfz)")->required();
    cmd->add_option("--mode", mode, "constraint interpretation: mixed|uniform")
        ->check(CLI::IsMember({"mixed", "uniform"}))
        ->capture_default_str();
    cmd->add_flag("--simplify", simplify_on,
                  "force the alternation-free pipeline on");
    cmd->add_flag("--no-simplify", simplify_off,
                  "translate constraints directly instead");
    cmd->add_option("--solver", opts.solver,
                    "SMT solver command reading SMT-LIB2 on stdin")
        ->capture_default_str();
    cmd->add_option("--timeout", opts.timeout_seconds,
                    "per-query solver timeout in seconds")
        ->capture_default_str();
    cmd->add_option("--emit-smt", opts.emit_smt_dir,
                    "write emitted SMT-LIB2 scripts into this directory");
    cmd->add_option("--fuzz", opts.fuzz_trials,
                    "empirically test the bound with this many input pairs");
    cmd->add_flag("--fuzz-json", opts.fuzz_json, "include fuzz results in JSON");
    cmd->add_flag("--json", opts.json, "machine-readable report");
    cmd->add_flag("--allow-extended-annotations",
                  opts.allow_extended_annotations,
                  "accept max/sup/scase in annotation positions");
    cmd->add_option("--jobs", opts.jobs, "solver worker pool size");
    cmd->add_option("--prelude", opts.prelude_files,
                    "prelude file (.dfzp) with primitive declarations");
    cmd->add_option("--seed", opts.seed, "randomized-search seed")
        ->capture_default_str();
  };

  CLI::App* check_cmd =
      app.add_subcommand("check", "check a program against its goal type");
  add_common(check_cmd);
  CLI::App* infer_cmd =
      app.add_subcommand("infer", "infer a type and discharge its constraints");
  add_common(infer_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  opts.check_mode = check_cmd->parsed();
  opts.mode = mode == "uniform" ? SolveMode::Uniform : SolveMode::Mixed;
  if (simplify_on) opts.simplify = true;
  if (simplify_off) opts.simplify = false;
  if (opts.fuzz_json && opts.fuzz_trials == 0) opts.fuzz_trials = 1000;

  RunReport report = run(opts);
  if (opts.json) {
    std::cout << report.to_json() << "\n";
  } else {
    report.write_text(std::cout);
    if (opts.fuzz_json && !report.fuzz.empty())
      std::cout << report.fuzz_json() << "\n";
  }
  return report.exit_code();
}
