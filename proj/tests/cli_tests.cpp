#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "senscheck/subprocess.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

static ProcessResult cli(const std::string& args) {
  return run_process(std::string(SENSCHECK_CLI) + " " + args, "", 120);
}

TEST_CASE("exit codes follow the verdict") {
  CHECK(cli("check " + corpus_path("pair_use.dfz") + " --solver none").exit_code == 0);
  CHECK(cli("check " + corpus_path("pair_use_bad.dfz") + " --solver none").exit_code == 1);
  ProcessResult unk = cli("check " + corpus_path("pair_use_sq.dfz") +
                          " --solver none --jobs 1");
  // without a solver the quadratic side condition stays open
  if (std::getenv("SENSCHECK_SOLVER") == nullptr) CHECK(unk.exit_code == 2);
  CHECK(cli("check " + corpus_path("nosuchfile.dfz")).exit_code == 3);
  CHECK(cli("check " + corpus_path("identity.dfz") + " --mode sideways").exit_code == 3);
}

TEST_CASE("parse errors are located diagnostics with exit 3") {
  std::string tmp = "/tmp/senscheck_broken.dfz";
  std::ofstream(tmp) << "fun (x :[ real) { x }\n";
  ProcessResult r = cli("check " + tmp);
  CHECK(r.exit_code == 3);
}

TEST_CASE("infer prints an extended-free type") {
  ProcessResult r = cli("infer " + corpus_path("scale3.dfz") + " --solver none");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("![3] real -o real") != std::string::npos);
  for (const char* banned : {"max(", "sup (", "scase "})
    CHECK(r.output.find(banned) == std::string::npos);
}

TEST_CASE("the json report is schema-stable") {
  ProcessResult r = cli("check " + corpus_path("pair_use.dfz") +
                        " --json --solver none --jobs 1");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  // normalize the timing fields, which legitimately vary run to run
  for (auto& o : j["obligations"]) o["millis"] = 0.0;
  for (auto& [k, v] : j["phases"].items()) v = 0.0;
  j["file"] = "pair_use.dfz";

  std::ifstream golden(std::string(SENSCHECK_GOLDEN_DIR) + "/pair_use.json");
  REQUIRE(golden.good());
  nlohmann::json expect = nlohmann::json::parse(golden);
  CHECK(j.dump(2) == expect.dump(2));
}

TEST_CASE("witnesses appear in the json report") {
  ProcessResult r = cli("check " + corpus_path("pair_use_bad.dfz") +
                        " --json --solver none --jobs 1");
  REQUIRE(r.exit_code == 1);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["overall"] == "invalid");
  bool witness = false;
  for (auto& o : j["obligations"])
    if (o.contains("witness") && o["witness"].contains("i") &&
        o["witness"]["i"] == "0")
      witness = true;
  CHECK(witness);
}

TEST_CASE("emitted smt scripts land in the requested directory") {
  std::string dir = "/tmp/senscheck_emit_test";
  std::string cmd = "check " + corpus_path("pair_use_sq.dfz") +
                    " --solver none --emit-smt " + dir + " --jobs 1";
  cli(cmd);
  std::ifstream probe(dir + "/obligation_1.smt2");
  bool found = probe.good();
  if (!found) found = std::ifstream(dir + "/obligation_0.smt2").good();
  CHECK(found);
}

TEST_CASE("prelude files are honoured") {
  std::string tmp = "/tmp/senscheck_uses_prelude.dfz";
  std::ofstream(tmp) << "check fun (x :[1] real) { neg x } : ![1] real -o real\n";
  ProcessResult r = cli("check " + tmp + " --prelude " + corpus_path("std.dfzp") +
                        " --solver none");
  CHECK(r.exit_code == 0);
  // without the prelude the name is unknown
  CHECK(cli("check " + tmp + " --solver none").exit_code == 3);
}

TEST_CASE("fuzzing from the command line") {
  ProcessResult r = cli("check " + corpus_path("scale3.dfz") +
                        " --solver none --fuzz 200");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("fuzz") != std::string::npos);
  CHECK(r.output.find("max-ratio=3") != std::string::npos);
}
