#include <doctest.h>

#include "senscheck/poly.hpp"
#include "senscheck/syntax.hpp"
#include "senscheck/typing.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

static const char* corpus_src() {
  return
      "primitive use : forall i : size . ![0] nat[i] -o ![i] real -o real;\n"
      "primitive plus : ![1] real -o ![1] real -o real;\n"
      "check\n"
      "idxlam (i : size) { fun (e :[0] nat[i]) { fun (x :[2*i + 1] real) {\n"
      "  <x, plus (use[i] e x) (use[i] e x)> } } }\n"
      ": forall i : size . ![0] nat[i] -o ![2*i + 1] real -o real & real\n";
}

static const ConstraintOrigin O = {{}, "test"};

TEST_CASE("subtyping is reflexive without constraints") {
  Type t = T("forall i : size . ![0] nat[i] -o ![2*i] real -o real & real");
  CHECK(subtype({}, {}, t, t, O).empty());
}

TEST_CASE("subtyping the minimal-pair types emits one inequality") {
  Type sub = T("forall i : size . ![0] nat[i] -o ![2*i] real -o real & real");
  Type sup = T("forall i : size . ![0] nat[i] -o ![i*i + 1] real -o real & real");
  auto cs = subtype({}, {}, sub, sup, O);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].idx.size() == 1);
  CHECK(cs[0].idx[0].second == Kind::Size);
  // annotation grows rightward: the supertype's bound dominates
  std::string printed = pretty(cs[0]);
  CHECK(printed.find("i * i + 1 >= 2 * i") != std::string::npos);
}

TEST_CASE("singleton indices constrain in both directions") {
  RefinementSet refs = {Refinement::is_succ(S("j"), "i")};
  IdxEnv idx = {{"i", Kind::Size}, {"j", Kind::Size}};
  auto cs = subtype(idx, refs, T("nat[i + 1]"), T("nat[j]"), O);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].lhs == S("i + 1"));
  CHECK(cs[0].rhs == S("j"));
  CHECK(cs[1].lhs == S("j"));
  CHECK(cs[1].rhs == S("i + 1"));
}

TEST_CASE("structural mismatches fail eagerly") {
  CHECK_THROWS_AS(subtype({}, {}, T("real"), T("real * real"), O), Diag);
  CHECK_THROWS_AS(subtype({}, {}, T("list(real)[1]"), T("bag(real)[1]"), O), Diag);
  CHECK_THROWS_AS(
      subtype({}, {}, T("forall i : size . real"), T("forall i : sens . real"), O),
      Diag);
}

TEST_CASE("environment subtyping per the marker discipline") {
  Type real = T("real");
  VarEnv sub, sup;
  sub.bind("x", Annotation::sens(S("3")), real);
  sup.bind("x", Annotation::box(), real);
  CHECK(env_subtype({}, {}, sub, sup, O).empty());

  VarEnv sup2;
  sup2.bind("x", Annotation::sens(S("2")), real);
  auto cs = env_subtype({}, {}, sub, sup2, O);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].lhs == S("3"));
  CHECK(cs[0].rhs == S("2"));

  VarEnv other;
  other.bind("y", Annotation::sens(S("1")), real);
  CHECK_THROWS_AS(env_subtype({}, {}, sub, other, O), Diag);
}

TEST_CASE("variable rule emits a single unit binding") {
  VarEnv skel = VarEnv::skeleton({{"x", T("real")}, {"y", T("real")}});
  InferenceResult r = infer({}, {}, skel, Term::var("x"), {});
  CHECK(r.type == T("real"));
  CHECK(r.constraints.empty());
  CHECK(r.env.find("x")->ann.sens_expr() == S("1"));
  CHECK(r.env.find("y")->ann.is_box());
  int non_box = 0;
  for (const auto& b : r.env.bindings())
    if (!b.ann.is_box()) ++non_box;
  CHECK(non_box == 1);
}

TEST_CASE("tensor pairing adds usage") {
  VarEnv skel = VarEnv::skeleton({{"x", T("real")}});
  Term e = Term::tensor_pair(Term::var("x"), Term::var("x"));
  InferenceResult r = infer({}, {}, skel, e, {});
  CHECK(r.type == T("real * real"));
  CHECK(r.env.find("x")->ann.sens_expr() == S("2"));
}

TEST_CASE("with-pairing joins usage with marker absorption") {
  VarEnv skel = VarEnv::skeleton({{"x", T("real")}, {"y", T("real")}});
  Term e = Term::with_pair(Term::var("x"), Term::var("y"));
  InferenceResult r = infer({}, {}, skel, e, {});
  CHECK(r.type == T("real & real"));
  CHECK(r.env.find("x")->ann.sens_expr() == S("1"));
  CHECK(r.env.find("y")->ann.sens_expr() == S("1"));
}

TEST_CASE("fixpoints scale the environment unboundedly") {
  VarEnv skel = VarEnv::skeleton({{"x", T("real")}});
  // fix (f : real) { x }   -- not recursive, but uses x under the fixpoint
  Term e = Term::fix("f", T("real"), Term::var("x"));
  InferenceResult r = infer({}, {}, skel, e, {});
  CHECK(r.type == T("real"));
  CHECK(r.env.find("x")->ann.sens_expr() == Sens::infinity());
}

TEST_CASE("unbound and unknown names are structural errors") {
  CHECK_THROWS_AS(infer({}, {}, {}, Term::var("ghost"), {}), Diag);
  CHECK_THROWS_AS(infer({}, {}, {}, Term::prim("ghost"), {}), Diag);
}

TEST_CASE("case scrutinee must be a singleton natural") {
  Prelude prelude;
  SourceProgram p = parse_program(
      "fun (x :[1] real) { case x return real of 0 => 0.0 | n[j] + 1 => 0.0 }");
  CHECK_THROWS_WITH_AS(check(prelude, p.body, T("![1] real -o real")),
                       doctest::Contains("expected nat[-]"), Diag);
}

TEST_CASE("inference is deterministic") {
  SourceProgram p = parse_program(corpus_src());
  Prelude prelude = p.prelude;
  auto c1 = check(prelude, p.body, *p.goal);
  auto c2 = check(prelude, p.body, *p.goal);
  REQUIRE(c1.size() == c2.size());
  for (size_t i = 0; i < c1.size(); ++i) CHECK(pretty(c1[i]) == pretty(c2[i]));
}

TEST_CASE("checking the pair-of-uses bounds") {
  SourceProgram p = parse_program(corpus_src());
  auto constraints = check(p.prelude, p.body, *p.goal);
  // The lambda constraint entails 2i+1 >= 1 and 2i+1 >= 2i.
  bool found = false;
  for (const auto& c : constraints) {
    std::string s = pretty(c);
    if (s.find("2 * i + 1 >= max(1, i + i)") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("inferred environments preserve the skeleton domain") {
  VarEnv skel = VarEnv::skeleton(
      {{"x", T("real")}, {"y", T("real")}, {"z", T("nat[3]")}});
  const char* bodies[] = {
      "x", "(x, y)", "<x, y>", "succ z",
      "let (a, b) = (x, y) in a",
      "case z return real of 0 => x | n[j] + 1 => y",
  };
  ParseOptions popts;
  for (const char* src : bodies) {
    // parse in a scope where x, y, z are bound
    SourceProgram p = parse_program(
        std::string("fun (x :[1] real) { fun (y :[1] real) { fun (z :[1] nat[3]) { ") +
        src + " } } }", popts);
    const Term& body = p.body.node().a.node().a.node().a;
    InferenceResult r = infer({}, {}, skel, body, {});
    CHECK(r.env.same_domain(skel));
  }
}

TEST_CASE("real singleton indices also constrain in both directions") {
  auto cs = subtype({{"r", Kind::Sens}}, {}, T("real[r]"), T("real[2]"), O);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].lhs == S("r"));
  CHECK(cs[0].rhs == S("2"));
  CHECK(cs[1].lhs == S("2"));
  CHECK(cs[1].rhs == S("r"));
}
