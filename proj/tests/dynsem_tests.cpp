#include <doctest.h>

#include "senscheck/lipschitz.hpp"
#include "senscheck/syntax.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

static ValuePtr run(const std::string& src, long fuel = 100000) {
  SourceProgram p = parse_program(src);
  long budget = fuel;
  return eval_term(p.body, nullptr, {}, budget);
}

TEST_CASE("evaluating scaling by three") {
  ValuePtr f = run("fun (x :[3] real) { plus x (plus x x) }");
  long fuel = 100000;
  ValuePtr r = apply_value(f, make_real(Rational(2)), fuel);
  REQUIRE(r->tag == Value::Tag::Real);
  CHECK(r->real == Rational(6));
}

TEST_CASE("case dispatches on the runtime natural") {
  ValuePtr zero = run(
      "case 0 return real of 0 => 1.5 | n[j] + 1 => 2.5");
  CHECK(zero->real == make_rational(3, 2));
  ValuePtr succ = run(
      "case 2 return real of 0 => 1.5 | n[j] + 1 => 2.5");
  CHECK(succ->real == make_rational(5, 2));
}

TEST_CASE("fixpoint-based multiplication unrolls") {
  const char* mult =
      "fix (f : forall i : size . ![0] nat[i] -o ![inf] real -o real) {"
      " idxlam (i : size) { fun (n :[0] nat[i]) { fun (x :[inf] real) {"
      " case n return real of 0 => 0.0 | m[j] + 1 => plus x (f[j] m x) } } } }";
  SourceProgram p = parse_program(mult);
  long fuel = 100000;
  ValuePtr f = eval_term(p.body, nullptr, {}, fuel);
  ValuePtr inst = apply_index(f, ExtReal::of(4), fuel);
  ValuePtr n4 = apply_value(inst, make_nat(4), fuel);
  ValuePtr out = apply_value(n4, make_real(make_rational(3, 2)), fuel);
  REQUIRE(out->tag == Value::Tag::Real);
  CHECK(out->real == Rational(6));
}

TEST_CASE("running out of fuel is reported, not looped") {
  const char* omega =
      "fix (f : real) { plus f 1.0 }";  // ill-typed loop, evaluation only
  SourceProgram p = parse_program(omega);
  long fuel = 200;
  CHECK_THROWS_AS(eval_term(p.body, nullptr, {}, fuel), EvalError);
}

TEST_CASE("pairs, projections and let bindings") {
  CHECK(run("pi1 <1.5, 2.5>")->real == make_rational(3, 2));
  CHECK(run("pi2 <1.5, 2.5>")->real == make_rational(5, 2));
  CHECK(run("let (a, b) = (1.5, 2.5) in plus a b")->real == Rational(4));
}

TEST_CASE("the empirical bound harness") {
  SourceProgram p = parse_program("fun (x :[3] real) { plus x (plus x x) }");
  LipschitzReport r = lipschitz_test(p.body, S("3"), 500, 7);
  CHECK(r.pass);
  CHECK(r.max_ratio == Rational(3));  // exact on a linear map

  SourceProgram id = parse_program("fun (x :[1] real) { x }");
  CHECK(lipschitz_test(id.body, S("1"), 500, 7).pass);

  // an understated bound must fail
  LipschitzReport bad = lipschitz_test(id.body, S("1/2"), 500, 7);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_ratio == Rational(1));

  // determinism under the seed
  LipschitzReport a = lipschitz_test(p.body, S("3"), 200, 11);
  LipschitzReport b = lipschitz_test(p.body, S("3"), 200, 11);
  CHECK(a.max_ratio == b.max_ratio);
}

TEST_CASE("slicing programs down to unary real functions") {
  SourceProgram p = parse_program(
      "primitive times : forall i : size . ![0] nat[i] -o ![i] real -o real;\n"
      "check idxlam (i : size) { fun (e :[0] nat[i]) { fun (x :[i] real) { "
      "times[i] e x } } } : forall i : size . ![0] nat[i] -o ![i] real -o real");
  auto slice = first_order_slice(p.body, *p.goal, 5);
  REQUIRE(slice.has_value());
  CHECK(slice->bound == S("5"));
  LipschitzReport r = lipschitz_test(slice->fn, slice->bound, 300, 3);
  CHECK(r.pass);
  CHECK(r.max_ratio == Rational(5));

  // shapes outside the slice are declined
  SourceProgram pair = parse_program("fun (x :[1] real) { <x, x> }");
  CHECK_FALSE(first_order_slice(pair.body, T("![1] real -o real & real"), 0)
                  .has_value());
}
