#include <doctest.h>

#include "senscheck/pipeline.hpp"
#include "senscheck/syntax.hpp"
#include "support/formula_sat.hpp"
#include "support/gen.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

TEST_CASE("infinity elimination resolves top-level absorption") {
  // inf on the left: valid outright
  ElimResult top = eliminate_infinity(mkc({}, {}, S("inf"), S("r * r")));
  CHECK(top.resolved_valid());

  // 5 >= inf * 0: the right side rewrites to inf, recorded as a false part
  ElimResult bot = eliminate_infinity(mkc({}, {}, S("5"), S("inf * 0")));
  CHECK_FALSE(bot.resolved_valid());
  REQUIRE(bot.false_parts.size() == 1);
  CHECK(bot.constraints.empty());

  // infinity-free input is untouched
  Constraint c = mkc({{"i", Kind::Size}}, {}, S("i + 3"), S("i + 1"));
  ElimResult same = eliminate_infinity(c);
  REQUIRE(same.constraints.size() == 1);
  CHECK(same.constraints[0].lhs == c.lhs);
  CHECK(same.constraints[0].rhs == c.rhs);
  CHECK(same.false_parts.empty());
}

TEST_CASE("infinity stuck under a case splits the constraint") {
  Constraint c = mkc({{"n", Kind::Size}}, {}, S("5"),
                     S("scase n { 0 => 1 | j + 1 => inf }"));
  ElimResult r = eliminate_infinity(c);
  REQUIRE(r.constraints.size() == 1);   // the zero branch: 5 >= 1
  REQUIRE(r.false_parts.size() == 1);   // the successor branch demands inf
  CHECK(r.constraints[0].rhs == S("1"));
  CHECK(r.false_parts[0].refs.size() == 1);
  bool no_inf = !r.constraints[0].lhs.mentions_infinity() &&
                !r.constraints[0].rhs.mentions_infinity();
  CHECK(no_inf);
}

TEST_CASE("the first-order translation follows the defining clauses") {
  Formula f = translate(mkc({}, {}, S("3"), S("1 + 1")));
  // exists r1 r2. (r1 = 3) /\ (exists a b. a = 1 /\ b = 1 /\ r2 = a + b) /\ r1 >= r2
  CHECK(count_existentials(f) == 4);
  FormulaSat oracle;
  CHECK(oracle.sat(f, {}));
  Formula bad = translate(mkc({}, {}, S("1"), S("1 + 1")));
  CHECK_FALSE(oracle.sat(bad, {}));
}

TEST_CASE("the max clause carries the two-disjunct shape") {
  Constraint c = mkc({{"i", Kind::Size}}, {}, S("i * i + 1"), S("max(2 * i, 1)"));
  Formula f = translate(c);
  REQUIRE(f.tag() == Formula::Tag::ForAll);
  CHECK(f.node().sort == Sort::Nat);
  std::string s = formula_str(f);
  CHECK(s.find("\\/") != std::string::npos);   // the Or of the two picks
  CHECK(count_existentials(f) >= 2);           // r1, r2 for the max arms
}

TEST_CASE("closed translations pin the evaluation result") {
  // case 2 of 0 => 5 | j+1 => j has value 1
  Sens r = S("scase 2 { 0 => 5 | j + 1 => j }");
  Constraint c = mkc({}, {}, S("1"), r);
  Formula f = translate(c);
  FormulaSat oracle;
  CHECK(oracle.sat(f, {}));                     // 1 >= 1
  Constraint strict = mkc({}, {}, S("1/2"), r);
  CHECK_FALSE(oracle.sat(translate(strict), {}));
}

TEST_CASE("uniform translation: shapes and the (0,1) clause") {
  Constraint c = mkc({{"i", Kind::Size}}, {}, S("i * i"), S("i"));
  Formula f = translate_uniform(c);
  REQUIRE(f.tag() == Formula::Tag::ForAll);
  CHECK(f.node().sort == Sort::SensReal);  // sizes quantify over the reals here

  // i = 1/2 falsifies the uniform reading
  FormulaSat oracle;
  CHECK_FALSE(oracle.sat(f.node().a, { {"i", make_rational(1, 2)} }));
  CHECK(oracle.sat(f.node().a, { {"i", make_rational(3, 1)} }));

  // polynomial identities stay valid
  Formula id = translate_uniform(
      mkc({{"i", Kind::Size}}, {}, S("3 * i + 3"), S("3 * (i + 1)")));
  for (long num = 0; num <= 8; ++num)
    CHECK(oracle.sat(id.node().a, { {"i", make_rational(num, 2)} }));

  // the case translation maps scrutinees inside (0,1) to zero
  Formula cf = translate_uniform(
      mkc({{"s", Kind::Size}}, {}, S("0"), S("scase s { 0 => 1 | j + 1 => j }")));
  std::string printed = formula_str(cf);
  CHECK(printed.find("> 0") != std::string::npos);
  CHECK(printed.find("< 1") != std::string::npos);
  // inside (0,1) the right side is 0, so 0 >= 0 holds
  CHECK(oracle.sat(cf.node().a, { {"s", make_rational(1, 2)} }));
  // at s = 1 the successor branch yields j = 0, so 0 >= 0 again holds
  CHECK(oracle.sat(cf.node().a, { {"s", make_rational(1, 1)} }));
  // at s = 0 the zero branch demands 0 >= 1
  CHECK_FALSE(oracle.sat(cf.node().a, { {"s", make_rational(0, 1)} }));
}

TEST_CASE("uniform translation rejects extended left sides") {
  CHECK_THROWS_AS(translate_uniform(mkc({}, {}, S("max(1, 2)"), S("1"))),
                  NonStandardLhs);
}

TEST_CASE("obligation formulas are alternation-free") {
  Gen gen(31);
  for (int k = 0; k < 200; ++k) {
    Obligation o = gen.random_obligation();
    CHECK(count_existentials(obligation_formula(o, false)) == 0);
    CHECK(count_existentials(obligation_formula(o, true)) == 0);
  }
}

TEST_CASE("the simplify path of the lowering emits no existentials") {
  Gen gen(37);
  IdxEnv vars = {{"i", Kind::Size}, {"r", Kind::Sens}};
  LowerOptions opts;
  opts.simplify = true;
  for (int k = 0; k < 150; ++k) {
    std::vector<Constraint> cs = {
        mkc(vars, {}, gen.standard(3, vars), gen.extended(3, vars, true))};
    for (const WorkItem& item : lower_constraints(cs, opts)) {
      if (item.kind == WorkItem::Kind::Obligation)
        CHECK(count_existentials(obligation_formula(item.ob, false)) == 0);
      if (item.kind == WorkItem::Kind::FalseContext)
        CHECK(count_existentials(item.formula) == 0);
      CHECK(item.kind != WorkItem::Kind::Direct);
    }
  }
}

TEST_CASE("translation agrees with evaluation on random closed terms") {
  // sup-free, infinity-free closed terms: the unique witness of the defining
  // predicate is the denotation
  Gen gen(41);
  FormulaSat oracle;
  static const ProbeConfig P = ProbeConfig::defaults();
  int done = 0;
  while (done < 300) {
    Sens t = gen.extended(3, {});
    if (t.mentions_infinity()) continue;
    bool has_sup = false;
    std::function<void(const Sens&)> scan = [&](const Sens& s) {
      if (s.tag() == Sens::Tag::Sup) has_sup = true;
      if (s.tag() == Sens::Tag::Plus || s.tag() == Sens::Tag::Times ||
          s.tag() == Sens::Tag::Max) {
        scan(s.node().a);
        scan(s.node().b);
      }
      if (s.tag() == Sens::Tag::Case) {
        scan(s.node().a);
        scan(s.node().b);
        scan(s.node().c);
      }
      if (s.tag() == Sens::Tag::Sup) scan(s.node().a);
    };
    scan(t);
    if (has_sup) continue;
    ++done;

    // Build T(t)(result) through the public translation of t >= t, then
    // inspect the witness set of the right-hand predicate.
    Constraint c = mkc({}, {}, t, t);
    Formula f = translate(c);
    // f = exists r. T(t)(r) /\ exists r2. T(t)(r2) /\ r >= r2; peel one layer
    REQUIRE(f.tag() == Formula::Tag::Exists);
    std::string var = f.node().var;
    auto sols = oracle.solutions(f.node().a, var);
    ExtReal expect = eval_sens(t, {}, P);
    REQUIRE(!expect.is_infinite());
    REQUIRE(sols.size() == 1);
    CHECK(*sols.begin() == expect.value());
  }
}
