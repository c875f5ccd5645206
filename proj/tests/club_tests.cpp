#include <doctest.h>

#include "senscheck/club.hpp"
#include "senscheck/syntax.hpp"
#include "support/gen.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

static const ProbeConfig P = ProbeConfig::defaults();

TEST_CASE("encoding the extended constructs") {
  ClubExpr m = to_club(S("max(r, 2)"));
  REQUIRE(m.tag() == ClubExpr::Tag::Club);
  REQUIRE(m.node().entries.size() == 2);
  CHECK(m.node().entries[0].locals.empty());
  CHECK(m.node().entries[0].refs.empty());

  ClubExpr c = to_club(S("scase n { 0 => a | i + 1 => i }"));
  REQUIRE(c.tag() == ClubExpr::Tag::Club);
  REQUIRE(c.node().entries.size() == 2);
  CHECK(c.node().entries[0].refs.size() == 1);
  CHECK(c.node().entries[0].refs[0].shape == Refinement::Shape::IsZero);
  CHECK(c.node().entries[1].locals.size() == 1);
  CHECK(c.node().entries[1].refs[0].shape == Refinement::Shape::IsSucc);
  CHECK(c.node().entries[1].refs[0].binder == "i");

  ClubExpr s = to_club(S("sup (i : sens) . i"));
  REQUIRE(s.tag() == ClubExpr::Tag::Club);
  REQUIRE(s.node().entries.size() == 1);
  CHECK(s.node().entries[0].locals.size() == 1);

  // standard subterms stay whole
  ClubExpr leaf = to_club(S("5"));
  CHECK(leaf.tag() == ClubExpr::Tag::Leaf);
  CHECK(to_club(S("2 * i + 1")).tag() == ClubExpr::Tag::Leaf);
}

TEST_CASE("pushing standard terms into entries") {
  // 2 * club{r} + 1 becomes club{2r + 1}
  ClubExpr q = ClubExpr::plus(
      ClubExpr::times(ClubExpr::leaf(S("2")), to_club(S("max(r, r)"))),
      ClubExpr::leaf(S("1")));
  ClubExpr pushed = push_leaves(q);
  REQUIRE(pushed.tag() == ClubExpr::Tag::Club);
  for (const auto& e : pushed.node().entries) {
    REQUIRE(e.body.tag() == ClubExpr::Tag::Leaf);
    CHECK(e.body.node().leaf == S("2 * r + 1"));
  }

  CHECK(push_leaves(ClubExpr::leaf(S("7"))).node().leaf == S("7"));

  // 0 * club{(i; ; i)} + 3: the binder survives, nothing is simplified away
  ClubExpr zero = ClubExpr::plus(
      ClubExpr::times(ClubExpr::leaf(S("0")), to_club(S("sup (i : size) . i"))),
      ClubExpr::leaf(S("3")));
  ClubExpr zp = push_leaves(zero);
  REQUIRE(zp.tag() == ClubExpr::Tag::Club);
  REQUIRE(zp.node().entries.size() == 1);
  CHECK(zp.node().entries[0].locals.size() == 1);
  CHECK(zp.node().entries[0].body.node().leaf == S("0 * i + 3"));
  // and evaluates like the original (the binder range matters at infinity)
  CHECK(club_eval(zp, {}, P) == club_eval(zero, {}, P));
  CHECK(club_eval(zp, {}, P) == eval_sens(S("0 * (sup (i : size) . i) + 3"), {}, P));
}

TEST_CASE("push avoids capturing entry binders") {
  // i * club{(i; ; i)}: the pushed i is free, the local one must be renamed
  ClubExpr q = ClubExpr::times(ClubExpr::leaf(S("i")),
                               to_club(S("sup (i : size) . i")));
  ClubExpr pushed = push_leaves(q);
  REQUIRE(pushed.tag() == ClubExpr::Tag::Club);
  const ClubEntry& e = pushed.node().entries[0];
  REQUIRE(e.locals.size() == 1);
  CHECK(e.locals[0].first != "i");
  Valuation rho = val({{"i", fin(4)}});
  CHECK(club_eval(pushed, rho, P) == eval_sens(S("i * sup (j : size) . j"), rho, P));
}

TEST_CASE("normalization reaches the flat form") {
  // club{(;;club{(i;;i)})} flattens
  ClubExpr nested = ClubExpr::club({{{}, {}, to_club(S("sup (i : size) . i"))}});
  NormalizeStats stats;
  ClubExpr flat = normalize_club(nested, &stats);
  REQUIRE(flat.tag() == ClubExpr::Tag::Club);
  REQUIRE(flat.node().entries.size() == 1);
  CHECK(flat.node().entries[0].locals.size() == 1);
  CHECK(flat.node().entries[0].body.tag() == ClubExpr::Tag::Leaf);
  CHECK(stats.steps <= stats.input_clubs);

  // club{a, b} + club{c} cross-merges
  ClubExpr sum = ClubExpr::plus(to_club(S("max(a, b)")), to_club(S("max(c, c)")));
  ClubExpr merged = normalize_club(sum);
  REQUIRE(merged.tag() == ClubExpr::Tag::Club);
  CHECK(merged.node().entries.size() == 4);
  CHECK(merged.node().entries[0].body.node().leaf == S("a + c"));

  // already normal stays put
  ClubExpr normal = ClubExpr::club({{{{ "i", Kind::Size }},
                                     {Refinement::is_succ(S("n"), "i")},
                                     ClubExpr::leaf(S("i"))}});
  ClubExpr again = normalize_club(normal, &stats);
  CHECK(stats.steps == 0);
  CHECK(again.node().entries.size() == 1);
}

TEST_CASE("flattening into obligations") {
  Constraint c = mkc({{"i", Kind::Size}}, {}, S("q"), S("anything"));

  ClubExpr two = ClubExpr::club(
      {{{}, {Refinement::is_zero(S("n"))}, ClubExpr::leaf(S("2"))},
       {{{"j", Kind::Size}}, {Refinement::is_succ(S("n"), "j")},
        ClubExpr::leaf(S("j"))}});
  auto obs = flatten(c, two);
  REQUIRE(obs.size() == 2);
  CHECK(obs[0].outer_env == c.idx);
  CHECK(obs[0].local_refs.size() == 1);
  CHECK(obs[1].local_env.size() == 1);
  CHECK(obs[1].lhs == S("q"));

  // empty club: the trivial obligation lhs >= 0
  auto empty = flatten(c, ClubExpr::club({}));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].rhs == S("0"));

  // single unguarded entry
  auto single = flatten(c, ClubExpr::club({{{}, {}, ClubExpr::leaf(S("r1"))}}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].rhs == S("r1"));
  CHECK(single[0].local_env.empty());
}

TEST_CASE("flatten freshens locals that clash with the ambient scope") {
  Constraint c = mkc({{"i", Kind::Size}}, {}, S("i"), S("x"));
  ClubExpr rhs = ClubExpr::club(
      {{{{"i", Kind::Size}}, {Refinement::is_succ(S("n"), "i")},
        ClubExpr::leaf(S("i"))}});
  auto obs = flatten(c, rhs);
  REQUIRE(obs.size() == 1);
  CHECK(obs[0].local_env[0].first != "i");
  CHECK(obs[0].local_refs[0].binder == obs[0].local_env[0].first);
  CHECK(obs[0].rhs == Sens::var(obs[0].local_env[0].first));
}

TEST_CASE("the pipeline preserves the probe interpretation") {
  Gen gen(29);
  IdxEnv vars = {{"i", Kind::Size}, {"j", Kind::Size}, {"r", Kind::Sens}};
  for (int k = 0; k < 300; ++k) {
    Sens t = gen.extended(4, vars);
    Valuation rho = gen.standard_valuation(vars);
    ExtReal direct = eval_sens(t, rho, P);

    ClubExpr enc = to_club(t);
    CHECK(club_eval(enc, rho, P) == direct);

    ClubExpr pushed = push_leaves(enc);
    CHECK(club_eval(pushed, rho, P) == direct);

    NormalizeStats stats;
    std::vector<ClubExpr> trace;
    ClubExpr normal = normalize_club(pushed, &stats, &trace);
    for (const auto& stage : trace) CHECK(club_eval(stage, rho, P) == direct);
    CHECK(club_eval(normal, rho, P) == direct);
    CHECK(stats.steps <= std::max(stats.input_clubs, 1));

    for (const auto& e : normal.node().entries)
      CHECK(e.body.node().leaf.is_standard());
  }
}
