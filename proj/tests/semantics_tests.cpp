#include <doctest.h>

#include "senscheck/env.hpp"
#include "senscheck/eval.hpp"
#include "senscheck/syntax.hpp"
#include "support/gen.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

static const ProbeConfig P = ProbeConfig::defaults();

TEST_CASE("extended reals form an absorbing algebra") {
  ExtReal inf = ExtReal::infinity();
  CHECK(inf * ExtReal::of(0) == inf);  // the pivotal convention
  CHECK(inf + ExtReal::of(0) == inf);
  CHECK(ExtReal::of(0) * inf == inf);
  CHECK(fin(3, 2) + fin(1, 2) == fin(2));
  CHECK(fin(3, 2) * fin(2) == fin(3));
  CHECK(fin(1) < inf);
  CHECK(inf <= inf);
  CHECK(ext_max(fin(2), inf) == inf);

  // commutativity/associativity/monotonicity on a grid
  std::vector<ExtReal> grid = {fin(0), fin(1, 2), fin(1), fin(7, 3), inf};
  for (const auto& a : grid)
    for (const auto& b : grid) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (const auto& c : grid) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        if (a <= b) {
          CHECK(a + c <= b + c);
          CHECK(a * c <= b * c);
        }
      }
    }
}

TEST_CASE("standard evaluation of the extended constructs") {
  CHECK(eval_sens(S("inf * 0"), {}, P) == ExtReal::infinity());

  // r * max(2, r) meets r^2 + 1 exactly at r = 1
  Valuation rho = val({{"r", fin(1)}});
  CHECK(eval_sens(S("r * max(2, r)"), rho, P) == fin(2));
  CHECK(eval_sens(S("r * r + 1"), rho, P) == fin(2));

  CHECK(eval_sens(S("scase i { 0 => 5 | j + 1 => j }"), val({{"i", fin(3)}}), P) ==
        fin(2));
  CHECK(eval_sens(S("sup (j : sens) . max(2, j)"), {}, P) == ExtReal::infinity());
}

TEST_CASE("uniform evaluation differs on fractional scrutinees") {
  Valuation half = val({{"s", fin(1, 2)}}, ValMode::Uniform);
  CHECK(eval_sens_uniform(S("scase s { 0 => 7 | j + 1 => j }"), half, P) == fin(0));

  // agreement with the standard semantics on standard terms
  Valuation three = val({{"i", fin(3)}});
  CHECK(eval_sens_uniform(S("i * i"), three, P) == fin(9));
  CHECK(eval_sens_uniform(S("i * i"), three, P) == eval_sens(S("i * i"), three, P));

  Valuation frac = val({{"i", fin(1, 2)}}, ValMode::Uniform);
  CHECK(eval_sens_uniform(S("i * i"), frac, P) == fin(1, 4));

  // scrutinee at infinity runs the successor branch at infinity
  Valuation top = val({{"s", ExtReal::infinity()}}, ValMode::Uniform);
  CHECK(eval_sens_uniform(S("scase s { 0 => 7 | j + 1 => j }"), top, P) ==
        ExtReal::infinity());
}

TEST_CASE("uniform equals standard on random standard terms") {
  Gen gen(11);
  IdxEnv vars = {{"i", Kind::Size}, {"j", Kind::Size}, {"r", Kind::Sens}};
  for (int k = 0; k < 400; ++k) {
    Sens t = gen.standard(4, vars);
    Valuation rho = gen.standard_valuation(vars);
    CHECK(eval_sens(t, rho, P) == eval_sens_uniform(t, rho, P));
  }
}

TEST_CASE("standard terms are monotone in every variable") {
  Gen gen(13);
  IdxEnv vars = {{"i", Kind::Size}, {"r", Kind::Sens}};
  for (int k = 0; k < 400; ++k) {
    Sens t = gen.standard(4, vars);
    Valuation lo = gen.standard_valuation(vars);
    Valuation hi = lo;
    for (auto& [name, v] : hi.values) {
      if (gen.pick(2) == 0) continue;
      v = v + ExtReal(gen.small_rational());
    }
    CHECK(eval_sens(t, lo, P) <= eval_sens(t, hi, P));
  }
}

TEST_CASE("max and case laws on probe grids") {
  Gen gen(17);
  IdxEnv vars = {{"i", Kind::Size}, {"r", Kind::Sens}};
  for (int k = 0; k < 200; ++k) {
    Sens a = gen.extended(3, vars);
    Sens b = gen.extended(3, vars);
    Valuation rho = gen.standard_valuation(vars);
    ExtReal va = eval_sens(a, rho, P);
    ExtReal vb = eval_sens(b, rho, P);
    ExtReal vmax = eval_sens(Sens::smax(a, b), rho, P);
    CHECK(vmax >= va);
    CHECK(vmax >= vb);
    CHECK((vmax == va || vmax == vb));

    Sens scrut = gen.size_term(2, vars);
    Sens c = Sens::scase(scrut, a, "q", b);
    ExtReal n = eval_sens(scrut, rho, P);
    ExtReal vc = eval_sens(c, rho, P);
    if (n.is_zero()) {
      CHECK(vc == va);
    } else {
      Valuation inner = rho.with("q", ExtReal(n.value() - 1));
      CHECK(vc == eval_sens(b, inner, P));
    }
  }
}

// --- environment algebra ----------------------------------------------------

static VarEnv env1(const std::string& n, Annotation a, const Type& t) {
  VarEnv e;
  e.bind(n, std::move(a), t);
  return e;
}

TEST_CASE("environment addition") {
  Type real = T("real");
  VarEnv a = env1("x", Annotation::sens(S("1")), real);
  VarEnv b = env1("x", Annotation::sens(S("1")), real);
  VarEnv sum = env_add(a, b);
  CHECK(sum.find("x")->ann.sens_expr() == S("2"));

  VarEnv boxed = env1("x", Annotation::box(), real);
  VarEnv c = env_add(boxed, env1("x", Annotation::sens(S("3")), real));
  CHECK(c.find("x")->ann.sens_expr() == S("3"));
  VarEnv bb = env_add(boxed, boxed);
  CHECK(bb.find("x")->ann.is_box());

  CHECK_THROWS_AS(env_add(a, env1("x", Annotation::sens(S("1")), T("nat[0]"))),
                  EnvError);

  // disjoint domains just merge
  VarEnv d = env_add(a, env1("y", Annotation::sens(S("5")), real));
  CHECK(d.size() == 2);
}

TEST_CASE("environment scaling") {
  Type real = T("real");
  VarEnv two = env_scale(S("2"), env1("x", Annotation::sens(S("3")), real));
  CHECK(two.find("x")->ann.sens_expr() == S("6"));

  VarEnv boxed = env_scale(S("r"), env1("x", Annotation::box(), real));
  CHECK(boxed.find("x")->ann.is_box());

  VarEnv inf = env_scale(Sens::infinity(), env1("x", Annotation::sens(S("0")), real));
  CHECK(eval_sens(inf.find("x")->ann.sens_expr(), {}, P) == ExtReal::infinity());
}

TEST_CASE("environment joins honour the missing-usage marker") {
  Type real = T("real");
  VarEnv m = env_join_max(env1("x", Annotation::sens(S("1")), real),
                          env1("x", Annotation::box(), real));
  CHECK(m.find("x")->ann.sens_expr() == S("1"));

  VarEnv mb = env_join_max(env1("x", Annotation::box(), real),
                           env1("x", Annotation::box(), real));
  CHECK(mb.find("x")->ann.is_box());

  VarEnv sup_box = env_join_sup("i", Kind::Size, env1("x", Annotation::box(), real));
  CHECK(sup_box.find("x")->ann.is_box());
  VarEnv sup_s = env_join_sup("i", Kind::Sens, env1("x", Annotation::sens(S("i")), real));
  CHECK(sup_s.find("x")->ann.sens_expr() == S("sup (i : sens) . i"));

  VarEnv cs = env_join_case(S("n"), env1("x", Annotation::sens(S("2")), real), "i",
                            env1("x", Annotation::sens(S("i")), real));
  CHECK(cs.find("x")->ann.sens_expr() == S("scase n { 0 => 2 | i + 1 => i }"));
  VarEnv cb = env_join_case(S("n"), env1("x", Annotation::box(), real), "i",
                            env1("x", Annotation::box(), real));
  CHECK(cb.find("x")->ann.is_box());
  // one box branch passes through elimination
  VarEnv ch = env_join_case(S("n"), env1("x", Annotation::box(), real), "i",
                            env1("x", Annotation::sens(S("i")), real));
  CHECK(ch.find("x")->ann.sens_expr() == S("scase n { 0 => 0 | i + 1 => i }"));

  CHECK_THROWS_AS(env_join_max(env1("x", Annotation::box(), real),
                               env1("y", Annotation::box(), real)),
                  EnvError);
}

TEST_CASE("box elimination and erasure") {
  CHECK(box_elim(Annotation::box()) == S("0"));
  CHECK(box_elim(Annotation::sens(S("5"))) == S("5"));
  CHECK(box_elim(Annotation::sens(S("max(2, r)"))) == S("max(2, r)"));

  Type real = T("real");
  VarEnv e;
  e.bind("x", Annotation::box(), real);
  e.bind("y", Annotation::sens(S("1")), real);
  VarEnv erased = box_erase(e);
  CHECK(erased.size() == 1);
  CHECK(erased.find("y"));

  CHECK(box_erase(VarEnv{}).empty());
  VarEnv zero = env1("x", Annotation::sens(S("0")), real);
  CHECK(box_erase(zero).size() == 1);  // zero is not the marker
}

TEST_CASE("erasure commutes with scaling and addition") {
  Gen gen(23);
  Type real = T("real");
  auto random_env = [&](int n) {
    VarEnv e;
    for (int k = 0; k < n; ++k) {
      std::string name = "v" + std::to_string(k);
      if (gen.pick(3) == 0)
        e.bind(name, Annotation::box(), real);
      else
        e.bind(name, Annotation::sens(gen.standard(2, {{"r", Kind::Sens}})), real);
    }
    return e;
  };
  auto same = [](const VarEnv& a, const VarEnv& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a.bindings()) {
      const Binding* y = b.find(x.name);
      if (!y || !(x.ann == y->ann)) return false;
    }
    return true;
  };
  for (int k = 0; k < 100; ++k) {
    VarEnv g = random_env(4), d = random_env(4);
    Sens r = gen.standard(2, {{"r", Kind::Sens}});
    CHECK(same(box_erase(env_scale(r, g)), env_scale(r, box_erase(g))));
    CHECK(same(box_erase(env_add(g, d)), env_add(box_erase(g), box_erase(d))));
  }
}
