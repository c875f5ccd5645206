#include <doctest.h>

#include "senscheck/ast.hpp"
#include "senscheck/syntax.hpp"
#include "support/gen.hpp"
#include "support/util.hpp"

using namespace senscheck;
using namespace senscheck::test;

TEST_CASE("kind inference classifies size and sensitivity terms") {
  IdxEnv env = {{"i", Kind::Size}, {"r", Kind::Sens}};
  CHECK(kind_check(env, S("i + 1")) == Kind::Size);
  CHECK(kind_check(env, S("r * i")) == Kind::Sens);
  CHECK(kind_check(env, S("i * i")) == Kind::Size);
  CHECK(kind_check(env, S("2")) == Kind::Size);
  CHECK(kind_check(env, S("1/2")) == Kind::Sens);
  CHECK(kind_check(env, S("inf")) == Kind::Sens);
  CHECK(kind_check(env, S("max(1, r)")) == Kind::Sens);
  CHECK_THROWS_AS(kind_check({}, S("i")), KindError);
  // case scrutinees must be sizes
  CHECK_THROWS_AS(kind_check(env, S("scase r { 0 => 1 | j + 1 => j }")), KindError);
  CHECK(kind_check(env, S("scase i { 0 => 1 | j + 1 => j }")) == Kind::Sens);
}

TEST_CASE("kind_check is stable under binder renaming") {
  IdxEnv env = {{"j", Kind::Size}};
  CHECK(kind_check(env, S("sup (a : sens) . a + j")) ==
        kind_check(env, S("sup (b : sens) . b + j")));
}

TEST_CASE("substitution replaces free occurrences only") {
  Sens t = subst(S("i * i"), "i", S("3"));
  CHECK(t == S("3 * 3"));

  // bound occurrences untouched
  Sens c = subst(S("scase s { 0 => j | k + 1 => k }"), "j", S("5"));
  CHECK(c == S("scase s { 0 => 5 | k + 1 => k }"));

  // identity off the support
  Sens u = S("max(2, r)");
  CHECK(subst(u, "zzz", S("9")) == u);
}

TEST_CASE("substitution avoids capture") {
  // (sup i. i + j)[j := i] must rename the binder
  Sens t = subst(S("sup (i : size) . i + j"), "j", S("i"));
  CHECK(t.tag() == Sens::Tag::Sup);
  CHECK(t.node().name != "i");
  CHECK(alpha_eq(t, S("sup (k : size) . k + i")));
  CHECK_FALSE(alpha_eq(t, S("sup (k : size) . k + k")));
}

TEST_CASE("free variable computation") {
  CHECK(free_vars(S("max(2, r)")) == std::set<std::string>{"r"});
  CHECK(free_vars(S("sup (i : size) . i * j")) == std::set<std::string>{"j"});
  CHECK(free_vars(S("7")).empty());
  CHECK(free_vars(S("scase s { 0 => a | k + 1 => k + b }")) ==
        std::set<std::string>{"s", "a", "b"});
}

TEST_CASE("substitution properties on random terms") {
  Gen gen(42);
  IdxEnv vars = {{"i", Kind::Size}, {"j", Kind::Size}, {"r", Kind::Sens}};
  for (int k = 0; k < 300; ++k) {
    Sens t = gen.extended(3, vars);
    Sens repl = gen.extended(2, {{"j", Kind::Size}});
    auto fv = free_vars(t);
    if (!fv.count("i")) {
      CHECK(subst(t, "i", repl) == t);
      continue;
    }
    auto after = free_vars(subst(t, "i", repl));
    std::set<std::string> expect = fv;
    expect.erase("i");
    for (const auto& v : free_vars(repl)) expect.insert(v);
    CHECK(after == expect);
  }
}

TEST_CASE("type substitution renames quantifiers to avoid capture") {
  Type t = T("forall i : size . ![i + j] real -o real");
  Type r = type_subst(t, "j", S("i"));
  CHECK(r.tag() == Type::Tag::Forall);
  CHECK(r.node().name != "i");
  CHECK(type_alpha_eq(r, T("forall k : size . ![k + i] real -o real")));
}

TEST_CASE("type kinding rejects sensitivity-kinded nat indices") {
  CHECK_THROWS_AS(check_type_kinds({}, T("nat[1/2]")), KindError);
  CHECK_THROWS_AS(check_type_kinds({{"r", Kind::Sens}}, T("nat[r]")), KindError);
  CHECK_NOTHROW(check_type_kinds({{"i", Kind::Size}}, T("nat[i + 1]")));
  CHECK_NOTHROW(check_type_kinds({}, T("forall r : sens . ![r] real -o real")));
}

TEST_CASE("term renaming respects shadowing") {
  Term lam = Term::lam("x", S("1"), T("real"), Term::var("x"));
  Term app = Term::app(lam, Term::var("y"));
  Term renamed = term_rename_var(app, "y", "z");
  CHECK(renamed.node().b.node().name == "z");
  CHECK(renamed.node().a.node().a.node().name == "x");

  Term self = term_rename_var(lam, "x", "w");
  CHECK(self.node().a.node().name == "x");
}
