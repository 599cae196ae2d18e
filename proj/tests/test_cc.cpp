// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "fcc/closure_convert.hpp"
#include "fcc/eval.hpp"
#include "fcc/parser.hpp"
#include "fcc/printer.hpp"
#include "fcc/testkit.hpp"

using namespace fcc;

namespace {

const char* kPaper31 =
    "(let ((x 2)) (let ((y 3)) (fix (f : (-> nat nat)) (z : nat) (plus z (plus x y)))))";

// The expected conversion: the closure pairs the projection-rewritten
// code with the environment (x, y).
const char* kPaper31Converted =
    "(let ((x 2)) (let ((y 3))"
    " (clos (abs (p : (* (-> nat nat) (* nat (* nat (* nat unit)))))"
    "   (let ((g (fst p))) (let ((z (fst (snd p)))) (let ((e (snd (snd p))))"
    "     (plus z (plus (fst e) (fst (snd e))))))))"
    "  (pair x (pair y ())))))";

std::vector<Name> dedup_intersect(const std::vector<Name>& fv, const std::vector<Name>& scope) {
  std::vector<Name> out;
  for (const Name& x : fv)
    if (std::find(scope.begin(), scope.end(), x) != scope.end() &&
        std::find(out.begin(), out.end(), x) == out.end())
      out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("fvars: spec examples") {
  Name x = raw_name("x"), y = raw_name("y"), z = raw_name("z"), w = raw_name("w");
  auto m = src::plus(src::var(x), src::var(y));
  CHECK(fvars(m, {x, y, z}) == std::vector<Name>{x, y});

  Name f = fresh("f"), xb = fresh("x");
  auto closed_fix = src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, xb,
                             src::app(src::var(f), src::var(xb)));
  CHECK(fvars(closed_fix, {w}).empty());

  // scope filters: y not in scope is dropped
  CHECK(fvars(m, {y}) == std::vector<Name>{y});
}

TEST_CASE("fvars equals dedup(free_vars intersect scope) on generated pairs") {
  TypedGenerator gen(GenCfg{.seed = 1212, .max_size = 22, .type_target = {}, .fuel = 500});
  Rng rng(31);
  int done = 0;
  for (int i = 0; i < 250 && done < 1000; ++i) {
    SrcTermPtr root = gen.next().first;
    for (const OpenCase& oc : open_subterm_cases(root)) {
      std::vector<Name> scope;
      for (const auto& [n, t] : oc.gamma.entries())
        if (rng.chance(3, 4)) scope.push_back(n);
      scope.push_back(fresh("noise"));
      CHECK(fvars(oc.term, scope) == dedup_intersect(free_vars(oc.term), scope));
      ++done;
    }
  }
  CHECK(done > 500);
}

TEST_CASE("mapenv: spec examples") {
  VarMap rho;
  CHECK(print_tgt(mapenv({}, rho)) == "()");

  Name x = raw_name("x"), y = raw_name("y");
  rho.bind(x, tgt::var(raw_name("a")));
  CHECK(print_tgt(mapenv({x}, rho)) == "(pair a ())");

  rho.bind(y, tgt::var(raw_name("b")));
  CHECK(print_tgt(mapenv({x, y}, rho)) == "(pair a (pair b ()))");

  CHECK_THROWS_AS(mapenv({raw_name("zz")}, rho), UnmappedVariable);
}

TEST_CASE("mapvar: spec examples") {
  Name e = raw_name("e");
  CHECK(mapvar({}, e).size() == 0);

  Name x = raw_name("x"), y = raw_name("y");
  VarMap one = mapvar({x}, e);
  REQUIRE(one.lookup(x) != nullptr);
  CHECK(print_tgt(*one.lookup(x)) == "(fst e)");

  VarMap two = mapvar({x, y}, e);
  CHECK(print_tgt(*two.lookup(x)) == "(fst e)");
  CHECK(print_tgt(*two.lookup(y)) == "(fst (snd e))");
}

TEST_CASE("VarMap rejects duplicate bindings") {
  VarMap rho;
  Name x = raw_name("x");
  rho.bind(x, tgt::num(1ul));
  CHECK_THROWS_AS(rho.bind(x, tgt::num(2ul)), TransformError);
}

TEST_CASE("cc: numerals and structural cases are homomorphic") {
  CHECK(print_tgt(cc(VarMap{}, {}, SrcCtx{}, src::num(9ul))) == "9");
  CHECK(print_tgt(cc_program(parse_src("(plus 1 (snd (pair () 2)))"))) ==
        "(plus 1 (snd (pair () 2)))");
}

TEST_CASE("cc: variables map through rho") {
  Name x = raw_name("x");
  VarMap rho;
  rho.bind(x, tgt::fst(tgt::var(raw_name("e"))));
  SrcCtx gamma;
  gamma.push(x, styp::nat());
  CHECK(print_tgt(cc(rho, {x}, gamma, src::var(x))) == "(fst e)");

  VarMap empty;
  CHECK_THROWS_AS(cc(empty, {x}, gamma, src::var(x)), UnmappedVariable);
  CHECK_THROWS_AS(cc(empty, {}, SrcCtx{}, src::var(x)), ScopeViolation);
}

TEST_CASE("cc: golden conversion of the running example") {
  TgtTermPtr got = cc_program(parse_src(kPaper31));
  TgtTermPtr expected = parse_tgt(kPaper31Converted);
  CHECK(alpha_eq(got, expected));
}

TEST_CASE("cc: source and converted program agree when applied to 1") {
  SrcTermPtr p = parse_src(kPaper31);
  auto rs = eval(src::app(p, src::num(1ul)), 100);
  REQUIRE(rs.is_value());
  CHECK(rs.term->value == 6);

  TgtTermPtr cp = cc_program(p);
  auto rt = eval(cc_apply(cp, tgt::num(1ul)), 1000);
  REQUIRE(rt.is_value());
  CHECK(rt.term->value == 6);
}

TEST_CASE("cc: type preservation on generated programs") {
  TypedGenerator gen(GenCfg{.seed = 1313, .max_size = 25, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    auto [m, t] = gen.next();
    TgtTermPtr c = cc_program(m);
    CHECK(type_equal(type_of_tgt(TgtCtx{}, c), translate_type(t)));
  }
}

TEST_CASE("cc: every closure's code part is closed") {
  TypedGenerator gen(GenCfg{.seed = 1414, .max_size = 25, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    CHECK(closure_parts_closed(cc_program(gen.next().first)));
  }
}

TEST_CASE("cc: output is alpha-invariant under renaming of input binders") {
  TypedGenerator gen(GenCfg{.seed = 1515, .max_size = 22, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 150; ++i) {
    SrcTermPtr m = gen.next().first;
    SrcTermPtr renamed = parse_src(print_src(m));  // fresh stamps everywhere
    CHECK(alpha_eq(cc_program(m), cc_program(renamed)));
  }
}

TEST_CASE("cc: converted programs evaluate to the same numerals") {
  TypedGenerator gen(GenCfg{.seed = 1616, .max_size = 25, .type_target = styp::nat(), .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    SrcTermPtr m = gen.next().first;
    auto rs = eval(m, 500);
    if (!rs.is_value()) continue;
    auto rt = eval(cc_program(m), 20000);
    REQUIRE(rt.is_value());
    CHECK(rt.term->value == rs.term->value);
  }
}

TEST_CASE("cc_apply wraps application in the let/open shape") {
  std::string text = print_tgt(cc_apply(tgt::var(raw_name("c")), tgt::num(1ul)));
  CHECK(text == "(let ((g c)) (open g (xf xe) (app xf (pair g (pair 1 xe)))))");
}
