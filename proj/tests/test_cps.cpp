// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fcc/cps.hpp"
#include "fcc/eval.hpp"
#include "fcc/parser.hpp"
#include "fcc/printer.hpp"
#include "fcc/testkit.hpp"

using namespace fcc;

TEST_CASE("cps: values flow straight into the static continuation") {
  auto under_id = cps(SrcCtx{}, src::num(3ul), [](const SrcTermPtr& v) { return v; });
  CHECK(alpha_eq(under_id, src::num(3ul)));

  auto doubled = cps(SrcCtx{}, src::num(3ul), [](const SrcTermPtr& v) { return src::plus(v, v); });
  CHECK(alpha_eq(doubled, src::plus(src::num(3ul), src::num(3ul))));
}

TEST_CASE("cps_program: trivial programs come back unchanged") {
  CHECK(alpha_eq(cps_program(src::num(0ul)), src::num(0ul)));
  auto sum = parse_src("(plus 1 2)");
  auto out = cps_program(sum);
  CHECK(administrative_redexes(out) == 0);
  CHECK(alpha_eq(out, sum));  // primitive chains stay direct
}

TEST_CASE("cps_program: requires a closed nat program") {
  CHECK_THROWS_AS(cps_program(parse_src("(pair 1 2)")), TypeMismatch);
  CHECK_THROWS_AS(cps_program(parse_src("(plus x 1)")), UnboundVariable);
}

TEST_CASE("cps_program: branches evaluate correctly") {
  auto m = parse_src("(ifz 0 1 2)");
  auto r = eval(cps_program(m), 100);
  REQUIRE(r.is_value());
  CHECK(r.term->value == 1);
}

TEST_CASE("cps: applications get a dynamic continuation through a pair") {
  auto m = parse_src("((fix (f : (-> nat nat)) (x : nat) (plus x 1)) 4)");
  auto out = cps_program(m);
  // shape: converted fix applied to (pair 4 <reified continuation>)
  REQUIRE(out->kind == TermKind::App);
  CHECK(out->t1->kind == TermKind::Fix);
  REQUIRE(out->t2->kind == TermKind::Pair);
  CHECK(out->t2->t1->value == 4);
  CHECK(out->t2->t2->kind == TermKind::Fix);
  CHECK(out->t2->t2->b1.text.starts_with("%"));

  auto r = eval(out, 200);
  REQUIRE(r.is_value());
  CHECK(r.term->value == 5);
}

TEST_CASE("cps: recursion goes through the pair convention") {
  // sum n = n + sum (n-1), computed with an accumulator-free fix
  auto m = parse_src(
      "((fix (f : (-> nat nat)) (x : nat) (ifz x 0 (plus x (f (pred x))))) 5)");
  auto rs = eval(m, 500);
  REQUIRE(rs.is_value());
  CHECK(rs.term->value == 15);
  auto out = cps_program(m);
  auto rt = eval(out, 2000);
  REQUIRE(rt.is_value());
  CHECK(rt.term->value == 15);
}

TEST_CASE("cps: tail calls reuse the dynamic continuation (no eta chains)") {
  // countdown is tail recursive; its body must pass c along unchanged
  auto m = parse_src("(fix (f : (-> nat nat)) (x : nat) (ifz x 7 (f (pred x))))");
  auto out = cps(SrcCtx{}, m, [](const SrcTermPtr& v) { return v; });
  // inside the converted fix body, the recursive call's continuation is
  // the variable c itself, not a reified wrapper
  const SrcTermPtr& body = out->t1;          // let x = p.1 in ...
  const SrcTermPtr& body2 = body->t2;        // let c = p.2 in ...
  const SrcTermPtr& ifz = body2->t2;
  REQUIRE(ifz->kind == TermKind::Ifz);
  const SrcTermPtr& call = ifz->t3;          // f (pair (pred x) c)
  REQUIRE(call->kind == TermKind::App);
  REQUIRE(call->t2->kind == TermKind::Pair);
  CHECK(call->t2->t2->kind == TermKind::Var);

  auto ok = eval(cps_program(parse_src(
                     "((fix (f : (-> nat nat)) (x : nat) (ifz x 7 (f (pred x)))) 40)")),
                 5000);
  REQUIRE(ok.is_value());
  CHECK(ok.term->value == 7);
}

TEST_CASE("cps: divergence is preserved") {
  auto omega = parse_src("((fix (f : (-> unit nat)) (x : unit) (f x)) ())");
  CHECK(eval(omega, 300).kind == SrcEvalResult::Kind::Timeout);
  auto out = cps_program(omega);
  CHECK(eval(out, 300).kind == SrcEvalResult::Kind::Timeout);
}

TEST_CASE("cps: output of closed programs is closed") {
  TypedGenerator gen(GenCfg{.seed = 1919, .max_size = 25, .type_target = styp::nat(), .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    SrcTermPtr out = cps_program(gen.next().first);
    CHECK(is_closed(out));
  }
}

TEST_CASE("cps: zero administrative redexes across generated programs") {
  TypedGenerator gen(GenCfg{.seed = 2020, .max_size = 30, .type_target = styp::nat(), .fuel = 500});
  for (int i = 0; i < 500; ++i) {
    CHECK(administrative_redexes(cps_program(gen.next().first)) == 0);
  }
}

TEST_CASE("cps: value agreement with the direct evaluator") {
  TypedGenerator gen(GenCfg{.seed = 2121, .max_size = 25, .type_target = styp::nat(), .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    SrcTermPtr m = gen.next().first;
    auto rs = eval(m, 500);
    if (!rs.is_value()) continue;
    auto rt = eval(cps_program(m), 20000);
    REQUIRE(rt.is_value());
    CHECK(rt.term->value == rs.term->value);
  }
}

TEST_CASE("administrative_redexes: the scan sees planted redexes") {
  // hand-build a marked administrative redex: (%k-fix) value
  Name kf = fresh("%k"), a = fresh("%a");
  auto admin = src::app(
      src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), kf, a, src::var(a)), src::num(3ul));
  CHECK(administrative_redexes(admin) == 1);
  // an unmarked fix in operator position is a source redex, not counted
  Name f = fresh("f"), x = fresh("x");
  auto user = src::app(
      src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, x, src::var(x)), src::num(3ul));
  CHECK(administrative_redexes(user) == 0);
}

TEST_CASE("cps_type: call-by-value translation shapes") {
  CHECK(print_type(cps_type(styp::nat())) == "nat");
  CHECK(print_type(cps_type(parse_src_type("(-> nat nat)"))) ==
        "(-> (* nat (-> nat nat)) nat)");
  CHECK(print_type(cps_type(parse_src_type("(-> nat (-> unit nat))"))) ==
        "(-> (* nat (-> (-> (* unit (-> nat nat)) nat) nat)) nat)");
}
