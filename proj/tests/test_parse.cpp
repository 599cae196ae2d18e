// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fcc/closure_convert.hpp"
#include "fcc/parser.hpp"
#include "fcc/printer.hpp"
#include "fcc/testkit.hpp"

using namespace fcc;

TEST_CASE("parse_src: basic forms") {
  auto m = parse_src("(plus 1 2)");
  CHECK(m->kind == TermKind::Plus);
  CHECK(m->t1->kind == TermKind::Num);
  CHECK(m->t1->value == 1);
  CHECK(m->t2->value == 2);

  auto fstunit = parse_src("(fst ())");  // parses even though ill-typed
  CHECK(fstunit->kind == TermKind::Fst);
  CHECK(fstunit->t1->kind == TermKind::Unit);

  CHECK(parse_src("unit")->kind == TermKind::Unit);
  CHECK(parse_src("7")->value == 7);
}

TEST_CASE("parse_src: the running example") {
  auto m = parse_src(
      "(let ((x 2)) (let ((y 3)) (fix (f : (-> nat nat)) (z : nat) (plus z (plus x y)))))");
  REQUIRE(m->kind == TermKind::Let);
  CHECK(m->t1->value == 2);
  const auto& inner = m->t2;
  REQUIRE(inner->kind == TermKind::Let);
  const auto& fx = inner->t2;
  REQUIRE(fx->kind == TermKind::Fix);
  CHECK(fx->ann1->kind == SrcTypeKind::Arr);
  CHECK(fx->ann2->kind == SrcTypeKind::Nat);
  // the fix is closed except for x and y
  CHECK(free_vars(fx).size() == 2);
  CHECK(is_closed(m));
}

TEST_CASE("parse: implicit and explicit application") {
  auto a = parse_src("(app f x)");
  auto b = parse_src("(f x)");
  CHECK(a->kind == TermKind::App);
  CHECK(b->kind == TermKind::App);
  CHECK(alpha_eq(a, b));
}

TEST_CASE("parse: binder scoping and shadowing") {
  auto m = parse_src("(let ((x 1)) (let ((x 2)) x))");
  // the body variable refers to the inner binder
  CHECK(m->t2->t2->var == m->t2->b1);
  CHECK(!(m->t2->t2->var == m->b1));

  // free occurrences of the same text share a name
  auto n = parse_src("(plus x x)");
  CHECK(n->t1->var == n->t2->var);
}

TEST_CASE("parse errors carry position and class") {
  CHECK_THROWS_AS(parse_src("(plus 1"), SyntaxError);
  CHECK_THROWS_AS(parse_src("(fix (f) (x : nat) x)"), SyntaxError);
  CHECK_THROWS_AS(parse_src("(abs (x : nat) x)"), SyntaxError);  // target-only form
  CHECK_THROWS_AS(parse_src("(let ((let 1)) 2)"), SyntaxError);  // keyword binder
  CHECK_THROWS_AS(parse_src("(cps 1)"), SyntaxError);            // reserved
  CHECK_THROWS_AS(parse_src(")"), SyntaxError);
  CHECK_THROWS_AS(parse_src("(plus 1 2) 3"), SyntaxError);       // trailing input
  CHECK_THROWS_AS(parse_tgt("(fix (f : (-> nat nat)) (x : nat) x)"), SyntaxError);
  try {
    parse_src("(plus 1\n  (withbad");
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
}

TEST_CASE("parse_tgt: closure forms and rigid types") {
  auto m = parse_tgt("(clos (abs (p : (=> nat nat)) p) ())");
  REQUIRE(m->kind == TermKind::Clos);
  CHECK(m->t1->kind == TermKind::Abs);
  CHECK(m->t1->ann1->kind == TgtTypeKind::Code);
  CHECK(m->t2->kind == TermKind::Unit);

  auto o = parse_tgt("(open c (f e) (app f (pair c (pair 1 e))))");
  REQUIRE(o->kind == TermKind::Open);
  CHECK(o->t2->kind == TermKind::App);

  auto ty = parse_tgt_type("(rigid 9)");
  CHECK(ty->kind == TgtTypeKind::Rigid);
  CHECK(ty->rigid_id == 9);
  // the stamp counter moves past parsed rigid ids
  CHECK(fresh_stamp() > 9);
}

TEST_CASE("print: spec examples") {
  CHECK(print_src(src::num(7ul)) == "7");
  Name p = fresh("p");
  TgtTy t = ttyp::nat();
  CHECK(print_tgt(tgt::clos(tgt::abs(t, p, tgt::var(p)), tgt::unit())) == "(clos (abs (p : nat) p) ())");
  CHECK(print_type(styp::arr(styp::nat(), styp::nat())) == "(-> nat nat)");
  CHECK(print_type(ttyp::code(ttyp::unit(), ttyp::prod(ttyp::nat(), ttyp::nat()))) ==
        "(=> unit (* nat nat))");
}

TEST_CASE("print disambiguates shadowed binders") {
  Name x1 = fresh("x"), x2 = fresh("x");
  auto m = src::let(src::num(1ul), x1, src::let(src::num(2ul), x2, src::var(x1)));
  std::string text = print_src(m);
  auto back = parse_src(text);
  CHECK(alpha_eq(m, back));
  // the inner binder must have been renamed so the outer stays visible
  CHECK(text.find("x_2") != std::string::npos);
}

TEST_CASE("print avoids keyword collisions from hand-built names") {
  Name k = fresh("pred");
  auto m = src::let(src::num(1ul), k, src::var(k));
  auto back = parse_src(print_src(m));
  CHECK(alpha_eq(m, back));
}

TEST_CASE("round trip: parse . print is alpha-identity on 1000 generated terms") {
  TypedGenerator gen(GenCfg{.seed = 606, .max_size = 30, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 1000; ++i) {
    SrcTermPtr m = gen.next().first;
    std::string text = print_src(m);
    CHECK(alpha_eq(parse_src(text), m));
    // stable under reprinting
    CHECK(print_src(parse_src(text)) == text);
  }
}

TEST_CASE("round trip: target terms via closure conversion") {
  TypedGenerator gen(GenCfg{.seed = 707, .max_size = 25, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 300; ++i) {
    TgtTermPtr t = cc_program(gen.next().first);
    std::string text = print_tgt(t);
    CHECK(alpha_eq(parse_tgt(text), t));
    CHECK(print_tgt(parse_tgt(text)) == text);
  }
}

TEST_CASE("print is injective up to alpha-equivalence on samples") {
  TypedGenerator gen(GenCfg{.seed = 808, .max_size = 15, .type_target = styp::nat(), .fuel = 500});
  std::vector<SrcTermPtr> terms;
  std::vector<std::string> texts;
  for (int i = 0; i < 60; ++i) {
    terms.push_back(gen.next().first);
    texts.push_back(print_src(terms.back()));
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (texts[i] == texts[j]) CHECK(alpha_eq(terms[i], terms[j]));
}

TEST_CASE("CRLF input is accepted") {
  auto m = parse_src("(plus 1\r\n 2)");
  CHECK(m->kind == TermKind::Plus);
}

TEST_CASE("comments are ignored") {
  auto m = parse_src("; heading\n(plus 1 2) ; trailing\n");
  CHECK(m->kind == TermKind::Plus);
}
