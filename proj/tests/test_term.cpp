// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fcc/parser.hpp"
#include "fcc/printer.hpp"
#include "fcc/term.hpp"
#include "fcc/testkit.hpp"

using namespace fcc;

namespace {

// Independent free-variable oracle: explicit bound-set recursion, written
// against the binder layout only (no reuse of the production walk).
void naive_fv(const SrcTermPtr& m, std::set<Name> bound, std::vector<Name>& acc) {
  if (!m) return;
  if (m->kind == TermKind::Var) {
    if (!bound.count(m->var) && std::find(acc.begin(), acc.end(), m->var) == acc.end()) acc.push_back(m->var);
    return;
  }
  if (m->kind == TermKind::Let) {
    naive_fv(m->t1, bound, acc);
    bound.insert(m->b1);
    naive_fv(m->t2, bound, acc);
    return;
  }
  if (m->kind == TermKind::Fix) {
    bound.insert(m->b1);
    bound.insert(m->b2);
    naive_fv(m->t1, bound, acc);
    return;
  }
  naive_fv(m->t1, bound, acc);
  naive_fv(m->t2, bound, acc);
  naive_fv(m->t3, bound, acc);
}

std::vector<Name> naive_free_vars(const SrcTermPtr& m) {
  std::vector<Name> acc;
  naive_fv(m, {}, acc);
  return acc;
}

// Rename-then-replace substitution oracle: freshen every binder first, so
// plain textual replacement afterwards cannot capture or touch bound
// occurrences.
SrcTermPtr freshen(const SrcTermPtr& m, std::map<Name, Name> ren) {
  if (!m) return m;
  SrcTerm copy = *m;
  switch (m->kind) {
    case TermKind::Var: {
      auto it = ren.find(m->var);
      if (it != ren.end()) copy.var = it->second;
      return detail::mk<SrcType>(std::move(copy));
    }
    case TermKind::Let: {
      copy.t1 = freshen(m->t1, ren);
      Name nx = fresh(m->b1.text);
      ren[m->b1] = nx;
      copy.b1 = nx;
      copy.t2 = freshen(m->t2, ren);
      return detail::mk<SrcType>(std::move(copy));
    }
    case TermKind::Fix: {
      Name nf = fresh(m->b1.text), nx = fresh(m->b2.text);
      ren[m->b1] = nf;
      ren[m->b2] = nx;
      copy.b1 = nf;
      copy.b2 = nx;
      copy.t1 = freshen(m->t1, ren);
      return detail::mk<SrcType>(std::move(copy));
    }
    default:
      break;
  }
  if (m->t1) copy.t1 = freshen(m->t1, ren);
  if (m->t2) copy.t2 = freshen(m->t2, ren);
  if (m->t3) copy.t3 = freshen(m->t3, ren);
  return detail::mk<SrcType>(std::move(copy));
}

SrcTermPtr plain_replace(const SrcTermPtr& m, const SrcValueSubst& bs) {
  if (!m) return m;
  if (m->kind == TermKind::Var) {
    for (const auto& [x, v] : bs)
      if (x == m->var) return v;
    return m;
  }
  SrcTerm copy = *m;
  if (m->t1) copy.t1 = plain_replace(m->t1, bs);
  if (m->t2) copy.t2 = plain_replace(m->t2, bs);
  if (m->t3) copy.t3 = plain_replace(m->t3, bs);
  return detail::mk<SrcType>(std::move(copy));
}

SrcTermPtr oracle_subst(const SrcTermPtr& m, const SrcValueSubst& bs) {
  return plain_replace(freshen(m, {}), bs);
}

}  // namespace

TEST_CASE("free_vars: spec examples") {
  CHECK(free_vars(src::num(3ul)).empty());

  Name x = raw_name("x"), y = raw_name("y"), z = raw_name("z");
  auto both = free_vars(src::plus(src::var(x), src::var(y)));
  REQUIRE(both.size() == 2);
  CHECK(both[0] == x);
  CHECK(both[1] == y);

  // fix f x. f (x + z) — only z is free
  Name f = fresh("f"), xb = fresh("x");
  auto fx = src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, xb,
                     src::app(src::var(f), src::plus(src::var(xb), src::var(z))));
  auto fv = free_vars(fx);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0] == z);
}

TEST_CASE("free_vars: first-occurrence order is leftmost-outside-in") {
  auto m = parse_src("(plus (plus b a) (fst (pair a c)))");
  auto fv = free_vars(m);
  REQUIRE(fv.size() == 3);
  CHECK(fv[0].text == "b");
  CHECK(fv[1].text == "a");
  CHECK(fv[2].text == "c");
}

TEST_CASE("free_vars agrees with an independent oracle on generated terms") {
  TypedGenerator gen(GenCfg{.seed = 101, .max_size = 25, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 200; ++i) {
    SrcTermPtr m = gen.next().first;
    for (const OpenCase& oc : open_subterm_cases(m)) {
      CHECK(free_vars(oc.term) == naive_free_vars(oc.term));
    }
  }
}

TEST_CASE("subst: spec examples") {
  Name x = raw_name("x"), y = raw_name("y");
  CHECK(alpha_eq(subst(src::var(x), {{x, src::num(2ul)}}), src::num(2ul)));
  CHECK(alpha_eq(subst(src::num(5ul), {{x, src::num(9ul)}}), src::num(5ul)));

  // substitution reaches under binders
  Name f = fresh("f"), xb = fresh("x");
  auto fx = src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, xb, src::var(y));
  auto expected = src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, xb, src::num(1ul));
  CHECK(alpha_eq(subst(fx, {{y, src::num(1ul)}}), expected));
}

TEST_CASE("subst respects shadowing") {
  Name x = raw_name("x");
  // let x = x in x: the bound term sees the outer x, the body does not
  auto m = src::let(src::var(x), x, src::var(x));
  auto r = subst(m, {{x, src::num(7ul)}});
  CHECK(alpha_eq(r, src::let(src::num(7ul), x, src::var(x))));
}

TEST_CASE("subst agrees with a rename-then-replace oracle on generated terms") {
  TypedGenerator gen(GenCfg{.seed = 202, .max_size = 20, .type_target = {}, .fuel = 500});
  Rng rng(77);
  int exercised = 0;
  for (int i = 0; i < 200; ++i) {
    SrcTermPtr root = gen.next().first;
    for (const OpenCase& oc : open_subterm_cases(root)) {
      if (oc.gamma.empty()) continue;
      SrcValueSubst bs;
      for (const auto& [n, t] : oc.gamma.entries())
        if (rng.chance(2, 3)) bs.emplace_back(n, gen_value(rng, t));
      if (bs.empty()) continue;
      ++exercised;
      CHECK(alpha_eq(subst(oc.term, bs), oracle_subst(oc.term, bs)));
      if (exercised >= 300) return;
    }
  }
  CHECK(exercised > 50);
}

TEST_CASE("subst properties: empty substitution, closed terms, distribution") {
  TypedGenerator gen(GenCfg{.seed = 303, .max_size = 25, .type_target = {}, .fuel = 500});
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto [m, t] = gen.next();
    CHECK(alpha_eq(subst(m, {}), m));
    SrcValueSubst gamma{{raw_name("q"), gen_value(rng, styp::nat())}};
    CHECK(alpha_eq(subst(m, gamma), m));  // closed terms are unaffected
  }

  Name x = raw_name("x");
  SrcValueSubst bs{{x, src::num(4ul)}};
  auto a = src::plus(src::var(x), src::num(1ul));
  auto b = src::pair(src::var(x), src::var(x));
  CHECK(alpha_eq(subst(src::pair(a, b), bs), src::pair(subst(a, bs), subst(b, bs))));
  CHECK(alpha_eq(subst(src::app(a, b), bs), src::app(subst(a, bs), subst(b, bs))));
  CHECK(alpha_eq(subst(src::fst(b), bs), src::fst(subst(b, bs))));
}

TEST_CASE("free_vars of subst removes exactly the substituted variable") {
  TypedGenerator gen(GenCfg{.seed = 404, .max_size = 20, .type_target = {}, .fuel = 500});
  Rng rng(9);
  int exercised = 0;
  for (int i = 0; i < 150 && exercised < 200; ++i) {
    SrcTermPtr root = gen.next().first;
    for (const OpenCase& oc : open_subterm_cases(root)) {
      auto fv = free_vars(oc.term);
      if (fv.empty()) continue;
      Name x = fv[rng.below(fv.size())];
      const SrcTy* xt = oc.gamma.lookup(x);
      REQUIRE(xt != nullptr);
      auto after = free_vars(subst(oc.term, {{x, gen_value(rng, *xt)}}));
      std::vector<Name> expected;
      for (const Name& n : fv)
        if (!(n == x)) expected.push_back(n);
      CHECK(after == expected);
      ++exercised;
    }
  }
  CHECK(exercised > 0);
}

TEST_CASE("alpha_eq: spec examples") {
  Name x = fresh("x"), y = fresh("y");
  auto l1 = src::let(src::num(1ul), x, src::var(x));
  auto l2 = src::let(src::num(1ul), y, src::var(y));
  CHECK(alpha_eq(l1, l2));
  CHECK(!alpha_eq(src::var(raw_name("x")), src::var(raw_name("y"))));

  auto m1 = parse_src("(fix (f : (-> nat nat)) (x : nat) (plus x 1))");
  auto m2 = parse_src("(fix (g : (-> nat nat)) (y : nat) (plus y 1))");
  CHECK(alpha_eq(m1, m2));
  auto m3 = parse_src("(fix (g : (-> nat nat)) (y : nat) (plus y 2))");
  CHECK(!alpha_eq(m1, m3));
}

TEST_CASE("alpha_eq is an equivalence relation and ignores binder stamps") {
  TypedGenerator gen(GenCfg{.seed = 505, .max_size = 20, .type_target = {}, .fuel = 500});
  for (int i = 0; i < 100; ++i) {
    SrcTermPtr m = gen.next().first;
    SrcTermPtr n = parse_src(print_src(m));  // alpha-variant with fresh stamps
    CHECK(alpha_eq(m, m));
    CHECK(alpha_eq(m, n));
    CHECK(alpha_eq(n, m));
    SrcTermPtr o = parse_src(print_src(n));
    CHECK(alpha_eq(m, o));  // transitivity instance
  }
}

TEST_CASE("is_value: spec examples") {
  CHECK(is_value(src::num(3ul)));
  CHECK(!is_value(src::pair(src::num(1ul), src::app(src::var(raw_name("f")), src::num(1ul)))));
  Name p = fresh("p");
  CHECK(is_value(tgt::clos(tgt::abs(ttyp::nat(), p, tgt::var(p)), tgt::pair(tgt::num(1ul), tgt::unit()))));
  CHECK(!is_value(tgt::clos(tgt::abs(ttyp::nat(), p, tgt::var(p)), tgt::pred(tgt::num(1ul)))));
  Name f = fresh("f"), x = fresh("x");
  CHECK(is_value(src::fix(styp::arr(styp::nat(), styp::nat()), styp::nat(), f, x, src::var(x))));
  CHECK(is_value(src::unit()));
}
