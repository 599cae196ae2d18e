// SPDX-License-Identifier: Apache-2.0
#include "fcc/cps.hpp"

#include "fcc/printer.hpp"

namespace fcc {

namespace {

bool marked(const Name& n) { return !n.text.empty() && n.text[0] == '%'; }

SrcTy answer_type() { return styp::nat(); }

struct Cps {
  SrcTermPtr go(const SrcCtx& gamma, const SrcTermPtr& m, const MetaCont& k) {
    switch (m->kind) {
      case TermKind::Num:
      case TermKind::Var:
      case TermKind::Unit:
        return k(m);
      case TermKind::Pred:
        return go(gamma, m->t1, [&](const SrcTermPtr& v) { return k(src::pred(v)); });
      case TermKind::Fst:
        return go(gamma, m->t1, [&](const SrcTermPtr& v) { return k(src::fst(v)); });
      case TermKind::Snd:
        return go(gamma, m->t1, [&](const SrcTermPtr& v) { return k(src::snd(v)); });
      case TermKind::Plus:
        return go(gamma, m->t1, [&](const SrcTermPtr& a) {
          return go(gamma, m->t2, [&](const SrcTermPtr& b) { return k(src::plus(a, b)); });
        });
      case TermKind::Pair:
        return go(gamma, m->t1, [&](const SrcTermPtr& a) {
          return go(gamma, m->t2, [&](const SrcTermPtr& b) { return k(src::pair(a, b)); });
        });
      case TermKind::Ifz:
        // the continuation is duplicated into both branches
        return go(gamma, m->t1, [&](const SrcTermPtr& c) {
          return src::ifz(c, go(gamma, m->t2, k), go(gamma, m->t3, k));
        });
      case TermKind::Let: {
        SrcTy t1 = type_of_src(gamma, m->t1);
        return go(gamma, m->t1, [&](const SrcTermPtr& v) {
          return src::let(v, m->b1, go(gamma.extended(m->b1, t1), m->t2, k));
        });
      }
      case TermKind::Fix:
        return k(convert_fix(gamma, m));
      case TermKind::App: {
        SrcTy fT = type_of_src(gamma, m->t1);
        if (fT->kind != SrcTypeKind::Arr) throw TypeMismatch("(-> _ _)", print_type(fT), print_src(m));
        return apply(gamma, m, reify(fT->b, k));
      }
      default:
        throw TypeError("not a source-language term");
    }
  }

  // Tail version: the continuation is already a term (a variable or a
  // reified continuation), so no eta-expansion is produced.
  SrcTermPtr go_tail(const SrcCtx& gamma, const SrcTermPtr& m, const SrcTermPtr& kterm) {
    switch (m->kind) {
      case TermKind::App:
        return apply(gamma, m, kterm);
      case TermKind::Ifz:
        return go(gamma, m->t1, [&](const SrcTermPtr& c) {
          return src::ifz(c, go_tail(gamma, m->t2, kterm), go_tail(gamma, m->t3, kterm));
        });
      case TermKind::Let: {
        SrcTy t1 = type_of_src(gamma, m->t1);
        return go(gamma, m->t1, [&](const SrcTermPtr& v) {
          return src::let(v, m->b1, go_tail(gamma.extended(m->b1, t1), m->t2, kterm));
        });
      }
      default:
        return go(gamma, m, [&](const SrcTermPtr& v) { return src::app(kterm, v); });
    }
  }

  SrcTermPtr apply(const SrcCtx& gamma, const SrcTermPtr& m, const SrcTermPtr& kterm) {
    return go(gamma, m->t1, [&](const SrcTermPtr& f) {
      return go(gamma, m->t2, [&](const SrcTermPtr& a) { return src::app(f, src::pair(a, kterm)); });
    });
  }

  SrcTermPtr reify(const SrcTy& result, const MetaCont& k) {
    Name kf = fresh("%k");
    Name a = fresh("%a");
    SrcTy rT = cps_type(result);
    return src::fix(styp::arr(rT, answer_type()), rT, kf, a, k(src::var(a)));
  }

  // fix f x M becomes fix f p. let x = p.1 in let c = p.2 in [M] c
  SrcTermPtr convert_fix(const SrcCtx& gamma, const SrcTermPtr& m) {
    const SrcTy& fT = m->ann1;
    if (fT->kind != SrcTypeKind::Arr || !type_equal(fT->a, m->ann2))
      throw TypeMismatch("(-> _ _) matching the parameter annotation", print_type(fT), print_src(m));
    SrcTy pT = styp::prod(cps_type(m->ann2), styp::arr(cps_type(fT->b), answer_type()));
    Name p = fresh("%p");
    Name c = fresh("%c");
    SrcCtx inner = gamma.extended(m->b1, fT).extended(m->b2, m->ann2);
    SrcTermPtr body = go_tail(inner, m->t1, src::var(c));
    return src::fix(styp::arr(pT, answer_type()), pT, m->b1, p,
                    src::let(src::fst(src::var(p)), m->b2, src::let(src::snd(src::var(p)), c, std::move(body))));
  }
};

}  // namespace

SrcTy cps_type(const SrcTy& t) {
  switch (t->kind) {
    case SrcTypeKind::Nat:
    case SrcTypeKind::Unit:
      return t;
    case SrcTypeKind::Prod:
      return styp::prod(cps_type(t->a), cps_type(t->b));
    case SrcTypeKind::Arr:
      return styp::arr(styp::prod(cps_type(t->a), styp::arr(cps_type(t->b), answer_type())), answer_type());
  }
  throw TypeError("malformed source type");
}

SrcTermPtr cps(const SrcCtx& gamma, const SrcTermPtr& m, const MetaCont& k) {
  Cps c;
  return c.go(gamma, m, k);
}

SrcTermPtr cps_program(const SrcTermPtr& m) {
  SrcTy t = type_of_src(SrcCtx{}, m);
  if (t->kind != SrcTypeKind::Nat) throw TypeMismatch("nat", print_type(t), print_src(m));
  Cps c;
  return c.go(SrcCtx{}, m, [](const SrcTermPtr& v) { return v; });
}

std::size_t administrative_redexes(const SrcTermPtr& m) {
  if (!m) return 0;
  std::size_t n = administrative_redexes(m->t1) + administrative_redexes(m->t2) + administrative_redexes(m->t3);
  if (m->kind == TermKind::App && m->t1->kind == TermKind::Fix && marked(m->t1->b1) && is_value(m->t2)) ++n;
  return n;
}

}  // namespace fcc
