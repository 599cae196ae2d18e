// SPDX-License-Identifier: Apache-2.0
#include "fcc/typing.hpp"

#include "fcc/printer.hpp"

namespace fcc {

namespace {

[[noreturn]] void mismatch(const std::string& expected, const SrcTy& found, const SrcTermPtr& at) {
  throw TypeMismatch(expected, print_type(found), print_src(at));
}

[[noreturn]] void mismatch(const std::string& expected, const TgtTy& found, const TgtTermPtr& at) {
  throw TypeMismatch(expected, print_type(found), print_tgt(at));
}

}  // namespace

SrcTy type_of_src(const SrcCtx& ctx, const SrcTermPtr& m) {
  switch (m->kind) {
    case TermKind::Num:
      return styp::nat();
    case TermKind::Unit:
      return styp::unit();
    case TermKind::Var: {
      const SrcTy* t = ctx.lookup(m->var);
      if (!t) throw UnboundVariable(m->var);
      return *t;
    }
    case TermKind::Pred: {
      SrcTy t = type_of_src(ctx, m->t1);
      if (t->kind != SrcTypeKind::Nat) mismatch("nat", t, m);
      return styp::nat();
    }
    case TermKind::Plus: {
      SrcTy a = type_of_src(ctx, m->t1);
      if (a->kind != SrcTypeKind::Nat) mismatch("nat", a, m);
      SrcTy b = type_of_src(ctx, m->t2);
      if (b->kind != SrcTypeKind::Nat) mismatch("nat", b, m);
      return styp::nat();
    }
    case TermKind::Ifz: {
      SrcTy c = type_of_src(ctx, m->t1);
      if (c->kind != SrcTypeKind::Nat) mismatch("nat", c, m);
      SrcTy a = type_of_src(ctx, m->t2);
      SrcTy b = type_of_src(ctx, m->t3);
      if (!type_equal(a, b)) mismatch(print_type(a), b, m);
      return a;
    }
    case TermKind::Pair:
      return styp::prod(type_of_src(ctx, m->t1), type_of_src(ctx, m->t2));
    case TermKind::Fst: {
      SrcTy t = type_of_src(ctx, m->t1);
      if (t->kind != SrcTypeKind::Prod) mismatch("(* _ _)", t, m);
      return t->a;
    }
    case TermKind::Snd: {
      SrcTy t = type_of_src(ctx, m->t1);
      if (t->kind != SrcTypeKind::Prod) mismatch("(* _ _)", t, m);
      return t->b;
    }
    case TermKind::Let: {
      SrcTy t1 = type_of_src(ctx, m->t1);
      return type_of_src(ctx.extended(m->b1, t1), m->t2);
    }
    case TermKind::Fix: {
      // f's annotation must be an arrow whose domain is x's annotation;
      // the body is checked against the codomain.
      const SrcTy& fT = m->ann1;
      if (fT->kind != SrcTypeKind::Arr) mismatch("(-> _ _)", fT, m);
      if (!type_equal(fT->a, m->ann2)) mismatch(print_type(fT->a), m->ann2, m);
      SrcCtx inner = ctx.extended(m->b1, fT).extended(m->b2, m->ann2);
      SrcTy body = type_of_src(inner, m->t1);
      if (!type_equal(body, fT->b)) mismatch(print_type(fT->b), body, m);
      return fT;
    }
    case TermKind::App: {
      SrcTy f = type_of_src(ctx, m->t1);
      if (f->kind != SrcTypeKind::Arr) mismatch("(-> _ _)", f, m);
      SrcTy a = type_of_src(ctx, m->t2);
      if (!type_equal(f->a, a)) mismatch(print_type(f->a), a, m);
      return f->b;
    }
    default:
      throw TypeError("not a source-language term");
  }
}

namespace {

TgtTy tgt_type_impl(const TgtCtx& ctx, const TgtTermPtr& m, bool lenient) {
  switch (m->kind) {
    case TermKind::Num:
      return ttyp::nat();
    case TermKind::Unit:
      return ttyp::unit();
    case TermKind::Var: {
      const TgtTy* t = ctx.lookup(m->var);
      if (!t) throw UnboundVariable(m->var);
      return *t;
    }
    case TermKind::Pred: {
      TgtTy t = tgt_type_impl(ctx, m->t1, lenient);
      if (t->kind != TgtTypeKind::Nat) mismatch("nat", t, m);
      return ttyp::nat();
    }
    case TermKind::Plus: {
      TgtTy a = tgt_type_impl(ctx, m->t1, lenient);
      if (a->kind != TgtTypeKind::Nat) mismatch("nat", a, m);
      TgtTy b = tgt_type_impl(ctx, m->t2, lenient);
      if (b->kind != TgtTypeKind::Nat) mismatch("nat", b, m);
      return ttyp::nat();
    }
    case TermKind::Ifz: {
      TgtTy c = tgt_type_impl(ctx, m->t1, lenient);
      if (c->kind != TgtTypeKind::Nat) mismatch("nat", c, m);
      TgtTy a = tgt_type_impl(ctx, m->t2, lenient);
      TgtTy b = tgt_type_impl(ctx, m->t3, lenient);
      if (!type_equal(a, b)) mismatch(print_type(a), b, m);
      return a;
    }
    case TermKind::Pair:
      return ttyp::prod(tgt_type_impl(ctx, m->t1, lenient), tgt_type_impl(ctx, m->t2, lenient));
    case TermKind::Fst: {
      TgtTy t = tgt_type_impl(ctx, m->t1, lenient);
      if (t->kind != TgtTypeKind::Prod) mismatch("(* _ _)", t, m);
      return t->a;
    }
    case TermKind::Snd: {
      TgtTy t = tgt_type_impl(ctx, m->t1, lenient);
      if (t->kind != TgtTypeKind::Prod) mismatch("(* _ _)", t, m);
      return t->b;
    }
    case TermKind::Let: {
      TgtTy t1 = tgt_type_impl(ctx, m->t1, lenient);
      return tgt_type_impl(ctx.extended(m->b1, t1), m->t2, lenient);
    }
    case TermKind::Abs: {
      TgtTy body = tgt_type_impl(ctx.extended(m->b1, m->ann1), m->t1, lenient);
      return ttyp::code(m->ann1, body);
    }
    case TermKind::App: {
      TgtTy f = tgt_type_impl(ctx, m->t1, lenient);
      if (f->kind != TgtTypeKind::Code) mismatch("(=> _ _)", f, m);
      TgtTy a = tgt_type_impl(ctx, m->t2, lenient);
      if (!type_equal(f->a, a)) mismatch(print_type(f->a), a, m);
      return f->b;
    }
    case TermKind::Clos: {
      // Code part must be typable on its own; its parameter is the triple
      // (closure, argument, environment).
      TgtTy codeT;
      try {
        codeT = tgt_type_impl(lenient ? ctx : TgtCtx{}, m->t1, lenient);
      } catch (const UnboundVariable& u) {
        if (ctx.contains(u.name)) throw ClosureNotClosed(u.name);
        throw;
      }
      if (codeT->kind != TgtTypeKind::Code) mismatch("(=> (* (-> _ _) (* _ _)) _)", codeT, m);
      const TgtTy& p = codeT->a;
      if (p->kind != TgtTypeKind::Prod || p->a->kind != TgtTypeKind::Arr || p->b->kind != TgtTypeKind::Prod)
        mismatch("(=> (* (-> _ _) (* _ _)) _)", codeT, m);
      const TgtTy& arrT = p->a;
      const TgtTy& argT = p->b->a;
      const TgtTy& envT = p->b->b;
      if (!type_equal(arrT->a, argT) || !type_equal(arrT->b, codeT->b))
        mismatch("(=> (* (-> T1 T2) (* T1 Te)) T2)", codeT, m);
      TgtTy env = tgt_type_impl(ctx, m->t2, lenient);
      if (!type_equal(env, envT)) mismatch(print_type(envT), env, m);
      return arrT;
    }
    case TermKind::Open: {
      TgtTy closT = tgt_type_impl(ctx, m->t1, lenient);
      if (closT->kind != TgtTypeKind::Arr) mismatch("(-> _ _)", closT, m);
      TgtTy l = ttyp::fresh_rigid();
      TgtTy fT = ttyp::code(ttyp::prod(closT, ttyp::prod(closT->a, l)), closT->b);
      TgtCtx inner = ctx.extended(m->b1, fT).extended(m->b2, l);
      TgtTy res = tgt_type_impl(inner, m->t2, lenient);
      if (contains_rigid(res, l->rigid_id)) throw RigidEscape(l->rigid_id);
      return res;
    }
    default:
      throw TypeError("not a target-language term");
  }
}

}  // namespace

TgtTy type_of_tgt(const TgtCtx& ctx, const TgtTermPtr& m) { return tgt_type_impl(ctx, m, false); }

TgtTy type_of_tgt_lenient(const TgtCtx& ctx, const TgtTermPtr& m) { return tgt_type_impl(ctx, m, true); }

TgtTy translate_type(const SrcTy& t) {
  switch (t->kind) {
    case SrcTypeKind::Nat:
      return ttyp::nat();
    case SrcTypeKind::Unit:
      return ttyp::unit();
    case SrcTypeKind::Prod:
      return ttyp::prod(translate_type(t->a), translate_type(t->b));
    case SrcTypeKind::Arr:
      return ttyp::arr(translate_type(t->a), translate_type(t->b));
  }
  throw TypeError("malformed source type");
}

}  // namespace fcc
