// SPDX-License-Identifier: Apache-2.0
#include "fcc/eval.hpp"

namespace fcc {

namespace {

template <class TypeT>
typename Term<TypeT>::Ptr with_children(const typename Term<TypeT>::Ptr& m, typename Term<TypeT>::Ptr t1,
                                        typename Term<TypeT>::Ptr t2, typename Term<TypeT>::Ptr t3) {
  Term<TypeT> copy = *m;
  copy.t1 = std::move(t1);
  copy.t2 = std::move(t2);
  copy.t3 = std::move(t3);
  return detail::mk<TypeT>(std::move(copy));
}

template <class TypeT>
std::optional<typename Term<TypeT>::Ptr> step(const typename Term<TypeT>::Ptr& m) {
  using Ptr = typename Term<TypeT>::Ptr;
  if (is_value<TypeT>(m)) return std::nullopt;

  // Reduce the leftmost non-value child; stuckness bubbles up as absence.
  auto in_child1 = [&]() -> std::optional<Ptr> {
    auto s = step<TypeT>(m->t1);
    if (!s) return std::nullopt;
    return with_children<TypeT>(m, *s, m->t2, m->t3);
  };
  auto in_child2 = [&]() -> std::optional<Ptr> {
    auto s = step<TypeT>(m->t2);
    if (!s) return std::nullopt;
    return with_children<TypeT>(m, m->t1, *s, m->t3);
  };

  switch (m->kind) {
    case TermKind::Var:
      return std::nullopt;  // free variable: stuck
    case TermKind::Pred: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (m->t1->kind != TermKind::Num) return std::nullopt;
      // truncated predecessor on naturals
      Nat n = m->t1->value;
      if (n > 0) n -= 1;
      Term<TypeT> out{TermKind::Num, std::move(n), {}, {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr};
      return detail::mk<TypeT>(std::move(out));
    }
    case TermKind::Plus: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (!is_value<TypeT>(m->t2)) return in_child2();
      if (m->t1->kind != TermKind::Num || m->t2->kind != TermKind::Num) return std::nullopt;
      Term<TypeT> out{TermKind::Num, m->t1->value + m->t2->value, {},      {},      {},
                      nullptr,       nullptr,                    nullptr, nullptr, nullptr};
      return detail::mk<TypeT>(std::move(out));
    }
    case TermKind::Ifz: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (m->t1->kind != TermKind::Num) return std::nullopt;
      return m->t1->value == 0 ? m->t2 : m->t3;
    }
    case TermKind::Pair:
      if (!is_value<TypeT>(m->t1)) return in_child1();
      return in_child2();
    case TermKind::Fst: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (m->t1->kind != TermKind::Pair) return std::nullopt;
      return m->t1->t1;
    }
    case TermKind::Snd: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (m->t1->kind != TermKind::Pair) return std::nullopt;
      return m->t1->t2;
    }
    case TermKind::Let: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      Bindings<Term<TypeT>> b{{m->b1, m->t1}};
      return subst<TypeT>(m->t2, b);
    }
    case TermKind::App: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (!is_value<TypeT>(m->t2)) return in_child2();
      if (m->t1->kind == TermKind::Fix) {
        // (fix f x M) V -> M[fix f x M / f, V / x]
        Bindings<Term<TypeT>> b{{m->t1->b1, m->t1}, {m->t1->b2, m->t2}};
        return subst<TypeT>(m->t1->t1, b);
      }
      if (m->t1->kind == TermKind::Abs) {
        Bindings<Term<TypeT>> b{{m->t1->b1, m->t2}};
        return subst<TypeT>(m->t1->t1, b);
      }
      return std::nullopt;
    }
    case TermKind::Clos:
      if (!is_value<TypeT>(m->t1)) return in_child1();
      return in_child2();
    case TermKind::Open: {
      if (!is_value<TypeT>(m->t1)) return in_child1();
      if (m->t1->kind != TermKind::Clos) return std::nullopt;
      // open (clos Vf Ve) as (f, e) in M -> M[Vf/f, Ve/e]
      Bindings<Term<TypeT>> b{{m->b1, m->t1->t1}, {m->b2, m->t1->t2}};
      return subst<TypeT>(m->t2, b);
    }
    default:
      return std::nullopt;
  }
}

template <class TypeT>
EvalResult<Term<TypeT>> eval_loop(const typename Term<TypeT>::Ptr& m, std::uint64_t fuel) {
  using R = EvalResult<Term<TypeT>>;
  typename Term<TypeT>::Ptr cur = m;
  std::uint64_t steps = 0;
  while (!is_value<TypeT>(cur)) {
    if (steps == fuel) return R{R::Kind::Timeout, nullptr, fuel};
    auto nxt = step<TypeT>(cur);
    if (!nxt) return R{R::Kind::Stuck, cur, steps};
    cur = std::move(*nxt);
    ++steps;
  }
  return R{R::Kind::Value, cur, steps};
}

}  // namespace

std::optional<SrcTermPtr> step_src(const SrcTermPtr& m) { return step<SrcType>(m); }
std::optional<TgtTermPtr> step_tgt(const TgtTermPtr& m) { return step<TgtType>(m); }

SrcEvalResult eval(const SrcTermPtr& m, std::uint64_t fuel) { return eval_loop<SrcType>(m, fuel); }
TgtEvalResult eval(const TgtTermPtr& m, std::uint64_t fuel) { return eval_loop<TgtType>(m, fuel); }

}  // namespace fcc
