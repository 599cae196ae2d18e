// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <utility>
#include <vector>

#include "fcc/name.hpp"
#include "fcc/type.hpp"

namespace fcc {

// Numerals are unbounded naturals so arithmetic never overflows under
// differential testing.
using Nat = boost::multiprecision::cpp_int;

// One node-kind space covers both languages; the factory namespaces below
// only expose each language's own constructors (Fix is source-only,
// Abs/Clos/Open are target-only).
enum class TermKind {
  Num,
  Var,
  Pred,
  Plus,
  Ifz,
  Unit,
  Pair,
  Fst,
  Snd,
  Let,   // Let(t1, b1. t2)
  Fix,   // Fix(ann1 = f type, ann2 = param type, b1 = f, b2 = x, t1 = body)
  App,
  Abs,   // Abs(ann1 = param type, b1 = x, t1 = body)
  Clos,  // Clos(t1 = code, t2 = environment)
  Open,  // Open(t1, b1 = f, b2 = e, t2 = body)
};

template <class TypeT>
struct Term {
  using Ptr = std::shared_ptr<const Term>;
  using Ty = std::shared_ptr<const TypeT>;

  TermKind kind;
  Nat value;      // Num
  Name var;       // Var
  Name b1, b2;    // binders, see TermKind comments
  Ty ann1, ann2;  // type annotations (Fix, Abs)
  Ptr t1, t2, t3;
};

using SrcTerm = Term<SrcType>;
using TgtTerm = Term<TgtType>;
using SrcTermPtr = SrcTerm::Ptr;
using TgtTermPtr = TgtTerm::Ptr;

// Simultaneous mapping of variables to closed values.
template <class TermT>
using Bindings = std::vector<std::pair<Name, typename TermT::Ptr>>;
using SrcValueSubst = Bindings<SrcTerm>;
using TgtValueSubst = Bindings<TgtTerm>;

namespace detail {

template <class TypeT>
typename Term<TypeT>::Ptr mk(Term<TypeT> t) {
  return std::make_shared<const Term<TypeT>>(std::move(t));
}

}  // namespace detail

// ---- Source constructors ----

namespace src {

inline SrcTermPtr num(Nat n) {
  return detail::mk<SrcType>({TermKind::Num, std::move(n), {}, {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
}
inline SrcTermPtr num(unsigned long n) { return num(Nat(n)); }
inline SrcTermPtr var(Name x) {
  return detail::mk<SrcType>({TermKind::Var, 0, std::move(x), {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
}
inline SrcTermPtr pred(SrcTermPtr m) {
  return detail::mk<SrcType>({TermKind::Pred, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline SrcTermPtr plus(SrcTermPtr a, SrcTermPtr b) {
  return detail::mk<SrcType>({TermKind::Plus, 0, {}, {}, {}, nullptr, nullptr, std::move(a), std::move(b), nullptr});
}
inline SrcTermPtr ifz(SrcTermPtr c, SrcTermPtr z, SrcTermPtr s) {
  return detail::mk<SrcType>({TermKind::Ifz, 0, {}, {}, {}, nullptr, nullptr, std::move(c), std::move(z), std::move(s)});
}
inline SrcTermPtr unit() {
  static const SrcTermPtr u =
      detail::mk<SrcType>({TermKind::Unit, 0, {}, {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
  return u;
}
inline SrcTermPtr pair(SrcTermPtr a, SrcTermPtr b) {
  return detail::mk<SrcType>({TermKind::Pair, 0, {}, {}, {}, nullptr, nullptr, std::move(a), std::move(b), nullptr});
}
inline SrcTermPtr fst(SrcTermPtr m) {
  return detail::mk<SrcType>({TermKind::Fst, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline SrcTermPtr snd(SrcTermPtr m) {
  return detail::mk<SrcType>({TermKind::Snd, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline SrcTermPtr let(SrcTermPtr bound, Name x, SrcTermPtr body) {
  return detail::mk<SrcType>(
      {TermKind::Let, 0, {}, std::move(x), {}, nullptr, nullptr, std::move(bound), std::move(body), nullptr});
}
// fix f x. body; fT is f's full arrow type, xT the parameter type.
inline SrcTermPtr fix(SrcTy fT, SrcTy xT, Name f, Name x, SrcTermPtr body) {
  return detail::mk<SrcType>({TermKind::Fix, 0, {}, std::move(f), std::move(x), std::move(fT), std::move(xT),
                              std::move(body), nullptr, nullptr});
}
inline SrcTermPtr app(SrcTermPtr f, SrcTermPtr a) {
  return detail::mk<SrcType>({TermKind::App, 0, {}, {}, {}, nullptr, nullptr, std::move(f), std::move(a), nullptr});
}

}  // namespace src

// ---- Target constructors ----

namespace tgt {

inline TgtTermPtr num(Nat n) {
  return detail::mk<TgtType>({TermKind::Num, std::move(n), {}, {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
}
inline TgtTermPtr num(unsigned long n) { return num(Nat(n)); }
inline TgtTermPtr var(Name x) {
  return detail::mk<TgtType>({TermKind::Var, 0, std::move(x), {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
}
inline TgtTermPtr pred(TgtTermPtr m) {
  return detail::mk<TgtType>({TermKind::Pred, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline TgtTermPtr plus(TgtTermPtr a, TgtTermPtr b) {
  return detail::mk<TgtType>({TermKind::Plus, 0, {}, {}, {}, nullptr, nullptr, std::move(a), std::move(b), nullptr});
}
inline TgtTermPtr ifz(TgtTermPtr c, TgtTermPtr z, TgtTermPtr s) {
  return detail::mk<TgtType>({TermKind::Ifz, 0, {}, {}, {}, nullptr, nullptr, std::move(c), std::move(z), std::move(s)});
}
inline TgtTermPtr unit() {
  static const TgtTermPtr u =
      detail::mk<TgtType>({TermKind::Unit, 0, {}, {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr});
  return u;
}
inline TgtTermPtr pair(TgtTermPtr a, TgtTermPtr b) {
  return detail::mk<TgtType>({TermKind::Pair, 0, {}, {}, {}, nullptr, nullptr, std::move(a), std::move(b), nullptr});
}
inline TgtTermPtr fst(TgtTermPtr m) {
  return detail::mk<TgtType>({TermKind::Fst, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline TgtTermPtr snd(TgtTermPtr m) {
  return detail::mk<TgtType>({TermKind::Snd, 0, {}, {}, {}, nullptr, nullptr, std::move(m), nullptr, nullptr});
}
inline TgtTermPtr let(TgtTermPtr bound, Name x, TgtTermPtr body) {
  return detail::mk<TgtType>(
      {TermKind::Let, 0, {}, std::move(x), {}, nullptr, nullptr, std::move(bound), std::move(body), nullptr});
}
inline TgtTermPtr app(TgtTermPtr f, TgtTermPtr a) {
  return detail::mk<TgtType>({TermKind::App, 0, {}, {}, {}, nullptr, nullptr, std::move(f), std::move(a), nullptr});
}
inline TgtTermPtr abs(TgtTy pT, Name x, TgtTermPtr body) {
  return detail::mk<TgtType>(
      {TermKind::Abs, 0, {}, std::move(x), {}, std::move(pT), nullptr, std::move(body), nullptr, nullptr});
}
inline TgtTermPtr clos(TgtTermPtr code, TgtTermPtr env) {
  return detail::mk<TgtType>({TermKind::Clos, 0, {}, {}, {}, nullptr, nullptr, std::move(code), std::move(env), nullptr});
}
inline TgtTermPtr open(TgtTermPtr scrut, Name f, Name e, TgtTermPtr body) {
  return detail::mk<TgtType>({TermKind::Open, 0, {}, std::move(f), std::move(e), nullptr, nullptr, std::move(scrut),
                              std::move(body), nullptr});
}

}  // namespace tgt

// ---- Generic operations over either language ----

// Value grammar: numerals, unit, fix, abs, and pairs/closures of values.
template <class TypeT>
bool is_value(const typename Term<TypeT>::Ptr& m) {
  switch (m->kind) {
    case TermKind::Num:
    case TermKind::Unit:
    case TermKind::Fix:
    case TermKind::Abs:
      return true;
    case TermKind::Pair:
    case TermKind::Clos:
      return is_value<TypeT>(m->t1) && is_value<TypeT>(m->t2);
    default:
      return false;
  }
}

inline bool is_value(const SrcTermPtr& m) { return is_value<SrcType>(m); }
inline bool is_value(const TgtTermPtr& m) { return is_value<TgtType>(m); }

namespace detail {

inline bool contains_name(const std::vector<Name>& ns, const Name& x) {
  for (const auto& n : ns)
    if (n == x) return true;
  return false;
}

template <class TypeT>
void free_vars_walk(const typename Term<TypeT>::Ptr& m, std::vector<Name>& bound, std::vector<Name>& out) {
  if (!m) return;
  switch (m->kind) {
    case TermKind::Var:
      if (!contains_name(bound, m->var) && !contains_name(out, m->var)) out.push_back(m->var);
      return;
    case TermKind::Let:
      free_vars_walk<TypeT>(m->t1, bound, out);
      bound.push_back(m->b1);
      free_vars_walk<TypeT>(m->t2, bound, out);
      bound.pop_back();
      return;
    case TermKind::Fix:
      bound.push_back(m->b1);
      bound.push_back(m->b2);
      free_vars_walk<TypeT>(m->t1, bound, out);
      bound.pop_back();
      bound.pop_back();
      return;
    case TermKind::Abs:
      bound.push_back(m->b1);
      free_vars_walk<TypeT>(m->t1, bound, out);
      bound.pop_back();
      return;
    case TermKind::Open:
      free_vars_walk<TypeT>(m->t1, bound, out);
      bound.push_back(m->b1);
      bound.push_back(m->b2);
      free_vars_walk<TypeT>(m->t2, bound, out);
      bound.pop_back();
      bound.pop_back();
      return;
    default:
      free_vars_walk<TypeT>(m->t1, bound, out);
      free_vars_walk<TypeT>(m->t2, bound, out);
      free_vars_walk<TypeT>(m->t3, bound, out);
      return;
  }
}

}  // namespace detail

// Variables with a free occurrence, leftmost-outermost first occurrence,
// no duplicates.
template <class TypeT>
std::vector<Name> free_vars(const typename Term<TypeT>::Ptr& m) {
  std::vector<Name> bound, out;
  detail::free_vars_walk<TypeT>(m, bound, out);
  return out;
}

inline std::vector<Name> free_vars(const SrcTermPtr& m) { return free_vars<SrcType>(m); }
inline std::vector<Name> free_vars(const TgtTermPtr& m) { return free_vars<TgtType>(m); }

template <class TermT>
bool is_closed(const typename TermT::Ptr& m) {
  return free_vars(m).empty();
}

inline bool is_closed(const SrcTermPtr& m) { return free_vars(m).empty(); }
inline bool is_closed(const TgtTermPtr& m) { return free_vars(m).empty(); }

namespace detail {

template <class TypeT>
const typename Term<TypeT>::Ptr* lookup_binding(const Bindings<Term<TypeT>>& bs, const Name& x) {
  for (const auto& [n, v] : bs)
    if (n == x) return &v;
  return nullptr;
}

template <class TypeT>
typename Term<TypeT>::Ptr subst_walk(const typename Term<TypeT>::Ptr& m, const Bindings<Term<TypeT>>& bs) {
  using Ptr = typename Term<TypeT>::Ptr;
  if (bs.empty() || !m) return m;
  switch (m->kind) {
    case TermKind::Num:
    case TermKind::Unit:
      return m;
    case TermKind::Var: {
      if (const Ptr* v = lookup_binding<TypeT>(bs, m->var)) return *v;
      return m;
    }
    default:
      break;
  }
  // Drop mappings shadowed by this node's binders; images are closed, so
  // plugging them under binders cannot capture.
  const Bindings<Term<TypeT>>* use = &bs;
  Bindings<Term<TypeT>> filtered;
  auto shadows = [&](const Name& n) {
    switch (m->kind) {
      case TermKind::Let:
      case TermKind::Abs:
        return n == m->b1;
      case TermKind::Fix:
      case TermKind::Open:
        return n == m->b1 || n == m->b2;
      default:
        return false;
    }
  };
  bool any_shadow = false;
  for (const auto& [n, v] : bs) any_shadow = any_shadow || shadows(n);
  if (any_shadow) {
    for (const auto& e : bs)
      if (!shadows(e.first)) filtered.push_back(e);
    use = &filtered;
  }

  auto sub_scoped = [&](const typename Term<TypeT>::Ptr& t) { return subst_walk<TypeT>(t, *use); };
  auto sub_plain = [&](const typename Term<TypeT>::Ptr& t) { return subst_walk<TypeT>(t, bs); };

  typename Term<TypeT>::Ptr n1, n2, n3;
  switch (m->kind) {
    case TermKind::Let:
    case TermKind::Open:
      n1 = sub_plain(m->t1);  // scrutinee is outside the binder scope
      n2 = sub_scoped(m->t2);
      n3 = nullptr;
      break;
    case TermKind::Fix:
    case TermKind::Abs:
      n1 = sub_scoped(m->t1);
      break;
    default:
      n1 = m->t1 ? sub_plain(m->t1) : nullptr;
      n2 = m->t2 ? sub_plain(m->t2) : nullptr;
      n3 = m->t3 ? sub_plain(m->t3) : nullptr;
      break;
  }
  if (n1 == m->t1 && n2 == m->t2 && n3 == m->t3) return m;
  Term<TypeT> copy = *m;
  copy.t1 = n1;
  copy.t2 = n2;
  copy.t3 = n3;
  return mk<TypeT>(std::move(copy));
}

}  // namespace detail

// Simultaneous capture-avoiding substitution of closed values. Unbound
// variables stay intact; closed terms come back unchanged.
template <class TypeT>
typename Term<TypeT>::Ptr subst(const typename Term<TypeT>::Ptr& m, const Bindings<Term<TypeT>>& bindings) {
  return detail::subst_walk<TypeT>(m, bindings);
}

inline SrcTermPtr subst(const SrcTermPtr& m, const SrcValueSubst& bs) { return detail::subst_walk<SrcType>(m, bs); }
inline TgtTermPtr subst(const TgtTermPtr& m, const TgtValueSubst& bs) { return detail::subst_walk<TgtType>(m, bs); }

namespace detail {

struct AlphaScope {
  std::vector<std::pair<Name, unsigned>> left, right;
  unsigned next = 0;

  void push(const Name& l, const Name& r) {
    left.emplace_back(l, next);
    right.emplace_back(r, next);
    ++next;
  }
  void pop() {
    left.pop_back();
    right.pop_back();
  }
  static const unsigned* find(const std::vector<std::pair<Name, unsigned>>& side, const Name& n) {
    for (auto it = side.rbegin(); it != side.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
};

inline bool ann_equal(const SrcTy& a, const SrcTy& b) { return type_equal(a, b); }
inline bool ann_equal(const TgtTy& a, const TgtTy& b) { return type_equal(a, b); }

template <class TypeT>
bool alpha_walk(const typename Term<TypeT>::Ptr& a, const typename Term<TypeT>::Ptr& b, AlphaScope& sc) {
  if (a == b && sc.left.empty()) return true;
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Num:
      return a->value == b->value;
    case TermKind::Unit:
      return true;
    case TermKind::Var: {
      const unsigned* la = AlphaScope::find(sc.left, a->var);
      const unsigned* lb = AlphaScope::find(sc.right, b->var);
      if (la && lb) return *la == *lb;
      if (!la && !lb) return a->var == b->var;  // both free
      return false;
    }
    case TermKind::Let: {
      if (!alpha_walk<TypeT>(a->t1, b->t1, sc)) return false;
      sc.push(a->b1, b->b1);
      bool ok = alpha_walk<TypeT>(a->t2, b->t2, sc);
      sc.pop();
      return ok;
    }
    case TermKind::Fix: {
      if (!ann_equal(a->ann1, b->ann1) || !ann_equal(a->ann2, b->ann2)) return false;
      sc.push(a->b1, b->b1);
      sc.push(a->b2, b->b2);
      bool ok = alpha_walk<TypeT>(a->t1, b->t1, sc);
      sc.pop();
      sc.pop();
      return ok;
    }
    case TermKind::Abs: {
      if (!ann_equal(a->ann1, b->ann1)) return false;
      sc.push(a->b1, b->b1);
      bool ok = alpha_walk<TypeT>(a->t1, b->t1, sc);
      sc.pop();
      return ok;
    }
    case TermKind::Open: {
      if (!alpha_walk<TypeT>(a->t1, b->t1, sc)) return false;
      sc.push(a->b1, b->b1);
      sc.push(a->b2, b->b2);
      bool ok = alpha_walk<TypeT>(a->t2, b->t2, sc);
      sc.pop();
      sc.pop();
      return ok;
    }
    default: {
      auto rec = [&](const typename Term<TypeT>::Ptr& x, const typename Term<TypeT>::Ptr& y) {
        if (!x && !y) return true;
        if (!x || !y) return false;
        return alpha_walk<TypeT>(x, y, sc);
      };
      return rec(a->t1, b->t1) && rec(a->t2, b->t2) && rec(a->t3, b->t3);
    }
  }
}

}  // namespace detail

// Equality up to consistent renaming of bound variables. Free variables
// must match exactly; annotations are compared structurally.
template <class TypeT>
bool alpha_eq(const typename Term<TypeT>::Ptr& a, const typename Term<TypeT>::Ptr& b) {
  detail::AlphaScope sc;
  return detail::alpha_walk<TypeT>(a, b, sc);
}

inline bool alpha_eq(const SrcTermPtr& a, const SrcTermPtr& b) { return alpha_eq<SrcType>(a, b); }
inline bool alpha_eq(const TgtTermPtr& a, const TgtTermPtr& b) { return alpha_eq<TgtType>(a, b); }

}  // namespace fcc
