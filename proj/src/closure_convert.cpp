// SPDX-License-Identifier: Apache-2.0
#include "fcc/closure_convert.hpp"

#include <algorithm>

#include "fcc/printer.hpp"

namespace fcc {

void VarMap::bind(Name x, TgtTermPtr image) {
  if (lookup(x)) throw TransformError("variable " + show(x) + " is already mapped");
  entries_.emplace_back(std::move(x), std::move(image));
}

const TgtTermPtr* VarMap::lookup(const Name& x) const {
  for (const auto& [n, t] : entries_)
    if (n == x) return &t;
  return nullptr;
}

namespace {

bool contains(const std::vector<Name>& ns, const Name& x) {
  return std::find(ns.begin(), ns.end(), x) != ns.end();
}

// Structural walk with explicit not-free marking of binders, mirroring
// the way bound variables are screened out of the result.
void fvars_walk(const SrcTermPtr& m, const std::vector<Name>& scope, std::vector<Name>& marked,
                std::vector<Name>& out) {
  if (!m) return;
  switch (m->kind) {
    case TermKind::Var:
      if (!contains(marked, m->var) && contains(scope, m->var) && !contains(out, m->var))
        out.push_back(m->var);
      return;
    case TermKind::Let:
      fvars_walk(m->t1, scope, marked, out);
      marked.push_back(m->b1);
      fvars_walk(m->t2, scope, marked, out);
      marked.pop_back();
      return;
    case TermKind::Fix:
      marked.push_back(m->b1);
      marked.push_back(m->b2);
      fvars_walk(m->t1, scope, marked, out);
      marked.pop_back();
      marked.pop_back();
      return;
    default:
      fvars_walk(m->t1, scope, marked, out);
      fvars_walk(m->t2, scope, marked, out);
      fvars_walk(m->t3, scope, marked, out);
      return;
  }
}

struct CcState {
  TgtTermPtr run(const VarMap& rho, const std::vector<Name>& scope, const SrcCtx& gamma, const SrcTermPtr& m) {
    switch (m->kind) {
      case TermKind::Num:
        return tgt::num(m->value);
      case TermKind::Unit:
        return tgt::unit();
      case TermKind::Var: {
        const TgtTermPtr* img = rho.lookup(m->var);
        if (!img) throw UnmappedVariable(m->var);
        return *img;
      }
      case TermKind::Pred:
        return tgt::pred(run(rho, scope, gamma, m->t1));
      case TermKind::Fst:
        return tgt::fst(run(rho, scope, gamma, m->t1));
      case TermKind::Snd:
        return tgt::snd(run(rho, scope, gamma, m->t1));
      case TermKind::Plus:
        return tgt::plus(run(rho, scope, gamma, m->t1), run(rho, scope, gamma, m->t2));
      case TermKind::Pair:
        return tgt::pair(run(rho, scope, gamma, m->t1), run(rho, scope, gamma, m->t2));
      case TermKind::Ifz:
        return tgt::ifz(run(rho, scope, gamma, m->t1), run(rho, scope, gamma, m->t2),
                        run(rho, scope, gamma, m->t3));
      case TermKind::Let: {
        TgtTermPtr bound = run(rho, scope, gamma, m->t1);
        SrcTy t1 = type_of_src(gamma, m->t1);
        Name y = fresh(m->b1.text);
        VarMap rho2 = rho;
        rho2.bind(m->b1, tgt::var(y));
        std::vector<Name> scope2 = scope;
        scope2.push_back(m->b1);
        TgtTermPtr body = run(rho2, scope2, gamma.extended(m->b1, t1), m->t2);
        return tgt::let(std::move(bound), std::move(y), std::move(body));
      }
      case TermKind::App: {
        TgtTermPtr f = run(rho, scope, gamma, m->t1);
        TgtTermPtr a = run(rho, scope, gamma, m->t2);
        return cc_apply(std::move(f), std::move(a));
      }
      case TermKind::Fix: {
        // clos (abs p. let g = p.1 in let y = p.2 in let xe = p.3 in M')
        //      (x1, ..., xn)        for (x1,...,xn) = fvars(fix f x M)
        std::vector<Name> fvs = fvars(m, scope);
        TgtTermPtr env = mapenv(fvs, rho);

        Name p = fresh("p");
        Name g = fresh(m->b1.text);
        Name y = fresh(m->b2.text);
        Name xe = fresh("xe");

        VarMap rho2;
        rho2.bind(m->b2, tgt::var(y));
        rho2.bind(m->b1, tgt::var(g));
        for (const auto& [x, proj] : mapvar(fvs, xe)) rho2.bind(x, proj);

        std::vector<Name> scope2{m->b2, m->b1};
        scope2.insert(scope2.end(), fvs.begin(), fvs.end());

        const SrcTy& fT = m->ann1;
        if (fT->kind != SrcTypeKind::Arr || !type_equal(fT->a, m->ann2))
          throw TypeMismatch("(-> _ _) matching the parameter annotation", print_type(fT), show(m->b1));
        TgtTy argT = translate_type(m->ann2);
        TgtTy resT = translate_type(fT->b);
        TgtTy envT = ttyp::unit();
        for (auto it = fvs.rbegin(); it != fvs.rend(); ++it) {
          const SrcTy* xt = gamma.lookup(*it);
          if (!xt) throw UnboundVariable(*it);
          envT = ttyp::prod(translate_type(*xt), envT);
        }
        TgtTy pT = ttyp::prod(ttyp::arr(argT, resT), ttyp::prod(argT, envT));

        SrcCtx gamma2 = gamma.extended(m->b1, fT).extended(m->b2, m->ann2);
        TgtTermPtr body = run(rho2, scope2, gamma2, m->t1);

        TgtTermPtr inner = tgt::let(
            tgt::fst(tgt::var(p)), g,
            tgt::let(tgt::fst(tgt::snd(tgt::var(p))), y,
                     tgt::let(tgt::snd(tgt::snd(tgt::var(p))), xe, std::move(body))));
        return tgt::clos(tgt::abs(pT, p, std::move(inner)), std::move(env));
      }
      default:
        throw TransformError("not a source-language term");
    }
  }
};

}  // namespace

std::vector<Name> fvars(const SrcTermPtr& m, const std::vector<Name>& scope) {
  std::vector<Name> marked, out;
  fvars_walk(m, scope, marked, out);
  return out;
}

TgtTermPtr mapenv(const std::vector<Name>& fvs, const VarMap& rho) {
  TgtTermPtr out = tgt::unit();
  for (auto it = fvs.rbegin(); it != fvs.rend(); ++it) {
    const TgtTermPtr* img = rho.lookup(*it);
    if (!img) throw UnmappedVariable(*it);
    out = tgt::pair(*img, std::move(out));
  }
  return out;
}

VarMap mapvar(const std::vector<Name>& fvs, const Name& env) {
  VarMap out;
  TgtTermPtr spine = tgt::var(env);
  for (const Name& x : fvs) {
    out.bind(x, tgt::fst(spine));
    spine = tgt::snd(spine);
  }
  return out;
}

TgtTermPtr cc(const VarMap& rho, const std::vector<Name>& scope, const SrcCtx& gamma, const SrcTermPtr& m) {
  for (const Name& x : free_vars(m))
    if (std::find(scope.begin(), scope.end(), x) == scope.end()) throw ScopeViolation(x);
  CcState st;
  return st.run(rho, scope, gamma, m);
}

TgtTermPtr cc_program(const SrcTermPtr& m) {
  type_of_src(SrcCtx{}, m);  // also rejects open terms via UnboundVariable
  return cc(VarMap{}, {}, SrcCtx{}, m);
}

TgtTermPtr cc_apply(TgtTermPtr fn, TgtTermPtr arg) {
  Name g = fresh("g");
  Name xf = fresh("xf");
  Name xe = fresh("xe");
  return tgt::let(std::move(fn), g,
                  tgt::open(tgt::var(g), xf, xe,
                            tgt::app(tgt::var(xf), tgt::pair(tgt::var(g), tgt::pair(std::move(arg), tgt::var(xe))))));
}

bool closure_parts_closed(const TgtTermPtr& m) {
  if (!m) return true;
  if (m->kind == TermKind::Clos && !free_vars(m->t1).empty()) return false;
  return closure_parts_closed(m->t1) && closure_parts_closed(m->t2) && closure_parts_closed(m->t3);
}

}  // namespace fcc
