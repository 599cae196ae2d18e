// SPDX-License-Identifier: Apache-2.0
#include "fcc/hoist.hpp"

#include <algorithm>

#include "fcc/typing.hpp"

namespace fcc {

namespace {

struct Extracted {
  Name name;
  TgtTermPtr body;
  TgtTy type;  // lenient type, used to annotate tuple parameters
};
using Funs = std::vector<Extracted>;

struct Partial {
  Funs funs;
  TgtTermPtr main;
};

void check_independent(const Name& binder, const Funs& funs) {
  for (const auto& f : funs) {
    std::vector<Name> fv = free_vars(f.body);
    if (std::find(fv.begin(), fv.end(), binder) != fv.end()) throw HoistDependency(binder, f.name);
  }
}

TgtTermPtr rebuild(const TgtTermPtr& m, TgtTermPtr t1, TgtTermPtr t2, TgtTermPtr t3) {
  TgtTerm copy = *m;
  copy.t1 = std::move(t1);
  copy.t2 = std::move(t2);
  copy.t3 = std::move(t3);
  return detail::mk<TgtType>(std::move(copy));
}

Partial walk(const TgtTermPtr& m) {
  switch (m->kind) {
    case TermKind::Num:
    case TermKind::Var:
    case TermKind::Unit:
      return {{}, m};
    case TermKind::Abs: {
      // Extract the maximal curried chain as a single function.
      std::vector<std::pair<Name, TgtTy>> params;
      TgtTermPtr body = m;
      while (body->kind == TermKind::Abs) {
        params.emplace_back(body->b1, body->ann1);
        body = body->t1;
      }
      Partial h = walk(body);
      for (const auto& [x, ann] : params) check_independent(x, h.funs);
      (void)0;

      // Rebind the previously extracted functions to projections from a
      // fresh tuple parameter, innermost around the body.
      Name ftup = fresh("fs");
      TgtTermPtr inner = h.main;
      {
        TgtTermPtr spine = tgt::var(ftup);
        std::vector<TgtTermPtr> projs;
        for (std::size_t i = 0; i < h.funs.size(); ++i) {
          projs.push_back(tgt::fst(spine));
          spine = tgt::snd(spine);
        }
        for (std::size_t i = h.funs.size(); i-- > 0;) inner = tgt::let(projs[i], h.funs[i].name, inner);
      }
      TgtTermPtr wrapped = inner;
      for (auto it = params.rbegin(); it != params.rend(); ++it) wrapped = tgt::abs(it->second, it->first, wrapped);

      TgtTy tupT = ttyp::unit();
      for (auto it = h.funs.rbegin(); it != h.funs.rend(); ++it) tupT = ttyp::prod(it->type, tupT);

      Name g = fresh("g");
      TgtTermPtr tuple = tgt::unit();
      for (auto it = h.funs.rbegin(); it != h.funs.rend(); ++it)
        tuple = tgt::pair(tgt::var(it->name), tuple);

      TgtTermPtr fn = tgt::abs(tupT, ftup, std::move(wrapped));
      TgtTy fnT;
      try {
        fnT = type_of_tgt_lenient(TgtCtx{}, fn);
      } catch (const UnboundVariable& u) {
        // the function still mentions an enclosing binder it cannot be
        // lifted past; same failure the binder check reports
        throw HoistDependency(u.name, g);
      }
      Partial out;
      out.funs = std::move(h.funs);
      out.funs.push_back({g, std::move(fn), std::move(fnT)});
      out.main = tgt::app(tgt::var(g), std::move(tuple));
      return out;
    }
    case TermKind::Let: {
      Partial a = walk(m->t1);
      Partial b = walk(m->t2);
      check_independent(m->b1, b.funs);
      Partial out;
      out.funs = std::move(a.funs);
      out.funs.insert(out.funs.end(), b.funs.begin(), b.funs.end());
      out.main = tgt::let(a.main, m->b1, b.main);
      return out;
    }
    case TermKind::Open: {
      Partial a = walk(m->t1);
      Partial b = walk(m->t2);
      check_independent(m->b1, b.funs);
      check_independent(m->b2, b.funs);
      Partial out;
      out.funs = std::move(a.funs);
      out.funs.insert(out.funs.end(), b.funs.begin(), b.funs.end());
      out.main = tgt::open(a.main, m->b1, m->b2, b.main);
      return out;
    }
    default: {
      Partial out;
      TgtTermPtr c1, c2, c3;
      for (const TgtTermPtr* child : {&m->t1, &m->t2, &m->t3}) {
        if (!*child) continue;
        Partial p = walk(*child);
        out.funs.insert(out.funs.end(), p.funs.begin(), p.funs.end());
        if (child == &m->t1)
          c1 = p.main;
        else if (child == &m->t2)
          c2 = p.main;
        else
          c3 = p.main;
      }
      out.main = rebuild(m, std::move(c1), std::move(c2), std::move(c3));
      return out;
    }
  }
}

}  // namespace

HoistedProgram hoist(const TgtTermPtr& m) {
  std::vector<Name> fv = free_vars(m);
  if (!fv.empty()) throw HoistDependency(fv.front(), raw_name("<input>"));
  Partial p = walk(m);
  HoistedProgram out;
  out.main = std::move(p.main);
  for (const auto& f : p.funs) {
    if (f.body->kind != TermKind::Abs || !free_vars(f.body).empty())
      throw TransformError("hoisting produced a non-closed function " + show(f.name));
    out.funs.emplace_back(f.name, f.body);
  }
  return out;
}

TgtTermPtr reify(const HoistedProgram& p) {
  TgtTermPtr out = p.main;
  for (auto it = p.funs.rbegin(); it != p.funs.rend(); ++it) out = tgt::let(it->second, it->first, out);
  return out;
}

}  // namespace fcc
