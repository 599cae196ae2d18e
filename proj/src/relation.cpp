// SPDX-License-Identifier: Apache-2.0
#include "fcc/relation.hpp"

#include <stdexcept>

#include "fcc/closure_convert.hpp"
#include "fcc/eval.hpp"
#include "fcc/printer.hpp"

namespace fcc {

namespace {

Verdict shape_fail(std::string why) { return Verdict{VerdictKind::Unrelated, std::move(why), 0}; }

// Conjunction accumulator: Unrelated dominates, then Unknown.
struct Conj {
  Verdict acc;

  bool add(Verdict v) {
    acc.probes += v.probes;
    if (v.kind == VerdictKind::Unrelated) {
      acc.kind = VerdictKind::Unrelated;
      acc.witness = std::move(v.witness);
      return false;
    }
    if (v.kind == VerdictKind::Unknown && acc.kind == VerdictKind::Related) {
      acc.kind = VerdictKind::Unknown;
      acc.witness = std::move(v.witness);
    }
    return true;
  }
};

Verdict prefixed(Verdict v, const std::string& prefix) {
  if (v.kind != VerdictKind::Related) v.witness = prefix + v.witness;
  return v;
}

bool closure_shape(const TgtTermPtr& v) {
  return v->kind == TermKind::Clos && v->t1->kind == TermKind::Abs && is_value(v->t2);
}

}  // namespace

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Related:
      return "related";
    case VerdictKind::Unrelated:
      return "unrelated";
    case VerdictKind::Unknown:
      return "unknown";
  }
  return "?";
}

Verdict sim_check(const SrcTy& T, unsigned k, const SrcTermPtr& M, const TgtTermPtr& Mp, const EquivCfg& cfg) {
  if (!is_closed(M) || !is_closed(Mp)) throw std::invalid_argument("sim_check requires closed terms");
  SrcEvalResult r = eval(M, k);
  if (!r.is_value()) return Verdict{};  // no value within the index: vacuously related
  TgtEvalResult rp = eval(Mp, cfg.fuel);
  if (rp.kind == TgtEvalResult::Kind::Timeout)
    return Verdict{VerdictKind::Unknown, "right side produced no value within fuel " + std::to_string(cfg.fuel), 0};
  if (rp.kind == TgtEvalResult::Kind::Stuck)
    return shape_fail("left side evaluates to " + print_src(r.term) + " but right side is stuck at " +
                      print_tgt(rp.term));
  return equiv_check(T, k - static_cast<unsigned>(r.steps), r.term, rp.term, cfg);
}

Verdict equiv_check(const SrcTy& T, unsigned k, const SrcTermPtr& V, const TgtTermPtr& Vp, const EquivCfg& cfg) {
  if (!is_value(V) || !is_value(Vp)) throw std::invalid_argument("equiv_check requires values");
  if (!is_closed(V) || !is_closed(Vp)) return shape_fail("values are not closed");
  switch (T->kind) {
    case SrcTypeKind::Nat: {
      if (V->kind != TermKind::Num || Vp->kind != TermKind::Num)
        return shape_fail("expected numerals at nat: " + print_src(V) + " vs " + print_tgt(Vp));
      if (V->value != Vp->value)
        return shape_fail("numerals differ: " + V->value.str() + " vs " + Vp->value.str());
      return Verdict{};
    }
    case SrcTypeKind::Unit: {
      if (V->kind != TermKind::Unit || Vp->kind != TermKind::Unit)
        return shape_fail("expected units: " + print_src(V) + " vs " + print_tgt(Vp));
      return Verdict{};
    }
    case SrcTypeKind::Prod: {
      if (V->kind != TermKind::Pair || Vp->kind != TermKind::Pair)
        return shape_fail("expected pairs at product type: " + print_src(V) + " vs " + print_tgt(Vp));
      Conj c;
      if (!c.add(prefixed(equiv_check(T->a, k, V->t1, Vp->t1, cfg), "first component: "))) return c.acc;
      c.add(prefixed(equiv_check(T->b, k, V->t2, Vp->t2, cfg), "second component: "));
      return c.acc;
    }
    case SrcTypeKind::Arr: {
      if (V->kind != TermKind::Fix)
        return shape_fail("expected a fix at arrow type, found " + print_src(V));
      if (!closure_shape(Vp))
        return shape_fail("expected a closure of an abstraction at arrow type, found " + print_tgt(Vp));
      if (k == 0) return Verdict{};
      unsigned lower = k - 1;
      Conj c;
      if (!c.add(equiv_check(T, lower, V, Vp, cfg))) return c.acc;
      bool self_related = c.acc.kind == VerdictKind::Related;

      // candidate argument pairs at T->a, related at the lower index
      std::vector<const RelatedPair*> args;
      for (const RelatedPair& e : cfg.corpus) {
        if (args.size() >= cfg.samples_per_quantifier) break;
        if (!type_equal(e.type, T->a)) continue;
        if (equiv_check(T->a, lower, e.src, e.tgt, cfg).related()) args.push_back(&e);
      }
      // candidate recursive-closure pairs at T itself; the pair under
      // test participates in its own instantiation
      std::vector<std::pair<SrcTermPtr, TgtTermPtr>> closures;
      if (self_related) closures.emplace_back(V, Vp);
      for (const RelatedPair& e : cfg.corpus) {
        if (closures.size() >= cfg.samples_per_quantifier) break;
        if (!type_equal(e.type, T)) continue;
        if (alpha_eq(e.src, V) && alpha_eq(e.tgt, Vp)) continue;
        if (equiv_check(T, lower, e.src, e.tgt, cfg).related()) closures.emplace_back(e.src, e.tgt);
      }

      const TgtTermPtr& abs_node = Vp->t1;
      const TgtTermPtr& env = Vp->t2;
      for (const RelatedPair* a : args) {
        for (const auto& [cs, ct] : closures) {
          SrcTermPtr left = subst(V->t1, SrcValueSubst{{V->b1, cs}, {V->b2, a->src}});
          TgtTermPtr right =
              subst(abs_node->t1, TgtValueSubst{{abs_node->b1, tgt::pair(ct, tgt::pair(a->tgt, env))}});
          Verdict s = sim_check(T->b, lower, left, right, cfg);
          s.probes += 1;
          if (!c.add(prefixed(std::move(s),
                              "instantiated with argument " + print_src(a->src) + ": ")))
            return c.acc;
        }
      }
      return c.acc;
    }
  }
  return shape_fail("malformed type");
}

Verdict subst_equiv_check(const SrcCtx& gamma, unsigned k, const SrcValueSubst& delta,
                          const TgtSubstWithEnv& deltap, const EquivCfg& cfg) {
  const auto& entries = gamma.entries();
  if (deltap.direct.size() > entries.size())
    throw std::invalid_argument("substitution has more direct mappings than the context has entries");
  auto delta_lookup = [&](const Name& x) -> const SrcTermPtr& {
    for (const auto& [n, v] : delta)
      if (n == x) return v;
    throw std::invalid_argument("source substitution missing " + show(x));
  };

  Conj c;
  std::size_t n = deltap.direct.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [x, T] = entries[i];
    Verdict v = equiv_check(T, k, delta_lookup(x), deltap.direct[i].second, cfg);
    if (!c.add(prefixed(std::move(v), "at " + show(x) + ": "))) return c.acc;
  }
  // remaining entries are reified into the environment tuple, in order
  TgtTermPtr env = deltap.env;
  if (!env || !is_value(env)) return shape_fail("environment is not a value");
  for (std::size_t i = n; i < entries.size(); ++i) {
    const auto& [x, T] = entries[i];
    if (env->kind != TermKind::Pair)
      return shape_fail("environment tuple too short at " + show(x) + ": " + print_tgt(env));
    Verdict v = equiv_check(T, k, delta_lookup(x), env->t1, cfg);
    if (!c.add(prefixed(std::move(v), "environment slot for " + show(x) + ": "))) return c.acc;
    env = env->t2;
  }
  if (env->kind != TermKind::Unit)
    c.add(shape_fail("environment tuple has a non-unit tail: " + print_tgt(env)));
  return c.acc;
}

Verdict sim_tgt_check(const TgtTy& T, unsigned k, const TgtTermPtr& M, const TgtTermPtr& Mp, const EquivCfg& cfg) {
  if (!is_closed(M) || !is_closed(Mp)) throw std::invalid_argument("sim_tgt_check requires closed terms");
  TgtEvalResult r = eval(M, k);
  if (!r.is_value()) return Verdict{};
  TgtEvalResult rp = eval(Mp, cfg.fuel);
  if (rp.kind == TgtEvalResult::Kind::Timeout)
    return Verdict{VerdictKind::Unknown, "right side produced no value within fuel " + std::to_string(cfg.fuel), 0};
  if (rp.kind == TgtEvalResult::Kind::Stuck)
    return shape_fail("left side evaluates to " + print_tgt(r.term) + " but right side is stuck at " +
                      print_tgt(rp.term));
  return equiv_tgt_check(T, k - static_cast<unsigned>(r.steps), r.term, rp.term, cfg);
}

Verdict equiv_tgt_check(const TgtTy& T, unsigned k, const TgtTermPtr& V, const TgtTermPtr& Vp,
                        const EquivCfg& cfg) {
  if (!is_value(V) || !is_value(Vp)) throw std::invalid_argument("equiv_tgt_check requires values");
  if (!is_closed(V) || !is_closed(Vp)) return shape_fail("values are not closed");
  switch (T->kind) {
    case TgtTypeKind::Nat: {
      if (V->kind != TermKind::Num || Vp->kind != TermKind::Num)
        return shape_fail("expected numerals at nat: " + print_tgt(V) + " vs " + print_tgt(Vp));
      if (V->value != Vp->value)
        return shape_fail("numerals differ: " + V->value.str() + " vs " + Vp->value.str());
      return Verdict{};
    }
    case TgtTypeKind::Unit: {
      if (V->kind != TermKind::Unit || Vp->kind != TermKind::Unit)
        return shape_fail("expected units: " + print_tgt(V) + " vs " + print_tgt(Vp));
      return Verdict{};
    }
    case TgtTypeKind::Rigid:
      return shape_fail("rigid types relate no observable values");
    case TgtTypeKind::Prod: {
      if (V->kind != TermKind::Pair || Vp->kind != TermKind::Pair)
        return shape_fail("expected pairs at product type: " + print_tgt(V) + " vs " + print_tgt(Vp));
      Conj c;
      if (!c.add(prefixed(equiv_tgt_check(T->a, k, V->t1, Vp->t1, cfg), "first component: "))) return c.acc;
      c.add(prefixed(equiv_tgt_check(T->b, k, V->t2, Vp->t2, cfg), "second component: "));
      return c.acc;
    }
    case TgtTypeKind::Code: {
      if (V->kind != TermKind::Abs || Vp->kind != TermKind::Abs)
        return shape_fail("expected abstractions at code type: " + print_tgt(V) + " vs " + print_tgt(Vp));
      if (k == 0) return Verdict{};
      unsigned lower = k - 1;
      Conj c;
      if (!c.add(equiv_tgt_check(T, lower, V, Vp, cfg))) return c.acc;
      for (const TgtRelatedPair& e : cfg.tgt_corpus) {
        if (!type_equal(e.type, T->a)) continue;
        if (!equiv_tgt_check(T->a, lower, e.left, e.right, cfg).related()) continue;
        TgtTermPtr left = subst(V->t1, TgtValueSubst{{V->b1, e.left}});
        TgtTermPtr right = subst(Vp->t1, TgtValueSubst{{Vp->b1, e.right}});
        Verdict s = sim_tgt_check(T->b, lower, left, right, cfg);
        s.probes += 1;
        if (!c.add(prefixed(std::move(s), "instantiated with " + print_tgt(e.left) + ": "))) return c.acc;
      }
      return c.acc;
    }
    case TgtTypeKind::Arr: {
      if (!closure_shape(V) || !closure_shape(Vp))
        return shape_fail("expected closures of abstractions at arrow type: " + print_tgt(V) + " vs " +
                          print_tgt(Vp));
      if (k == 0) return Verdict{};
      unsigned lower = k - 1;
      Conj c;
      if (!c.add(equiv_tgt_check(T, lower, V, Vp, cfg))) return c.acc;
      bool self_related = c.acc.kind == VerdictKind::Related;

      std::vector<const TgtRelatedPair*> args;
      for (const TgtRelatedPair& e : cfg.tgt_corpus) {
        if (args.size() >= cfg.samples_per_quantifier) break;
        if (!type_equal(e.type, T->a)) continue;
        if (equiv_tgt_check(T->a, lower, e.left, e.right, cfg).related()) args.push_back(&e);
      }
      std::vector<std::pair<TgtTermPtr, TgtTermPtr>> closures;
      if (self_related) closures.emplace_back(V, Vp);
      for (const TgtRelatedPair& e : cfg.tgt_corpus) {
        if (closures.size() >= cfg.samples_per_quantifier) break;
        if (!type_equal(e.type, T)) continue;
        if (alpha_eq(e.left, V) && alpha_eq(e.right, Vp)) continue;
        if (equiv_tgt_check(T, lower, e.left, e.right, cfg).related()) closures.emplace_back(e.left, e.right);
      }

      for (const TgtRelatedPair* a : args) {
        for (const auto& [cl, cr] : closures) {
          TgtTermPtr left =
              subst(V->t1->t1, TgtValueSubst{{V->t1->b1, tgt::pair(cl, tgt::pair(a->left, V->t2))}});
          TgtTermPtr right =
              subst(Vp->t1->t1, TgtValueSubst{{Vp->t1->b1, tgt::pair(cr, tgt::pair(a->right, Vp->t2))}});
          Verdict s = sim_tgt_check(T->b, lower, left, right, cfg);
          s.probes += 1;
          if (!c.add(prefixed(std::move(s), "instantiated with argument " + print_tgt(a->left) + ": ")))
            return c.acc;
        }
      }
      return c.acc;
    }
  }
  return shape_fail("malformed type");
}

EquivCfg default_equiv_cfg() {
  EquivCfg cfg;
  for (unsigned long i : {0ul, 1ul, 2ul, 7ul})
    cfg.corpus.push_back({src::num(i), tgt::num(i), styp::nat()});
  cfg.corpus.push_back({src::unit(), tgt::unit(), styp::unit()});
  cfg.corpus.push_back({src::pair(src::num(1ul), src::num(2ul)), tgt::pair(tgt::num(1ul), tgt::num(2ul)),
                        styp::prod(styp::nat(), styp::nat())});

  SrcTy nn = styp::arr(styp::nat(), styp::nat());
  Name f = fresh("f"), x = fresh("x");
  SrcTermPtr identity = src::fix(nn, styp::nat(), f, x, src::var(x));
  Name f2 = fresh("f"), x2 = fresh("x");
  SrcTermPtr successor = src::fix(nn, styp::nat(), f2, x2, src::plus(src::var(x2), src::num(1ul)));
  for (const SrcTermPtr& fn : {identity, successor}) {
    TgtTermPtr image = cc_program(fn);
    cfg.corpus.push_back({fn, image, nn});
    cfg.tgt_corpus.push_back({image, image, translate_type(nn)});
  }

  for (unsigned long i : {0ul, 1ul, 2ul, 7ul})
    cfg.tgt_corpus.push_back({tgt::num(i), tgt::num(i), ttyp::nat()});
  cfg.tgt_corpus.push_back({tgt::unit(), tgt::unit(), ttyp::unit()});
  cfg.tgt_corpus.push_back({tgt::pair(tgt::num(1ul), tgt::num(2ul)), tgt::pair(tgt::num(1ul), tgt::num(2ul)),
                            ttyp::prod(ttyp::nat(), ttyp::nat())});
  return cfg;
}

nlohmann::json verdict_json(const std::string& type_text, unsigned index, const Verdict& v) {
  nlohmann::json j;
  j["schema"] = 1;
  j["type"] = type_text;
  j["index"] = index;
  j["verdict"] = verdict_name(v.kind);
  j["witness"] = v.witness;
  j["probes"] = v.probes;
  return j;
}

}  // namespace fcc
