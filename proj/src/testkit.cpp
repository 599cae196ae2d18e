// SPDX-License-Identifier: Apache-2.0
#include "fcc/testkit.hpp"

#include <sstream>
#include <stdexcept>

#include "fcc/closure_convert.hpp"
#include "fcc/cps.hpp"
#include "fcc/eval.hpp"
#include "fcc/hoist.hpp"
#include "fcc/printer.hpp"

namespace fcc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SrcTy gen_type(Rng& rng, unsigned depth) {
  std::uint64_t roll = rng.below(10);
  if (depth == 0) return roll < 7 ? styp::nat() : styp::unit();
  if (roll < 5) return styp::nat();
  if (roll < 6) return styp::unit();
  if (roll < 8) return styp::prod(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
  return styp::arr(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
}

struct Generator {
  Rng& rng;

  std::vector<Name> vars_of(const SrcCtx& ctx, const SrcTy& t) {
    std::vector<Name> out;
    for (const auto& [x, xt] : ctx.entries())
      if (type_equal(xt, t)) out.push_back(x);
    return out;
  }

  SrcTermPtr leaf(const SrcCtx& ctx, const SrcTy& t) {
    std::vector<Name> vs = vars_of(ctx, t);
    if (!vs.empty() && rng.chance(1, 2)) return src::var(vs[rng.below(vs.size())]);
    switch (t->kind) {
      case SrcTypeKind::Nat:
        return src::num(rng.below(10));
      case SrcTypeKind::Unit:
        return src::unit();
      case SrcTypeKind::Prod:
        return src::pair(leaf(ctx, t->a), leaf(ctx, t->b));
      case SrcTypeKind::Arr: {
        Name f = fresh("f"), x = fresh("x");
        SrcCtx inner = ctx.extended(f, t).extended(x, t->a);
        return src::fix(t, t->a, f, x, leaf(inner, t->b));
      }
    }
    return src::unit();
  }

  SrcTermPtr term(const SrcCtx& ctx, const SrcTy& t, unsigned size) {
    if (size <= 1) return leaf(ctx, t);
    std::vector<Name> vs = vars_of(ctx, t);

    enum class P { Var, Let, Ifz, App, Fst, Snd, Num, Plus, Pred, Unit, Pair, Fix };
    std::vector<std::pair<P, unsigned>> weighted;
    if (!vs.empty()) weighted.emplace_back(P::Var, 2);
    weighted.emplace_back(P::Let, 3);
    weighted.emplace_back(P::Ifz, 2);
    weighted.emplace_back(P::App, 3);
    weighted.emplace_back(P::Fst, 1);
    weighted.emplace_back(P::Snd, 1);
    switch (t->kind) {
      case SrcTypeKind::Nat:
        weighted.emplace_back(P::Num, 1);
        weighted.emplace_back(P::Plus, 5);
        weighted.emplace_back(P::Pred, 2);
        break;
      case SrcTypeKind::Unit:
        weighted.emplace_back(P::Unit, 2);
        break;
      case SrcTypeKind::Prod:
        weighted.emplace_back(P::Pair, 6);
        break;
      case SrcTypeKind::Arr:
        weighted.emplace_back(P::Fix, 6);
        break;
    }
    unsigned total = 0;
    for (auto& [p, w] : weighted) total += w;
    std::uint64_t roll = rng.below(total);
    P choice = weighted.back().first;
    for (auto& [p, w] : weighted) {
      if (roll < w) {
        choice = p;
        break;
      }
      roll -= w;
    }

    unsigned half = size / 2 ? size / 2 : 1;
    unsigned third = size / 3 ? size / 3 : 1;
    switch (choice) {
      case P::Var:
        return src::var(vs[rng.below(vs.size())]);
      case P::Num:
        return src::num(rng.below(10));
      case P::Unit:
        return src::unit();
      case P::Plus:
        return src::plus(term(ctx, t, half), term(ctx, t, size - half));
      case P::Pred:
        return src::pred(term(ctx, t, size - 1));
      case P::Pair:
        return src::pair(term(ctx, t->a, half), term(ctx, t->b, size - half));
      case P::Ifz:
        return src::ifz(term(ctx, styp::nat(), third), term(ctx, t, third), term(ctx, t, third));
      case P::Fst: {
        SrcTy other = gen_type(rng, 1);
        return src::fst(term(ctx, styp::prod(t, other), size - 1));
      }
      case P::Snd: {
        SrcTy other = gen_type(rng, 1);
        return src::snd(term(ctx, styp::prod(other, t), size - 1));
      }
      case P::Let: {
        SrcTy bt = gen_type(rng, 2);
        SrcTermPtr bound = term(ctx, bt, half);
        Name x = fresh("v");
        return src::let(std::move(bound), x, term(ctx.extended(x, bt), t, size - half));
      }
      case P::App: {
        SrcTy at = gen_type(rng, 1);
        SrcTermPtr fn = term(ctx, styp::arr(at, t), half);
        return src::app(std::move(fn), term(ctx, at, size - half));
      }
      case P::Fix: {
        Name f = fresh("f"), x = fresh("x");
        SrcCtx inner = ctx.extended(f, t).extended(x, t->a);
        return src::fix(t, t->a, f, x, term(inner, t->b, size - 1));
      }
    }
    return leaf(ctx, t);
  }
};

}  // namespace

std::pair<SrcTermPtr, SrcTy> TypedGenerator::at(std::uint64_t index) const {
  Rng rng(splitmix64(cfg_.seed ^ splitmix64(index + 1)));
  SrcTy t = cfg_.type_target ? *cfg_.type_target : gen_type(rng, 2);
  unsigned size = 2 + static_cast<unsigned>(rng.below(cfg_.max_size > 2 ? cfg_.max_size - 2 : 1));
  Generator g{rng};
  SrcTermPtr m = g.term(SrcCtx{}, t, size);
  // checked, not trusted
  if (!is_closed(m)) throw std::logic_error("generator produced an open term");
  SrcTy actual = type_of_src(SrcCtx{}, m);
  if (!type_equal(actual, t)) throw std::logic_error("generator produced a term of the wrong type");
  return {std::move(m), std::move(t)};
}

SrcTermPtr gen_value(Rng& rng, const SrcTy& type) {
  switch (type->kind) {
    case SrcTypeKind::Nat:
      return src::num(rng.below(10));
    case SrcTypeKind::Unit:
      return src::unit();
    case SrcTypeKind::Prod:
      return src::pair(gen_value(rng, type->a), gen_value(rng, type->b));
    case SrcTypeKind::Arr: {
      Name f = fresh("f"), x = fresh("x");
      SrcTermPtr body =
          type_equal(type->a, type->b) && rng.chance(1, 2) ? src::var(x) : gen_value(rng, type->b);
      return src::fix(type, type->a, f, x, std::move(body));
    }
  }
  return src::unit();
}

namespace {

void collect_cases(const SrcTermPtr& m, const SrcCtx& ctx, std::vector<OpenCase>& out) {
  if (!m) return;
  out.push_back({ctx, m, type_of_src(ctx, m)});
  switch (m->kind) {
    case TermKind::Let: {
      collect_cases(m->t1, ctx, out);
      collect_cases(m->t2, ctx.extended(m->b1, type_of_src(ctx, m->t1)), out);
      return;
    }
    case TermKind::Fix: {
      collect_cases(m->t1, ctx.extended(m->b1, m->ann1).extended(m->b2, m->ann2), out);
      return;
    }
    default:
      collect_cases(m->t1, ctx, out);
      collect_cases(m->t2, ctx, out);
      collect_cases(m->t3, ctx, out);
      return;
  }
}

}  // namespace

std::vector<OpenCase> open_subterm_cases(const SrcTermPtr& closed_root) {
  std::vector<OpenCase> out;
  collect_cases(closed_root, SrcCtx{}, out);
  return out;
}

const char* pass_name(Pass p) {
  switch (p) {
    case Pass::Cc:
      return "cc";
    case Pass::CcHoist:
      return "cc+hoist";
    case Pass::Cps:
      return "cps";
  }
  return "?";
}

namespace {

enum class Outcome { NotTerminating, Agreed, Failed };

struct CaseResult {
  Outcome outcome;
  std::string detail;
};

CaseResult run_case(Pass pass, const SrcTermPtr& m, std::uint64_t src_fuel, std::uint64_t transformed_fuel) {
  SrcEvalResult r = eval(m, src_fuel);
  if (!r.is_value()) return {Outcome::NotTerminating, {}};
  if (r.term->kind != TermKind::Num)
    return {Outcome::Failed, "source value is not a numeral: " + print_src(r.term)};
  const Nat& expected = r.term->value;
  try {
    auto disagree = [&](const std::string& side, const std::string& got) {
      return CaseResult{Outcome::Failed, side + " disagrees: expected " + expected.str() + ", got " + got};
    };
    switch (pass) {
      case Pass::Cc:
      case Pass::CcHoist: {
        TgtTermPtr converted = cc_program(m);
        if (pass == Pass::CcHoist) converted = reify(hoist(converted));
        TgtEvalResult rt = eval(converted, transformed_fuel);
        if (rt.kind == TgtEvalResult::Kind::Timeout)
          return disagree(pass_name(pass), "no value within fuel " + std::to_string(transformed_fuel));
        if (rt.kind == TgtEvalResult::Kind::Stuck) return disagree(pass_name(pass), "stuck");
        if (rt.term->kind != TermKind::Num || rt.term->value != expected)
          return disagree(pass_name(pass), print_tgt(rt.term));
        return {Outcome::Agreed, {}};
      }
      case Pass::Cps: {
        SrcTermPtr converted = cps_program(m);
        SrcEvalResult rs = eval(converted, transformed_fuel);
        if (rs.kind == SrcEvalResult::Kind::Timeout)
          return disagree("cps", "no value within fuel " + std::to_string(transformed_fuel));
        if (rs.kind == SrcEvalResult::Kind::Stuck) return disagree("cps", "stuck");
        if (rs.term->kind != TermKind::Num || rs.term->value != expected)
          return disagree("cps", print_src(rs.term));
        return {Outcome::Agreed, {}};
      }
    }
  } catch (const std::exception& e) {
    return {Outcome::Failed, std::string("pass raised: ") + e.what()};
  }
  return {Outcome::Failed, "unknown pass"};
}

}  // namespace

Report differential_run(Pass pass, const GenCfg& cfg, std::uint64_t count, std::uint64_t transformed_fuel) {
  GenCfg gen_cfg = cfg;
  gen_cfg.type_target = styp::nat();
  TypedGenerator gen(gen_cfg);

  Report report;
  report.pass = pass;
  report.seed = cfg.seed;
  report.src_fuel = cfg.fuel;
  report.transformed_fuel = transformed_fuel;

  for (std::uint64_t i = 0; i < count; ++i) {
    SrcTermPtr m = gen.next().first;
    ++report.total;
    CaseResult res = run_case(pass, m, cfg.fuel, transformed_fuel);
    if (res.outcome == Outcome::NotTerminating) continue;
    ++report.terminated;
    if (res.outcome == Outcome::Agreed) {
      ++report.agreed;
      continue;
    }
    auto still_fails = [&](const SrcTermPtr& cand) {
      return run_case(pass, cand, cfg.fuel, transformed_fuel).outcome == Outcome::Failed;
    };
    SrcTermPtr small = shrink(m, still_fails);
    report.counterexamples.push_back(
        {print_src(m), print_src(small), run_case(pass, small, cfg.fuel, transformed_fuel).detail});
  }
  return report;
}

namespace {

void local_alternatives(const SrcTermPtr& m, std::vector<SrcTermPtr>& out) {
  switch (m->kind) {
    case TermKind::Num:
      if (m->value > 0) {
        out.push_back(src::num(0ul));
        if (m->value > 1) out.push_back(src::num(m->value / 2));
      }
      return;
    case TermKind::Pred:
    case TermKind::Fst:
    case TermKind::Snd:
      out.push_back(m->t1);
      return;
    case TermKind::Plus:
    case TermKind::Pair:
    case TermKind::App:
      out.push_back(m->t1);
      out.push_back(m->t2);
      return;
    case TermKind::Ifz:
      out.push_back(m->t2);
      out.push_back(m->t3);
      out.push_back(m->t1);
      return;
    case TermKind::Let: {
      std::vector<Name> fv = free_vars(m->t2);
      bool unused = true;
      for (const Name& x : fv) unused = unused && !(x == m->b1);
      if (unused) out.push_back(m->t2);
      out.push_back(m->t1);
      return;
    }
    default:
      return;
  }
}

SrcTermPtr replace_child(const SrcTermPtr& m, int slot, const SrcTermPtr& repl) {
  SrcTerm copy = *m;
  (slot == 0 ? copy.t1 : slot == 1 ? copy.t2 : copy.t3) = repl;
  return detail::mk<SrcType>(std::move(copy));
}

// Whole-term candidates from one local rewrite anywhere in the term.
void candidates(const SrcTermPtr& m, const std::function<SrcTermPtr(const SrcTermPtr&)>& plug,
                std::vector<SrcTermPtr>& out) {
  std::vector<SrcTermPtr> alts;
  local_alternatives(m, alts);
  for (const SrcTermPtr& a : alts) out.push_back(plug(a));
  const SrcTermPtr* children[3] = {&m->t1, &m->t2, &m->t3};
  for (int i = 0; i < 3; ++i) {
    if (!*children[i]) continue;
    candidates(*children[i],
               [&, i](const SrcTermPtr& repl) { return plug(replace_child(m, i, repl)); }, out);
  }
}

}  // namespace

SrcTermPtr shrink(const SrcTermPtr& failing, const std::function<bool(const SrcTermPtr&)>& still_fails) {
  SrcTy want;
  try {
    want = type_of_src(SrcCtx{}, failing);
  } catch (const TypeError&) {
    return failing;  // nothing to do for ill-typed inputs
  }
  SrcTermPtr cur = failing;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<SrcTermPtr> cands;
    candidates(cur, [](const SrcTermPtr& t) { return t; }, cands);
    for (const SrcTermPtr& cand : cands) {
      if (!is_closed(cand)) continue;
      try {
        if (!type_equal(type_of_src(SrcCtx{}, cand), want)) continue;
      } catch (const TypeError&) {
        continue;
      }
      if (still_fails(cand)) {
        cur = cand;
        progress = true;
        break;
      }
    }
  }
  return cur;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["pass"] = pass_name(pass);
  j["seed"] = seed;
  j["total"] = total;
  j["terminated"] = terminated;
  j["agreed"] = agreed;
  j["src_fuel"] = src_fuel;
  j["transformed_fuel"] = transformed_fuel;
  j["counterexamples"] = nlohmann::json::array();
  for (const Counterexample& c : counterexamples)
    j["counterexamples"].push_back({{"original", c.original}, {"shrunk", c.shrunk}, {"detail", c.detail}});
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "pass: " << pass_name(pass) << "\n"
     << "seed: " << seed << "\n"
     << "total: " << total << "\n"
     << "terminated: " << terminated << "\n"
     << "agreed: " << agreed << "\n"
     << "src_fuel: " << src_fuel << "\n"
     << "transformed_fuel: " << transformed_fuel << "\n"
     << "counterexamples: " << counterexamples.size() << "\n";
  for (std::size_t i = 0; i < counterexamples.size(); ++i) {
    os << "counterexample " << i + 1 << ": " << counterexamples[i].shrunk << "\n"
       << "  detail: " << counterexamples[i].detail << "\n";
  }
  return os.str();
}

}  // namespace fcc
