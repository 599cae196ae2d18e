// SPDX-License-Identifier: Apache-2.0
#include "fcc/parser.hpp"

#include <map>

namespace fcc {

namespace {

const char* kKeywords[] = {"pred", "plus", "ifz",  "unit", "pair", "fst",    "snd", "let",
                           "fix",  "abs",  "app",  "clos", "open", "cps",    "letfun"};

bool keyword(std::string_view s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw SyntaxError(e.line, e.col, msg); }

SrcTy parse_ty_src(const SExpr& e);
TgtTy parse_ty_tgt(const SExpr& e);

SrcTy parse_ty_src(const SExpr& e) {
  if (e.kind == SExpr::Kind::Sym) {
    if (e.sym == "nat") return styp::nat();
    if (e.sym == "unit") return styp::unit();
    fail(e, "unknown type '" + e.sym + "'");
  }
  if (e.kind == SExpr::Kind::List) {
    if (e.items.empty()) fail(e, "empty type");
    const SExpr& h = e.items[0];
    if (h.kind == SExpr::Kind::Sym && e.items.size() == 3) {
      if (h.sym == "*") return styp::prod(parse_ty_src(e.items[1]), parse_ty_src(e.items[2]));
      if (h.sym == "->") return styp::arr(parse_ty_src(e.items[1]), parse_ty_src(e.items[2]));
      if (h.sym == "=>") fail(e, "'=>' is a target-language type");
    }
    if (h.kind == SExpr::Kind::Sym && h.sym == "rigid") fail(e, "'rigid' is a target-language type");
    fail(e, "malformed type");
  }
  fail(e, "malformed type");
}

TgtTy parse_ty_tgt(const SExpr& e) {
  if (e.kind == SExpr::Kind::Sym) {
    if (e.sym == "nat") return ttyp::nat();
    if (e.sym == "unit") return ttyp::unit();
    fail(e, "unknown type '" + e.sym + "'");
  }
  if (e.kind == SExpr::Kind::List) {
    if (e.items.empty()) fail(e, "empty type");
    const SExpr& h = e.items[0];
    if (h.kind == SExpr::Kind::Sym && e.items.size() == 3) {
      if (h.sym == "*") return ttyp::prod(parse_ty_tgt(e.items[1]), parse_ty_tgt(e.items[2]));
      if (h.sym == "->") return ttyp::arr(parse_ty_tgt(e.items[1]), parse_ty_tgt(e.items[2]));
      if (h.sym == "=>") return ttyp::code(parse_ty_tgt(e.items[1]), parse_ty_tgt(e.items[2]));
    }
    if (h.kind == SExpr::Kind::Sym && h.sym == "rigid" && e.items.size() == 2 &&
        e.items[1].kind == SExpr::Kind::Num) {
      std::uint64_t id = static_cast<std::uint64_t>(e.items[1].num);
      bump_stamp_floor(id);
      return ttyp::rigid(id);
    }
    fail(e, "malformed type");
  }
  fail(e, "malformed type");
}

// Per-language glue for the shared term grammar.
struct SrcLang {
  static constexpr bool target = false;
  using Ptr = SrcTermPtr;
  using Ty = SrcTy;
  static Ty type(const SExpr& e) { return parse_ty_src(e); }
  static Ptr num(Nat n) { return src::num(std::move(n)); }
  static Ptr var(Name x) { return src::var(std::move(x)); }
  static Ptr pred(Ptr m) { return src::pred(std::move(m)); }
  static Ptr plus(Ptr a, Ptr b) { return src::plus(std::move(a), std::move(b)); }
  static Ptr ifz(Ptr c, Ptr a, Ptr b) { return src::ifz(std::move(c), std::move(a), std::move(b)); }
  static Ptr unit() { return src::unit(); }
  static Ptr pair(Ptr a, Ptr b) { return src::pair(std::move(a), std::move(b)); }
  static Ptr fst(Ptr m) { return src::fst(std::move(m)); }
  static Ptr snd(Ptr m) { return src::snd(std::move(m)); }
  static Ptr let(Ptr v, Name x, Ptr b) { return src::let(std::move(v), std::move(x), std::move(b)); }
  static Ptr app(Ptr f, Ptr a) { return src::app(std::move(f), std::move(a)); }
};

struct TgtLang {
  static constexpr bool target = true;
  using Ptr = TgtTermPtr;
  using Ty = TgtTy;
  static Ty type(const SExpr& e) { return parse_ty_tgt(e); }
  static Ptr num(Nat n) { return tgt::num(std::move(n)); }
  static Ptr var(Name x) { return tgt::var(std::move(x)); }
  static Ptr pred(Ptr m) { return tgt::pred(std::move(m)); }
  static Ptr plus(Ptr a, Ptr b) { return tgt::plus(std::move(a), std::move(b)); }
  static Ptr ifz(Ptr c, Ptr a, Ptr b) { return tgt::ifz(std::move(c), std::move(a), std::move(b)); }
  static Ptr unit() { return tgt::unit(); }
  static Ptr pair(Ptr a, Ptr b) { return tgt::pair(std::move(a), std::move(b)); }
  static Ptr fst(Ptr m) { return tgt::fst(std::move(m)); }
  static Ptr snd(Ptr m) { return tgt::snd(std::move(m)); }
  static Ptr let(Ptr v, Name x, Ptr b) { return tgt::let(std::move(v), std::move(x), std::move(b)); }
  static Ptr app(Ptr f, Ptr a) { return tgt::app(std::move(f), std::move(a)); }
};

template <class L>
struct TermParser {
  // Innermost binding last; free occurrences share one Name per text.
  std::vector<std::pair<std::string, Name>> scope;
  std::map<std::string, Name> free_names;

  Name resolve(const SExpr& e) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == e.sym) return it->second;
    auto [it, inserted] = free_names.emplace(e.sym, raw_name(e.sym));
    return it->second;
  }

  Name binder(const SExpr& e) {
    if (e.kind != SExpr::Kind::Sym) fail(e, "expected a variable");
    if (keyword(e.sym) || e.sym == ":" || e.sym == "nat") fail(e, "'" + e.sym + "' cannot be a variable");
    return fresh(e.sym);
  }

  // (x : T)
  std::pair<Name, typename L::Ty> annotated_binder(const SExpr& e) {
    if (e.kind != SExpr::Kind::List || e.items.size() != 3 || e.items[1].kind != SExpr::Kind::Sym ||
        e.items[1].sym != ":")
      fail(e, "expected '(x : T)'");
    return {binder(e.items[0]), L::type(e.items[2])};
  }

  typename L::Ptr parse(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::Num:
        return L::num(e.num);
      case SExpr::Kind::Sym: {
        if (e.sym == "unit") return L::unit();
        if (keyword(e.sym) || e.sym == ":") fail(e, "keyword '" + e.sym + "' is not a term");
        return L::var(resolve(e));
      }
      case SExpr::Kind::List:
        break;
    }
    const auto& it = e.items;
    if (it.empty()) return L::unit();
    const SExpr& h = it[0];
    if (h.kind == SExpr::Kind::Sym && keyword(h.sym)) {
      const std::string& k = h.sym;
      auto want = [&](std::size_t n, const char* shape) {
        if (it.size() != n) fail(e, std::string("expected ") + shape);
      };
      if (k == "pred") {
        want(2, "(pred M)");
        return L::pred(parse(it[1]));
      }
      if (k == "fst") {
        want(2, "(fst M)");
        return L::fst(parse(it[1]));
      }
      if (k == "snd") {
        want(2, "(snd M)");
        return L::snd(parse(it[1]));
      }
      if (k == "plus") {
        want(3, "(plus M1 M2)");
        return L::plus(parse(it[1]), parse(it[2]));
      }
      if (k == "pair") {
        want(3, "(pair M1 M2)");
        return L::pair(parse(it[1]), parse(it[2]));
      }
      if (k == "app") {
        want(3, "(app M1 M2)");
        return L::app(parse(it[1]), parse(it[2]));
      }
      if (k == "ifz") {
        want(4, "(ifz M M1 M2)");
        return L::ifz(parse(it[1]), parse(it[2]), parse(it[3]));
      }
      if (k == "unit") {
        want(1, "unit");
        return L::unit();
      }
      if (k == "let") {
        want(3, "(let ((x M1)) M2)");
        if (it[1].kind != SExpr::Kind::List || it[1].items.size() != 1 ||
            it[1].items[0].kind != SExpr::Kind::List || it[1].items[0].items.size() != 2)
          fail(it[1], "expected a single binding '((x M1))'");
        const SExpr& b = it[1].items[0];
        auto bound = parse(b.items[1]);
        Name x = binder(b.items[0]);
        scope.emplace_back(b.items[0].sym, x);
        auto body = parse(it[2]);
        scope.pop_back();
        return L::let(std::move(bound), std::move(x), std::move(body));
      }
      if (k == "fix") {
        if constexpr (L::target) fail(e, "'fix' is a source-language form");
        else {
          want(4, "(fix (f : T) (x : T1) M)");
          auto [f, fT] = annotated_binder(it[1]);
          auto [x, xT] = annotated_binder(it[2]);
          scope.emplace_back(it[1].items[0].sym, f);
          scope.emplace_back(it[2].items[0].sym, x);
          auto body = parse(it[3]);
          scope.pop_back();
          scope.pop_back();
          return src::fix(fT, xT, f, x, std::move(body));
        }
      }
      if (k == "abs") {
        if constexpr (!L::target) fail(e, "'abs' is a target-language form");
        else {
          want(3, "(abs (x : T) M)");
          auto [x, xT] = annotated_binder(it[1]);
          scope.emplace_back(it[1].items[0].sym, x);
          auto body = parse(it[2]);
          scope.pop_back();
          return tgt::abs(xT, x, std::move(body));
        }
      }
      if (k == "clos") {
        if constexpr (!L::target) fail(e, "'clos' is a target-language form");
        else {
          want(3, "(clos M1 M2)");
          return tgt::clos(parse(it[1]), parse(it[2]));
        }
      }
      if (k == "open") {
        if constexpr (!L::target) fail(e, "'open' is a target-language form");
        else {
          want(4, "(open M1 (f e) M2)");
          auto scrut = parse(it[1]);
          if (it[2].kind != SExpr::Kind::List || it[2].items.size() != 2) fail(it[2], "expected '(f e)'");
          Name f = binder(it[2].items[0]);
          Name en = binder(it[2].items[1]);
          scope.emplace_back(it[2].items[0].sym, f);
          scope.emplace_back(it[2].items[1].sym, en);
          auto body = parse(it[3]);
          scope.pop_back();
          scope.pop_back();
          return tgt::open(std::move(scrut), std::move(f), std::move(en), std::move(body));
        }
      }
      fail(e, "'" + k + "' form is not supported here");
    }
    // implicit application
    if (it.size() != 2) fail(e, "expected an application '(M1 M2)'");
    auto f = parse(it[0]);
    return L::app(std::move(f), parse(it[1]));
  }
};

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    out.push_back(text[i] == '\r' ? '\n' : text[i]);
  }
  return out;
}

}  // namespace

bool is_term_keyword(std::string_view s) { return keyword(s); }

SrcTermPtr parse_src(std::string_view text) {
  TermParser<SrcLang> p;
  return p.parse(read_sexpr(normalize(text)));
}

TgtTermPtr parse_tgt(std::string_view text) {
  TermParser<TgtLang> p;
  return p.parse(read_sexpr(normalize(text)));
}

SrcTy parse_src_type(std::string_view text) { return parse_ty_src(read_sexpr(normalize(text))); }

TgtTy parse_tgt_type(std::string_view text) { return parse_ty_tgt(read_sexpr(normalize(text))); }

}  // namespace fcc
