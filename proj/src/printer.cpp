// SPDX-License-Identifier: Apache-2.0
#include "fcc/printer.hpp"

#include <cctype>
#include <algorithm>
#include <map>
#include <set>

#include "fcc/parser.hpp"

namespace fcc {

namespace {

std::string show_type(const SrcTy& t) {
  switch (t->kind) {
    case SrcTypeKind::Nat:
      return "nat";
    case SrcTypeKind::Unit:
      return "unit";
    case SrcTypeKind::Prod:
      return "(* " + show_type(t->a) + " " + show_type(t->b) + ")";
    case SrcTypeKind::Arr:
      return "(-> " + show_type(t->a) + " " + show_type(t->b) + ")";
  }
  return "?";
}

std::string show_type(const TgtTy& t) {
  switch (t->kind) {
    case TgtTypeKind::Nat:
      return "nat";
    case TgtTypeKind::Unit:
      return "unit";
    case TgtTypeKind::Prod:
      return "(* " + show_type(t->a) + " " + show_type(t->b) + ")";
    case TgtTypeKind::Arr:
      return "(-> " + show_type(t->a) + " " + show_type(t->b) + ")";
    case TgtTypeKind::Code:
      return "(=> " + show_type(t->a) + " " + show_type(t->b) + ")";
    case TgtTypeKind::Rigid:
      return "(rigid " + std::to_string(t->rigid_id) + ")";
  }
  return "?";
}

bool reserved_word(const std::string& s) {
  return is_term_keyword(s) || s == "nat" || s == "rigid";
}

std::string sanitize(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '%' || c == '\'' || c == '-')
      out.push_back(c);
  }
  if (out.empty()) out = "v";
  if (std::isdigit(static_cast<unsigned char>(out[0]))) out = "v" + out;
  return out;
}

template <class TypeT>
class Printer {
 public:
  using Ptr = typename Term<TypeT>::Ptr;

  explicit Printer(const Ptr& root, const std::vector<Name>& except = {}) {
    for (const Name& f : free_vars<TypeT>(root)) {
      if (std::find(except.begin(), except.end(), f) == except.end()) intern_free(f);
    }
  }

  // For letfun printing: pre-register top-level function names.
  void preload_binders(const std::vector<Name>& names) {
    for (const Name& n : names) scope_.emplace_back(n, pick(n));
  }

  void print(const Ptr& m, std::string& out) {
    switch (m->kind) {
      case TermKind::Num:
        out += m->value.str();
        return;
      case TermKind::Var:
        out += render(m->var);
        return;
      case TermKind::Unit:
        out += "()";
        return;
      case TermKind::Pred:
        unary("pred", m, out);
        return;
      case TermKind::Fst:
        unary("fst", m, out);
        return;
      case TermKind::Snd:
        unary("snd", m, out);
        return;
      case TermKind::Plus:
        binary("plus", m, out);
        return;
      case TermKind::Pair:
        binary("pair", m, out);
        return;
      case TermKind::App:
        binary("app", m, out);
        return;
      case TermKind::Clos:
        binary("clos", m, out);
        return;
      case TermKind::Ifz:
        out += "(ifz ";
        print(m->t1, out);
        out += " ";
        print(m->t2, out);
        out += " ";
        print(m->t3, out);
        out += ")";
        return;
      case TermKind::Let: {
        out += "(let ((";
        std::size_t mark = push(m->b1);
        out += scope_.back().second;
        out += " ";
        {
          // the bound term is outside x's scope
          std::string bound;
          pop_to(mark);
          print(m->t1, bound);
          push(m->b1);
          out += bound;
        }
        out += ")) ";
        print(m->t2, out);
        out += ")";
        pop_to(mark);
        return;
      }
      case TermKind::Fix: {
        std::size_t mark = scope_.size();
        push(m->b1);
        push(m->b2);
        out += "(fix (" + scope_[mark].second + " : " + show_type(m->ann1) + ") (" + scope_[mark + 1].second +
               " : " + show_type(m->ann2) + ") ";
        print(m->t1, out);
        out += ")";
        pop_to(mark);
        return;
      }
      case TermKind::Abs: {
        std::size_t mark = push(m->b1);
        out += "(abs (" + scope_[mark].second + " : " + show_type(m->ann1) + ") ";
        print(m->t1, out);
        out += ")";
        pop_to(mark);
        return;
      }
      case TermKind::Open: {
        out += "(open ";
        print(m->t1, out);
        std::size_t mark = scope_.size();
        push(m->b1);
        push(m->b2);
        out += " (" + scope_[mark].second + " " + scope_[mark + 1].second + ") ";
        print(m->t2, out);
        out += ")";
        pop_to(mark);
        return;
      }
    }
  }

 private:
  void unary(const char* kw, const Ptr& m, std::string& out) {
    out += "(";
    out += kw;
    out += " ";
    print(m->t1, out);
    out += ")";
  }
  void binary(const char* kw, const Ptr& m, std::string& out) {
    out += "(";
    out += kw;
    out += " ";
    print(m->t1, out);
    out += " ";
    print(m->t2, out);
    out += ")";
  }

  void intern_free(const Name& n) {
    if (free_.count(n)) return;
    std::string base = sanitize(n.text);
    std::string cand = base;
    for (unsigned i = 2; reserved_word(cand) || taken_free_.count(cand); ++i)
      cand = base + "_" + std::to_string(i);
    taken_free_.insert(cand);
    free_.emplace(n, cand);
  }

  std::string pick(const Name& n) const {
    std::string base = sanitize(n.text);
    std::string cand = base;
    for (unsigned i = 2; reserved_word(cand) || taken_free_.count(cand) || in_scope(cand); ++i)
      cand = base + "_" + std::to_string(i);
    return cand;
  }

  bool in_scope(const std::string& s) const {
    for (const auto& [n, r] : scope_)
      if (r == s) return true;
    return false;
  }

  std::size_t push(const Name& n) {
    scope_.emplace_back(n, pick(n));
    return scope_.size() - 1;
  }

  void pop_to(std::size_t mark) { scope_.resize(mark); }

  std::string render(const Name& n) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == n) return it->second;
    auto f = free_.find(n);
    if (f != free_.end()) return f->second;
    return sanitize(n.text);  // unreachable for well-scanned roots
  }

  std::vector<std::pair<Name, std::string>> scope_;
  std::map<Name, std::string> free_;
  std::set<std::string> taken_free_;
};

}  // namespace

std::string print_src(const SrcTermPtr& m) {
  Printer<SrcType> p(m);
  std::string out;
  p.print(m, out);
  return out;
}

std::string print_tgt(const TgtTermPtr& m) {
  Printer<TgtType> p(m);
  std::string out;
  p.print(m, out);
  return out;
}

std::string print_type(const SrcTy& t) { return show_type(t); }
std::string print_type(const TgtTy& t) { return show_type(t); }

std::string print_letfun(const std::vector<std::pair<Name, TgtTermPtr>>& funs, const TgtTermPtr& main) {
  std::vector<Name> names;
  names.reserve(funs.size());
  for (const auto& [n, f] : funs) names.push_back(n);
  Printer<TgtType> p(main, names);
  p.preload_binders(names);
  std::string out = "(letfun (";
  for (std::size_t i = 0; i < funs.size(); ++i) {
    if (i) out += " ";
    std::string body = print_tgt(funs[i].second);  // bodies are closed
    out += "(";
    // reuse the renders chosen by the preloaded scope
    {
      std::string nm;
      p.print(tgt::var(funs[i].first), nm);
      out += nm;
    }
    out += " " + body + ")";
  }
  out += ") ";
  p.print(main, out);
  out += ")";
  return out;
}

}  // namespace fcc
