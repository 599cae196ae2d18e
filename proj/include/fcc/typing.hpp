// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcc/term.hpp"

namespace fcc {

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeMismatch : TypeError {
  std::string expected, found, location;
  TypeMismatch(std::string expected_, std::string found_, std::string location_)
      : TypeError("type mismatch: expected " + expected_ + ", found " + found_ + " in " + location_),
        expected(std::move(expected_)),
        found(std::move(found_)),
        location(std::move(location_)) {}
};

struct UnboundVariable : TypeError {
  Name name;
  explicit UnboundVariable(Name n) : TypeError("unbound variable " + show(n)), name(std::move(n)) {}
};

struct RigidEscape : TypeError {
  std::uint64_t id;
  explicit RigidEscape(std::uint64_t id_)
      : TypeError("opaque environment type (rigid " + std::to_string(id_) + ") escapes its open"), id(id_) {}
};

struct ClosureNotClosed : TypeError {
  Name needed;
  explicit ClosureNotClosed(Name n)
      : TypeError("closure code is not closed: needs " + show(n) + " from the context"), needed(std::move(n)) {}
};

// Ordered list of assignments; lookup returns the most recent binding.
template <class TyPtr>
class BasicCtx {
 public:
  BasicCtx() = default;

  void push(Name x, TyPtr t) { entries_.emplace_back(std::move(x), std::move(t)); }

  BasicCtx extended(Name x, TyPtr t) const {
    BasicCtx c = *this;
    c.push(std::move(x), std::move(t));
    return c;
  }

  const TyPtr* lookup(const Name& x) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  bool contains(const Name& x) const { return lookup(x) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<Name, TyPtr>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<Name, TyPtr>> entries_;
};

using SrcCtx = BasicCtx<SrcTy>;
using TgtCtx = BasicCtx<TgtTy>;

SrcTy type_of_src(const SrcCtx& ctx, const SrcTermPtr& m);

// Target typing. Closure code is checked in the empty context; `open`
// types its body under a freshly allocated rigid environment type and
// rejects results that mention it.
TgtTy type_of_tgt(const TgtCtx& ctx, const TgtTermPtr& m);

// Same rules except closure code is typed in the enclosing context.
// Hoisted programs replace closure code with applications of hoisted
// function names, which the closedness side condition of the strict rule
// rejects; their annotations are computed with this variant.
TgtTy type_of_tgt_lenient(const TgtCtx& ctx, const TgtTermPtr& m);

// Homomorphic; source arrows become target closure arrows.
TgtTy translate_type(const SrcTy& t);

// Restriction of `ctx` to `vars`, in `vars` order (context strengthening).
template <class TyPtr>
BasicCtx<TyPtr> prune_ctx(const std::vector<Name>& vars, const BasicCtx<TyPtr>& ctx) {
  BasicCtx<TyPtr> out;
  for (const Name& x : vars) {
    const TyPtr* t = ctx.lookup(x);
    if (!t) throw UnboundVariable(x);
    out.push(x, *t);
  }
  return out;
}

}  // namespace fcc
