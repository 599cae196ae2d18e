// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "fcc/term.hpp"
#include "fcc/typing.hpp"

namespace fcc {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnmappedVariable : TransformError {
  Name name;
  explicit UnmappedVariable(Name n) : TransformError("no mapping for variable " + show(n)), name(std::move(n)) {}
};

struct ScopeViolation : TransformError {
  Name name;
  explicit ScopeViolation(Name n)
      : TransformError("free variable " + show(n) + " is outside the conversion scope"), name(std::move(n)) {}
};

// Insertion-ordered mapping from source variables to target terms.
// Rebinding an already-mapped name is rejected; binders are uniquely
// stamped, so a clash means a caller bug.
class VarMap {
 public:
  void bind(Name x, TgtTermPtr image);
  const TgtTermPtr* lookup(const Name& x) const;
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<std::pair<Name, TgtTermPtr>> entries_;
};

// Free variables of `m` that lie in `scope`, first-occurrence order,
// deduplicated. Variables bound inside `m` are never reported.
std::vector<Name> fvars(const SrcTermPtr& m, const std::vector<Name>& scope);

// Reifies the mappings of `fvs` as the environment tuple
// (rho(x1), ..., rho(xn)) = pair(rho(x1), pair(..., pair(rho(xn), ()))).
TgtTermPtr mapenv(const std::vector<Name>& fvs, const VarMap& rho);

// Maps each xi to the i-th projection from `env`:
// x1 -> fst env, x2 -> fst (snd env), ...
VarMap mapvar(const std::vector<Name>& fvs, const Name& env);

// Closure conversion of `m` under `rho`, where `scope` lists the source
// variables in context and `gamma` assigns them source types (needed to
// annotate the abstractions introduced at function boundaries).
TgtTermPtr cc(const VarMap& rho, const std::vector<Name>& scope, const SrcCtx& gamma, const SrcTermPtr& m);

// Whole-program conversion: requires a closed, well-typed term.
TgtTermPtr cc_program(const SrcTermPtr& m);

// Closure application in the target language:
// let g = fn in open g as (xf, xe) in xf (g, arg, xe).
TgtTermPtr cc_apply(TgtTermPtr fn, TgtTermPtr arg);

// True iff the code part of every closure node is closed.
bool closure_parts_closed(const TgtTermPtr& m);

}  // namespace fcc
