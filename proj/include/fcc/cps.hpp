// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

#include "fcc/term.hpp"
#include "fcc/typing.hpp"

namespace fcc {

// Static continuation: a host-level function from a trivial (effect-free)
// term producing the intermediate value to the rest of the program.
using MetaCont = std::function<SrcTermPtr(const SrcTermPtr&)>;

// One-pass call-by-value CPS transformation. Administrative redexes are
// eliminated at transformation time: trivial terms flow through static
// continuations, and dynamic continuations are introduced only at
// fix/application boundaries. Converted functions take a single pair
// (argument, continuation), so the output stays in the source language.
// `gamma` types the free variables of `m`.
SrcTermPtr cps(const SrcCtx& gamma, const SrcTermPtr& m, const MetaCont& k);

// Closed program of type nat, transformed under the identity continuation.
SrcTermPtr cps_program(const SrcTermPtr& m);

// Call-by-value type translation with answer type nat.
SrcTy cps_type(const SrcTy& t);

// Transform-introduced binders are marked; an application whose operator
// is a marked abstraction applied to a value is an administrative redex
// the transform failed to eliminate. Counts such nodes (expected 0).
std::size_t administrative_redexes(const SrcTermPtr& m);

}  // namespace fcc
