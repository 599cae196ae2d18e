// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "fcc/closure_convert.hpp"
#include "fcc/term.hpp"

namespace fcc {

// Raised when a function cannot be lifted past a binder it depends on.
struct HoistDependency : TransformError {
  Name binder, function;
  HoistDependency(Name binder_, Name function_)
      : TransformError("hoisted function " + show(function_) + " depends on bound variable " + show(binder_)),
        binder(std::move(binder_)),
        function(std::move(function_)) {}
};

// letfun f1 = M1 ... fn = Mn in main, with every Mi a closed abstraction
// and main referring to functions only through the fi.
struct HoistedProgram {
  std::vector<std::pair<Name, TgtTermPtr>> funs;
  TgtTermPtr main;
};

// Lifts every abstraction in a closed term to the top level. A maximal
// curried chain of abstractions is extracted as one function; each
// extracted function is abstracted over the tuple of previously
// extracted ones and its occurrence becomes an application to that
// tuple.
HoistedProgram hoist(const TgtTermPtr& m);

// Right-nested lets of the hoisted functions around the main term.
TgtTermPtr reify(const HoistedProgram& p);

}  // namespace fcc
