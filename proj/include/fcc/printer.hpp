// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fcc/term.hpp"

namespace fcc {

// Canonical single-line s-expression rendering. Binder names are kept
// where possible and suffixed (x, x_2, ...) where reuse would shadow an
// enclosing binder or a free variable, so parse(print(M)) is
// alpha-equivalent to M and printing is stable under reprinting.
std::string print_src(const SrcTermPtr& m);
std::string print_tgt(const TgtTermPtr& m);

std::string print_type(const SrcTy& t);
std::string print_type(const TgtTy& t);

// `(letfun ((f1 M1) ...) M)` rendering of a hoisted program.
std::string print_letfun(const std::vector<std::pair<Name, TgtTermPtr>>& funs, const TgtTermPtr& main);

}  // namespace fcc
