// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "fcc/sexpr.hpp"
#include "fcc/term.hpp"

namespace fcc {

// Concrete syntax, shared by both languages:
//
//   M ::= <nat> | x | (pred M) | (plus M M) | (ifz M M M) | () | unit
//       | (pair M M) | (fst M) | (snd M) | (let ((x M)) M)
//       | (fix (f : T) (x : T1) M)            source only
//       | (app M M) | (M1 M2)                 implicit when M1 is no keyword
//       | (abs (x : T) M) | (clos M M)        target only
//       | (open M (f e) M)                    target only
//
//   T ::= nat | unit | (* T T) | (-> T T) | (=> T T) | (rigid k)
//
// Binders are stamped fresh during parsing; free variables are legal and
// resolve by text.
SrcTermPtr parse_src(std::string_view text);
TgtTermPtr parse_tgt(std::string_view text);

SrcTy parse_src_type(std::string_view text);
TgtTy parse_tgt_type(std::string_view text);

bool is_term_keyword(std::string_view s);

}  // namespace fcc
