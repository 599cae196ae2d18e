// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fcc/term.hpp"

namespace fcc {

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

struct SExpr {
  enum class Kind { Sym, Num, List };
  Kind kind = Kind::List;
  std::string sym;
  Nat num;
  std::vector<SExpr> items;
  int line = 1, col = 1;
};

// Reads exactly one expression; trailing whitespace/comments only.
// Input is treated as UTF-8 with CRLF normalized to LF; `;` starts a
// line comment.
SExpr read_sexpr(std::string_view text);

}  // namespace fcc
