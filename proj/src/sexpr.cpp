// SPDX-License-Identifier: Apache-2.0
#include "fcc/sexpr.hpp"

#include <cctype>

namespace fcc {

namespace {

struct Reader {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  bool eof() const { return pos >= text.size(); }

  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool sym_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) return true;
    switch (c) {
      case '_':
      case '-':
      case '+':
      case '*':
      case '>':
      case '=':
      case '<':
      case '%':
      case '$':
      case '\'':
      case '!':
      case '?':
      case '.':
      case '/':
        return true;
      default:
        return false;
    }
  }

  SExpr read() {
    skip_ws();
    if (eof()) throw SyntaxError(line, col, "unexpected end of input");
    int l = line, c = col;
    char ch = peek();
    if (ch == '(') {
      advance();
      SExpr e;
      e.kind = SExpr::Kind::List;
      e.line = l;
      e.col = c;
      while (true) {
        skip_ws();
        if (eof()) throw SyntaxError(l, c, "unclosed '('");
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (ch == ')') throw SyntaxError(l, c, "unexpected ')'");
    if (ch == ':') {
      advance();
      SExpr e;
      e.kind = SExpr::Kind::Sym;
      e.sym = ":";
      e.line = l;
      e.col = c;
      return e;
    }
    if (!sym_char(ch)) throw SyntaxError(l, c, std::string("unexpected character '") + ch + "'");
    std::string tok;
    while (!eof() && sym_char(peek())) tok.push_back(advance());
    SExpr e;
    e.line = l;
    e.col = c;
    bool digits = !tok.empty();
    for (char t : tok) digits = digits && std::isdigit(static_cast<unsigned char>(t));
    if (digits) {
      e.kind = SExpr::Kind::Num;
      e.num = Nat(tok);
    } else {
      e.kind = SExpr::Kind::Sym;
      e.sym = std::move(tok);
    }
    return e;
  }
};

}  // namespace

SExpr read_sexpr(std::string_view text) {
  Reader r{text};
  SExpr e = r.read();
  r.skip_ws();
  if (!r.eof()) throw SyntaxError(r.line, r.col, "trailing input after expression");
  return e;
}

}  // namespace fcc
