// Copyright 2026 The hyperloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recursive-descent parser shared by parse_expression and parse_surface.
//
//   surface    := assignment* domain
//   assignment := ("x1" | "x2" | "x3" | "x4") "=" expr ";"
//   domain     := "domain" range ("," range)* [";"]
//   range      := ("u1" | "u2" | "u3") "in" "[" expr "," expr "]"
//   expr       := term (("+" | "-") term)*
//   term       := unary (("*" | "/") unary)*
//   unary      := ("+" | "-") unary | power
//   power      := primary ["^" unary]        exponent must be constant
//   primary    := number | "pi" | "e" | "u1" | "u2" | "u3"
//               | function "(" expr ")" | "(" expr ")"

#ifndef HYPERLOC_SRC_PARSER_HPP_
#define HYPERLOC_SRC_PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hyperloc/expr.hpp"

namespace hyperloc::detail {

struct Token {
  enum class Kind { number, identifier, symbol, end };
  Kind kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text);

  expr::Expr expression();
  /// Parses an expression that must not reference u1, u2, u3.
  double constant_expression();

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool accept_symbol(char c);
  void expect_symbol(char c);
  void expect_end();

  [[noreturn]] void fail_syntax(const Token& at, const std::string& what) const;
  [[noreturn]] void fail_unknown(const Token& at) const;

 private:
  expr::Expr term();
  expr::Expr unary();
  expr::Expr power();
  expr::Expr primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace hyperloc::detail

#endif  // HYPERLOC_SRC_PARSER_HPP_
