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

#include "parser.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

#include "hyperloc/error.hpp"

namespace hyperloc::detail {

using expr::Expr;
using expr::Op;

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::symbol, {}, 0.0, line, col};
    if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && is_digit(s[k])) {
          while (k < s.size() && is_digit(s[k])) ++k;
          j = k;
        }
      }
      t.kind = Token::Kind::number;
      t.text = std::string(s.substr(i, j - i));
      auto res = std::from_chars(s.data() + i, s.data() + j, t.number);
      if (res.ec != std::errc()) {
        throw ParseError(ErrorCode::syntax, "malformed number '" + t.text + "'",
                         line, col);
      }
      advance(j - i);
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      t.kind = Token::Kind::identifier;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("+-*/^()[],;=").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(ErrorCode::syntax,
                       std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Token::Kind::end, "end of input", 0.0, line, col});
  return out;
}

bool lookup_function(const std::string& name, Op& op) {
  static const std::pair<const char*, Op> table[] = {
      {"sin", Op::sin}, {"cos", Op::cos}, {"tan", Op::tan},
      {"exp", Op::exp}, {"log", Op::log}, {"sqrt", Op::sqrt}};
  for (const auto& [n, o] : table) {
    if (name == n) {
      op = o;
      return true;
    }
  }
  return false;
}

}  // namespace

Parser::Parser(std::string_view text) : tokens_(tokenize(text)) {}

void Parser::fail_syntax(const Token& at, const std::string& what) const {
  throw ParseError(ErrorCode::syntax, what + " (found '" + at.text + "')",
                   at.line, at.column);
}

void Parser::fail_unknown(const Token& at) const {
  throw ParseError(ErrorCode::unknown_identifier,
                   "unknown identifier '" + at.text + "'", at.line, at.column);
}

bool Parser::accept_symbol(char c) {
  const Token& t = peek();
  if (t.kind == Token::Kind::symbol && t.text[0] == c) {
    next();
    return true;
  }
  return false;
}

void Parser::expect_symbol(char c) {
  if (!accept_symbol(c)) fail_syntax(peek(), std::string("expected '") + c + "'");
}

void Parser::expect_end() {
  if (!at_end()) fail_syntax(peek(), "expected end of input");
}

Expr Parser::expression() {
  Expr lhs = term();
  for (;;) {
    if (accept_symbol('+')) {
      lhs = expr::add(lhs, term());
    } else if (accept_symbol('-')) {
      lhs = expr::sub(lhs, term());
    } else {
      return lhs;
    }
  }
}

double Parser::constant_expression() {
  const Token start = peek();
  Expr e = expression();
  if (!expr::is_closed(e)) {
    fail_syntax(start, "expected a constant expression");
  }
  const double zero[3] = {0.0, 0.0, 0.0};
  return expr::evaluate(e, zero);
}

Expr Parser::term() {
  Expr lhs = unary();
  for (;;) {
    if (accept_symbol('*')) {
      lhs = expr::mul(lhs, unary());
    } else if (accept_symbol('/')) {
      lhs = expr::div(lhs, unary());
    } else {
      return lhs;
    }
  }
}

Expr Parser::unary() {
  if (accept_symbol('-')) return expr::neg(unary());
  if (accept_symbol('+')) return unary();
  return power();
}

Expr Parser::power() {
  Expr base = primary();
  if (!accept_symbol('^')) return base;
  const Token at = peek();
  Expr exponent = unary();
  if (!expr::is_closed(exponent)) {
    fail_syntax(at, "exponent must be a constant");
  }
  const double zero[3] = {0.0, 0.0, 0.0};
  return expr::pow(base, expr::evaluate(exponent, zero));
}

Expr Parser::primary() {
  const Token t = next();
  switch (t.kind) {
    case Token::Kind::number: return expr::constant(t.number);
    case Token::Kind::identifier: {
      if (t.text == "u1" || t.text == "u2" || t.text == "u3") {
        return expr::variable(t.text[1] - '1');
      }
      if (t.text == "pi") return expr::constant(std::numbers::pi);
      if (t.text == "e") return expr::constant(std::numbers::e);
      Op op;
      if (lookup_function(t.text, op)) {
        expect_symbol('(');
        Expr arg = expression();
        expect_symbol(')');
        return expr::apply(op, arg);
      }
      fail_unknown(t);
    }
    case Token::Kind::symbol:
      if (t.text[0] == '(') {
        Expr inner = expression();
        expect_symbol(')');
        return inner;
      }
      fail_syntax(t, "expected an operand");
    case Token::Kind::end: fail_syntax(t, "unexpected end of input");
  }
  fail_syntax(t, "expected an operand");
}

}  // namespace hyperloc::detail
