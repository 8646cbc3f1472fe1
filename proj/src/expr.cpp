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

#include "hyperloc/expr.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "hyperloc/error.hpp"
#include "parser.hpp"

namespace hyperloc::expr {

namespace {

Expr make(Op op, Expr lhs = nullptr, Expr rhs = nullptr, double value = 0.0,
          int var = -1) {
  return std::make_shared<const Node>(
      Node{op, value, var, std::move(lhs), std::move(rhs)});
}

const char* function_name(Op op) {
  switch (op) {
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::tan: return "tan";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::sqrt: return "sqrt";
    default: return "?";
  }
}

[[noreturn]] void domain_failure(const std::string& what) {
  throw Error(ErrorCode::domain, what);
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    domain_failure(std::string("non-finite result in ") + what);
  }
  return v;
}

double apply_unary(Op op, double x) {
  switch (op) {
    case Op::neg: return -x;
    case Op::sin: return std::sin(x);
    case Op::cos: return std::cos(x);
    case Op::tan: return checked(std::tan(x), "tan");
    case Op::exp: return checked(std::exp(x), "exp");
    case Op::log:
      if (!(x > 0.0)) domain_failure("log of non-positive argument");
      return std::log(x);
    case Op::sqrt:
      if (x < 0.0) domain_failure("sqrt of negative argument");
      return std::sqrt(x);
    default: return x;
  }
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div:
      if (b == 0.0) domain_failure("division by zero");
      return a / b;
    case Op::pow: {
      if (a < 0.0 && b != std::floor(b)) {
        domain_failure("negative base with non-integer exponent");
      }
      if (a == 0.0 && b < 0.0) domain_failure("zero base with negative exponent");
      return checked(std::pow(a, b), "pow");
    }
    default: return 0.0;
  }
}

// Folds only when the result is finite and in-domain; otherwise the node is
// kept so the error surfaces at evaluation time.
bool try_fold_unary(Op op, double x, double& out) {
  try {
    out = apply_unary(op, x);
    return std::isfinite(out);
  } catch (const Error&) {
    return false;
  }
}

bool try_fold_binary(Op op, double a, double b, double& out) {
  try {
    out = apply_binary(op, a, b);
    return std::isfinite(out);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

bool is_constant(const Expr& e) { return e->op == Op::constant; }

bool is_constant(const Expr& e, double v) {
  return e->op == Op::constant && e->value == v;
}

bool is_closed(const Expr& e) {
  if (e->op == Op::variable) return false;
  if (e->lhs && !is_closed(e->lhs)) return false;
  if (e->rhs && !is_closed(e->rhs)) return false;
  return true;
}

Expr constant(double v) { return make(Op::constant, nullptr, nullptr, v); }

Expr variable(int index) {
  if (index < 0 || index > 2) {
    throw Error(ErrorCode::invalid_argument, "variable index must be 0..2");
  }
  return make(Op::variable, nullptr, nullptr, 0.0, index);
}

Expr neg(Expr a) {
  if (a->op == Op::constant) return constant(-a->value);
  if (a->op == Op::neg) return a->lhs;
  return make(Op::neg, std::move(a));
}

Expr add(Expr a, Expr b) {
  double v;
  if (is_constant(a) && is_constant(b) &&
      try_fold_binary(Op::add, a->value, b->value, v)) {
    return constant(v);
  }
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  if (b->op == Op::neg) return sub(std::move(a), b->lhs);
  if (a->op == Op::neg) return sub(std::move(b), a->lhs);
  return make(Op::add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  double v;
  if (is_constant(a) && is_constant(b) &&
      try_fold_binary(Op::sub, a->value, b->value, v)) {
    return constant(v);
  }
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a, 0.0)) return neg(std::move(b));
  if (b->op == Op::neg) return add(std::move(a), b->lhs);
  if (a == b) return constant(0.0);
  return make(Op::sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  double v;
  if (is_constant(a) && is_constant(b) &&
      try_fold_binary(Op::mul, a->value, b->value, v)) {
    return constant(v);
  }
  if (is_constant(b) && !is_constant(a)) std::swap(a, b);
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(a, -1.0)) return neg(std::move(b));
  if (is_constant(a)) {
    // c1 * (c2 * x) -> (c1 c2) * x
    if (b->op == Op::mul && is_constant(b->lhs)) {
      return mul(constant(a->value * b->lhs->value), b->rhs);
    }
    if (b->op == Op::neg) return mul(constant(-a->value), b->lhs);
  }
  if (a->op == Op::neg && b->op == Op::neg) return mul(a->lhs, b->lhs);
  if (a->op == Op::neg) return neg(mul(a->lhs, std::move(b)));
  if (b->op == Op::neg) return neg(mul(std::move(a), b->lhs));
  return make(Op::mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  double v;
  if (is_constant(a) && is_constant(b) &&
      try_fold_binary(Op::div, a->value, b->value, v)) {
    return constant(v);
  }
  if (is_constant(a, 0.0) && !is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(b, 1.0)) return a;
  if (is_constant(b, -1.0)) return neg(std::move(a));
  if (is_constant(b) && b->value != 0.0) {
    return mul(constant(1.0 / b->value), std::move(a));
  }
  if (a->op == Op::neg) return neg(div(a->lhs, std::move(b)));
  return make(Op::div, std::move(a), std::move(b));
}

Expr pow(Expr base, double exponent) {
  double v;
  if (is_constant(base) &&
      try_fold_binary(Op::pow, base->value, exponent, v)) {
    return constant(v);
  }
  if (exponent == 0.0) return constant(1.0);
  if (exponent == 1.0) return base;
  if (base->op == Op::pow) {
    // (x^a)^b == x^(ab) only when no sign information is lost.
    const double inner = base->value;
    if (inner == std::floor(inner) && exponent == std::floor(exponent)) {
      return pow(base->lhs, inner * exponent);
    }
  }
  return make(Op::pow, std::move(base), constant(exponent), exponent);
}

Expr apply(Op function, Expr arg) {
  double v;
  if (is_constant(arg) && try_fold_unary(function, arg->value, v)) {
    return constant(v);
  }
  if (function == Op::neg) return neg(std::move(arg));
  return make(function, std::move(arg));
}

namespace {

class Differentiator {
 public:
  explicit Differentiator(int index) : index_(index) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    Expr d = derive(e);
    memo_.emplace(e.get(), d);
    return d;
  }

 private:
  Expr derive(const Expr& e) {
    switch (e->op) {
      case Op::constant: return constant(0.0);
      case Op::variable: return constant(e->var == index_ ? 1.0 : 0.0);
      case Op::add: return add((*this)(e->lhs), (*this)(e->rhs));
      case Op::sub: return sub((*this)(e->lhs), (*this)(e->rhs));
      case Op::neg: return neg((*this)(e->lhs));
      case Op::mul:
        return add(mul((*this)(e->lhs), e->rhs), mul(e->lhs, (*this)(e->rhs)));
      case Op::div: {
        // (a/b)' = (a' - (a/b) b') / b, sharing the quotient node.
        Expr db = (*this)(e->rhs);
        return div(sub((*this)(e->lhs), mul(e, db)), e->rhs);
      }
      case Op::pow: {
        const double p = e->value;
        return mul(mul(constant(p), pow(e->lhs, p - 1.0)), (*this)(e->lhs));
      }
      case Op::sin: return mul(apply(Op::cos, e->lhs), (*this)(e->lhs));
      case Op::cos: return neg(mul(apply(Op::sin, e->lhs), (*this)(e->lhs)));
      case Op::tan:
        return mul(add(constant(1.0), mul(e, e)), (*this)(e->lhs));
      case Op::exp: return mul(e, (*this)(e->lhs));
      case Op::log: return div((*this)(e->lhs), e->lhs);
      case Op::sqrt: return div((*this)(e->lhs), mul(constant(2.0), e));
    }
    return constant(0.0);
  }

  int index_;
  std::unordered_map<const Node*, Expr> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, int index) {
  if (index < 0 || index > 2) {
    throw Error(ErrorCode::invalid_argument, "variable index must be 0..2");
  }
  return Differentiator(index)(e);
}

double evaluate(const Expr& e, std::span<const double, 3> u) {
  switch (e->op) {
    case Op::constant: return e->value;
    case Op::variable: return u[e->var];
    case Op::add: case Op::sub: case Op::mul: case Op::div:
      return apply_binary(e->op, evaluate(e->lhs, u), evaluate(e->rhs, u));
    case Op::pow: return apply_binary(Op::pow, evaluate(e->lhs, u), e->value);
    default: return apply_unary(e->op, evaluate(e->lhs, u));
  }
}

namespace {

void print(std::ostringstream& os, const Expr& e) {
  switch (e->op) {
    case Op::constant: os << e->value; return;
    case Op::variable: os << 'u' << (e->var + 1); return;
    case Op::add: case Op::sub: case Op::mul: case Op::div: {
      const char sym = e->op == Op::add   ? '+'
                       : e->op == Op::sub ? '-'
                       : e->op == Op::mul ? '*'
                                          : '/';
      os << '(';
      print(os, e->lhs);
      os << ' ' << sym << ' ';
      print(os, e->rhs);
      os << ')';
      return;
    }
    case Op::neg: os << "(-"; print(os, e->lhs); os << ')'; return;
    case Op::pow: os << '('; print(os, e->lhs); os << '^' << e->value << ')'; return;
    default:
      os << function_name(e->op) << '(';
      print(os, e->lhs);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  os.precision(17);
  print(os, e);
  return os.str();
}

Expr parse_expression(std::string_view text) {
  detail::Parser parser(text);
  Expr e = parser.expression();
  parser.expect_end();
  return e;
}

Program::Program(std::span<const Expr> outputs) {
  struct Key {
    Op op;
    std::uint64_t bits;
    std::int32_t a, b;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = static_cast<std::size_t>(k.op);
      h = h * 1000003u ^ std::hash<std::uint64_t>{}(k.bits);
      h = h * 1000003u ^ static_cast<std::size_t>(k.a);
      h = h * 1000003u ^ static_cast<std::size_t>(k.b);
      return h;
    }
  };
  std::unordered_map<Key, std::int32_t, KeyHash> interned;
  std::unordered_map<const Node*, std::int32_t> visited;

  // Iterative post-order so deep derivative trees cannot overflow the stack.
  auto emit = [&](const Expr& root) -> std::int32_t {
    std::vector<std::pair<const Node*, bool>> stack{{root.get(), false}};
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (visited.count(node)) continue;
      const bool binary = node->op == Op::add || node->op == Op::sub ||
                          node->op == Op::mul || node->op == Op::div;
      const bool unary = !binary && node->op != Op::constant &&
                         node->op != Op::variable;
      if (!expanded) {
        stack.push_back({node, true});
        if (binary) stack.push_back({node->rhs.get(), false});
        if (unary) stack.push_back({node->lhs.get(), false});
        if (binary) stack.push_back({node->lhs.get(), false});
        continue;
      }
      Key key{node->op, 0, -1, -1};
      if (node->op == Op::constant || node->op == Op::pow) {
        key.bits = std::bit_cast<std::uint64_t>(node->value);
      }
      if (node->op == Op::variable) key.a = node->var;
      if (binary || unary) key.a = visited.at(node->lhs.get());
      if (binary) key.b = visited.at(node->rhs.get());
      auto [it, inserted] =
          interned.emplace(key, static_cast<std::int32_t>(code_.size()));
      if (inserted) code_.push_back({key.op, node->value, key.a, key.b});
      visited.emplace(node, it->second);
    }
    return visited.at(root.get());
  };

  outputs_.reserve(outputs.size());
  for (const Expr& e : outputs) outputs_.push_back(emit(e));
}

void Program::run(std::span<const double, 3> u, std::span<double> out) const {
  std::vector<double> reg(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instruction& ins = code_[i];
    switch (ins.op) {
      case Op::constant: reg[i] = ins.value; break;
      case Op::variable: reg[i] = u[ins.a]; break;
      case Op::add: case Op::sub: case Op::mul: case Op::div:
        reg[i] = apply_binary(ins.op, reg[ins.a], reg[ins.b]);
        break;
      case Op::pow: reg[i] = apply_binary(Op::pow, reg[ins.a], ins.value); break;
      default: reg[i] = apply_unary(ins.op, reg[ins.a]); break;
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = reg[outputs_[k]];
}

}  // namespace hyperloc::expr
