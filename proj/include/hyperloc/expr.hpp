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

// Expression trees over the parameters u1, u2, u3 with exact symbolic
// differentiation and a flattened, common-subexpression-shared evaluator.

#ifndef HYPERLOC_EXPR_HPP_
#define HYPERLOC_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperloc::expr {

enum class Op : std::uint8_t {
  constant,
  variable,
  add,
  sub,
  mul,
  div,
  neg,
  pow,  // rhs is always a constant
  sin,
  cos,
  tan,
  exp,
  log,
  sqrt,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;  // constant value, or exponent for pow
  int var = -1;        // 0, 1, 2 for u1, u2, u3
  Expr lhs;
  Expr rhs;
};

// Constructors apply local simplification (constant folding, 0/1
// elimination, double negation) so derivative trees stay small.
Expr constant(double v);
Expr variable(int index);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr base, double exponent);
Expr apply(Op function, Expr arg);

bool is_constant(const Expr& e);
bool is_constant(const Expr& e, double v);
/// True when the tree contains no variable nodes.
bool is_closed(const Expr& e);

/// Exact partial derivative with respect to u_{index+1}.
Expr differentiate(const Expr& e, int index);

/// Direct recursive evaluation. Throws Error(domain) outside a function's
/// real domain or on a non-finite result.
double evaluate(const Expr& e, std::span<const double, 3> u);

std::string to_string(const Expr& e);

/// Parses one expression in u1, u2, u3 (grammar of the surface format).
Expr parse_expression(std::string_view text);

/// A set of expressions flattened into one instruction tape. Structurally
/// identical subtrees are evaluated once per run.
class Program {
 public:
  Program() = default;
  explicit Program(std::span<const Expr> outputs);

  std::size_t output_count() const { return outputs_.size(); }
  std::size_t instruction_count() const { return code_.size(); }

  /// Evaluates all outputs at u. `out` must hold output_count() values.
  void run(std::span<const double, 3> u, std::span<double> out) const;

 private:
  struct Instruction {
    Op op;
    double value;
    std::int32_t a;
    std::int32_t b;
  };
  std::vector<Instruction> code_;
  std::vector<std::int32_t> outputs_;
};

}  // namespace hyperloc::expr

#endif  // HYPERLOC_EXPR_HPP_
