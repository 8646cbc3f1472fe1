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

#include "hyperloc/surface.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "hyperloc/error.hpp"
#include "parser.hpp"

namespace hyperloc {

namespace {

using MonomialTable = std::array<Monomial, monomial_count(kMaxJetOrder)>;

MonomialTable build_monomials() {
  MonomialTable table{};
  std::size_t n = 0;
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    // Sorted index lists i1 <= ... <= id in lexicographic order correspond
    // to exponents with a descending, then b descending.
    for (int a = d; a >= 0; --a) {
      for (int b = d - a; b >= 0; --b) {
        table[n++] = Monomial{{a, b, d - a - b}, d};
      }
    }
  }
  return table;
}

struct IndexTable {
  std::array<std::array<std::array<int, kMaxJetOrder + 1>, kMaxJetOrder + 1>,
             kMaxJetOrder + 1>
      index{};
};

const IndexTable& index_table() {
  static const IndexTable table = [] {
    IndexTable t{};
    const auto& m = monomials();
    for (std::size_t i = 0; i < m.size(); ++i) {
      t.index[m[i].exponent[0]][m[i].exponent[1]][m[i].exponent[2]] =
          static_cast<int>(i);
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::array<Monomial, monomial_count(kMaxJetOrder)>& monomials() {
  static const MonomialTable table = build_monomials();
  return table;
}

std::size_t monomial_index(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a + b + c > kMaxJetOrder) {
    throw Error(ErrorCode::invalid_argument, "monomial degree out of range");
  }
  return static_cast<std::size_t>(index_table().index[a][b][c]);
}

std::size_t monomial_index(std::span<const int> indices) {
  int e[3] = {0, 0, 0};
  for (int i : indices) {
    if (i < 0 || i > 2) {
      throw Error(ErrorCode::invalid_argument, "parameter index must be 0..2");
    }
    ++e[i];
  }
  return monomial_index(e[0], e[1], e[2]);
}

bool Box::contains(const Vec3& u, double rel_tol) const {
  for (int i = 0; i < 3; ++i) {
    const double slack = rel_tol * width(i);
    if (!(u[i] >= lo[i] - slack && u[i] <= hi[i] + slack)) return false;
  }
  return true;
}

Vec3 Box::clamp(const Vec3& u) const {
  Vec3 r = u;
  for (int i = 0; i < 3; ++i) r[i] = std::clamp(r[i], lo[i], hi[i]);
  return r;
}

HypersurfaceDef::HypersurfaceDef(std::array<expr::Expr, 4> components,
                                 Box domain)
    : components_(std::move(components)), domain_(domain) {
  const auto& mono = monomials();
  // trees[m][c]: partial of component c for monomial m, each obtained from
  // its parent monomial by one differentiation along the last index.
  std::vector<std::array<expr::Expr, 4>> trees(mono.size());
  trees[0] = components_;
  for (std::size_t m = 1; m < mono.size(); ++m) {
    auto e = mono[m].exponent;
    const int var = e[2] > 0 ? 2 : (e[1] > 0 ? 1 : 0);
    --e[var];
    const std::size_t parent = monomial_index(e[0], e[1], e[2]);
    for (int c = 0; c < 4; ++c) {
      trees[m][c] = expr::differentiate(trees[parent][c], var);
    }
  }
  for (int order = 0; order <= kMaxJetOrder; ++order) {
    std::vector<expr::Expr> outputs;
    for (std::size_t m = 0; m < monomial_count(order); ++m) {
      for (int c = 0; c < 4; ++c) outputs.push_back(trees[m][c]);
    }
    programs_[order] = expr::Program(outputs);
  }
}

HypersurfaceDef parse_surface(std::string_view text) {
  detail::Parser p(text);
  std::array<expr::Expr, 4> comps{};
  using Kind = detail::Token::Kind;

  while (p.peek().kind == Kind::identifier && p.peek().text != "domain") {
    const detail::Token name = p.next();
    if (name.text.size() != 2 || name.text[0] != 'x' || name.text[1] < '1' ||
        name.text[1] > '4') {
      p.fail_unknown(name);
    }
    const int slot = name.text[1] - '1';
    if (comps[slot]) p.fail_syntax(name, "component assigned twice");
    p.expect_symbol('=');
    comps[slot] = p.expression();
    p.expect_symbol(';');
  }
  for (int c = 0; c < 4; ++c) {
    if (!comps[c]) {
      p.fail_syntax(p.peek(), "missing assignment for x" + std::to_string(c + 1));
    }
  }
  const detail::Token kw = p.next();
  if (kw.kind != Kind::identifier || kw.text != "domain") {
    p.fail_syntax(kw, "expected 'domain'");
  }
  Box box;
  bool seen[3] = {false, false, false};
  do {
    const detail::Token var = p.next();
    if (var.kind != Kind::identifier) p.fail_syntax(var, "expected u1, u2 or u3");
    if (var.text != "u1" && var.text != "u2" && var.text != "u3") p.fail_unknown(var);
    const int i = var.text[1] - '1';
    if (seen[i]) p.fail_syntax(var, "range given twice");
    seen[i] = true;
    const detail::Token in = p.next();
    if (in.kind != Kind::identifier || in.text != "in") p.fail_syntax(in, "expected 'in'");
    p.expect_symbol('[');
    const detail::Token lo_tok = p.peek();
    box.lo[i] = p.constant_expression();
    p.expect_symbol(',');
    box.hi[i] = p.constant_expression();
    p.expect_symbol(']');
    if (!(box.lo[i] < box.hi[i])) p.fail_syntax(lo_tok, "empty parameter range");
  } while (p.accept_symbol(','));
  p.accept_symbol(';');
  p.expect_end();
  for (int i = 0; i < 3; ++i) {
    if (!seen[i]) {
      p.fail_syntax(p.peek(), "missing range for u" + std::to_string(i + 1));
    }
  }
  return HypersurfaceDef(std::move(comps), box);
}

HypersurfaceDef load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface(ss.str());
}

Jet evaluate_jet(const HypersurfaceDef& s, const Vec3& u, int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorCode::invalid_argument, "jet order must be 0..5");
  }
  const Box& box = s.domain();
  if (!box.contains(u)) {
    for (int i = 0; i < 3; ++i) {
      const double slack = 1e-12 * box.width(i);
      if (!(u[i] >= box.lo[i] - slack && u[i] <= box.hi[i] + slack)) {
        std::ostringstream os;
        os.precision(17);
        os << "u" << (i + 1) << " = " << u[i] << " outside [" << box.lo[i]
           << ", " << box.hi[i] << "]";
        throw Error(ErrorCode::domain, os.str());
      }
    }
  }
  Jet jet(order);
  const expr::Program& prog = s.program(order);
  std::vector<double> out(prog.output_count());
  prog.run(std::span<const double, 3>(u.c), out);
  for (std::size_t m = 0; m < monomial_count(order); ++m) {
    for (int c = 0; c < 4; ++c) jet.at(m)[c] = out[m * 4 + c];
  }
  if (order >= 1) {
    const Vec4& r1 = jet.d1(0);
    const Vec4& r2 = jet.d1(1);
    const Vec4& r3 = jet.d1(2);
    const double w = norm(ternary_product(r1, r2, r3));
    if (!(w >= 1e-12 * norm(r1) * norm(r2) * norm(r3)) || w == 0.0) {
      throw Error(ErrorCode::regularity,
                  "R_1, R_2, R_3 are linearly dependent at this point");
    }
  }
  return jet;
}

Vec4 position(const HypersurfaceDef& s, const Vec3& u) {
  return evaluate_jet(s, u, 0).value();
}

}  // namespace hyperloc
