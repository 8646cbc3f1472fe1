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

#ifndef HYPERLOC_SURFACE_HPP_
#define HYPERLOC_SURFACE_HPP_

#include <array>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

#include "hyperloc/expr.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc {

inline constexpr int kMaxJetOrder = 5;

/// Exponent triple of a parameter monomial u1^a u2^b u3^c. Monomials are
/// numbered in graded order: by degree, then lexicographically by the sorted
/// list of differentiation indices, so degree-2 numbering matches Sym3 slots.
struct Monomial {
  std::array<int, 3> exponent;
  int degree;
};

constexpr std::size_t monomial_count(int max_degree) {
  return static_cast<std::size_t>((max_degree + 1) * (max_degree + 2) *
                                  (max_degree + 3) / 6);
}

const std::array<Monomial, monomial_count(kMaxJetOrder)>& monomials();
std::size_t monomial_index(int a, int b, int c);
/// Index of the partial derivative taken along the given 0-based parameter
/// indices, in any order (mixed partials commute).
std::size_t monomial_index(std::span<const int> indices);

/// Parameter box [lo_i, hi_i], i = 1..3.
struct Box {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  double width(int i) const { return hi[i] - lo[i]; }
  /// Inside the box, allowing rel_tol * width slack on each face.
  bool contains(const Vec3& u, double rel_tol = 1e-12) const;
  Vec3 clamp(const Vec3& u) const;
};

/// A parametric hypersurface R(u1, u2, u3) in E^4 over a parameter box.
/// Immutable after construction and safe to share across threads.
class HypersurfaceDef {
 public:
  HypersurfaceDef(std::array<expr::Expr, 4> components, Box domain);

  const std::array<expr::Expr, 4>& components() const { return components_; }
  const Box& domain() const { return domain_; }
  /// All partials up to `order` of every component, in monomial order.
  const expr::Program& program(int order) const { return programs_[order]; }

 private:
  std::array<expr::Expr, 4> components_;
  Box domain_;
  std::array<expr::Program, kMaxJetOrder + 1> programs_;
};

/// Parses the surface text format:
///   x1 = <expr>; x2 = <expr>; x3 = <expr>; x4 = <expr>;
///   domain u1 in [a, b], u2 in [c, d], u3 in [e, f]
/// '#' starts a comment. Throws ParseError (syntax or unknown_identifier).
HypersurfaceDef parse_surface(std::string_view text);
HypersurfaceDef load_surface(const std::string& path);

/// Value and all partial derivatives of R up to `order()` at a point.
/// Only sorted multi-indices are stored, so Clairaut symmetry is structural.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int order) : order_(order) {}

  int order() const { return order_; }
  const Vec4& value() const { return d_[0]; }
  const Vec4& at(std::size_t monomial) const { return d_[monomial]; }
  Vec4& at(std::size_t monomial) { return d_[monomial]; }
  const Vec4& partial(std::initializer_list<int> indices) const {
    return d_[monomial_index(std::span<const int>(indices.begin(), indices.size()))];
  }
  /// R_i, 0-based.
  const Vec4& d1(int i) const { return partial({i}); }
  const Vec4& d2(int i, int j) const { return partial({i, j}); }
  const Vec4& d3(int i, int j, int k) const { return partial({i, j, k}); }
  const Vec4& d4(int i, int j, int k, int l) const {
    return partial({i, j, k, l});
  }

 private:
  int order_ = 0;
  std::array<Vec4, monomial_count(kMaxJetOrder)> d_{};
};

/// Evaluates the jet of `order` (0..5) at u. Throws Error(domain) when u is
/// outside the parameter box or a component leaves its real domain, and
/// Error(regularity) when R_1, R_2, R_3 are linearly dependent (order >= 1).
Jet evaluate_jet(const HypersurfaceDef& s, const Vec3& u, int order = 4);

Vec4 position(const HypersurfaceDef& s, const Vec3& u);

}  // namespace hyperloc

#endif  // HYPERLOC_SURFACE_HPP_
