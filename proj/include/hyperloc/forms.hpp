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

#ifndef HYPERLOC_FORMS_HPP_
#define HYPERLOC_FORMS_HPP_

#include <array>
#include <span>

#include "hyperloc/surface.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc {

/// First and second fundamental forms at a point, with their partial
/// derivatives in u up to `order` (jet order minus two, at most 3).
struct FormState {
  int order = 0;
  Sym3 g;
  Sym3 h;
  Vec4 N;
  /// Partials of g and h indexed by monomial number (index 0 is g, h).
  std::array<Sym3, 20> g_partials{};
  std::array<Sym3, 20> h_partials{};

  const Sym3& dg(int k) const { return g_partials[monomial_index(std::array{k})]; }
  const Sym3& dh(int k) const { return h_partials[monomial_index(std::array{k})]; }
  const Sym3& d2g(int k, int l) const {
    return g_partials[monomial_index(std::array{k, l})];
  }
  const Sym3& d2h(int k, int l) const {
    return h_partials[monomial_index(std::array{k, l})];
  }
  const Sym3& d3g(int k, int l, int m) const {
    return g_partials[monomial_index(std::array{k, l, m})];
  }
  const Sym3& d3h(int k, int l, int m) const {
    return h_partials[monomial_index(std::array{k, l, m})];
  }
};

/// Arc-length derivatives of g and h along a curve u(s); index n holds the
/// n-th derivative (index 0 the value). Valid for n <= order.
struct CurveFormDerivatives {
  int order = 0;
  std::array<Sym3, 4> g{};
  std::array<Sym3, 4> h{};
};

/// N = R1 (x) R2 (x) R3 / |R1 (x) R2 (x) R3|.
Vec4 unit_normal(const Jet& jet);

/// g_ij = <R_i, R_j>, h_ij = <R_ij, N>, and their u-partials, obtained by
/// propagating the jet through the normalized ternary product exactly.
FormState fundamental_forms(const Jet& jet);

/// II/I for the tangent direction (1, lambda, mu).
double normal_curvature(const FormState& f, double lambda, double mu);
/// II/I for an arbitrary parameter direction.
double normal_curvature(const FormState& f, const Vec3& direction);

/// Chain-rule (Faa di Bruno) derivatives of g and h along u(s), given
/// u', u'', u''' as available; order = min(derivs.size(), f.order).
CurveFormDerivatives curve_form_derivatives(const FormState& f,
                                            std::span<const Vec3> derivs);

}  // namespace hyperloc

#endif  // HYPERLOC_FORMS_HPP_
