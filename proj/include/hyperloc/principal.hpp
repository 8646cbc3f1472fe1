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

#ifndef HYPERLOC_PRINCIPAL_HPP_
#define HYPERLOC_PRINCIPAL_HPP_

#include <array>
#include <string_view>
#include <utility>

#include "hyperloc/forms.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc {

/// Monic principal-curvature cubic k^3 + 3 K2 k^2 + 3 K3 k + K1 = 0,
/// i.e. det(h - k g) / (-det g).
struct CubicCoefficients {
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;

  double evaluate(double k) const { return ((k + 3.0 * K2) * k + 3.0 * K3) * k + K1; }
  double derivative(double k) const { return (3.0 * k + 6.0 * K2) * k + 3.0 * K3; }
};

enum class BranchClass { simple, partially_umbilic, umbilic };
enum class PointClass { generic, partially_umbilic, umbilic };

std::string_view to_string(BranchClass c);
std::string_view to_string(PointClass c);

struct ClassifyTolerances {
  /// Roots closer than separation * max(1, |k|max) are treated as repeated.
  double separation = 1e-6;
  /// Relative singular-value threshold for rank(A).
  double rank = 1e-8;
};

struct PointClassification {
  PointClass point = PointClass::generic;
  std::array<BranchClass, 3> branch{};
  std::array<int, 3> rank{};
};

struct PrincipalBranch {
  double k_n = 0.0;
  Vec3 direction;  // zero unless branch_class == simple
  BranchClass branch_class = BranchClass::simple;
};

/// A = h - k g.
Sym3 pencil_matrix(const FormState& f, double k);

/// Coefficients c[0..3] of det(h - k g) = c0 + c1 k + c2 k^2 + c3 k^3,
/// expanded through the mixed-discriminant identity
///   det(H + t G) = det H + t tr(adj(H) G) + t^2 tr(H adj(G)) + t^3 det G.
std::array<double, 4> pencil_polynomial(const Sym3& g, const Sym3& h);

CubicCoefficients characteristic_coefficients(const Sym3& g, const Sym3& h);
CubicCoefficients characteristic_coefficients(const FormState& f);

/// The three real roots, ascending, by the trigonometric form of Cardano's
/// method followed by Newton polishing. Throws Error(complex_roots) when the
/// discriminant says otherwise beyond rounding.
std::array<double, 3> solve_principal_curvatures(const CubicCoefficients& c);

PointClassification classify_point(const FormState& f,
                                   const std::array<double, 3>& roots,
                                   const ClassifyTolerances& tol = {});

/// Index 0, 1, 2 of the row pair (1,2), (1,3), (2,3) of a symmetric matrix
/// whose cross product has the largest norm, together with that product.
std::pair<int, Vec3> strongest_row_pair(const Sym3& a);
/// The two row indices (0-based) of a pair index from strongest_row_pair.
std::array<int, 2> row_pair(int pair_index);

/// Unit-speed kernel direction of A(k_n) = h - k_n g: the strongest cofactor
/// triple of A normalized so that u'^T g u' = 1, sign canonical (first
/// significant component positive). Throws Error(degenerate_direction) when
/// every cofactor triple vanishes.
Vec3 principal_direction(const FormState& f, double k_n, double tol = 1e-12);

/// Roots, classes and directions at a point.
std::array<PrincipalBranch, 3> principal_branches(const FormState& f,
                                                  const ClassifyTolerances& tol = {});

}  // namespace hyperloc

#endif  // HYPERLOC_PRINCIPAL_HPP_
