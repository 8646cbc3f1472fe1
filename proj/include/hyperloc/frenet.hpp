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

#ifndef HYPERLOC_FRENET_HPP_
#define HYPERLOC_FRENET_HPP_

#include <array>
#include <string_view>

#include "hyperloc/forms.hpp"
#include "hyperloc/surface.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc {

enum class StationFlag { ok, geodesic_degenerate, planar_degenerate, singular_system };

std::string_view to_string(StationFlag f);

struct FrenetTolerances {
  /// |dP/dk| of the monic cubic below this times max(1, k^2) is a collision.
  double repeated_root = 1e-6;
  /// |T' - <T',N> N| below this times max(1, |T'|) leaves E undefined.
  double geodesic = 1e-8;
  /// |k2| estimate below this leaves b1, b2 undefined.
  double planar = 1e-8;
  /// Relative pivot threshold of the linear solves.
  double pivot = 1e-13;
};

/// Extended Darboux frame of first kind.
struct FrameState {
  Vec4 T, E, D, N;
};

struct CurvatureState {
  StationFlag flag = StationFlag::ok;
  /// Highest Frenet curvature obtained: 1 (k1), 2 (k2), 3 (k3).
  int order = 0;

  Vec3 u;
  /// du[n] is the n-th arc-length derivative of u; du[0] unused.
  std::array<Vec3, 5> du{};
  /// alpha[n] is the n-th derivative of the curve; alpha[0] the point.
  std::array<Vec4, 5> alpha{};

  /// k_n and its first three arc-length derivatives.
  std::array<double, 4> kn{};
  double k_g1 = 0.0;
  double k_g1p = 0.0;
  double k_g2 = 0.0;
  double k1 = 0.0;
  double k1p = 0.0;
  double k1pp = 0.0;
  double k2 = 0.0;
  double k2p = 0.0;
  double k3 = 0.0;

  FrameState frame;
  Vec4 t, n, b1, b2;

  /// Determinant of the second-order system and the worst relative residual
  /// over all systems solved at this station.
  double det_second = 0.0;
  double max_residual = 0.0;
};

/// Arc-length derivatives k^(0..d.order) of the root k_n of det(h - k g)
/// along the curve, by implicit differentiation of the determinant. Throws
/// Error(repeated_root) when the root is not simple within `tol`.
std::array<double, 4> kn_derivatives(const CurveFormDerivatives& d, double k_n,
                                     double tol = 1e-6);

/// {T, E, D, N} with E the normalized tangential part of T' and
/// D = N (x) T (x) E. Throws Error(geodesic_degenerate) when that part
/// vanishes within `tol`.
FrameState darboux_frame(const Vec4& T, const Vec4& Tp, const Vec4& N,
                         double tol = 1e-8);

/// Pencil-matrix derivatives A^(n) = (h - k_n g)^(n) along the curve.
Sym3 pencil_derivative(const CurveFormDerivatives& d, const std::array<double, 4>& kn,
                       int n);

/// u'' from the five-equation system (metric row, two tangential rows and
/// two differentiated pencil rows), then alpha'', the Darboux frame, k_g1
/// and k1. Expects st.u, st.du[1], st.kn[0] set; fills st.kn[1]. Throws
/// Error(singular_matrix), Error(repeated_root), Error(geodesic_degenerate).
void solve_second_order(const Jet& jet, const FormState& f, CurvatureState& st,
                        const FrenetTolerances& tol = {});

/// u''', k_g1' and k_g2 from the Q system, then alpha''', the Frenet frame,
/// k2 and k1'. Throws Error(planar_degenerate) when alpha' (x) alpha'' (x)
/// alpha''' vanishes.
void solve_third_order(const Jet& jet, const FormState& f, CurvatureState& st,
                       const FrenetTolerances& tol = {});

/// u'''', k1'', k2' and k3 from the four independent projections of the
/// fourth-derivative identity (onto R1, R2, R3 and N) and the pencil rows
/// differentiated three times. Needs a fifth-order jet.
void solve_fourth_order(const Jet& jet, const FormState& f, CurvatureState& st,
                        const FrenetTolerances& tol = {});

/// The fourth-order system built from R1, R2, R3, n, b1, b2 projections
/// alone, with its right-hand side. It factors through E4 and so has rank
/// at most four; kept for diagnostics.
SmallMatrix frame_projection_matrix(const FormState& f, const Jet& jet,
                                    const CurvatureState& st,
                                    std::array<double, 6>* rhs = nullptr);

/// The full station pipeline at a line-of-curvature point u with unit-speed
/// direction du and followed root k_n. Degeneracies become flags.
CurvatureState evaluate_station(const HypersurfaceDef& surface, const Vec3& u,
                                const Vec3& du, double k_n,
                                const FrenetTolerances& tol = {});

}  // namespace hyperloc

#endif  // HYPERLOC_FRENET_HPP_
