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

#include "hyperloc/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperloc/error.hpp"
#include "hyperloc/principal.hpp"
#include "hyperloc/taylor.hpp"

namespace hyperloc {

namespace {

constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};
constexpr double kBinomial[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

using SymSeries = std::array<Series3, 6>;

Series3 det_series(const SymSeries& a) {
  auto at = [&](std::size_t i, std::size_t j) -> const Series3& {
    return a[Sym3::slot(i, j)];
  };
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(1, 2)) -
         at(0, 1) * (at(0, 1) * at(2, 2) - at(1, 2) * at(0, 2)) +
         at(0, 2) * (at(0, 1) * at(1, 2) - at(1, 1) * at(0, 2));
}

Vec4 tangent(const Jet& jet, const Vec3& v) {
  return v[0] * jet.d1(0) + v[1] * jet.d1(1) + v[2] * jet.d1(2);
}

Vec4 omega1(const Jet& jet, const Vec3& a) {
  Vec4 w;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w += (a[i] * a[j]) * jet.d2(i, j);
  return w;
}

Vec4 omega2(const Jet& jet, const Vec3& a, const Vec3& b) {
  Vec4 w;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      w += (3.0 * a[i] * b[j]) * jet.d2(i, j);
      for (int k = 0; k < 3; ++k) w += (a[i] * a[j] * a[k]) * jet.d3(i, j, k);
    }
  }
  return w;
}

// The remainder of alpha'''' once the R_i u_i'''' part is removed.
Vec4 omega3(const Jet& jet, const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec4 w;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      w += (4.0 * c[i] * a[j] + 3.0 * b[i] * b[j]) * jet.d2(i, j);
      for (int k = 0; k < 3; ++k) {
        w += (6.0 * b[i] * a[j] * a[k]) * jet.d3(i, j, k);
        for (int l = 0; l < 3; ++l) {
          w += (a[i] * a[j] * a[k] * a[l]) * jet.d4(i, j, k, l);
        }
      }
    }
  }
  return w;
}

Vec3 row_of(const Sym3& a, int r) { return Vec3{{a(r, 0), a(r, 1), a(r, 2)}}; }

std::vector<double> solve_checked(const SmallMatrix& m, const std::vector<double>& rhs,
                                  const FrenetTolerances& tol, CurvatureState& st) {
  std::vector<double> x = solve_linear(m, rhs, tol.pivot);
  st.max_residual = std::max(st.max_residual, relative_residual(m, x, rhs));
  return x;
}

CurveFormDerivatives along(const FormState& f, const CurvatureState& st, int n) {
  const std::array<Vec3, 3> d{st.du[1], st.du[2], st.du[3]};
  CurveFormDerivatives c = curve_form_derivatives(f, std::span(d.data(), n));
  if (c.order < n) {
    throw Error(ErrorCode::invalid_argument,
                "order " + std::to_string(n) + " pencil derivatives need a jet of order " +
                    std::to_string(n + 2));
  }
  return c;
}

// Inner product of alpha'''' with w, as a row over (u'''', k1'', k2', k3)
// plus the known remainder moved to the right-hand side.
void fourth_order_row(const CurvatureState& st, const Vec4& w, const Vec3& g_row,
                      const Vec4& om3, SmallMatrix& m, std::vector<double>& rhs,
                      std::size_t r) {
  const double k1 = st.k1, k2 = st.k2, k1p = st.k1p;
  for (int j = 0; j < 3; ++j) m(r, j) = g_row[j];
  m(r, 3) = -dot(st.n, w);
  m(r, 4) = -k1 * dot(st.b1, w);
  m(r, 5) = -k1 * k2 * dot(st.b2, w);
  rhs[r] = -dot(om3, w) - 3.0 * k1 * k1p * dot(st.t, w) -
           (k1 * k1 * k1 + k1 * k2 * k2) * dot(st.n, w) + 2.0 * k1p * k2 * dot(st.b1, w);
}

}  // namespace

std::string_view to_string(StationFlag f) {
  switch (f) {
    case StationFlag::ok: return "ok";
    case StationFlag::geodesic_degenerate: return "geodesic_degenerate";
    case StationFlag::planar_degenerate: return "planar_degenerate";
    case StationFlag::singular_system: return "singular_system";
  }
  return "unknown";
}

std::array<double, 4> kn_derivatives(const CurveFormDerivatives& d, double k_n,
                                     double tol) {
  std::array<double, 4> k{k_n, 0.0, 0.0, 0.0};
  SymSeries gs, hs;
  for (std::size_t slot = 0; slot < 6; ++slot) {
    for (int n = 0; n <= d.order; ++n) {
      gs[slot].c[n] = d.g[n].c[slot] / kFactorial[n];
      hs[slot].c[n] = d.h[n].c[slot] / kFactorial[n];
    }
  }
  const Sym3 a0 = d.h[0] - k_n * d.g[0];
  // d/dk det(h - k g) = -tr(adj(A) g), via det(A - eps g) at first order.
  Series3 probe;
  {
    SymSeries lin;
    for (std::size_t slot = 0; slot < 6; ++slot) {
      lin[slot].c[0] = a0.c[slot];
      lin[slot].c[1] = -d.g[0].c[slot];
    }
    probe = det_series(lin);
  }
  const double c01 = probe.c[1];
  const double det_g = det(d.g[0]);
  if (std::fabs(c01 / det_g) < tol * std::max(1.0, k_n * k_n)) {
    throw Error(ErrorCode::repeated_root, "followed principal curvature is not a simple root");
  }
  for (int n = 1; n <= d.order; ++n) {
    Series3 ks;
    for (int m = 0; m < n; ++m) ks.c[m] = k[m] / kFactorial[m];
    SymSeries a;
    for (std::size_t slot = 0; slot < 6; ++slot) a[slot] = hs[slot] - ks * gs[slot];
    const double r = det_series(a).c[n];
    k[n] = -kFactorial[n] * r / c01;
  }
  return k;
}

FrameState darboux_frame(const Vec4& T, const Vec4& Tp, const Vec4& N, double tol) {
  const Vec4 tangential = Tp - dot(Tp, N) * N;
  const double len = norm(tangential);
  if (!(len > tol * std::max(1.0, norm(Tp)))) {
    throw Error(ErrorCode::geodesic_degenerate,
                "T' is normal to the hypersurface; E is undefined");
  }
  FrameState fr;
  fr.T = T;
  fr.N = N;
  fr.E = tangential / len;
  fr.D = ternary_product(N, T, fr.E);
  return fr;
}

Sym3 pencil_derivative(const CurveFormDerivatives& d, const std::array<double, 4>& kn,
                       int n) {
  Sym3 a = d.h[n];
  for (int m = 0; m <= n; ++m) a = a - (kBinomial[n][m] * kn[m]) * d.g[n - m];
  return a;
}

void solve_second_order(const Jet& jet, const FormState& f, CurvatureState& st,
                        const FrenetTolerances& tol) {
  const Vec3& a = st.du[1];
  st.alpha[0] = jet.value();
  st.alpha[1] = tangent(jet, a);
  const CurveFormDerivatives d1 = along(f, st, 1);
  const auto kn = kn_derivatives(d1, st.kn[0], tol.repeated_root);
  st.kn[1] = kn[1];

  // The index with the largest |u_i'| carries the tangency row; the other
  // two carry the unknowns k_g1 <E, R_i>.
  int p = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(a[i]) > std::fabs(a[p])) p = i;
  }
  int others[2], n_others = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != p) others[n_others++] = i;
  }

  const Sym3 a0 = f.h - st.kn[0] * f.g;
  const Sym3 a1 = pencil_derivative(d1, kn, 1);
  const auto rows = row_pair(strongest_row_pair(a0).first);
  const Vec4 om1 = omega1(jet, a);
  const Vec3 ga = apply(f.g, a);

  SmallMatrix m(5, 5);
  std::vector<double> rhs(5);
  for (int j = 0; j < 3; ++j) m(0, j) = ga[j];
  rhs[0] = -dot(om1, st.alpha[1]);
  for (int q = 0; q < 2; ++q) {
    const int i = others[q];
    for (int j = 0; j < 3; ++j) m(1 + q, j) = f.g(i, j);
    m(1 + q, 3 + q) = -1.0;
    rhs[1 + q] = -dot(om1, jet.d1(i));
  }
  const Vec3 rho = -apply(a1, a);
  for (int q = 0; q < 2; ++q) {
    const int r = rows[q];
    for (int j = 0; j < 3; ++j) m(3 + q, j) = a0(r, j);
    rhs[3 + q] = rho[r];
  }
  st.det_second = determinant(m);
  const auto x = solve_checked(m, rhs, tol, st);
  st.du[2] = Vec3{{x[0], x[1], x[2]}};

  st.alpha[2] = tangent(jet, st.du[2]) + om1;
  st.frame.T = st.alpha[1];
  st.frame.N = f.N;
  const Vec4 tangential = st.alpha[2] - dot(st.alpha[2], f.N) * f.N;
  st.k_g1 = norm(tangential);
  st.k1 = std::sqrt(st.kn[0] * st.kn[0] + st.k_g1 * st.k_g1);
  st.order = 1;
  st.frame = darboux_frame(st.alpha[1], st.alpha[2], f.N, tol.geodesic);
  st.k_g1 = dot(st.alpha[2], st.frame.E);
  st.k1 = std::sqrt(st.kn[0] * st.kn[0] + st.k_g1 * st.k_g1);
}

void solve_third_order(const Jet& jet, const FormState& f, CurvatureState& st,
                       const FrenetTolerances& tol) {
  const Vec3& a = st.du[1];
  const Vec3& b = st.du[2];
  const CurveFormDerivatives d2 = along(f, st, 2);
  const auto kn = kn_derivatives(d2, st.kn[0], tol.repeated_root);
  st.kn[2] = kn[2];

  const Sym3 a0 = f.h - st.kn[0] * f.g;
  const Sym3 a1 = pencil_derivative(d2, kn, 1);
  const Sym3 a2 = pencil_derivative(d2, kn, 2);
  const auto rows = row_pair(strongest_row_pair(a0).first);
  const Vec4 om2 = omega2(jet, a, b);
  const FrameState& fr = st.frame;
  const double k1sq = st.k1 * st.k1;

  SmallMatrix m(5, 5);
  std::vector<double> rhs(5);
  for (int i = 0; i < 3; ++i) {
    const Vec4& ri = jet.d1(i);
    for (int j = 0; j < 3; ++j) m(i, j) = f.g(i, j);
    m(i, 3) = -dot(fr.E, ri);
    m(i, 4) = -st.k_g1 * dot(fr.D, ri);
    rhs[i] = -k1sq * dot(fr.T, ri) - dot(om2, ri);
  }
  const Vec3 rho = -(apply(a2, a) + 2.0 * apply(a1, b));
  for (int q = 0; q < 2; ++q) {
    const int r = rows[q];
    for (int j = 0; j < 3; ++j) m(3 + q, j) = a0(r, j);
    rhs[3 + q] = rho[r];
  }
  const auto x = solve_checked(m, rhs, tol, st);
  st.du[3] = Vec3{{x[0], x[1], x[2]}};
  st.k_g1p = x[3];
  st.k_g2 = x[4];

  st.alpha[3] = tangent(jet, st.du[3]) + om2;
  st.t = st.alpha[1];
  st.n = st.alpha[2] / norm(st.alpha[2]);
  st.k1p = dot(st.n, st.alpha[3]);
  const Vec4 w = ternary_product(st.alpha[1], st.alpha[2], st.alpha[3]);
  const double wn = norm(w);
  if (!(wn > tol.planar * k1sq)) {
    st.k2 = 0.0;
    st.order = 2;
    throw Error(ErrorCode::planar_degenerate,
                "alpha' (x) alpha'' (x) alpha''' vanishes; b1, b2 undefined");
  }
  st.b2 = w / wn;
  st.b1 = ternary_product(st.b2, st.t, st.n);
  st.k2 = dot(st.b1, st.alpha[3]) / st.k1;
  st.order = 2;
}

void solve_fourth_order(const Jet& jet, const FormState& f, CurvatureState& st,
                        const FrenetTolerances& tol) {
  const Vec3& a = st.du[1];
  const Vec3& b = st.du[2];
  const Vec3& c = st.du[3];
  const CurveFormDerivatives d3 = along(f, st, 3);
  const auto kn = kn_derivatives(d3, st.kn[0], tol.repeated_root);
  st.kn[3] = kn[3];

  const Sym3 a0 = f.h - st.kn[0] * f.g;
  const Sym3 a1 = pencil_derivative(d3, kn, 1);
  const Sym3 a2 = pencil_derivative(d3, kn, 2);
  const Sym3 a3 = pencil_derivative(d3, kn, 3);
  const auto rows = row_pair(strongest_row_pair(a0).first);
  const Vec4 om3 = omega3(jet, a, b, c);

  SmallMatrix m(6, 6);
  std::vector<double> rhs(6);
  for (int i = 0; i < 3; ++i) {
    fourth_order_row(st, jet.d1(i), row_of(f.g, i), om3, m, rhs, i);
  }
  fourth_order_row(st, f.N, Vec3{}, om3, m, rhs, 3);
  const Vec3 rho = -(apply(a3, a) + 3.0 * apply(a2, b) + 3.0 * apply(a1, c));
  for (int q = 0; q < 2; ++q) {
    const int r = rows[q];
    for (int j = 0; j < 3; ++j) m(4 + q, j) = a0(r, j);
    rhs[4 + q] = rho[r];
  }
  const auto x = solve_checked(m, rhs, tol, st);
  st.du[4] = Vec3{{x[0], x[1], x[2]}};
  st.k1pp = x[3];
  st.k2p = x[4];
  st.k3 = x[5];
  st.alpha[4] = tangent(jet, st.du[4]) + om3;
  st.order = 3;
}

SmallMatrix frame_projection_matrix(const FormState& f, const Jet& jet,
                                    const CurvatureState& st,
                                    std::array<double, 6>* rhs) {
  const Vec4 om3 = omega3(jet, st.du[1], st.du[2], st.du[3]);
  SmallMatrix m(6, 6);
  std::vector<double> r(6);
  for (int i = 0; i < 3; ++i) {
    fourth_order_row(st, jet.d1(i), row_of(f.g, i), om3, m, r, i);
  }
  const Vec4* frame[3] = {&st.n, &st.b1, &st.b2};
  for (int q = 0; q < 3; ++q) {
    const Vec4& w = *frame[q];
    const Vec3 proj{{dot(w, jet.d1(0)), dot(w, jet.d1(1)), dot(w, jet.d1(2))}};
    fourth_order_row(st, w, proj, om3, m, r, 3 + q);
  }
  if (rhs != nullptr) std::copy(r.begin(), r.end(), rhs->begin());
  return m;
}

CurvatureState evaluate_station(const HypersurfaceDef& surface, const Vec3& u,
                                const Vec3& du, double k_n,
                                const FrenetTolerances& tol) {
  CurvatureState st;
  st.u = u;
  st.du[1] = du;
  st.kn[0] = k_n;
  const Jet jet = evaluate_jet(surface, u, kMaxJetOrder);
  const FormState f = fundamental_forms(jet);
  try {
    solve_second_order(jet, f, st, tol);
    solve_third_order(jet, f, st, tol);
    solve_fourth_order(jet, f, st, tol);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::geodesic_degenerate:
        st.flag = StationFlag::geodesic_degenerate;
        st.k1 = std::fabs(k_n);
        st.k_g1 = 0.0;
        break;
      case ErrorCode::planar_degenerate:
        st.flag = StationFlag::planar_degenerate;
        break;
      case ErrorCode::singular_matrix:
      case ErrorCode::repeated_root:
        st.flag = StationFlag::singular_system;
        break;
      default:
        throw;
    }
  }
  return st;
}

}  // namespace hyperloc
