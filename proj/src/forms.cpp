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

#include "hyperloc/forms.hpp"

#include <algorithm>

#include "hyperloc/error.hpp"
#include "hyperloc/taylor.hpp"

namespace hyperloc {

namespace {

using TaylorVec = std::array<Taylor3, 4>;

// Series of the jet partial d/du_shift applied to R, truncated at `degree`.
TaylorVec shifted_series(const Jet& jet, std::span<const int> shift, int degree) {
  const auto& mono = monomials();
  int base[3] = {0, 0, 0};
  for (int i : shift) ++base[i];
  TaylorVec s;
  for (std::size_t m = 0; m < Taylor3::kSize; ++m) {
    if (mono[m].degree > degree) continue;
    const auto& e = mono[m].exponent;
    const Vec4& d = jet.at(monomial_index(e[0] + base[0], e[1] + base[1],
                                          e[2] + base[2]));
    for (int c = 0; c < 4; ++c) s[c].set_partial(m, d[c]);
  }
  return s;
}

Taylor3 det3(const Taylor3& a00, const Taylor3& a01, const Taylor3& a02,
             const Taylor3& a10, const Taylor3& a11, const Taylor3& a12,
             const Taylor3& a20, const Taylor3& a21, const Taylor3& a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

TaylorVec ternary(const TaylorVec& x, const TaylorVec& y, const TaylorVec& z) {
  TaylorVec r;
  for (int i = 0; i < 4; ++i) {
    int k[3];
    for (int j = 0, n = 0; j < 4; ++j) {
      if (j != i) k[n++] = j;
    }
    Taylor3 minor = det3(x[k[0]], x[k[1]], x[k[2]], y[k[0]], y[k[1]], y[k[2]],
                         z[k[0]], z[k[1]], z[k[2]]);
    r[i] = (i % 2 == 0) ? minor : minor * -1.0;
  }
  return r;
}

Taylor3 dot(const TaylorVec& a, const TaylorVec& b) {
  Taylor3 s;
  for (int c = 0; c < 4; ++c) s += a[c] * b[c];
  return s;
}

}  // namespace

Vec4 unit_normal(const Jet& jet) {
  if (jet.order() < 1) {
    throw Error(ErrorCode::invalid_argument, "unit_normal needs a first-order jet");
  }
  const Vec4& r1 = jet.d1(0);
  const Vec4& r2 = jet.d1(1);
  const Vec4& r3 = jet.d1(2);
  const Vec4 w = ternary_product(r1, r2, r3);
  const double n = norm(w);
  if (!(n >= 1e-12 * norm(r1) * norm(r2) * norm(r3)) || n == 0.0) {
    throw Error(ErrorCode::regularity, "R_1 (x) R_2 (x) R_3 vanishes");
  }
  return w / n;
}

FormState fundamental_forms(const Jet& jet) {
  if (jet.order() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "fundamental_forms needs a second-order jet");
  }
  FormState f;
  f.order = std::min(jet.order() - 2, Taylor3::kDegree);
  f.N = unit_normal(jet);
  const int deg = f.order;

  std::array<TaylorVec, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = shifted_series(jet, std::array{i}, deg);
  const TaylorVec w = ternary(r[0], r[1], r[2]);
  const Taylor3 inv_len = reciprocal(sqrt(dot(w, w)));
  TaylorVec n;
  for (int c = 0; c < 4; ++c) n[c] = w[c] * inv_len;

  const auto& mono = monomials();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const Taylor3 gij = dot(r[i], r[j]);
      const Taylor3 hij = dot(shifted_series(jet, std::array{i, j}, deg), n);
      for (std::size_t m = 0; m < Taylor3::kSize; ++m) {
        if (mono[m].degree > deg) continue;
        f.g_partials[m](i, j) = gij.partial(m);
        f.h_partials[m](i, j) = hij.partial(m);
      }
    }
  }
  f.g = f.g_partials[0];
  f.h = f.h_partials[0];
  return f;
}

double normal_curvature(const FormState& f, double lambda, double mu) {
  return normal_curvature(f, Vec3{{1.0, lambda, mu}});
}

double normal_curvature(const FormState& f, const Vec3& direction) {
  return quadratic(f.h, direction, direction) / quadratic(f.g, direction, direction);
}

CurveFormDerivatives curve_form_derivatives(const FormState& f,
                                            std::span<const Vec3> derivs) {
  CurveFormDerivatives out;
  out.order = std::min(static_cast<int>(derivs.size()), f.order);
  out.order = std::min(out.order, 3);
  out.g[0] = f.g;
  out.h[0] = f.h;
  if (out.order == 0) return out;

  // du_i(s) as a series; missing higher derivatives only affect orders
  // beyond out.order.
  std::array<Series3, 3> du;
  for (int i = 0; i < 3; ++i) {
    double d[3] = {0.0, 0.0, 0.0};
    for (int n = 0; n < out.order; ++n) d[n] = derivs[n][i];
    du[i] = Series3::from_derivatives(0.0, d[0], d[1], d[2]);
  }
  std::array<std::array<Series3, 4>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    powers[i][0] = Series3{{1.0, 0.0, 0.0, 0.0}};
    for (int p = 1; p <= 3; ++p) powers[i][p] = powers[i][p - 1] * du[i];
  }

  const auto& mono = monomials();
  std::array<Series3, 6> gs{}, hs{};
  for (std::size_t m = 1; m < Taylor3::kSize; ++m) {
    if (mono[m].degree > out.order) continue;
    const auto& e = mono[m].exponent;
    Taylor3 unit;
    unit.set_partial(m, 1.0);
    const double weight = unit[m];  // 1 / alpha!
    const Series3 term = weight * (powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]]);
    for (std::size_t slot = 0; slot < 6; ++slot) {
      gs[slot] = gs[slot] + f.g_partials[m].c[slot] * term;
      hs[slot] = hs[slot] + f.h_partials[m].c[slot] * term;
    }
  }
  for (int n = 1; n <= out.order; ++n) {
    for (std::size_t slot = 0; slot < 6; ++slot) {
      out.g[n].c[slot] = gs[slot].derivative(n);
      out.h[n].c[slot] = hs[slot].derivative(n);
    }
  }
  return out;
}

}  // namespace hyperloc
