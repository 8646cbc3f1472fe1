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

#include "hyperloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperloc/error.hpp"

namespace hyperloc {

namespace {

// Central stencils, offsets -3..3.
struct Stencil {
  std::array<double, 7> w;
  double denom;
};

constexpr Stencil kFourth[4] = {
    {{0, 1, -8, 0, 8, -1, 0}, 12.0},
    {{0, -1, 16, -30, 16, -1, 0}, 12.0},
    {{1, -8, 13, 0, -13, 8, -1}, 8.0},
    {{-1, 12, -39, 56, -39, 12, -1}, 6.0},
};
constexpr Stencil kSecond[4] = {
    {{0, 0, -1, 0, 1, 0, 0}, 2.0},
    {{0, 0, 1, -2, 1, 0, 0}, 1.0},
    {{0, -1, 2, 0, -2, 1, 0}, 2.0},
    {{0, 1, -4, 6, -4, 1, 0}, 1.0},
};

Vec4 apply(const Stencil& st, std::span<const Vec4> x, std::size_t i, double scale) {
  Vec4 r;
  for (int k = 0; k < 7; ++k) {
    if (st.w[k] != 0.0) r += st.w[k] * x[i + k - 3];
  }
  return r / (st.denom * scale);
}

double weight_sum(const Stencil& st) {
  double s = 0.0;
  for (double w : st.w) s += std::fabs(w);
  return s / st.denom;
}

// Frames are only noise-free above this multiple of the derivative error.
constexpr double kFloorFactor = 10.0;

}  // namespace

FdFrenetReport fd_frenet(std::span<const Vec4> positions, double spacing) {
  if (positions.size() < 9) {
    throw Error(ErrorCode::too_few_samples,
                "finite-difference Frenet apparatus needs at least 9 samples, got " +
                    std::to_string(positions.size()));
  }
  if (!(spacing > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sample spacing must be positive");
  }
  double xmax = 0.0;
  for (const Vec4& p : positions) xmax = std::max(xmax, max_abs(p));
  constexpr double eps = std::numeric_limits<double>::epsilon();

  FdFrenetReport report;
  report.spacing = spacing;
  for (std::size_t i = 3; i + 3 < positions.size(); ++i) {
    FdStation st;
    st.index = i;
    st.s = static_cast<double>(i) * spacing;
    double h_pow = 1.0;
    for (int m = 0; m < 4; ++m) {
      h_pow *= spacing;
      st.d[m] = apply(kFourth[m], positions, i, h_pow);
      const Vec4 coarse = apply(kSecond[m], positions, i, h_pow);
      st.error[m] = norm(st.d[m] - coarse) +
                    8.0 * eps * xmax * weight_sum(kFourth[m]) / h_pow;
    }
    const Vec4& a1 = st.d[0];
    const Vec4& a2 = st.d[1];
    const Vec4& a3 = st.d[2];
    const Vec4& a4 = st.d[3];
    st.t = a1;
    st.k1 = norm(a2);
    if (st.k1 > kFloorFactor * st.error[1]) {
      st.n = a2 / st.k1;
      const Vec4 perp = a3 - dot(a3, st.t) * st.t - dot(a3, st.n) * st.n;
      if (norm(perp) > kFloorFactor * st.error[2]) {
        const Vec4 w = ternary_product(a1, a2, a3);
        st.b2 = w / norm(w);
        st.b1 = ternary_product(st.b2, st.t, st.n);
        const double k2 = dot(st.b1, a3) / st.k1;
        st.k2 = k2;
        const double a4b2 = dot(st.b2, a4);
        if (std::fabs(a4b2) > kFloorFactor * st.error[3]) st.k3 = a4b2 / (st.k1 * k2);
      }
    }
    report.stations.push_back(st);
  }
  return report;
}

std::array<double, 3> shape_eigenvalues(const Sym3& g, const Sym3& h) {
  // g = L L^T.
  double l[3][3] = {};
  for (int j = 0; j < 3; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (!(d > 0.0)) {
      throw Error(ErrorCode::invalid_argument, "first fundamental form is not positive definite");
    }
    l[j][j] = std::sqrt(d);
    for (int i = j + 1; i < 3; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  // Y = L^-1 H by forward substitution on each column, then C = L^-1 Y^T.
  double y[3][3];
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      double s = h(i, c);
      for (int k = 0; k < i; ++k) s -= l[i][k] * y[k][c];
      y[i][c] = s / l[i][i];
    }
  }
  SmallMatrix cm(3, 3);
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      double s = y[c][i];
      for (int k = 0; k < i; ++k) s -= l[i][k] * cm(k, c);
      cm(i, c) = s / l[i][i];
    }
  }
  // Symmetrize the rounding.
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double m = 0.5 * (cm(i, j) + cm(j, i));
      cm(i, j) = cm(j, i) = m;
    }
  }
  const std::vector<double> ev = jacobi_eigenvalues(cm);
  return {ev[0], ev[1], ev[2]};
}

DarbouxResiduals darboux_residuals(std::span<const DarbouxSample> samples,
                                   double spacing) {
  if (samples.size() < 5) {
    throw Error(ErrorCode::too_few_samples, "frame residuals need at least 5 samples");
  }
  DarbouxResiduals out;
  auto update = [&](int r, const Vec4& v) {
    out.row[r] = std::max(out.row[r], norm(v));
    ++out.count[r];
  };
  const double inv = 1.0 / (12.0 * spacing);
  auto diff = [&](std::size_t i, Vec4 DarbouxSample::*x) {
    return (samples[i - 2].*x - 8.0 * (samples[i - 1].*x) + 8.0 * (samples[i + 1].*x) -
            samples[i + 2].*x) *
           inv;
  };
  for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
    const DarbouxSample& c = samples[i];
    update(3, diff(i, &DarbouxSample::N) + c.k_n * c.T);
    if (!c.has_frame) continue;
    update(0, diff(i, &DarbouxSample::T) - (c.k_g1 * c.E + c.k_n * c.N));
    bool neighbours = true;
    for (std::size_t j = i - 2; j <= i + 2; ++j) neighbours = neighbours && samples[j].has_frame;
    if (!neighbours) continue;
    update(1, diff(i, &DarbouxSample::E) - (c.k_g2 * c.D - c.k_g1 * c.T));
    update(2, diff(i, &DarbouxSample::D) + c.k_g2 * c.E);
  }
  return out;
}

}  // namespace hyperloc
