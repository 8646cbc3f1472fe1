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

#include "hyperloc/vec.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "hyperloc/error.hpp"

namespace hyperloc {

namespace {

double det3(double a00, double a01, double a02, double a10, double a11,
            double a12, double a20, double a21, double a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

}  // namespace

Vec4 ternary_product(const Vec4& x, const Vec4& y, const Vec4& z) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) {
    int cols[3];
    for (int j = 0, k = 0; j < 4; ++j) {
      if (j != i) cols[k++] = j;
    }
    const double minor = det3(x[cols[0]], x[cols[1]], x[cols[2]],  //
                              y[cols[0]], y[cols[1]], y[cols[2]],  //
                              z[cols[0]], z[cols[1]], z[cols[2]]);
    r[i] = (i % 2 == 0) ? minor : -minor;
  }
  return r;
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  return dot(a, ternary_product(b, c, d));
}

double quadratic(const Sym3& s, const Vec3& v, const Vec3& w) {
  double r = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r += s(i, j) * v[i] * w[j];
  return r;
}

Vec3 apply(const Sym3& s, const Vec3& v) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += s(i, j) * v[j];
  return r;
}

double det(const Sym3& s) {
  return det3(s(0, 0), s(0, 1), s(0, 2), s(1, 0), s(1, 1), s(1, 2), s(2, 0),
              s(2, 1), s(2, 2));
}

double max_abs(const Sym3& s) {
  double m = 0.0;
  for (double x : s.c) m = std::max(m, std::fabs(x));
  return m;
}

SmallMatrix::SmallMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) {
    throw Error(ErrorCode::invalid_argument,
                "SmallMatrix dimensions must lie in [1, 6]");
  }
}

SmallMatrix SmallMatrix::identity(std::size_t n) {
  SmallMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::from_sym(const Sym3& s) {
  SmallMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = s(i, j);
  return m;
}

std::vector<double> SmallMatrix::multiply(std::span<const double> x) const {
  assert(x.size() == cols_);
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double SmallMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m = std::max(m, std::fabs((*this)(i, j)));
  return m;
}

double SmallMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row += std::fabs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

std::vector<double> solve_linear(const SmallMatrix& a, std::span<const double> b,
                                 double pivot_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw Error(ErrorCode::invalid_argument, "solve_linear: shape mismatch");
  }
  SmallMatrix m = a;
  std::vector<double> x(b.begin(), b.end());
  const double threshold = pivot_tol * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    }
    if (!(std::fabs(m(p, k)) > threshold)) {
      throw Error(ErrorCode::singular_matrix,
                  "pivot " + std::to_string(k) + " below tolerance");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * x[j];
    x[k] = s / m(k, k);
  }
  return x;
}

double relative_residual(const SmallMatrix& a, std::span<const double> x,
                         std::span<const double> b) {
  const std::vector<double> ax = a.multiply(x);
  double r = 0.0, xn = 0.0, bn = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    r = std::max(r, std::fabs(ax[i] - b[i]));
    bn = std::max(bn, std::fabs(b[i]));
  }
  for (double xi : x) xn = std::max(xn, std::fabs(xi));
  const double denom = a.norm_inf() * xn + bn;
  return denom > 0.0 ? r / denom : r;
}

double determinant(const SmallMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw Error(ErrorCode::invalid_argument, "determinant: matrix not square");
  }
  SmallMatrix m = a;
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    }
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

std::vector<double> jacobi_eigenvalues(const SmallMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw Error(ErrorCode::invalid_argument, "jacobi: matrix not square");
  }
  SmallMatrix m = a;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += m(i, i) * m(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    }
    if (off == 0.0 || off <= 1e-34 * diag) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        // Rotation that annihilates m(p, q); symmetric Schur decomposition.
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

int rank_with_tolerance(const SmallMatrix& a, double tol, double scale) {
  std::vector<double> sv = jacobi_eigenvalues(a);
  for (double& s : sv) s = std::fabs(s);
  const double largest = *std::max_element(sv.begin(), sv.end());
  if (largest <= tol * scale) return 0;
  int rank = 0;
  for (double s : sv) {
    if (s > tol * largest) ++rank;
  }
  return rank;
}

}  // namespace hyperloc
