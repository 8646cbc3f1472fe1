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

#ifndef HYPERLOC_VEC_HPP_
#define HYPERLOC_VEC_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hyperloc {

/// Fixed-size real vector. Vec4 holds points and directions of E^4,
/// Vec3 holds parameter triples (u1, u2, u3) and their derivatives.
template <std::size_t N>
struct Vec {
  std::array<double, N> c{};

  static constexpr std::size_t size() { return N; }

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  static constexpr Vec basis(std::size_t i) {
    Vec v;
    v.c[i] = 1.0;
    return v;
  }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  constexpr Vec& operator/=(double s) {
    for (auto& x : c) x /= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator/(Vec a, double s) { return a /= s; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
double max_abs(const Vec<N>& a) {
  double m = 0.0;
  for (double x : a.c) m = std::fmax(m, std::fabs(x));
  return m;
}

/// Alternating trilinear product on E^4: the formal cofactor expansion of
/// det[e; x; y; z] along its symbolic first row. Orthogonal to x, y, z, and
/// <x (x) y (x) z, w> = det[w; x; y; z]. In particular e1 (x) e2 (x) e3 = -e4.
Vec4 ternary_product(const Vec4& x, const Vec4& y, const Vec4& z);

/// det of the 4x4 matrix with rows a, b, c, d.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

/// Symmetric 3x3 matrix stored as (11, 12, 13, 22, 23, 33).
struct Sym3 {
  std::array<double, 6> c{};

  static constexpr std::size_t slot(std::size_t i, std::size_t j) {
    if (i > j) {
      std::size_t t = i;
      i = j;
      j = t;
    }
    constexpr std::size_t table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
  }

  constexpr double operator()(std::size_t i, std::size_t j) const {
    return c[slot(i, j)];
  }
  constexpr double& operator()(std::size_t i, std::size_t j) {
    return c[slot(i, j)];
  }

  static constexpr Sym3 identity() { return Sym3{{1, 0, 0, 1, 0, 1}}; }

  friend constexpr Sym3 operator+(Sym3 a, const Sym3& b) {
    for (std::size_t i = 0; i < 6; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend constexpr Sym3 operator-(Sym3 a, const Sym3& b) {
    for (std::size_t i = 0; i < 6; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend constexpr Sym3 operator*(double s, Sym3 a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend constexpr bool operator==(const Sym3&, const Sym3&) = default;
};

/// Bilinear form v^T S w.
double quadratic(const Sym3& s, const Vec3& v, const Vec3& w);
Vec3 apply(const Sym3& s, const Vec3& v);
double det(const Sym3& s);
double max_abs(const Sym3& s);

/// Dense row-major matrix with at most 6 rows and 6 columns.
class SmallMatrix {
 public:
  static constexpr std::size_t kMaxDim = 6;

  SmallMatrix(std::size_t rows, std::size_t cols);

  static SmallMatrix identity(std::size_t n);
  static SmallMatrix from_sym(const Sym3& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * kMaxDim + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * kMaxDim + j];
  }

  std::vector<double> multiply(std::span<const double> x) const;
  double max_abs() const;
  /// Infinity norm (max absolute row sum).
  double norm_inf() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

/// Gaussian elimination with partial (row) pivoting. Throws
/// Error(singular_matrix) when a pivot is below pivot_tol times the largest
/// entry of A.
std::vector<double> solve_linear(const SmallMatrix& a, std::span<const double> b,
                                 double pivot_tol = 1e-13);

/// Relative residual |Ax - b|_inf / (|A|_inf |x|_inf + |b|_inf).
double relative_residual(const SmallMatrix& a, std::span<const double> x,
                         std::span<const double> b);

/// Determinant by LU with partial pivoting (0 for exactly singular input).
double determinant(const SmallMatrix& a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(const SmallMatrix& a);

/// Numerical rank of a symmetric 3x3 matrix from its singular values.
/// Returns 0 when the largest singular value is at most tol * scale;
/// otherwise counts singular values above tol * (largest singular value).
int rank_with_tolerance(const SmallMatrix& a, double tol = 1e-8,
                        double scale = 1.0);

}  // namespace hyperloc

#endif  // HYPERLOC_VEC_HPP_
