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

// Truncated Taylor arithmetic used to propagate exact derivatives through
// the unit normal, the fundamental forms and the pencil determinant.

#ifndef HYPERLOC_TAYLOR_HPP_
#define HYPERLOC_TAYLOR_HPP_

#include <array>

namespace hyperloc {

/// Polynomial in (du1, du2, du3) truncated at total degree 3. Coefficients
/// are indexed by monomial number (see monomials()); coefficient of
/// du^alpha equals the partial derivative d^alpha f divided by alpha!.
class Taylor3 {
 public:
  static constexpr int kDegree = 3;
  static constexpr std::size_t kSize = 20;

  Taylor3() = default;
  explicit Taylor3(double constant) { c_[0] = constant; }

  double& operator[](std::size_t m) { return c_[m]; }
  double operator[](std::size_t m) const { return c_[m]; }

  /// Partial derivative for monomial m (coefficient times alpha!).
  double partial(std::size_t m) const;
  void set_partial(std::size_t m, double value);

  Taylor3& operator+=(const Taylor3& o);
  Taylor3& operator-=(const Taylor3& o);
  Taylor3& operator*=(double s);
  friend Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
  friend Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
  friend Taylor3 operator*(Taylor3 a, double s) { return a *= s; }
  friend Taylor3 operator*(double s, Taylor3 a) { return a *= s; }
  friend Taylor3 operator*(const Taylor3& a, const Taylor3& b);

  friend Taylor3 reciprocal(const Taylor3& a);
  friend Taylor3 sqrt(const Taylor3& a);

 private:
  std::array<double, kSize> c_{};
};

/// Univariate series in s truncated at degree 3; coefficient n is f^(n)/n!.
struct Series3 {
  std::array<double, 4> c{};

  static Series3 from_derivatives(double v, double d1, double d2, double d3) {
    return Series3{{v, d1, d2 / 2.0, d3 / 6.0}};
  }
  /// n-th derivative at s = 0.
  double derivative(int n) const {
    constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
    return c[n] * fact[n];
  }

  friend Series3 operator+(Series3 a, const Series3& b) {
    for (int i = 0; i < 4; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Series3 operator-(Series3 a, const Series3& b) {
    for (int i = 0; i < 4; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Series3 operator*(double s, Series3 a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend Series3 operator*(const Series3& a, const Series3& b) {
    Series3 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
};

}  // namespace hyperloc

#endif  // HYPERLOC_TAYLOR_HPP_
