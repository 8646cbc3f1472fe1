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

#include "hyperloc/taylor.hpp"

#include <cmath>
#include <vector>

#include "hyperloc/surface.hpp"

namespace hyperloc {

namespace {

struct Product {
  unsigned char i, j, k;  // coef[k] += a[i] * b[j]
};

const std::vector<Product>& product_table() {
  static const std::vector<Product> table = [] {
    std::vector<Product> t;
    const auto& m = monomials();
    for (std::size_t i = 0; i < Taylor3::kSize; ++i) {
      for (std::size_t j = 0; j < Taylor3::kSize; ++j) {
        if (m[i].degree + m[j].degree > Taylor3::kDegree) continue;
        const auto& a = m[i].exponent;
        const auto& b = m[j].exponent;
        const std::size_t k = monomial_index(a[0] + b[0], a[1] + b[1], a[2] + b[2]);
        t.push_back({static_cast<unsigned char>(i), static_cast<unsigned char>(j),
                     static_cast<unsigned char>(k)});
      }
    }
    return t;
  }();
  return table;
}

double factorial_weight(std::size_t m) {
  constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
  const auto& e = monomials()[m].exponent;
  return fact[e[0]] * fact[e[1]] * fact[e[2]];
}

// f(a0 + x) = sum_n coeffs[n] x^n with x the non-constant part of a.
Taylor3 compose(const Taylor3& a, const std::array<double, 4>& coeffs) {
  Taylor3 x = a;
  x[0] = 0.0;
  Taylor3 result(coeffs[0]);
  Taylor3 power(1.0);
  for (int n = 1; n <= Taylor3::kDegree; ++n) {
    power = power * x;
    result += power * coeffs[n];
  }
  return result;
}

}  // namespace

double Taylor3::partial(std::size_t m) const { return c_[m] * factorial_weight(m); }

void Taylor3::set_partial(std::size_t m, double value) {
  c_[m] = value / factorial_weight(m);
}

Taylor3& Taylor3::operator+=(const Taylor3& o) {
  for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
  return *this;
}

Taylor3& Taylor3::operator-=(const Taylor3& o) {
  for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
  return *this;
}

Taylor3& Taylor3::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
  Taylor3 r;
  for (const Product& p : product_table()) r.c_[p.k] += a.c_[p.i] * b.c_[p.j];
  return r;
}

Taylor3 reciprocal(const Taylor3& a) {
  const double a0 = a[0];
  // 1/(a0 + x) = (1/a0) sum (-x/a0)^n
  const double r = 1.0 / a0;
  return compose(a, {r, -r * r, r * r * r, -r * r * r * r});
}

Taylor3 sqrt(const Taylor3& a) {
  const double a0 = a[0];
  const double s = std::sqrt(a0);
  // sqrt(a0 + x) = s (1 + y/2 - y^2/8 + y^3/16), y = x / a0
  return compose(a, {s, s / (2.0 * a0), -s / (8.0 * a0 * a0),
                     s / (16.0 * a0 * a0 * a0)});
}

}  // namespace hyperloc
