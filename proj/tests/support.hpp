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

// Fixtures and reference computations shared by the test binaries. Nothing
// here calls into the code under test except to load surfaces.

#ifndef HYPERLOC_TESTS_SUPPORT_HPP_
#define HYPERLOC_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hyperloc/surface.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc::test {

inline std::string surface_path(const std::string& name) {
  return std::string(HYPERLOC_SURFACE_DIR) + "/" + name + ".surf";
}

inline HypersurfaceDef fixture(const std::string& name) {
  return load_surface(surface_path(name));
}

// Radius of surfaces/hypersphere.surf.
constexpr double kSphereRadius = 1.5;

// Hopf-type product of a torus of revolution with a line: the u1 lines are
// non-geodesic circles, so they are planar lines of curvature.
constexpr const char* kTorusProduct = R"(
x1 = (3 + cos(u2))*cos(u1);
x2 = (3 + cos(u2))*sin(u1);
x3 = sin(u2);
x4 = u3;
domain u1 in [-4, 4], u2 in [-1, 1], u3 in [-1, 1]
)";

// Leibniz determinant, used as an independent reference.
inline double leibniz_det(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  double total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    double term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline double det4_rows(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  std::vector<std::vector<double>> m;
  for (const Vec4* r : {&a, &b, &c, &d}) m.push_back({(*r)[0], (*r)[1], (*r)[2], (*r)[3]});
  return leibniz_det(m);
}

inline Vec4 random_vec4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Vec4{{u(rng), u(rng), u(rng), u(rng)}};
}

// Random symmetric positive definite matrix B B^T + 0.5 I.
inline Sym3 random_spd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double b[3][3];
  for (auto& r : b)
    for (double& x : r) x = u(rng);
  Sym3 s;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      double v = (i == j) ? 0.5 : 0.0;
      for (int k = 0; k < 3; ++k) v += b[i][k] * b[j][k];
      s(i, j) = v;
    }
  }
  return s;
}

inline Sym3 random_sym(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Sym3 s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) s(i, j) = u(rng);
  return s;
}

inline double rel_err(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

}  // namespace hyperloc::test

#endif  // HYPERLOC_TESTS_SUPPORT_HPP_
