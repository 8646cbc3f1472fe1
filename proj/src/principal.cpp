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

#include "hyperloc/principal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperloc/error.hpp"

namespace hyperloc {

namespace {

Sym3 adjugate(const Sym3& m) {
  Sym3 a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2);
  a(0, 1) = m(0, 2) * m(1, 2) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(0, 2);
  a(1, 2) = m(0, 1) * m(0, 2) - m(0, 0) * m(1, 2);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  return a;
}

// tr(A B) for symmetric A, B.
double trace_product(const Sym3& a, const Sym3& b) {
  double t = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t += a(i, j) * b(j, i);
  return t;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3{{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]}};
}

Vec3 row(const Sym3& a, int i) { return Vec3{{a(i, 0), a(i, 1), a(i, 2)}}; }

}  // namespace

std::string_view to_string(BranchClass c) {
  switch (c) {
    case BranchClass::simple: return "simple";
    case BranchClass::partially_umbilic: return "partially_umbilic";
    case BranchClass::umbilic: return "umbilic";
  }
  return "unknown";
}

std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::generic: return "generic";
    case PointClass::partially_umbilic: return "partially_umbilic";
    case PointClass::umbilic: return "umbilic";
  }
  return "unknown";
}

Sym3 pencil_matrix(const FormState& f, double k) { return f.h - k * f.g; }

std::array<double, 4> pencil_polynomial(const Sym3& g, const Sym3& h) {
  // det(H - k G) with t = -k in det(H + t G).
  return {det(h), -trace_product(adjugate(h), g), trace_product(h, adjugate(g)),
          -det(g)};
}

CubicCoefficients characteristic_coefficients(const Sym3& g, const Sym3& h) {
  const auto c = pencil_polynomial(g, h);
  CubicCoefficients k;
  k.K2 = c[2] / (3.0 * c[3]);
  k.K3 = c[1] / (3.0 * c[3]);
  k.K1 = c[0] / c[3];
  return k;
}

CubicCoefficients characteristic_coefficients(const FormState& f) {
  return characteristic_coefficients(f.g, f.h);
}

std::array<double, 3> solve_principal_curvatures(const CubicCoefficients& c) {
  // k = t - K2 reduces to t^3 + p t + q = 0.
  const double p = 3.0 * (c.K3 - c.K2 * c.K2);
  const double q = 2.0 * c.K2 * c.K2 * c.K2 - 3.0 * c.K2 * c.K3 + c.K1;
  const double scale = std::max({std::fabs(c.K2), std::sqrt(std::fabs(c.K3)),
                                 std::cbrt(std::fabs(c.K1))});
  std::array<double, 3> roots;
  if (scale == 0.0) return {0.0, 0.0, 0.0};

  const double ps = p / (scale * scale);
  const double qs = q / (scale * scale * scale);
  const double disc = 4.0 * ps * ps * ps + 27.0 * qs * qs;
  if (disc > 1e-10) {
    throw Error(ErrorCode::complex_roots,
                "principal cubic has a complex conjugate pair of roots");
  }
  if (ps > -1e-14) {
    // Three real roots force q -> 0 with p; -K2 is the well-conditioned mean
    // while cbrt(q) would amplify rounding in q to eps^(1/3).
    return {-c.K2, -c.K2, -c.K2};
  } else {
    const double r = std::sqrt(-p / 3.0);
    const double arg = std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots[k] = 2.0 * r * std::cos(phi - third * k) - c.K2;
    }
  }
  for (double& k : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = c.evaluate(k);
      const double df = c.derivative(k);
      if (f == 0.0 || df == 0.0) break;
      const double next = k - f / df;
      if (!(std::fabs(c.evaluate(next)) < std::fabs(f))) break;
      k = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PointClassification classify_point(const FormState& f,
                                   const std::array<double, 3>& roots,
                                   const ClassifyTolerances& tol) {
  std::array<double, 3> r = roots;
  std::sort(r.begin(), r.end());
  const double kmax = std::max(std::fabs(r[0]), std::fabs(r[2]));
  const double sep = tol.separation * std::max(1.0, kmax);

  // Cluster consecutive close roots; a cluster's mean is well conditioned
  // even where an individual repeated root is not.
  std::array<int, 3> cluster{0, 0, 0};
  for (int i = 1; i < 3; ++i) {
    cluster[i] = (r[i] - r[i - 1] <= sep) ? cluster[i - 1] : cluster[i - 1] + 1;
  }
  PointClassification out;
  const double hscale = max_abs(f.h);
  const double gscale = max_abs(f.g);
  for (int i = 0; i < 3; ++i) {
    double sum = 0.0;
    int size = 0;
    for (int j = 0; j < 3; ++j) {
      if (cluster[j] == cluster[i]) {
        sum += r[j];
        ++size;
      }
    }
    const double mean = sum / size;
    const double scale = std::max({hscale, std::fabs(mean) * gscale, 1e-300});
    const int rank = rank_with_tolerance(SmallMatrix::from_sym(pencil_matrix(f, mean)),
                                         tol.rank, scale);
    out.rank[i] = rank;
    BranchClass cls = BranchClass::simple;
    if (size == 3 || rank == 0) {
      cls = BranchClass::umbilic;
    } else if (size == 2 || rank == 1) {
      cls = BranchClass::partially_umbilic;
    }
    out.branch[i] = cls;
  }
  out.point = PointClass::generic;
  for (BranchClass c : out.branch) {
    if (c == BranchClass::umbilic) {
      out.point = PointClass::umbilic;
      break;
    }
    if (c == BranchClass::partially_umbilic) out.point = PointClass::partially_umbilic;
  }
  return out;
}

std::array<int, 2> row_pair(int pair_index) {
  constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  return pairs[pair_index];
}

std::pair<int, Vec3> strongest_row_pair(const Sym3& a) {
  int best = 0;
  Vec3 best_v;
  double best_n = -1.0;
  for (int p = 0; p < 3; ++p) {
    const auto rows = row_pair(p);
    const Vec3 v = cross(row(a, rows[0]), row(a, rows[1]));
    const double n = norm(v);
    if (n > best_n) {
      best = p;
      best_v = v;
      best_n = n;
    }
  }
  return {best, best_v};
}

Vec3 principal_direction(const FormState& f, double k_n, double tol) {
  const Sym3 a = pencil_matrix(f, k_n);
  const auto [pair, v] = strongest_row_pair(a);
  (void)pair;
  const double scale = max_abs(a);
  const double n = norm(v);
  if (scale == 0.0 || !(n > tol * scale * scale)) {
    throw Error(ErrorCode::degenerate_direction,
                "all cofactor triples of h - k g vanish");
  }
  // Unit speed in the first fundamental form.
  Vec3 d = v / std::sqrt(quadratic(f.g, v, v));
  const double big = max_abs(d);
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(d[i]) > 1e-9 * big) {
      if (d[i] < 0.0) d = -d;
      break;
    }
  }
  return d;
}

std::array<PrincipalBranch, 3> principal_branches(const FormState& f,
                                                  const ClassifyTolerances& tol) {
  const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
  const auto cls = classify_point(f, roots, tol);
  std::array<PrincipalBranch, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i].k_n = roots[i];
    out[i].branch_class = cls.branch[i];
    if (cls.branch[i] == BranchClass::simple) {
      out[i].direction = principal_direction(f, roots[i]);
    }
  }
  return out;
}

}  // namespace hyperloc
