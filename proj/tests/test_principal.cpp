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

#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperloc/error.hpp"
#include "hyperloc/forms.hpp"
#include "hyperloc/oracle.hpp"
#include "hyperloc/principal.hpp"
#include "support.hpp"

using namespace hyperloc;

namespace {

FormState forms_of(const Sym3& g, const Sym3& h) {
  FormState f;
  f.g = g;
  f.h = h;
  return f;
}

FormState forms_at(const char* name, const Vec3& u) {
  return fundamental_forms(evaluate_jet(test::fixture(name), u, 2));
}

}  // namespace

TEST_CASE("coefficients of the quadric at the origin") {
  const FormState f = forms_at("quadric", Vec3{});
  const CubicCoefficients c = characteristic_coefficients(f);
  CHECK(c.K2 == doctest::Approx(2.0));
  CHECK(c.K3 == doctest::Approx(11.0 / 3.0));
  CHECK(c.K1 == doctest::Approx(6.0));
  const auto k = solve_principal_curvatures(c);
  CHECK(k[0] == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(k[1] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(k[2] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("Vieta relations of the monic cubic") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const FormState f = forms_of(test::random_spd(rng), test::random_sym(rng));
    const CubicCoefficients c = characteristic_coefficients(f);
    const auto k = solve_principal_curvatures(c);
    const double scale = std::max({1.0, std::fabs(k[0]), std::fabs(k[2])});
    CHECK(std::fabs(k[0] + k[1] + k[2] + 3.0 * c.K2) < 1e-12 * scale);
    CHECK(std::fabs(k[0] * k[1] + k[1] * k[2] + k[0] * k[2] - 3.0 * c.K3) <
          1e-12 * scale * scale);
    CHECK(std::fabs(k[0] * k[1] * k[2] + c.K1) < 1e-12 * scale * scale * scale);
  }
}

TEST_CASE("roots agree with the generalized eigenvalues of (h, g)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Sym3 g = test::random_spd(rng), h = test::random_sym(rng);
    const auto k = solve_principal_curvatures(characteristic_coefficients(g, h));
    const auto ev = shape_eigenvalues(g, h);
    for (int i = 0; i < 3; ++i) CHECK(test::rel_err(k[i], ev[i]) < 1e-9);
  }
}

TEST_CASE("a triple root is returned exactly") {
  const double r = 1.5;
  const Sym3 g = Sym3::identity();
  const Sym3 h = (-1.0 / r) * g;
  const auto c = characteristic_coefficients(g, h);
  CHECK(c.K2 == doctest::Approx(1.0 / r));
  CHECK(c.K3 == doctest::Approx(1.0 / (r * r)));
  CHECK(c.K1 == doctest::Approx(1.0 / (r * r * r)));
  const auto k = solve_principal_curvatures(c);
  for (double x : k) CHECK(std::fabs(x + 1.0 / r) < 1e-14);
}

TEST_CASE("zero second form gives a zero triple root") {
  const auto k = solve_principal_curvatures(characteristic_coefficients(Sym3::identity(), Sym3{}));
  for (double x : k) CHECK(x == 0.0);
}

TEST_CASE("a complex pair is rejected") {
  // k^3 + k + 1 has one real root.
  CubicCoefficients c;
  c.K2 = 0.0;
  c.K3 = 1.0 / 3.0;
  c.K1 = 1.0;
  try {
    solve_principal_curvatures(c);
    FAIL("expected complex_roots");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::complex_roots);
  }
}

TEST_CASE("classification of the fixture points") {
  {
    const FormState f = forms_at("hypersphere", Vec3{{0.4, 0.3, -0.2}});
    const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
    const auto cls = classify_point(f, roots);
    CHECK(cls.point == PointClass::umbilic);
    for (int i = 0; i < 3; ++i) {
      CHECK(cls.branch[i] == BranchClass::umbilic);
      CHECK(cls.rank[i] == 0);
      CHECK(std::fabs(std::fabs(roots[i]) - 1.0 / test::kSphereRadius) < 1e-9);
    }
  }
  {
    const FormState f = forms_at("cylinder", Vec3{{0.4, 0.3, -0.2}});
    const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
    CHECK(roots[0] == doctest::Approx(-0.5));
    const auto cls = classify_point(f, roots);
    CHECK(cls.point == PointClass::partially_umbilic);
    CHECK(cls.branch[0] == BranchClass::simple);
    CHECK(cls.branch[1] == BranchClass::partially_umbilic);
    CHECK(cls.branch[2] == BranchClass::partially_umbilic);
    CHECK(cls.rank[1] == 1);
  }
  {
    const FormState f = forms_at("quadric", Vec3{});
    const auto cls = classify_point(f, solve_principal_curvatures(characteristic_coefficients(f)));
    CHECK(cls.point == PointClass::generic);
    for (int i = 0; i < 3; ++i) CHECK(cls.rank[i] == 2);
  }
}

TEST_CASE("directions at the quadric origin are the coordinate axes") {
  const FormState f = forms_at("quadric", Vec3{});
  const auto b = principal_branches(f);
  const Vec3 axes[3] = {Vec3{{0, 0, 1}}, Vec3{{0, 1, 0}}, Vec3{{1, 0, 0}}};
  for (int i = 0; i < 3; ++i) {
    CHECK(b[i].branch_class == BranchClass::simple);
    CHECK(max_abs(b[i].direction - axes[i]) < 1e-10);
  }
}

TEST_CASE("the middle direction at the origin needs the second row pair") {
  // h - (-2) g = diag(1, 0, -1): rows 1 and 2 are parallel to e1 and e3.
  const Sym3 a{{1, 0, 0, 0, 0, -1}};
  const auto [pair, v] = strongest_row_pair(a);
  CHECK(pair == 1);
  CHECK(row_pair(pair) == std::array<int, 2>{0, 2});
  CHECK(std::fabs(std::fabs(v[1]) - 1.0) < 1e-15);
}

TEST_CASE("directions are unit, g-orthogonal and in the kernel of h - k g") {
  const FormState f = forms_at("mixed", Vec3{{0.3, -0.2, 0.4}});
  const auto b = principal_branches(f);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(b[i].branch_class == BranchClass::simple);
    CHECK(quadratic(f.g, b[i].direction, b[i].direction) == doctest::Approx(1.0).epsilon(1e-14));
    const Vec3 r = apply(pencil_matrix(f, b[i].k_n), b[i].direction);
    CHECK(max_abs(r) < 1e-12);
    CHECK(normal_curvature(f, b[i].direction) == doctest::Approx(b[i].k_n).epsilon(1e-12));
    for (int j = i + 1; j < 3; ++j) {
      CHECK(std::fabs(quadratic(f.g, b[i].direction, b[j].direction)) < 1e-12);
    }
  }
}

TEST_CASE("canonical sign makes the first significant component positive") {
  const FormState f = forms_at("tanpow", Vec3{{-0.3, 0.6, 0.2}});
  for (const PrincipalBranch& b : principal_branches(f)) {
    const double big = max_abs(b.direction);
    for (int i = 0; i < 3; ++i) {
      if (std::fabs(b.direction[i]) > 1e-9 * big) {
        CHECK(b.direction[i] > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("a repeated root has no direction") {
  const FormState f = forms_at("cylinder", Vec3{});
  try {
    principal_direction(f, 0.0);
    FAIL("expected degenerate_direction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_direction);
  }
  const auto b = principal_branches(f);
  CHECK(max_abs(b[1].direction) == 0.0);
}
