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
#include <string>

#include "hyperloc/error.hpp"
#include "hyperloc/surface.hpp"
#include "support.hpp"

using namespace hyperloc;

TEST_CASE("monomial numbering is graded and covers every multi-index") {
  const auto& mono = monomials();
  CHECK(mono.size() == monomial_count(kMaxJetOrder));
  CHECK(monomial_count(4) == 35);
  CHECK(mono[0].degree == 0);
  for (std::size_t m = 1; m < mono.size(); ++m) CHECK(mono[m - 1].degree <= mono[m].degree);
  for (std::size_t m = 0; m < mono.size(); ++m) {
    const auto& e = mono[m].exponent;
    CHECK(monomial_index(e[0], e[1], e[2]) == m);
  }
  // Index order does not matter.
  CHECK(monomial_index(std::array{0, 2, 1}) == monomial_index(std::array{2, 1, 0}));
}

TEST_CASE("quadric jet at the origin") {
  const auto s = test::fixture("quadric");
  const Jet j = evaluate_jet(s, Vec3{}, 4);
  CHECK(max_abs(j.value()) == 0.0);
  CHECK(j.d1(0) == Vec4{{1, 0, 0, 0}});
  CHECK(j.d2(0, 0)[3] == doctest::Approx(1.0));
  CHECK(j.d2(1, 1)[3] == doctest::Approx(2.0));
  CHECK(j.d2(2, 2)[3] == doctest::Approx(3.0));
  CHECK(j.d2(0, 1)[3] == 0.0);
  CHECK(max_abs(j.d3(0, 1, 2)) == 0.0);
}

TEST_CASE("cylinder jet") {
  const auto s = test::fixture("cylinder");
  const double t = 0.4;
  const Jet j = evaluate_jet(s, Vec3{{t, 0.2, -0.3}}, 3);
  CHECK(j.value()[0] == doctest::Approx(2.0 * std::cos(t)));
  CHECK(j.d1(0)[1] == doctest::Approx(2.0 * std::cos(t)));
  CHECK(j.d3(0, 0, 0)[0] == doctest::Approx(2.0 * std::sin(t)));
  CHECK(j.d1(2) == Vec4{{0, 0, 0, 1}});
}

TEST_CASE("stored partials match five-point differences of the order below") {
  const char* names[] = {"quadric", "cylinder", "hypersphere", "mixed", "tanpow"};
  std::mt19937_64 rng(2024);
  for (const char* name : names) {
    CAPTURE(name);
    const auto s = test::fixture(name);
    const Box& box = s.domain();
    double worst = 0.0;
    for (int p = 0; p < 20; ++p) {
      Vec3 u;
      for (int i = 0; i < 3; ++i) {
        const double margin = 0.05 * box.width(i);
        std::uniform_real_distribution<double> d(box.lo[i] + margin, box.hi[i] - margin);
        u[i] = d(rng);
      }
      const Jet jet = evaluate_jet(s, u, 4);
      const auto& mono = monomials();
      for (std::size_t m = 1; m < monomial_count(4); ++m) {
        auto e = mono[m].exponent;
        const int var = e[0] > 0 ? 0 : (e[1] > 0 ? 1 : 2);
        --e[var];
        const std::size_t parent = monomial_index(e[0], e[1], e[2]);
        const int order = mono[parent].degree;
        const double h = 1e-3 * box.width(var);
        auto f = [&](double k) {
          Vec3 v = u;
          v[var] += k * h;
          return evaluate_jet(s, v, order).at(parent);
        };
        const Vec4 fd = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
        for (int c = 0; c < 4; ++c) {
          worst = std::max(worst, test::rel_err(jet.at(m)[c], fd[c]));
        }
      }
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("domain errors name the violated bound") {
  const auto s = test::fixture("quadric");
  try {
    evaluate_jet(s, Vec3{{0.0, 2.5, 0.0}}, 2);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
    CHECK(std::string(e.what()) == "u2 = 2.5 outside [-2, 2]");
  }
  // A hair outside the box is on the face.
  CHECK_NOTHROW(evaluate_jet(s, Vec3{{2.0 + 1e-13, 0.0, 0.0}}, 2));
}

TEST_CASE("dependent tangent vectors are a regularity error") {
  const auto s = parse_surface(
      "x1 = u1 + u2; x2 = u1 + u2; x3 = u3; x4 = u1 + u2;\n"
      "domain u1 in [-1, 1], u2 in [-1, 1], u3 in [-1, 1]");
  try {
    evaluate_jet(s, Vec3{{0.1, 0.2, 0.3}}, 1);
    FAIL("expected a regularity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::regularity);
  }
  CHECK_NOTHROW(evaluate_jet(s, Vec3{{0.1, 0.2, 0.3}}, 0));
}

TEST_CASE("jet order is bounded") {
  const auto s = test::fixture("quadric");
  CHECK_THROWS_AS(evaluate_jet(s, Vec3{}, kMaxJetOrder + 1), Error);
  CHECK(evaluate_jet(s, Vec3{}, kMaxJetOrder).order() == kMaxJetOrder);
}

TEST_CASE("missing surface files are reported") {
  try {
    load_surface("/nonexistent/surface.surf");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}
