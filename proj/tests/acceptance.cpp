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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperloc/cli.hpp"
#include "hyperloc/error.hpp"
#include "hyperloc/forms.hpp"
#include "hyperloc/frenet.hpp"
#include "hyperloc/oracle.hpp"
#include "hyperloc/parallel.hpp"
#include "hyperloc/principal.hpp"
#include "hyperloc/tracer.hpp"
#include "support.hpp"

using namespace hyperloc;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kRootTol = 1e-9;
constexpr double kUmbilicTol = 1e-9;
constexpr double kAxisTol = 1e-10;
constexpr double kClosureTol = 1e-4;
constexpr double kDriftTol = 1e-8;
constexpr double kRatioLo = 12.0, kRatioHi = 20.0;
constexpr double kRodriguesTol = 1e-4;
constexpr double kIdentityTol = 1e-10;
constexpr double kAlpha2Tol = 1e-8;
constexpr double kFdTol[3] = {1e-4, 1e-3, 1e-2};
constexpr double kResidualTol = 1e-9;
constexpr double kCircleTol = 1e-6;
constexpr double kJetTol = 1e-6;
// Fixture traces must resolve their curvature: step * max k1 at most this.
constexpr double kResolution = 0.04;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  failures += !o.pass;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

struct FixtureTrace {
  const char* surface;
  Vec3 seed;
  int branch;
  double step;
  double length;
};

// Every trace the trace-level criteria run over.
const std::vector<FixtureTrace>& fixture_traces() {
  static const std::vector<FixtureTrace> t = {
      {"cylinder", Vec3{{0.1, 0.0, 0.0}}, 0, 0.01, 4.0 * kPi},
      {"warped_cylinder", Vec3{{0.1, 0.0, 0.0}}, 0, 0.01, 6.0},
      {"quadric", Vec3{{0.3, 0.2, 0.1}}, 0, 0.005, 1.0},
      {"quadric", Vec3{{0.3, 0.2, 0.1}}, 1, 0.005, 1.0},
      {"quadric", Vec3{{0.3, 0.2, 0.1}}, 2, 0.005, 1.0},
      {"quadric", Vec3{{0.1, -0.2, 0.15}}, 0, 0.005, 0.8},
      {"quadric", Vec3{{0.1, -0.2, 0.15}}, 1, 0.005, 0.8},
      {"quadric", Vec3{{0.1, -0.2, 0.15}}, 2, 0.005, 0.8},
      {"mixed", Vec3{{0.3, 0.2, 0.1}}, 0, 0.005, 0.8},
      {"mixed", Vec3{{0.3, 0.2, 0.1}}, 1, 0.005, 0.8},
      {"mixed", Vec3{{0.3, 0.2, 0.1}}, 2, 0.005, 0.8},
      {"mixed", Vec3{{0.1, -0.2, 0.15}}, 0, 0.005, 0.8},
      {"mixed", Vec3{{0.1, -0.2, 0.15}}, 1, 0.005, 0.8},
      {"mixed", Vec3{{0.1, -0.2, 0.15}}, 2, 0.005, 0.8},
      {"tanpow", Vec3{{0.3, 0.2, 0.1}}, 1, 0.005, 0.8},
      {"tanpow", Vec3{{0.3, 0.2, 0.1}}, 2, 0.005, 0.8},
      {"tanpow", Vec3{{0.1, -0.2, 0.15}}, 1, 0.005, 0.8},
      {"tanpow", Vec3{{0.1, -0.2, 0.15}}, 2, 0.005, 0.8},
  };
  return t;
}

double base_step(const FixtureTrace& f) {
  for (const FixtureTrace& b : fixture_traces()) {
    if (b.surface == f.surface && b.seed == f.seed && b.branch == f.branch) return b.step;
  }
  return f.step;
}

struct Evaluated {
  FixtureTrace fixture;
  HypersurfaceDef surface;
  Trace trace;
  std::vector<CurvatureState> st;
};

Evaluated evaluate_fixture(const FixtureTrace& f) {
  HypersurfaceDef s = test::fixture(f.surface);
  TraceConfig c;
  c.branch = f.branch;
  c.step = f.step;
  c.max_length = f.length;
  Trace t = trace(s, f.seed, c);
  auto st = evaluate_curvatures(s, t.samples);
  return {f, std::move(s), std::move(t), std::move(st)};
}

double max_k1(const Evaluated& e) {
  double m = 0.0;
  for (const CurvatureState& s : e.st) m = std::max(m, s.k1);
  return m;
}

// Each fixture trace at its base step, halved until the curvature is
// resolved.
std::vector<Evaluated> evaluate_fixtures() {
  std::vector<Evaluated> out;
  for (FixtureTrace f : fixture_traces()) {
    Evaluated e = evaluate_fixture(f);
    while (f.step * max_k1(e) > kResolution && f.step > 1e-5) {
      f.step /= 2.0;
      e = evaluate_fixture(f);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string label(const FixtureTrace& f) {
  std::ostringstream os;
  os << f.surface << " branch " << f.branch << " seed (" << f.seed[0] << "," << f.seed[1]
     << "," << f.seed[2] << ")";
  return os.str();
}

// ------------------------------------------------------------------ 1

Outcome roots_vs_eigenvalues() {
  std::mt19937_64 rng(20261014);
  double worst = 0.0;
  int cases = 0;
  auto compare = [&](const FormState& f) {
    const auto k = solve_principal_curvatures(characteristic_coefficients(f));
    const auto ev = shape_eigenvalues(f.g, f.h);
    const double scale = std::max({std::fabs(ev[0]), std::fabs(ev[2]), 1e-300});
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::fabs(k[i] - ev[i]) / scale);
    ++cases;
  };
  // Random points on the fixture surfaces.
  const char* names[] = {"quadric", "cylinder", "hypersphere", "mixed", "tanpow"};
  for (const char* name : names) {
    const auto s = test::fixture(name);
    const Box& box = s.domain();
    for (int p = 0; p < 20; ++p) {
      Vec3 u;
      for (int i = 0; i < 3; ++i) {
        std::uniform_real_distribution<double> d(box.lo[i], box.hi[i]);
        u[i] = d(rng);
      }
      compare(fundamental_forms(evaluate_jet(s, u, 2)));
    }
  }
  compare(fundamental_forms(evaluate_jet(test::fixture("quadric"), Vec3{}, 2)));
  compare(fundamental_forms(evaluate_jet(test::fixture("cylinder"), Vec3{}, 2)));
  compare(fundamental_forms(evaluate_jet(test::fixture("hypersphere"), Vec3{}, 2)));
  return {worst <= kRootTol, std::to_string(cases) + " form states, max error / |k|max " +
                                 fmt("%.2e", worst) + " (tol " + fmt("%.0e", kRootTol) + ")"};
}

// ------------------------------------------------------------------ 2

Outcome umbilic_classification() {
  std::mt19937_64 rng(5);
  const auto sphere = test::fixture("hypersphere");
  const Box& box = sphere.domain();
  double worst = 0.0;
  bool all_umbilic = true;
  for (int p = 0; p < 100; ++p) {
    Vec3 u;
    for (int i = 0; i < 3; ++i) {
      std::uniform_real_distribution<double> d(box.lo[i], box.hi[i]);
      u[i] = d(rng);
    }
    const FormState f = fundamental_forms(evaluate_jet(sphere, u, 2));
    const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
    const auto cls = classify_point(f, roots);
    for (int i = 0; i < 3; ++i) {
      all_umbilic = all_umbilic && cls.branch[i] == BranchClass::umbilic && cls.rank[i] == 0;
      worst = std::max(worst, std::fabs(std::fabs(roots[i]) - 1.0 / test::kSphereRadius));
    }
  }
  const auto cyl = test::fixture("cylinder");
  bool cyl_ok = true;
  for (double t : {-3.0, 0.0, 1.0, 2.5}) {
    const FormState f = fundamental_forms(evaluate_jet(cyl, Vec3{{t, 0.3, -0.4}}, 2));
    const auto cls = classify_point(f, solve_principal_curvatures(characteristic_coefficients(f)));
    cyl_ok = cyl_ok && cls.branch[0] == BranchClass::simple &&
             cls.branch[1] == BranchClass::partially_umbilic &&
             cls.branch[2] == BranchClass::partially_umbilic;
  }
  return {all_umbilic && worst <= kUmbilicTol && cyl_ok,
          std::string("hypersphere 100 points ") + (all_umbilic ? "umbilic rank 0" : "NOT all umbilic") +
              ", max ||k|-1/r| " + fmt("%.2e", worst) + "; cylinder classes " +
              (cyl_ok ? "{simple, partially_umbilic x2}" : "wrong")};
}

// ------------------------------------------------------------------ 3

Outcome quadric_axes() {
  const FormState f = fundamental_forms(evaluate_jet(test::fixture("quadric"), Vec3{}, 2));
  const auto b = principal_branches(f);
  const Vec3 axes[3] = {Vec3{{0, 0, 1}}, Vec3{{0, 1, 0}}, Vec3{{1, 0, 0}}};
  double worst = 0.0, ortho = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, max_abs(b[i].direction - axes[i]));
    for (int j = 0; j < 3; ++j) {
      ortho = std::max(ortho, std::fabs(quadratic(f.g, b[i].direction, b[j].direction) - (i == j)));
    }
  }
  return {worst <= kAxisTol && ortho <= kAxisTol,
          "max axis deviation " + fmt("%.2e", worst) + ", g-orthonormality " + fmt("%.2e", ortho)};
}

// ------------------------------------------------------------------ 4

Outcome closure_and_order() {
  const auto cyl = test::fixture("cylinder");
  TraceConfig c;
  c.branch = 0;
  c.step = 0.01;
  c.max_length = 2.0 * kPi * 2.0;
  const Vec3 seed{{0.1, 0.0, 0.0}};
  const Trace t = trace(cyl, seed, c);
  const double gap = norm(t.samples.back().x - t.samples.front().x);
  double drift = 0.0;
  for (const CurveSample& s : t.samples) {
    drift = std::max({drift, std::fabs(s.u[1] - seed[1]), std::fabs(s.u[2] - seed[2])});
  }
  // On the uniform cylinder the direction field is constant in u and RK4 is
  // exact, so the order is measured on the reparametrized cylinder.
  const auto warped = test::fixture("warped_cylinder");
  auto error = [&](double step) {
    TraceConfig w;
    w.branch = 0;
    w.step = step;
    w.max_length = 4.0;
    const Trace tw = trace(warped, Vec3{}, w);
    const Vec4 exact{{2.0 * std::cos(2.0), 2.0 * std::sin(2.0), 0.0, 0.0}};
    return norm(tw.samples.back().x - exact);
  };
  const double e1 = error(0.2), e2 = error(0.1);
  const double ratio = e1 / e2;
  const bool ok = gap <= kClosureTol && drift <= kDriftTol && ratio >= kRatioLo && ratio <= kRatioHi;
  return {ok, "closure " + fmt("%.2e", gap) + ", u2/u3 drift " + fmt("%.2e", drift) +
                  ", step-halving ratio " + fmt("%.2f", ratio) + " (" + fmt("%.2e", e1) + " -> " +
                  fmt("%.2e", e2) + ")"};
}

// ------------------------------------------------------------------ 5

Outcome rodrigues(const std::vector<Evaluated>& ev) {
  double worst = 0.0;
  std::string where;
  std::size_t count = 0;
  std::string coarse, refined;
  for (const Evaluated& e : ev) {
    const double h = e.fixture.step;
    std::vector<Vec4> normal, tangent;
    for (const CurveSample& s : e.trace.samples) {
      const Jet jet = evaluate_jet(e.surface, s.u, 1);
      normal.push_back(unit_normal(jet));
      tangent.push_back(s.du[0] * jet.d1(0) + s.du[1] * jet.d1(1) + s.du[2] * jet.d1(2));
    }
    if (h * max_k1(e) > kResolution) coarse += "; UNDER-RESOLVED " + label(e.fixture);
    if (h != base_step(e.fixture)) refined += "; " + label(e.fixture) + fmt(" at step %g", h);
    const std::size_t n = e.trace.samples.size();
    for (std::size_t i = 2; i + 2 < n; ++i) {
      if (e.trace.samples[i + 2].s != static_cast<double>(i + 2) * h) break;
      const Vec4 dn = (normal[i - 2] - 8.0 * normal[i - 1] + 8.0 * normal[i + 1] - normal[i + 2]) /
                      (12.0 * h);
      const double r = norm(dn + e.trace.samples[i].k_n * tangent[i]);
      ++count;
      if (r > worst) {
        worst = r;
        where = label(e.fixture);
      }
    }
  }
  return {worst <= kRodriguesTol && coarse.empty(),
          std::to_string(ev.size()) + " traces, " + std::to_string(count) + " stations, max " +
              fmt("%.2e", worst) + " (" + where + ")" + refined + coarse};
}

// ------------------------------------------------------------------ 6

Outcome k1_identity(const std::vector<Evaluated>& ev) {
  double id = 0.0, a2 = 0.0;
  std::size_t count = 0;
  for (const Evaluated& e : ev) {
    for (const CurvatureState& s : e.st) {
      if (s.order < 1 || s.flag == StationFlag::geodesic_degenerate) continue;
      const double k1sq = s.k1 * s.k1;
      id = std::max(id, std::fabs(k1sq - (s.kn[0] * s.kn[0] + s.k_g1 * s.k_g1)) / k1sq);
      a2 = std::max(a2, std::fabs(norm(s.alpha[2]) - s.k1) / s.k1);
      ++count;
    }
  }
  return {id <= kIdentityTol && a2 <= kAlpha2Tol && count > 0,
          std::to_string(count) + " stations, identity " + fmt("%.2e", id) + ", |alpha''| vs k1 " +
              fmt("%.2e", a2)};
}

// ------------------------------------------------------------------ 7

Outcome cross_pipeline() {
  double worst[3] = {0, 0, 0}, residual = 0.0;
  std::size_t compared[3] = {0, 0, 0}, interior = 0;
  int traces = 0;
  for (int branch = 0; branch < 3; ++branch) {
    const Evaluated e = evaluate_fixture({"quadric", Vec3{{0.3, 0.2, 0.1}}, branch, 0.005, 1.0});
    ++traces;
    std::vector<Vec4> x;
    for (const CurveSample& s : e.trace.samples) x.push_back(s.x);
    const FdFrenetReport fd = fd_frenet(x, e.fixture.step);
    for (const CurvatureState& s : e.st) residual = std::max(residual, s.max_residual);
    for (const FdStation& f : fd.stations) {
      const CurvatureState& s = e.st[f.index];
      ++interior;
      if (s.order >= 1) {
        worst[0] = std::max(worst[0], std::fabs(s.k1 - f.k1) / f.k1);
        ++compared[0];
      }
      if (s.order >= 2 && f.k2) {
        worst[1] = std::max(worst[1], std::fabs(s.k2 - *f.k2) / std::fabs(*f.k2));
        ++compared[1];
      }
      if (s.order >= 3 && f.k3) {
        worst[2] = std::max(worst[2], std::fabs(s.k3 - *f.k3) / std::fabs(*f.k3));
        ++compared[2];
      }
    }
  }
  bool ok = traces == 3 && residual <= kResidualTol;
  for (int i = 0; i < 3; ++i) ok = ok && worst[i] <= kFdTol[i] && compared[i] * 2 >= interior;
  std::string d = std::to_string(traces) + " branches, " + std::to_string(interior) +
                  " interior stations; rel err k1 " + fmt("%.1e", worst[0]) + " (" +
                  std::to_string(compared[0]) + "), k2 " + fmt("%.1e", worst[1]) + " (" +
                  std::to_string(compared[1]) + "), k3 " + fmt("%.1e", worst[2]) + " (" +
                  std::to_string(compared[2]) + "); max residual " + fmt("%.1e", residual);
  return {ok, d};
}

// ------------------------------------------------------------------ 8

Outcome degenerate_handling() {
  const auto cyl = test::fixture("cylinder");
  TraceConfig c;
  c.branch = 0;
  c.step = 0.01;
  c.max_length = 4.0 * kPi;
  const Trace t = trace(cyl, Vec3{{0.1, 0.0, 0.0}}, c);
  const auto st = evaluate_curvatures(cyl, t.samples);
  double worst = 0.0;
  bool flagged = true;
  for (const CurvatureState& s : st) {
    worst = std::max(worst, std::fabs(s.k1 - 0.5));
    flagged = flagged && s.flag == StationFlag::geodesic_degenerate;
  }
  bool umbilic = false;
  try {
    TraceConfig s;
    trace(test::fixture("hypersphere"), Vec3{{0.2, 0.1, 0.0}}, s);
  } catch (const Error& e) {
    umbilic = e.code() == ErrorCode::seed_at_umbilic;
  }
  std::ostringstream out, err;
  const std::string path = test::surface_path("hypersphere");
  const char* argv[] = {"hyperloc", "trace", "--surface", path.c_str(), "--seed", "0.2,0.1,0"};
  const int code = cli::run(6, argv, out, err);
  const bool cli_ok = code == 1 && err.str().rfind("error: seed_at_umbilic:", 0) == 0;
  return {worst <= kCircleTol && flagged && umbilic && cli_ok,
          std::to_string(st.size()) + " circle stations, max |k1 - 1/2| " + fmt("%.2e", worst) +
              (flagged ? ", all geodesic_degenerate" : ", MISSING flags") +
              (umbilic ? "; hypersphere seed rejected" : "; hypersphere seed ACCEPTED") +
              (cli_ok ? " (exit 1)" : " (wrong exit)")};
}

// ------------------------------------------------------------------ 9

Outcome jets() {
  const char* names[] = {"quadric", "cylinder", "hypersphere", "mixed", "tanpow"};
  std::mt19937_64 rng(99);
  double worst = 0.0;
  std::size_t checked = 0;
  for (const char* name : names) {
    const auto s = test::fixture(name);
    const Box& box = s.domain();
    for (int p = 0; p < 20; ++p) {
      Vec3 u;
      for (int i = 0; i < 3; ++i) {
        const double margin = 0.01 * box.width(i);
        std::uniform_real_distribution<double> d(box.lo[i] + margin, box.hi[i] - margin);
        u[i] = d(rng);
      }
      const Jet jet = evaluate_jet(s, u, 4);
      const auto& mono = monomials();
      // Each partial against a 5-point difference of the one below it.
      for (std::size_t m = 1; m < monomial_count(4); ++m) {
        auto e = mono[m].exponent;
        const int var = e[0] > 0 ? 0 : (e[1] > 0 ? 1 : 2);
        --e[var];
        const std::size_t parent = monomial_index(e[0], e[1], e[2]);
        const double h = 1e-3 * box.width(var);
        auto f = [&](double k) {
          Vec3 v = u;
          v[var] += k * h;
          return evaluate_jet(s, v, mono[parent].degree).at(parent);
        };
        const Vec4 fd = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
        for (int c = 0; c < 4; ++c) worst = std::max(worst, test::rel_err(jet.at(m)[c], fd[c]));
        ++checked;
      }
      // The value itself is the order-0 partial.
      ++checked;
    }
  }
  return {worst <= kJetTol, std::to_string(checked) + " partials (35 per point, 100 points), max " +
                                "rel err " + fmt("%.2e", worst)};
}

// ------------------------------------------------------------------ 10

Outcome determinism() {
  const std::string quadric = test::surface_path("quadric");
  const std::string mixed = test::surface_path("mixed");
  const std::vector<std::vector<std::string>> configs = {
      {"trace", "--surface", quadric, "--seed", "0.3,0.2,0.1", "--branch", "0", "--step", "0.005"},
      {"curvatures", "--surface", quadric, "--seed", "0.3,0.2,0.1", "--branch", "2", "--step",
       "0.005"},
      {"curvatures", "--surface", mixed, "--seed", "0.1,-0.2,0.15", "--branch", "1", "--format",
       "json"},
  };
  bool same = true;
  std::size_t bytes = 0;
  for (auto args : configs) {
    args.insert(args.begin(), "hyperloc");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::string first;
    for (int run = 0; run < 3; ++run) {
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      same = same && code == 0;
      if (run == 0) {
        first = out.str();
        bytes += first.size();
      } else {
        same = same && out.str() == first;
      }
    }
  }
  return {same, std::to_string(configs.size()) + " configurations x 3 runs, " +
                    std::to_string(bytes) + " bytes each, " +
                    (same ? "identical" : "DIFFERENT") + " (" + std::to_string(max_threads()) +
                    " threads)"};
}

}  // namespace

int main() {
  report(1, "cubic roots vs pencil eigenvalues", guarded(roots_vs_eigenvalues));
  report(2, "umbilic classification", guarded(umbilic_classification));
  report(3, "quadric-origin directions", guarded(quadric_axes));
  report(4, "trace closure and RK4 order", guarded(closure_and_order));
  std::vector<Evaluated> ev;
  try {
    ev = evaluate_fixtures();
  } catch (const std::exception& e) {
    std::printf("fixture traces failed: %s\n", e.what());
  }
  report(5, "Rodrigues along fixture traces", guarded([&] { return rodrigues(ev); }));
  report(6, "k1 identity", guarded([&] { return k1_identity(ev); }));
  report(7, "Frenet curvatures vs finite differences", guarded(cross_pipeline));
  report(8, "degenerate handling", guarded(degenerate_handling));
  report(9, "jet partials vs finite differences", guarded(jets));
  report(10, "determinism", guarded(determinism));
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
