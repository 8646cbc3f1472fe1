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

#include "hyperloc/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperloc/error.hpp"
#include "hyperloc/forms.hpp"
#include "hyperloc/principal.hpp"

namespace hyperloc {

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::none: return "none";
    case StopReason::max_length: return "max_length";
    case StopReason::boundary: return "boundary";
    case StopReason::degenerate_branch: return "degenerate_branch";
    case StopReason::domain_error: return "domain_error";
  }
  return "unknown";
}

FieldValue principal_field(const HypersurfaceDef& surface, const Vec3& u,
                           double k_ref, const Vec3& d_ref) {
  const Jet jet = evaluate_jet(surface, u, 2);
  const FormState f = fundamental_forms(jet);
  const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(roots[i] - k_ref) < std::fabs(roots[best] - k_ref)) best = i;
  }
  FieldValue v;
  v.k_n = roots[best];
  v.x = jet.value();
  v.separation = INFINITY;
  for (int i = 0; i < 3; ++i) {
    if (i != best) v.separation = std::min(v.separation, std::fabs(roots[i] - v.k_n));
  }
  v.scale = std::max({1.0, std::fabs(roots[0]), std::fabs(roots[2])});
  v.direction = principal_direction(f, v.k_n);
  if (quadratic(f.g, v.direction, d_ref) < 0.0) v.direction = -v.direction;
  return v;
}

namespace {

enum class StepStatus { ok, outside, degenerate, domain };

struct StepResult {
  StepStatus status = StepStatus::ok;
  Vec3 u;
  FieldValue field;
};

double angle(const Vec3& a, const Vec3& b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

class Stepper {
 public:
  static constexpr int kMaxSplit = 16;

  Stepper(const HypersurfaceDef& surface, const TraceConfig& cfg)
      : surface_(surface), cfg_(cfg) {}

  // Advances by h from (u, field), splitting RK4 steps whose stage
  // directions turn by more than cfg.max_turn.
  StepResult step(const Vec3& u, const FieldValue& at, double h, int depth = 0) const {
    StepResult r;
    const Vec3 k1 = at.direction;
    Vec3 k2, k3, k4;
    if (!stage(u + (0.5 * h) * k1, at, k2, r.status)) return r;
    if (!stage(u + (0.5 * h) * k2, at, k3, r.status)) return r;
    if (!stage(u + h * k3, at, k4, r.status)) return r;
    const bool turning = angle(k1, k2) > cfg_.max_turn || angle(k1, k3) > cfg_.max_turn ||
                         angle(k1, k4) > cfg_.max_turn;
    if (turning && depth < kMaxSplit) {
      StepResult half = step(u, at, 0.5 * h, depth + 1);
      if (half.status != StepStatus::ok) return half;
      return step(half.u, half.field, 0.5 * h, depth + 1);
    }
    r.u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    evaluate(r.u, at, r.field, r.status);
    return r;
  }

  // Field at p, matched against the step's starting branch.
  bool evaluate(const Vec3& p, const FieldValue& ref, FieldValue& out,
                StepStatus& status) const {
    if (!surface_.domain().contains(p)) {
      status = StepStatus::outside;
      return false;
    }
    try {
      out = principal_field(surface_, p, ref.k_n, ref.direction);
    } catch (const Error& e) {
      status = (e.code() == ErrorCode::domain || e.code() == ErrorCode::regularity)
                   ? StepStatus::domain
                   : StepStatus::degenerate;
      return false;
    }
    if (out.separation < cfg_.umbilic_tol * out.scale) {
      status = StepStatus::degenerate;
      return false;
    }
    return true;
  }

 private:
  bool stage(const Vec3& p, const FieldValue& ref, Vec3& k, StepStatus& status) const {
    FieldValue v;
    if (!evaluate(p, ref, v, status)) return false;
    k = v.direction;
    return true;
  }

  const HypersurfaceDef& surface_;
  const TraceConfig& cfg_;
};

StopReason stop_for(StepStatus s) {
  switch (s) {
    case StepStatus::outside: return StopReason::boundary;
    case StepStatus::degenerate: return StopReason::degenerate_branch;
    case StepStatus::domain: return StopReason::domain_error;
    case StepStatus::ok: break;
  }
  return StopReason::none;
}

}  // namespace

Trace trace(const HypersurfaceDef& surface, const Vec3& seed, const TraceConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.max_length >= cfg.step)) {
    throw Error(ErrorCode::invalid_argument, "trace needs step > 0 and length >= step");
  }
  if (cfg.branch < 0 || cfg.branch > 2) {
    throw Error(ErrorCode::invalid_argument, "branch must be 0, 1 or 2");
  }
  const Jet jet = evaluate_jet(surface, seed, 2);
  const FormState f = fundamental_forms(jet);
  const auto roots = solve_principal_curvatures(characteristic_coefficients(f));
  const auto cls = classify_point(f, roots, {cfg.umbilic_tol, 1e-8});
  switch (cls.branch[cfg.branch]) {
    case BranchClass::umbilic:
      throw Error(ErrorCode::seed_at_umbilic, "seed is umbilic");
    case BranchClass::partially_umbilic:
      throw Error(ErrorCode::degenerate_branch,
                  "seed branch " + std::to_string(cfg.branch) + " is partially umbilic");
    case BranchClass::simple:
      break;
  }

  FieldValue here;
  here.k_n = roots[cfg.branch];
  here.x = jet.value();
  here.direction = principal_direction(f, here.k_n);
  if (cfg.initial_sign < 0) here.direction = -here.direction;

  Trace out;
  out.samples.push_back({0.0, seed, here.x, here.direction, here.k_n});

  const Stepper stepper(surface, cfg);
  const double end_tol = 1e-12 * cfg.max_length;
  Vec3 u = seed;
  double s = 0.0;
  for (long i = 1;; ++i) {
    const double remaining = cfg.max_length - s;
    if (remaining <= end_tol) {
      out.stop = StopReason::max_length;
      break;
    }
    const bool last = remaining < cfg.step * (1.0 + 1e-12);
    const double h = last ? remaining : cfg.step;
    StepResult r = stepper.step(u, here, h);

    if (r.status == StepStatus::outside) {
      // Largest admissible step length, to 1e-10.
      double lo = 0.0, hi = h;
      StepResult good;
      good.status = StepStatus::outside;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        StepResult t = stepper.step(u, here, mid);
        if (t.status == StepStatus::ok) {
          lo = mid;
          good = t;
        } else if (t.status == StepStatus::outside) {
          hi = mid;
        } else {
          out.stop = stop_for(t.status);
          return out;
        }
      }
      if (good.status == StepStatus::ok) {
        if (cfg.boundary_policy == BoundaryPolicy::clamp) {
          // Snap the coordinate nearest a face onto it.
          const Box& box = surface.domain();
          int face = 0;
          double bound = box.lo[0], dist = INFINITY;
          for (int c = 0; c < 3; ++c) {
            for (double b : {box.lo[c], box.hi[c]}) {
              const double d = std::fabs(good.u[c] - b) / box.width(c);
              if (d < dist) {
                dist = d;
                face = c;
                bound = b;
              }
            }
          }
          good.u[face] = bound;
          FieldValue snapped;
          StepStatus st = StepStatus::ok;
          if (stepper.evaluate(good.u, here, snapped, st)) good.field = snapped;
        }
        out.samples.push_back(
            {s + lo, good.u, good.field.x, good.field.direction, good.field.k_n});
      }
      out.stop = StopReason::boundary;
      break;
    }
    if (r.status != StepStatus::ok) {
      out.stop = stop_for(r.status);
      break;
    }
    u = r.u;
    here = r.field;
    s = last ? cfg.max_length : static_cast<double>(i) * cfg.step;
    out.samples.push_back({s, u, here.x, here.direction, here.k_n});
  }
  return out;
}

std::vector<Vec3> resample(const std::vector<CurveSample>& samples, double spacing) {
  if (samples.size() < 5) {
    throw Error(ErrorCode::too_few_samples,
                "resampling needs at least 5 samples, got " +
                    std::to_string(samples.size()));
  }
  if (!(spacing > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "resample spacing must be positive");
  }
  const double s_end = samples.back().s;
  std::vector<Vec3> out;
  std::size_t i = 0;
  for (long j = 0;; ++j) {
    const double s = static_cast<double>(j) * spacing;
    if (s > s_end * (1.0 + 1e-12)) break;
    while (i + 2 < samples.size() && samples[i + 1].s <= s) ++i;
    const CurveSample& a = samples[i];
    const CurveSample& b = samples[i + 1];
    if (s == a.s) {
      out.push_back(a.u);
      continue;
    }
    if (s == b.s) {
      out.push_back(b.u);
      continue;
    }
    const double h = b.s - a.s;
    const double t = (s - a.s) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    out.push_back(h00 * a.u + (h10 * h) * a.du + h01 * b.u + (h11 * h) * b.du);
  }
  return out;
}

std::vector<Vec4> resample_positions(const HypersurfaceDef& surface,
                                     const std::vector<CurveSample>& samples,
                                     double spacing) {
  std::vector<Vec4> out;
  for (const Vec3& u : resample(samples, spacing)) {
    out.push_back(position(surface, surface.domain().clamp(u)));
  }
  return out;
}

}  // namespace hyperloc
