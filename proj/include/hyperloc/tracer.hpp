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

#ifndef HYPERLOC_TRACER_HPP_
#define HYPERLOC_TRACER_HPP_

#include <string_view>
#include <vector>

#include "hyperloc/surface.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc {

enum class BoundaryPolicy { stop, clamp };

enum class StopReason { none, max_length, boundary, degenerate_branch, domain_error };

std::string_view to_string(StopReason r);

struct TraceConfig {
  double step = 0.01;
  double max_length = 1.0;
  /// Index into the ascending roots at the seed.
  int branch = 0;
  int initial_sign = 1;
  /// Roots closer than umbilic_tol * max(1, |k|max) count as colliding.
  double umbilic_tol = 1e-6;
  /// An RK4 step whose stage directions differ by more than this angle (in
  /// parameter space, radians) is split in two, down to step / 2^16.
  double max_turn = 0.05;
  BoundaryPolicy boundary_policy = BoundaryPolicy::stop;
};

struct CurveSample {
  double s = 0.0;
  Vec3 u;
  Vec4 x;
  /// Unit-speed direction u'(s).
  Vec3 du;
  double k_n = 0.0;
};

struct Trace {
  std::vector<CurveSample> samples;
  StopReason stop = StopReason::none;
};

/// Line of curvature through `seed` on the chosen branch, by fixed-step RK4
/// on the unit-speed principal direction field. Throws Error(seed_at_umbilic)
/// or Error(degenerate_branch) when the seed branch is not simple.
Trace trace(const HypersurfaceDef& surface, const Vec3& seed, const TraceConfig& cfg);

/// Direction field used by trace(): the principal direction at u whose root
/// is nearest `k_ref`, signed to agree with `d_ref` in the metric at u.
struct FieldValue {
  Vec3 direction;
  Vec4 x;
  double k_n = 0.0;
  /// Distance from k_n to the nearest other root, and the root scale.
  double separation = 0.0;
  double scale = 1.0;
};
FieldValue principal_field(const HypersurfaceDef& surface, const Vec3& u,
                           double k_ref, const Vec3& d_ref);

/// u(s) on a uniform grid j * spacing, j = 0.. while s <= s_end, by cubic
/// Hermite interpolation using u'. Throws Error(too_few_samples) below five
/// samples.
std::vector<Vec3> resample(const std::vector<CurveSample>& samples, double spacing);
std::vector<Vec4> resample_positions(const HypersurfaceDef& surface,
                                     const std::vector<CurveSample>& samples,
                                     double spacing);

}  // namespace hyperloc

#endif  // HYPERLOC_TRACER_HPP_
