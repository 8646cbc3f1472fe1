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

#ifndef HYPERLOC_PARALLEL_HPP_
#define HYPERLOC_PARALLEL_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperloc/error.hpp"
#include "hyperloc/frenet.hpp"
#include "hyperloc/tracer.hpp"

namespace hyperloc {

/// evaluate_station at every sample, one after another.
std::vector<CurvatureState> evaluate_curvatures_serial(
    const HypersurfaceDef& surface, std::span<const CurveSample> samples,
    const FrenetTolerances& tol = {});

/// Same result as the serial version, stations spread over OpenMP threads.
std::vector<CurvatureState> evaluate_curvatures(const HypersurfaceDef& surface,
                                                std::span<const CurveSample> samples,
                                                const FrenetTolerances& tol = {});

struct TraceResult {
  Trace trace;
  /// Set when the seed was rejected.
  std::optional<ErrorCode> error;
  std::string message;
};

std::vector<TraceResult> trace_many_serial(const HypersurfaceDef& surface,
                                           std::span<const Vec3> seeds,
                                           const TraceConfig& cfg);

std::vector<TraceResult> trace_many(const HypersurfaceDef& surface,
                                    std::span<const Vec3> seeds, const TraceConfig& cfg);

/// Threads OpenMP would use; 1 without OpenMP.
int max_threads();

}  // namespace hyperloc

#endif  // HYPERLOC_PARALLEL_HPP_
