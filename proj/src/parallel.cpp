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

#include "hyperloc/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperloc {

namespace {

TraceResult trace_one(const HypersurfaceDef& surface, const Vec3& seed,
                      const TraceConfig& cfg) {
  TraceResult r;
  try {
    r.trace = trace(surface, seed, cfg);
  } catch (const Error& e) {
    r.error = e.code();
    r.message = e.what();
  }
  return r;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<CurvatureState> evaluate_curvatures_serial(
    const HypersurfaceDef& surface, std::span<const CurveSample> samples,
    const FrenetTolerances& tol) {
  std::vector<CurvatureState> out;
  out.reserve(samples.size());
  for (const CurveSample& c : samples) {
    out.push_back(evaluate_station(surface, c.u, c.du, c.k_n, tol));
  }
  return out;
}

std::vector<CurvatureState> evaluate_curvatures(const HypersurfaceDef& surface,
                                                std::span<const CurveSample> samples,
                                                const FrenetTolerances& tol) {
  const long n = static_cast<long>(samples.size());
  std::vector<CurvatureState> out(samples.size());
  std::vector<std::exception_ptr> errors(samples.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      const CurveSample& c = samples[i];
      out[i] = evaluate_station(surface, c.u, c.du, c.k_n, tol);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // Report the failure the serial loop would have hit first.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<TraceResult> trace_many_serial(const HypersurfaceDef& surface,
                                           std::span<const Vec3> seeds,
                                           const TraceConfig& cfg) {
  std::vector<TraceResult> out;
  out.reserve(seeds.size());
  for (const Vec3& s : seeds) out.push_back(trace_one(surface, s, cfg));
  return out;
}

std::vector<TraceResult> trace_many(const HypersurfaceDef& surface,
                                    std::span<const Vec3> seeds, const TraceConfig& cfg) {
  const long n = static_cast<long>(seeds.size());
  std::vector<TraceResult> out(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = trace_one(surface, seeds[i], cfg);
  return out;
}

}  // namespace hyperloc
