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

// Serial reference against the OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "hyperloc/parallel.hpp"
#include "hyperloc/surface.hpp"
#include "hyperloc/tracer.hpp"

namespace {

using namespace hyperloc;

const HypersurfaceDef& surface() {
  static const HypersurfaceDef s =
      load_surface(std::string(HYPERLOC_SURFACE_DIR) + "/mixed.surf");
  return s;
}

const std::vector<CurveSample>& samples() {
  static const std::vector<CurveSample> v = [] {
    TraceConfig c;
    c.branch = 2;
    c.step = 0.001;
    c.max_length = 0.8;
    return trace(surface(), Vec3{{0.1, -0.2, 0.15}}, c).samples;
  }();
  return v;
}

std::vector<Vec3> seeds(int n) {
  std::vector<Vec3> v;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    v.push_back(Vec3{{-0.4 + 0.8 * t, 0.3 - 0.5 * t, 0.1 + 0.2 * t}});
  }
  return v;
}

TraceConfig seed_config() {
  TraceConfig c;
  c.branch = 1;
  c.step = 0.01;
  c.max_length = 0.5;
  return c;
}

void BM_CurvaturesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_curvatures_serial(surface(), samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples().size()));
}

void BM_CurvaturesParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_curvatures(surface(), samples()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples().size()));
}

void BM_TraceManySerial(benchmark::State& state) {
  const auto s = seeds(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_many_serial(surface(), s, seed_config()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TraceManyParallel(benchmark::State& state) {
  const auto s = seeds(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_many(surface(), s, seed_config()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CurvaturesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurvaturesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceManySerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceManyParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
