// Copyright 2026 The bipolarlab Authors.
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

#include <benchmark/benchmark.h>

#include "bipolar/manifold.hpp"
#include "bipolar/profile.hpp"
#include "bipolar/rigidity.hpp"
#include "bipolar/rng.hpp"

namespace {

using namespace bipolar;

void BM_FlatBandDistance(benchmark::State& state) {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  Rng rng(1);
  for (auto _ : state) {
    const ChartPoint p =
        ChartPoint::of(rng.uniform(-0.8, 0.8), rng.uniform(0, 2));
    const ChartPoint q =
        ChartPoint::of(rng.uniform(-0.8, 1.6), rng.uniform(0, 2));
    benchmark::DoNotOptimize(distance(fb.manifold, p, q).value);
  }
}
BENCHMARK(BM_FlatBandDistance);

void BM_CoshExp(benchmark::State& state) {
  const ManifoldSpec m = ManifoldSpec::revolution(make_cosh_profile());
  Rng rng(2);
  for (auto _ : state) {
    TangentVec v{ChartPoint::of(0.0, 0.0),
                 Eigen::Vector2d(rng.uniform(-1, 1), rng.uniform(-1, 1))};
    benchmark::DoNotOptimize(exp_map(m, v));
  }
}
BENCHMARK(BM_CoshExp);

}  // namespace
