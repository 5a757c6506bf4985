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

#include <cmath>

#include "bipolar/mtw.hpp"
#include "bipolar/rigidity.hpp"
#include "bipolar/rng.hpp"

namespace {

using namespace bipolar;

void BM_SphereFourthDerivative(benchmark::State& state) {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  const ChartPoint p = ChartPoint::of(M_PI / 2, 0.0);
  const auto frame = orthonormal_frame(s1, p);
  const MtwProbe probe = make_probe(
      s1, p, Eigen::VectorXd(0.6 * frame[0] + 0.8 * frame[1]), frame[0],
      frame[1], true, 0.95 * M_PI);
  const double h = default_step(s1, probe);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourth_mixed_derivative(s1, probe, h).value);
  }
}
BENCHMARK(BM_SphereFourthDerivative);

void BM_FlatBandSeamProbe(benchmark::State& state) {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  const ChartPoint p = ChartPoint::of(0.9, 0.0);
  const auto frame = orthonormal_frame(fb.manifold, p);
  const MtwProbe probe = make_probe(
      fb.manifold, p, Eigen::VectorXd(0.9 * frame[0] + 0.3 * frame[1]),
      frame[0], Eigen::VectorXd(0.4 * frame[0] + 0.9165151389911680 * frame[1]),
      false, 2.0);
  const double h = default_step(fb.manifold, probe);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fourth_mixed_derivative(fb.manifold, probe, h).value);
  }
}
BENCHMARK(BM_FlatBandSeamProbe);

}  // namespace
