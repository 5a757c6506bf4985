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

#include "bipolar/distgeo.hpp"
#include "bipolar/rng.hpp"

namespace {

using namespace bipolar;

ComparisonInstance sampled_instance(int k, int l, std::uint64_t seed) {
  Rng rng(seed);
  const int n = k + l + 2;
  Eigen::MatrixXd pts(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 3; ++j) pts(i, j) = rng.uniform(-1, 1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  return build_instance(k, l, d);
}

void BM_LowrankFeasible33(benchmark::State& state) {
  const ComparisonInstance inst = sampled_instance(3, 3, 77);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lowrank(inst, 200, seed++).residual);
  }
}
BENCHMARK(BM_LowrankFeasible33);

void BM_LowrankInfeasibleQuadruple(benchmark::State& state) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 1; i < 4; ++i) d(0, i) = d(i, 0) = 1.0;
  d(1, 2) = d(2, 1) = d(1, 3) = d(3, 1) = d(2, 3) = d(3, 2) = 1.8;
  const ComparisonInstance inst = build_instance(2, 0, d);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lowrank(inst, 200, seed++).best_penalty);
  }
}
BENCHMARK(BM_LowrankInfeasibleQuadruple);

void BM_GramProjection(benchmark::State& state) {
  const ComparisonInstance inst = sampled_instance(2, 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gram_projection(inst).residual);
  }
}
BENCHMARK(BM_GramProjection);

}  // namespace
