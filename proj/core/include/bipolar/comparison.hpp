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

#ifndef BIPOLAR_COMPARISON_HPP_
#define BIPOLAR_COMPARISON_HPP_

#include <cstdint>
#include <vector>

#include "bipolar/distgeo.hpp"
#include "bipolar/manifold.hpp"

namespace bipolar {

// Points sampled on a manifold together with their cached pairwise distance
// matrix. Construction rejects the configuration if any pairwise solve fails;
// a stored configuration always has a fully converged matrix.
struct SampledConfiguration {
  ManifoldSpec manifold;
  std::vector<ChartPoint> a_points;
  std::vector<ChartPoint> b_points;
  Eigen::MatrixXd dist;
};

// Builds the (k,l) instance from manifold distances, k = |a|-1, l = |b|-1.
// Throws BvpError when any pair fails to solve (the configuration is
// rejected, never guessed).
ComparisonInstance sample_instance(const ManifoldSpec& m,
                                   const std::vector<ChartPoint>& a_points,
                                   const std::vector<ChartPoint>& b_points);

SampledConfiguration sample_configuration(
    const ManifoldSpec& m, const std::vector<ChartPoint>& a_points,
    const std::vector<ChartPoint>& b_points);

// sample_instance followed by solve_lowrank; a NotFoundAfterBudget verdict is
// re-checked with solve_gram_projection before being reported.
FeasibilityVerdict check_bipolar(const ManifoldSpec& m,
                                 const std::vector<ChartPoint>& a_points,
                                 const std::vector<ChartPoint>& b_points,
                                 int budget, std::uint64_t seed);

struct ScanOptions {
  int trials = 100;
  double radius = 0.5;  // clamped to til_inner_radius(base)/2
  int budget = 100;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: hardware parallelism
  int max_redraws_per_trial = 10;
  int worst_kept = 8;
};

struct ScanTrialRecord {
  SampledConfiguration config;
  bool feasible = false;
  double best_penalty = 0.0;
  double residual = 0.0;
  // (2,0) scans only: exact oracle verdict for undecided trials
  // (-1: not applicable, 0: oracle says infeasible, 1: oracle says feasible).
  int oracle_feasible = -1;
};

struct ScanReport {
  std::string manifold;
  int k = 0, l = 0;
  int trials = 0;
  int feasible = 0;
  int undecided = 0;
  int rejected_draws = 0;
  // Undecided (2,0) trials confirmed infeasible by the exact oracle; -1 when
  // the oracle does not apply.
  int oracle_confirmed_infeasible = -1;
  std::vector<ScanTrialRecord> worst;  // sorted descending by best_penalty
  double radius_used = 0.0;
  double til_at_base = 0.0;
  int budget = 0;
  std::uint64_t seed = 0;
  double feas_tol_factor = kFeasTolFactor;
};

// Samples configurations inside the verified-minimizing ball around `base`
// (radius clamped to til/2), runs check_bipolar per trial, aggregates
// deterministically by trial index.
ScanReport random_scan(const ManifoldSpec& m, const ChartPoint& base, int k,
                       int l, const ScanOptions& opts);

// Default scan base point: the origin chart point of the manifold
// (Euclidean origin, sphere equator, revolution (t=0, theta=0)).
ChartPoint default_base_point(const ManifoldSpec& m);

}  // namespace bipolar

#endif  // BIPOLAR_COMPARISON_HPP_
