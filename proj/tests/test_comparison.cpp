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

#include <doctest.h>

#include <cmath>

#include "bipolar/comparison.hpp"
#include "bipolar/profile.hpp"
#include "bipolar/rng.hpp"

using namespace bipolar;

namespace {

ChartPoint pt(double a, double b, int chart = 0) {
  return ChartPoint::of(a, b, chart);
}

std::vector<ChartPoint> ball_points(const ManifoldSpec& m,
                                    const ChartPoint& base, double radius,
                                    int count, Rng& rng) {
  std::vector<ChartPoint> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(sample_in_ball(m, base, radius, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("sampled instances: euclidean identity, sphere closed form") {
  Rng rng(8);
  const ManifoldSpec e3 = ManifoldSpec::euclidean(3);
  const ChartPoint origin = ChartPoint::of(Eigen::VectorXd::Zero(3).eval());
  const auto a = ball_points(e3, origin, 1.0, 4, rng);
  const auto b = ball_points(e3, origin, 1.0, 4, rng);
  const ComparisonInstance inst = sample_instance(e3, a, b);
  CHECK(inst.k == 3);
  CHECK(inst.l == 3);
  const FeasibilityVerdict v = solve_lowrank(inst, 64, 3);
  CHECK(v.feasible());

  // Sphere (2,2): poles a quarter turn apart on the equator, two members
  // each; distances must match the closed-form arc lengths.
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  const std::vector<ChartPoint> sa = {pt(M_PI / 2, 0.0), pt(M_PI / 2, 0.3),
                                      pt(M_PI / 2 - 0.4, 0.0)};
  const std::vector<ChartPoint> sb = {pt(M_PI / 2, M_PI / 2),
                                      pt(M_PI / 2, M_PI / 2 + 0.3),
                                      pt(M_PI / 2 - 0.3, M_PI / 2)};
  const ComparisonInstance sphere_inst = sample_instance(s1, sa, sb);
  CHECK(sphere_inst.n() == 6);
  CHECK(sphere_inst.dist(0, 3) == doctest::Approx(M_PI / 2));
  CHECK(sphere_inst.dist(0, 1) == doctest::Approx(0.3));
  // a_0 to its second member: pure colatitude arc.
  CHECK(sphere_inst.dist(0, 2) == doctest::Approx(0.4));

  // Degenerate a_1 = a_0 accepted with a zero equality distance.
  const std::vector<ChartPoint> deg_a = {sa[0], sa[0]};
  const std::vector<ChartPoint> deg_b = {sb[0]};
  const ComparisonInstance deg = sample_instance(s1, deg_a, deg_b);
  CHECK(deg.dist(0, 1) == 0.0);
}

TEST_CASE("check_bipolar: flat and round cases are feasible") {
  Rng rng(21);
  const ManifoldSpec e3 = ManifoldSpec::euclidean(3);
  const ChartPoint origin = ChartPoint::of(Eigen::VectorXd::Zero(3).eval());
  const FeasibilityVerdict flat =
      check_bipolar(e3, ball_points(e3, origin, 1.0, 4, rng),
                    ball_points(e3, origin, 1.0, 4, rng), 64, 5);
  CHECK(flat.feasible());

  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  const ChartPoint eq = pt(M_PI / 2, 0.0);
  // (2,2) and (3,1): the round sphere satisfies both comparisons.
  const FeasibilityVerdict s22 =
      check_bipolar(s1, ball_points(s1, eq, 0.7, 3, rng),
                    ball_points(s1, eq, 0.7, 3, rng), 100, 6);
  CHECK(s22.feasible());
  const FeasibilityVerdict s31 =
      check_bipolar(s1, ball_points(s1, eq, 0.7, 4, rng),
                    ball_points(s1, eq, 0.7, 2, rng), 100, 7);
  CHECK(s31.feasible());
}

TEST_CASE("random scans: flat plane all feasible, sphere all feasible") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  ScanOptions opts;
  opts.trials = 50;
  opts.budget = 64;
  opts.seed = 42;
  opts.radius = 1.0;
  const ScanReport flat =
      random_scan(e2, default_base_point(e2), 3, 3, opts);
  CHECK(flat.trials == 50);
  CHECK(flat.feasible == 50);
  CHECK(flat.undecided == 0);
  for (const ScanTrialRecord& rec : flat.worst) {
    CHECK(rec.residual <= 1e-8 * rec.config.dist.maxCoeff());
  }

  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  ScanOptions sopts;
  sopts.trials = 40;
  sopts.budget = 100;
  sopts.seed = 43;
  sopts.radius = 1.0;  // clamped to til/2
  const ScanReport round =
      random_scan(s1, default_base_point(s1), 2, 2, sopts);
  CHECK(round.feasible == 40);
  CHECK(round.undecided == 0);
  CHECK(round.radius_used == doctest::Approx(0.5 * 0.95 * M_PI));
}

TEST_CASE("negative curvature: cosh scan finds oracle-confirmed violations") {
  const ManifoldSpec cosh_m = ManifoldSpec::revolution(make_cosh_profile());
  ScanOptions opts;
  opts.trials = 150;
  opts.budget = 100;
  opts.seed = 11;
  opts.radius = 2.0;  // clamped to til/2
  const ScanReport report =
      random_scan(cosh_m, default_base_point(cosh_m), 2, 0, opts);
  CHECK(report.trials == 150);
  CHECK(report.undecided >= 1);
  // Every undecided quadruple here should be an exact oracle violation.
  CHECK(report.oracle_confirmed_infeasible >= 1);
  CHECK(report.oracle_confirmed_infeasible == report.undecided);
  CHECK(report.feasible + report.undecided == report.trials);
}

TEST_CASE("scan determinism under a fixed seed") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  ScanOptions opts;
  opts.trials = 12;
  opts.budget = 32;
  opts.seed = 2026;
  const ScanReport a = random_scan(s1, default_base_point(s1), 2, 1, opts);
  ScanOptions par = opts;
  par.workers = 2;
  const ScanReport b = random_scan(s1, default_base_point(s1), 2, 1, par);
  CHECK(a.feasible == b.feasible);
  CHECK(a.undecided == b.undecided);
  REQUIRE(a.worst.size() == b.worst.size());
  for (std::size_t i = 0; i < a.worst.size(); ++i) {
    CHECK(a.worst[i].best_penalty == b.worst[i].best_penalty);  // bit-for-bit
    CHECK(a.worst[i].config.dist == b.worst[i].config.dist);
  }
}

TEST_CASE("sampled instances satisfy the metric check by construction") {
  // build_instance validates the triangle inequality at 1e-9*scale; a scan
  // over a curved surface exercises it on every trial.
  const ManifoldSpec cosh_m = ManifoldSpec::revolution(make_cosh_profile());
  ScanOptions opts;
  opts.trials = 10;
  opts.budget = 16;
  opts.seed = 77;
  opts.radius = 1.0;
  CHECK_NOTHROW(random_scan(cosh_m, default_base_point(cosh_m), 2, 1, opts));
}
