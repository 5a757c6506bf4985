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

#include "bipolar/rigidity.hpp"
#include "bipolar/rng.hpp"

using namespace bipolar;

namespace {

ChartPoint pt(double a, double b, int chart = 0) {
  return ChartPoint::of(a, b, chart);
}

}  // namespace

TEST_CASE("flat band profile invariants") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  const ManifoldSpec& m = fb.manifold;
  // K = 0 exactly on the band.
  CHECK(gauss_curvature(m, pt(0.0, 0.0)) == 0.0);
  CHECK(gauss_curvature(m, pt(0.99, 2.0)) == 0.0);
  // K > 0 somewhere in the blend (1, 1.5).
  bool positive = false;
  for (int i = 1; i <= 10; ++i) {
    if (gauss_curvature(m, pt(1.0 + 0.5 * i / 11.0, 0.0)) > 0.0) {
      positive = true;
    }
  }
  CHECK(positive);
  // Strictly concave caps beyond the blend.
  CHECK(gauss_curvature(m, pt(2.0, 0.0)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(build_flat_band_profile(-1.0, 1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(build_flat_band_profile(1.0, 0.0, 0.5), ValidationError);
}

TEST_CASE("in-band distances match the unrolled cylinder closed form") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  Rng rng(14);
  for (int i = 0; i < 25; ++i) {
    const double t0 = rng.uniform(-0.8, 0.8);
    const double t1 = rng.uniform(-0.8, 0.8);
    const double dth = rng.uniform(-1.5, 1.5);
    const double expected = std::hypot(t1 - t0, fb.radius * dth);
    const double got =
        distance(fb.manifold, pt(t0, 0.3), pt(t1, 0.3 + dth)).value;
    CHECK(std::abs(got - expected) <= 1e-7);
  }
}

TEST_CASE("key lemma on the plane: the two apexes coincide") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  KeyLemmaParams params;
  params.angle_p = 0.7;
  params.angle_q = 0.5;
  const KeyLemmaConfiguration config =
      key_lemma_configuration(e2, pt(0.0, 0.0), pt(1.3, 0.0), params);
  CHECK((config.x_p.x - config.x_q.x).norm() <= 1e-9);
  // The chains sit at the stated fractions of the plane sides.
  CHECK(distance(e2, config.p_minus, config.p_0).value ==
        doctest::Approx(config.side_p / 3.0));
  CHECK(distance(e2, config.p_minus, config.p_plus).value ==
        doctest::Approx(2.0 * config.side_p / 3.0));
  // The plane model is an exact witness.
  const ComparisonInstance inst = key_lemma_instance(e2, config);
  const ModelConfiguration guess = plane_model_configuration(config, inst.n() - 1);
  CHECK(penalty(guess, inst) <= 1e-18);
}

TEST_CASE("in-band key lemma instances are feasible with tiny residual") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  KeyLemmaParams params;
  params.angle_p = 0.5;
  params.angle_q = 0.55;
  params.band_halfwidth = fb.band_halfwidth;
  params.orientation = -1.0;  // toward +t
  const KeyLemmaConfiguration config = key_lemma_configuration(
      fb.manifold, pt(-0.4, 0.0), pt(-0.38, 0.7), params);
  CHECK(config.max_abs_t <= fb.band_halfwidth);
  const ComparisonInstance inst = key_lemma_instance(fb.manifold, config);
  LowrankOptions opts;
  opts.budget = 100;
  opts.seed = 3;
  opts.initial_guess = plane_model_configuration(config, inst.n() - 1);
  const FeasibilityVerdict v = solve_lowrank_opts(inst, opts);
  CHECK(v.feasible());
  CHECK(v.residual <= 1e-7 * inst.scale());
}

TEST_CASE("cap-probing configurations build and carry a positive apex gap") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  const ManifoldSpec& m = fb.manifold;
  const ChartPoint p = pt(-0.5, 0.0), q = pt(-0.48, 1.2);
  const double base = distance(m, p, q).value;
  KeyLemmaParams params;
  params.angle_p = std::atan2(2.0 * 2.4, base);
  params.angle_q = params.angle_p * 1.02;
  params.band_halfwidth = fb.band_halfwidth;
  params.orientation = -1.0;
  const double gx = M_PI - params.angle_p - params.angle_q;
  const double side = base * std::sin(params.angle_q) / std::sin(gx);
  const double cap = std::min(1.0, 0.9 * ((1.0 + 0.5) / std::sin(params.angle_p)) / side);
  params.fractions_p = {std::min(1.0 / 3, 0.4 * cap), std::min(2.0 / 3, 0.85 * cap)};
  params.fractions_q = params.fractions_p;
  const KeyLemmaConfiguration config = key_lemma_configuration(m, p, q, params);
  CHECK(config.max_abs_t > fb.band_halfwidth);  // probes the cap
  const double gap = distance(m, config.x_p, config.x_q).value;
  CHECK(gap > 0.01);
}

TEST_CASE("collinearity defect: flat witnesses are collinear chains") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  KeyLemmaParams params;
  params.angle_p = 0.6;
  params.angle_q = 0.45;
  const KeyLemmaConfiguration config =
      key_lemma_configuration(e2, pt(0.0, 0.0), pt(1.1, 0.0), params);
  const ComparisonInstance inst = key_lemma_instance(e2, config);
  LowrankOptions opts;
  opts.budget = 100;
  opts.seed = 12;
  opts.initial_guess = plane_model_configuration(config, inst.n() - 1);
  const FeasibilityVerdict v = solve_lowrank_opts(inst, opts);
  REQUIRE(v.feasible());
  const double defect = collinearity_defect(*v.witness, inst);
  CHECK(defect <= 1e-6);

  // Perturbing the witness strictly increases the defect.
  ModelConfiguration bent = *v.witness;
  bent.positions(2, 2) += 0.05;
  CHECK(collinearity_defect(bent, inst) > defect);

  // Degenerate chains are 0 by convention.
  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(2, 1);
  two(1, 0) = 0.7;
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(2, 2);
  d2(0, 1) = d2(1, 0) = 0.7;
  CHECK(collinearity_defect(ModelConfiguration{two},
                            build_instance(0, 0, d2)) == 0.0);
}

TEST_CASE("flat filling: plane fills, band fills, sphere does not") {
  const ManifoldSpec e3 = ManifoldSpec::euclidean(3);
  Eigen::VectorXd a(3), b(3), c(3);
  a << 0, 0, 0;
  b << 1.2, 0.1, 0;
  c << 0.3, 0.9, 0.4;
  CHECK(flat_filling_check(e3, ChartPoint::of(a), ChartPoint::of(b),
                           ChartPoint::of(c), 4) <= 1e-7);

  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  CHECK(flat_filling_check(fb.manifold, pt(-0.4, 0.0), pt(0.5, 0.3),
                           pt(0.0, 0.9), 4) <= 1e-6);

  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  const double dev = flat_filling_check(s1, pt(M_PI / 2, 0.0),
                                        pt(M_PI / 2, M_PI / 2),
                                        pt(1e-6, 0.0), 4);
  CHECK(dev > 0.01);  // spherical excess
}

TEST_CASE("rigidity experiment: flags fire on the flat band") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  RigidityOptions opts;
  opts.trials = 30;
  opts.budget = 120;
  opts.seed = 12345;
  opts.workers = 2;
  opts.mtw_probes = 60;
  const ExperimentReport report = rigidity_experiment(fb, opts);
  CHECK(report.built >= 25);
  CHECK(report.in_band_count >= 3);
  CHECK(report.in_band_feasible == report.in_band_count);  // positive control
  CHECK(report.violations >= 1);
  CHECK(report.comparison_violation_evidence);
  CHECK(report.mtw_violation_evidence);
  // Violating trials are dual-solver confirmed and kept for re-checking.
  for (const RigidityTrialRecord& rec : report.trial_records) {
    if (rec.violation) {
      CHECK_FALSE(rec.feasible);
      CHECK_FALSE(rec.gram_feasible);
      CHECK(rec.lowrank_full_budget);
      CHECK(rec.violating_instance.has_value());
    }
  }
}

TEST_CASE("rigidity control on the plane: all feasible, flags false") {
  RigidityOptions opts;
  opts.trials = 16;
  opts.budget = 64;
  opts.seed = 5;
  opts.workers = 2;
  opts.mtw_probes = 24;
  const ExperimentReport report =
      rigidity_experiment_control(ManifoldSpec::euclidean(2), opts);
  CHECK(report.rejected == 0);
  CHECK(report.violations == 0);
  CHECK_FALSE(report.comparison_violation_evidence);
  CHECK_FALSE(report.mtw_violation_evidence);
  for (const RigidityTrialRecord& rec : report.trial_records) {
    CHECK(rec.feasible);
  }
}

TEST_CASE("evidence stability across two master seeds (smoke)") {
  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  for (const std::uint64_t seed : {7ULL, 8ULL}) {
    RigidityOptions opts;
    opts.trials = 24;
    opts.budget = 120;
    opts.seed = seed;
    opts.workers = 2;
    opts.mtw_probes = 50;
    const ExperimentReport report = rigidity_experiment(fb, opts);
    CHECK(report.comparison_violation_evidence);
    CHECK(report.mtw_violation_evidence);
  }
}
