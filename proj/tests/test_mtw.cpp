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

#include "bipolar/mtw.hpp"
#include "bipolar/profile.hpp"
#include "bipolar/rigidity.hpp"
#include "bipolar/rng.hpp"
#include "support/sphere_mtw_oracle.hpp"

using namespace bipolar;

namespace {

ChartPoint pt(double a, double b, int chart = 0) {
  return ChartPoint::of(a, b, chart);
}

MtwProbe random_sphere_probe(const ManifoldSpec& s1, Rng& rng,
                             bool perpendicular) {
  const ChartPoint p =
      pt(rng.uniform(1.0, M_PI - 1.0), rng.uniform(0.0, 2 * M_PI));
  const auto frame = orthonormal_frame(s1, p);
  auto unit = [&](double a) {
    return Eigen::VectorXd(std::cos(a) * frame[0] + std::sin(a) * frame[1]);
  };
  const Eigen::VectorXd w = rng.uniform(0.5, 1.2) * unit(rng.uniform(0, 2 * M_PI));
  const double ax = rng.uniform(0, 2 * M_PI);
  const Eigen::VectorXd x = unit(ax);
  const Eigen::VectorXd y =
      perpendicular ? unit(ax + M_PI / 2) : unit(rng.uniform(0, 2 * M_PI));
  return make_probe(s1, p, w, x, y, perpendicular, 0.95 * M_PI);
}

}  // namespace

TEST_CASE("stencil order hook: F = s^2 t^2 gives exactly 4") {
  const auto f = [](double s, double t) { return s * s * t * t; };
  for (const double h : {1e-2, 3e-2, 1e-1}) {
    const MtwValue v = fourth_mixed_derivative_of(f, h);
    CHECK(std::abs(v.value - 4.0) <= 1e-9);
  }
}

TEST_CASE("cost surface closed forms") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  MtwProbe probe;
  probe.p = pt(0.0, 0.0);
  probe.w = Eigen::Vector2d(0.7, 0.2);
  probe.x = Eigen::Vector2d(1.0, 0.0);
  probe.y = Eigen::Vector2d(0.3, 1.0);
  probe.til_guard = 10.0;
  for (double s : {-0.2, 0.0, 0.3}) {
    for (double t : {-0.1, 0.0, 0.25}) {
      const Eigen::Vector2d delta =
          s * probe.x - (probe.w + t * probe.y);
      CHECK(cost_surface(e2, probe, s, t) ==
            doctest::Approx(delta.squaredNorm()).epsilon(1e-14));
    }
  }
  // s = t = 0 on a curved manifold inside the guard: |W|^2.
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  Rng rng(3);
  const MtwProbe sp = random_sphere_probe(s1, rng, true);
  const double wn = tangent_norm(s1, TangentVec{sp.p, sp.w});
  CHECK(cost_surface(s1, sp, 0.0, 0.0) ==
        doctest::Approx(wn * wn).epsilon(1e-10));
  // Sphere cost agrees with the embedded closed form off-origin.
  const auto lifted = bipolar_test::lift_probe(s1, sp);
  CHECK(cost_surface(s1, sp, 0.12, -0.08) ==
        doctest::Approx((double)bipolar_test::cost_closed_form(lifted, 0.12L,
                                                               -0.08L))
            .epsilon(1e-10));
}

TEST_CASE("guard violations are reported") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  CHECK_THROWS_AS(
      make_probe(s1, pt(M_PI / 2, 0.0), Eigen::Vector2d(0.0, 2.9),
                 Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0), false,
                 2.0),
      ValidationError);  // |W| >= 0.9 * guard
  MtwProbe probe;
  probe.p = pt(M_PI / 2, 0.0);
  probe.w = Eigen::Vector2d(0.0, 0.4);
  probe.x = Eigen::Vector2d(1.0, 0.0);
  probe.y = Eigen::Vector2d(0.0, 1.0);
  probe.til_guard = 0.5;
  CHECK_THROWS_AS(cost_surface(s1, probe, 0.49, 0.0), DomainError);
}

TEST_CASE("Euclidean annihilation: quadratic cost surfaces vanish") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    MtwProbe probe;
    probe.p = pt(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double a = rng.uniform(0, 2 * M_PI);
    probe.w = rng.uniform(0.2, 1.5) *
              Eigen::Vector2d(std::cos(a), std::sin(a));
    const double ax = rng.uniform(0, 2 * M_PI);
    probe.x = Eigen::Vector2d(std::cos(ax), std::sin(ax));
    const double ay = rng.uniform(0, 2 * M_PI);
    probe.y = Eigen::Vector2d(std::cos(ay), std::sin(ay));
    probe.til_guard = 50.0;
    const MtwValue v =
        fourth_mixed_derivative(e2, probe, default_step(e2, probe));
    CHECK(std::abs(v.value) <= 1e-8);
  }
}

TEST_CASE("sphere probes match the long-double closed-form oracle") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  Rng rng(29);
  for (int i = 0; i < 25; ++i) {
    const MtwProbe probe = random_sphere_probe(s1, rng, true);
    const MtwValue v =
        fourth_mixed_derivative(s1, probe, default_step(s1, probe));
    const double oracle = static_cast<double>(
        bipolar_test::fourth_derivative_oracle(bipolar_test::lift_probe(s1, probe)));
    CHECK(std::abs(v.value - oracle) <=
          std::max(1e-4 * std::abs(oracle), 1e-5));
  }
}

TEST_CASE("halving consistency: step change stays within the estimate") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    const MtwProbe probe = random_sphere_probe(s1, rng, true);
    const double h = default_step(s1, probe);
    const MtwValue coarse = fourth_mixed_derivative(s1, probe, 2.0 * h);
    const MtwValue fine = fourth_mixed_derivative(s1, probe, h);
    CHECK(std::abs(coarse.value - fine.value) <=
          coarse.error_estimate + fine.error_estimate + 1e-9);
  }
}

TEST_CASE("even-order symmetry and quadratic scaling in X") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  Rng rng(37);
  for (int i = 0; i < 10; ++i) {
    MtwProbe probe = random_sphere_probe(s1, rng, false);
    const double h = default_step(s1, probe);
    const MtwValue v = fourth_mixed_derivative(s1, probe, h);

    MtwProbe flipped = probe;
    flipped.x = -probe.x;
    const MtwValue vf = fourth_mixed_derivative(s1, flipped, h);
    CHECK(std::abs(vf.value - v.value) <=
          v.error_estimate + vf.error_estimate + 1e-10);

    MtwProbe flipped_y = probe;
    flipped_y.y = -probe.y;
    const MtwValue vy = fourth_mixed_derivative(s1, flipped_y, h);
    CHECK(std::abs(vy.value - v.value) <=
          v.error_estimate + vy.error_estimate + 1e-10);

    MtwProbe scaled = probe;
    scaled.x = 2.0 * probe.x;
    const MtwValue vs = fourth_mixed_derivative(s1, scaled, 0.5 * h);
    CHECK(std::abs(vs.value - 4.0 * v.value) <=
          2.0 * (4.0 * v.error_estimate + vs.error_estimate) + 1e-6);
  }
}

TEST_CASE("mtw scans: euclidean silent, sphere non-positive, seam positive") {
  const ManifoldSpec e2 = ManifoldSpec::euclidean(2);
  MtwScanOptions opts;
  opts.trials = 60;
  opts.seed = 5;
  opts.region_radius = 1.0;
  const MtwScanReport flat = mtw_scan(e2, default_base_point(e2), opts);
  CHECK(flat.positives == 0);
  CHECK(flat.unresolved == 0);
  CHECK(std::abs(flat.max_value) <= 1e-6);

  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  MtwScanOptions sopts;
  sopts.trials = 60;
  sopts.seed = 6;
  const MtwScanReport round = mtw_scan(s1, default_base_point(s1), sopts);
  CHECK(round.positives == 0);

  const FlatBandSurfaceSpec fb = build_flat_band_profile(1.0, 1.0, 0.5);
  MtwScanOptions fopts;
  fopts.trials = 120;
  fopts.seed = 7;
  fopts.region_radius = 0.5;
  fopts.perpendicular_only = false;
  const MtwScanReport seam =
      mtw_scan(fb.manifold, ChartPoint::of(1.0, 0.0), fopts);
  CHECK(seam.positives >= 1);
  CHECK(seam.max_value > kMtwPosTol);
}

TEST_CASE("mtw scan determinism across worker counts") {
  const ManifoldSpec s1 = ManifoldSpec::sphere(1.0);
  MtwScanOptions opts;
  opts.trials = 16;
  opts.seed = 99;
  opts.workers = 1;
  const MtwScanReport a = mtw_scan(s1, default_base_point(s1), opts);
  opts.workers = 2;
  const MtwScanReport b = mtw_scan(s1, default_base_point(s1), opts);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].resolved == b.records[i].resolved);
    if (a.records[i].resolved) {
      CHECK(a.records[i].value == b.records[i].value);  // bit-for-bit
    }
  }
}
