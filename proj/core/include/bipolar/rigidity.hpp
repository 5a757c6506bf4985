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

#ifndef BIPOLAR_RIGIDITY_HPP_
#define BIPOLAR_RIGIDITY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipolar/comparison.hpp"
#include "bipolar/distgeo.hpp"
#include "bipolar/manifold.hpp"
#include "bipolar/mtw.hpp"

namespace bipolar {

// ---------------------------------------------------------------------------
// Flat-band surfaces
// ---------------------------------------------------------------------------

// Surface of revolution whose profile is exactly r on [-w, w] (a flat
// cylinder band), blended through a C-infinity bump into strictly concave
// spherical caps of curvature cap_curvature^2.
struct FlatBandSurfaceSpec {
  double radius = 1.0;
  double band_halfwidth = 1.0;
  double blend_width = 0.5;
  double cap_curvature = 1.0;  // phi' limit; Gauss curvature of the caps is
                               // cap_curvature^2
  ManifoldSpec manifold;
};

// Builds the profile and verifies at construction: K = 0 exactly on the
// band, K > 0 at blend samples, C^4 seam consistency, f > 0 on the domain.
// cap_curvature <= 0 selects the default 1/r.
FlatBandSurfaceSpec build_flat_band_profile(double radius, double band_halfwidth,
                                            double blend_width,
                                            double cap_curvature = 0.0);

// ---------------------------------------------------------------------------
// Key-Lemma configurations
// ---------------------------------------------------------------------------

// The 8-point arrangement (p_-, p_0, p_+, x_p; q_-, q_0, q_+, x_q) along two
// geodesics shot from the ends of the base [p q] at prescribed plane-triangle
// angles.
struct KeyLemmaConfiguration {
  ChartPoint p_minus, p_0, p_plus, x_p;
  ChartPoint q_minus, q_0, q_plus, x_q;

  // Plane model triangle [p~ q~ x~].
  double base_length = 0.0;
  double angle_p = 0.0, angle_q = 0.0;
  double side_p = 0.0, side_q = 0.0;  // |p~ x~|, |q~ x~|

  std::array<double, 2> fractions_p{1.0 / 3.0, 2.0 / 3.0};
  std::array<double, 2> fractions_q{1.0 / 3.0, 2.0 / 3.0};

  Geodesic geodesic_p;  // [p_-, x_p]
  Geodesic geodesic_q;  // [q_-, x_q]

  // Largest |t| over both side geodesics (NaN on manifolds without bands).
  double max_abs_t = 0.0;
};

struct KeyLemmaParams {
  double angle_p = 0.6;  // plane angle at p~, radians
  double angle_q = 0.6;
  std::array<double, 2> fractions_p{1.0 / 3.0, 2.0 / 3.0};
  std::array<double, 2> fractions_q{1.0 / 3.0, 2.0 / 3.0};
  double orientation = 1.0;   // which side of the base the apex goes
  double band_halfwidth = 0.0;  // > 0: enforce band hypotheses (p, q and the
                                // interior chain points inside |t| < w)
};

// Builds the configuration: plane triangle from |pq| and the two angles,
// geodesics shot at those angles, chain points at the given side fractions,
// every geodesic verified minimizing to its endpoint by a distance check.
KeyLemmaConfiguration key_lemma_configuration(const ManifoldSpec& m,
                                              const ChartPoint& p,
                                              const ChartPoint& q,
                                              const KeyLemmaParams& params);

// The (3,3) instance of the configuration with the comparison applied to
// a = (p_0, p_-, p_+, x_p), b = (q_0, q_-, q_+, x_q).
ComparisonInstance key_lemma_instance(const ManifoldSpec& m,
                                      const KeyLemmaConfiguration& config);

// The flat model of the configuration (both chains laid out in the plane
// triangle), embedded in `dim` coordinates in instance order. For
// configurations whose triangle stays in a flat region this is an exact
// witness; elsewhere it seeds the solver.
ModelConfiguration plane_model_configuration(
    const KeyLemmaConfiguration& config, int dim);

// Max deviation of each pole chain of a (3,3) key-lemma witness from its
// best-fit line, normalized by chain extent. Near zero when the comparison's
// equality pattern forces collinear chains.
double collinearity_defect(const ModelConfiguration& witness,
                           const ComparisonInstance& inst);

// Compares manifold distances between grid-sampled points on the sides of
// triangle [p q x] against the corresponding plane-triangle distances;
// returns the maximum absolute deviation.
double flat_filling_check(const ManifoldSpec& m, const ChartPoint& p,
                          const ChartPoint& q, const ChartPoint& x, int grid);

// ---------------------------------------------------------------------------
// Rigidity experiments
// ---------------------------------------------------------------------------

struct RigidityOptions {
  int trials = 200;
  int budget = 200;
  std::uint64_t seed = 0;
  int workers = 0;
  int mtw_probes = 120;
  double feas_tol_factor = kFeasTolFactor;
};

struct RigidityTrialRecord {
  bool built = false;
  std::string reject_reason;
  double t_p = 0.0, t_q = 0.0;
  double base_length = 0.0;
  double angle_p = 0.0, angle_q = 0.0;
  double side_p = 0.0, side_q = 0.0;
  double apex_gap = 0.0;  // d(x_p, x_q)
  bool in_band = false;   // whole configuration inside the flat band
  bool feasible = false;
  double residual = 0.0;
  double best_penalty = 0.0;       // lowrank
  double gram_penalty = 0.0;       // gram cross-check (when run)
  bool gram_feasible = false;
  bool lowrank_full_budget = false;
  bool violation = false;  // persistent dual-solver violation evidence
  std::optional<ComparisonInstance> violating_instance;
};

struct ExperimentReport {
  std::string manifold;
  int trials = 0;
  int budget = 0;
  std::uint64_t seed = 0;
  double feas_tol_factor = kFeasTolFactor;
  // Violation evidence requires best_penalty >= factor * feas_tol^2 in both
  // solvers across the full budget. Sits orders of magnitude above the
  // penalty floor of feasible instances and of distance-engine noise, and
  // below the measured floor of genuinely violating configurations.
  double penalty_evidence_factor = 10.0;

  std::vector<RigidityTrialRecord> trial_records;
  int built = 0;
  int rejected = 0;
  int in_band_count = 0;
  int in_band_feasible = 0;
  int violations = 0;

  bool comparison_violation_evidence = false;
  bool mtw_violation_evidence = false;
  MtwScanReport mtw;
};

// Key-lemma configurations with apexes swept from the band into the caps,
// solved with both feasibility solvers, plus an MTW scan near the seam.
// Evidence flags follow the report thresholds; under-powered runs simply
// report false flags.
ExperimentReport rigidity_experiment(const FlatBandSurfaceSpec& surface,
                                     const RigidityOptions& opts);

// Euclidean control: the degenerate "band" is the whole plane. Both evidence
// flags must come out false.
ExperimentReport rigidity_experiment_control(const ManifoldSpec& euclidean,
                                             const RigidityOptions& opts);

}  // namespace bipolar

#endif  // BIPOLAR_RIGIDITY_HPP_
