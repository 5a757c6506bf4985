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

#ifndef BIPOLAR_MTW_HPP_
#define BIPOLAR_MTW_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bipolar/manifold.hpp"

namespace bipolar {

// One fourth-derivative evaluation request: the mixed derivative
// d^4/ds^2 dt^2 of d(exp_p(s X), exp_p(W + t Y))^2 at s = t = 0.
struct MtwProbe {
  ChartPoint p;
  Eigen::VectorXd w;  // chart components at p
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  bool perpendicular = false;
  double til_guard = 0.0;  // conservative tangent-injectivity radius at p
};

// Validates |W| < 0.9 * til_guard and, in perpendicular mode,
// |g(X,Y)| <= 1e-10 |X||Y|.
MtwProbe make_probe(const ManifoldSpec& m, const ChartPoint& p,
                    const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, bool perpendicular,
                    double til_guard);

struct MtwValue {
  double value = 0.0;
  double error_estimate = 0.0;  // Richardson pair disagreement
  double h_used = 0.0;
};

// F(s,t) = d(exp_p(s X), exp_p(W + t Y))^2 with the global distance.
double cost_surface(const ManifoldSpec& m, const MtwProbe& probe, double s,
                    double t);

// 3x3 product stencil [1,-2,1] (x) [1,-2,1] / h^4 at steps h and h/2 with
// second-order Richardson extrapolation. Throws UnresolvedError when the
// error estimate exceeds both 0.1*|value| and 1e-3.
MtwValue fourth_mixed_derivative(const ManifoldSpec& m, const MtwProbe& probe,
                                 double h);

// Same operator applied to an arbitrary F(s,t); test hook for the stencil
// order (F = s^2 t^2 must give exactly 4).
MtwValue fourth_mixed_derivative_of(
    const std::function<double(double, double)>& f, double h);

// Step-size policy: (distance-engine tolerance)^(1/8) scaled by |W|, clamped
// so the stencil stays inside the guarded ball. Euclidean cost surfaces are
// globally quadratic, so a large step is used there to kill roundoff.
double default_step(const ManifoldSpec& m, const MtwProbe& probe);

struct MtwProbeRecord {
  MtwProbe probe;
  double value = 0.0;
  double error_estimate = 0.0;
  double h_used = 0.0;
  bool resolved = false;
  std::string failure;  // empty when resolved
};

struct MtwScanReport {
  std::string manifold;
  int trials = 0;
  int positives = 0;    // resolved values > pos_tol
  int unresolved = 0;
  double max_value = 0.0;
  int argmax_index = -1;  // into records
  double pos_tol = 1e-3;
  bool perpendicular_only = false;
  double til_at_base = 0.0;
  double region_radius = 0.0;
  std::uint64_t seed = 0;
  std::vector<MtwProbeRecord> records;
};

inline constexpr double kMtwPosTol = 1e-3;

struct MtwScanOptions {
  int trials = 100;
  double region_radius = 0.4;
  bool perpendicular_only = true;
  std::uint64_t seed = 0;
  int workers = 0;
};

// Samples probes (p in the region ball, W uniform in the guarded ball, X and
// Y random unit vectors, Y orthogonalized against X in perpendicular mode)
// and aggregates deterministically by probe index.
MtwScanReport mtw_scan(const ManifoldSpec& m, const ChartPoint& base,
                       const MtwScanOptions& opts);

}  // namespace bipolar

#endif  // BIPOLAR_MTW_HPP_
