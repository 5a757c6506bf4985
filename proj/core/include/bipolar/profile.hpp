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

#ifndef BIPOLAR_PROFILE_HPP_
#define BIPOLAR_PROFILE_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bipolar {

// Profile of a surface of revolution with metric dt^2 + f(t)^2 dtheta^2.
// f must be strictly positive on [t_min, t_max]; the surface is only defined
// there and leaving the domain is an error, never an extrapolation.
struct Profile {
  std::string name;  // canonical parameter string, e.g. "cosh" or
                     // "flatband,r=1,band=1,blend=0.5"
  double t_min = 0.0;
  double t_max = 0.0;
  int smoothness_class = 4;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> ddf;

  bool in_domain(double t) const { return t >= t_min && t <= t_max; }
};

// Checks f > 0, finite curvature, and finite-difference consistency of the
// derivative rules (tolerance 1e-6 at random interior samples). Throws
// ValidationError on failure.
void validate_profile(const Profile& profile);

// f(t) = cosh(t): constant Gauss curvature -1.
Profile make_cosh_profile(double extent = 3.0);

// f(t) = r cos(t/r): an equatorial band of the round sphere of radius r,
// parametrized by meridian arclength. extent_fraction in (0,1) bounds the
// domain away from the poles.
Profile make_sphere_cap_profile(double radius, double extent_fraction = 0.9);

// C-infinity monotone step: 0 for x <= 0, 1 for x >= 1, built from the
// exp(-1/x) glue. The cumulative integral is precomputed once to quadrature
// accuracy so profile evaluation stays cheap inside ODE right-hand sides.
class SmoothStep {
 public:
  SmoothStep();

  double value(double x) const;
  double derivative(double x) const;
  // \int_0^x value(u) du, for x in [0, 1]; extends linearly past 1.
  double integral(double x) const;

 private:
  double cell_integral(double a, double b) const;

  std::vector<double> cum_;
  int cells_;
};

// Shared immutable instance (the table costs a little to build).
const SmoothStep& smooth_step();

}  // namespace bipolar

#endif  // BIPOLAR_PROFILE_HPP_
