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

#ifndef BIPOLAR_SRC_REVOLUTION_ODE_HPP_
#define BIPOLAR_SRC_REVOLUTION_ODE_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "bipolar/manifold.hpp"
#include "bipolar/profile.hpp"

namespace bipolar {
namespace internal {

// Unit-speed geodesic state on a surface of revolution, chart (t, theta).
struct SurfState {
  double t = 0.0;
  double th = 0.0;
  double vt = 0.0;
  double vth = 0.0;
};

struct PathPoint {
  double s = 0.0;
  SurfState y;
};

// Initial state at (t, theta) with direction `angle` measured from the
// +t meridian direction toward +theta.
inline SurfState initial_state(const Profile& prof, double t, double th,
                               double angle) {
  SurfState y;
  y.t = t;
  y.th = th;
  y.vt = std::cos(angle);
  y.vth = std::sin(angle) / prof.f(t);
  return y;
}

// Clairaut constant f(t)^2 * vth, conserved along geodesics; monitored as an
// integration-quality invariant.
inline double clairaut(const Profile& prof, const SurfState& y) {
  const double f = prof.f(y.t);
  return f * f * y.vth;
}

// Adaptive Dormand-Prince 5(4) integrator for the geodesic equations
//   t'  = vt,      vt'  =  f f' vth^2,
//   th' = vth,     vth' = -2 (f'/f) vt vth.
// Throws GeodesicDomainExit when t leaves the profile domain and OdeError-like
// BvpError on step-size underflow.
class SurfaceOde {
 public:
  SurfaceOde(const Profile& prof, double atol, double rtol)
      : prof_(&prof), atol_(atol), rtol_(rtol) {}

  // Integrates from y0 over arclength `len` (>= 0). If `path` is non-null,
  // (0, y0) and every accepted step are appended. `max_step` additionally
  // caps the step size (path density control for the shooting scans).
  SurfState integrate(const SurfState& y0, double len,
                      std::vector<PathPoint>* path,
                      double max_step =
                          std::numeric_limits<double>::infinity()) const;

  const Profile& profile() const { return *prof_; }

 private:
  void rhs(const SurfState& y, double* d) const;

  const Profile* prof_;
  double atol_;
  double rtol_;
};

}  // namespace internal
}  // namespace bipolar

#endif  // BIPOLAR_SRC_REVOLUTION_ODE_HPP_
