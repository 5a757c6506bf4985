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

#ifndef BIPOLAR_MANIFOLD_HPP_
#define BIPOLAR_MANIFOLD_HPP_

#include <Eigen/Core>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bipolar/errors.hpp"
#include "bipolar/profile.hpp"
#include "bipolar/rng.hpp"

namespace bipolar {

// ---------------------------------------------------------------------------
// Model manifolds
// ---------------------------------------------------------------------------

struct EuclideanSpec {
  int dim = 2;
};

struct SphereSpec {
  double radius = 1.0;
};

struct RevolutionSpec {
  // Shared so copies of a ManifoldSpec stay cheap; the profile is immutable.
  std::shared_ptr<const Profile> profile;
};

// Colatitude half-width of each polar chart on the sphere: charts cover
// [0, pi/2 + kSphereChartOverlap) from their pole and hand off at the equator.
inline constexpr double kSphereChartOverlap = 0.5;

class ManifoldSpec {
 public:
  using Variant = std::variant<EuclideanSpec, SphereSpec, RevolutionSpec>;

  ManifoldSpec() : v_(EuclideanSpec{2}) {}

  static ManifoldSpec euclidean(int dim);
  static ManifoldSpec sphere(double radius);
  static ManifoldSpec revolution(Profile profile);

  const Variant& variant() const { return v_; }
  bool is_euclidean() const { return std::holds_alternative<EuclideanSpec>(v_); }
  bool is_sphere() const { return std::holds_alternative<SphereSpec>(v_); }
  bool is_revolution() const { return std::holds_alternative<RevolutionSpec>(v_); }

  const EuclideanSpec& as_euclidean() const { return std::get<EuclideanSpec>(v_); }
  const SphereSpec& as_sphere() const { return std::get<SphereSpec>(v_); }
  const RevolutionSpec& as_revolution() const { return std::get<RevolutionSpec>(v_); }
  const Profile& profile() const { return *as_revolution().profile; }

  // Chart dimension (the dimension of ChartPoint coordinates).
  int dim() const;

  // Canonical spec string in the CLI grammar.
  std::string describe() const;

 private:
  explicit ManifoldSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---------------------------------------------------------------------------
// Points, tangent vectors, geodesics
// ---------------------------------------------------------------------------

// Coordinates in one chart. Charts: Euclidean and revolution surfaces use a
// single chart (id 0); the sphere uses two polar charts (0 = north, 1 =
// south), each valid for colatitude < pi/2 + kSphereChartOverlap from its
// pole. Revolution coordinates are (t, theta).
struct ChartPoint {
  int chart = 0;
  Eigen::VectorXd x;

  static ChartPoint of(double a, double b, int chart = 0) {
    ChartPoint p;
    p.chart = chart;
    p.x = Eigen::Vector2d(a, b);
    return p;
  }
  static ChartPoint of(Eigen::VectorXd coords, int chart = 0) {
    ChartPoint p;
    p.chart = chart;
    p.x = std::move(coords);
    return p;
  }
};

// Tangent vector in the coordinate basis of base.chart.
struct TangentVec {
  ChartPoint base;
  Eigen::VectorXd v;
};

struct GeodesicSample {
  double s = 0.0;          // arclength from the start
  ChartPoint point;
  Eigen::VectorXd velocity;  // unit velocity in chart coordinates
};

// A constant-speed geodesic of a given arclength. `samples` always contains
// the endpoints; on ODE-integrated surfaces it contains every accepted step.
struct Geodesic {
  ChartPoint start;
  TangentVec initial_velocity;  // unit vector at start
  double length = 0.0;
  std::vector<GeodesicSample> samples;
  bool minimizing = false;
};

struct DistanceResult {
  double value = 0.0;
  Geodesic geodesic;
  // Two distinct shooting solutions tied within 1e-9: cut-locus suspicion.
  bool ambiguous = false;
};

struct LogResult {
  TangentVec v;
  bool ambiguous = false;
};

// Raised when a geodesic integration leaves the profile domain; carries the
// arclength at which the exit happened.
class GeodesicDomainExit : public DomainError {
 public:
  GeodesicDomainExit(const std::string& what, double exit_arclength)
      : DomainError(what), exit_arclength_(exit_arclength) {}
  double exit_arclength() const { return exit_arclength_; }

 private:
  double exit_arclength_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Metric tensor at p in chart coordinates (symmetric positive definite).
Eigen::MatrixXd metric_tensor(const ManifoldSpec& m, const ChartPoint& p);

// Gauss curvature (0 for Euclidean of any dimension, where every sectional
// curvature vanishes).
double gauss_curvature(const ManifoldSpec& m, const ChartPoint& p);

// Geodesic from v.base in direction v, of arclength |v|.
ChartPoint exp_map(const ManifoldSpec& m, const TangentVec& v);

// Same, but also returns the geodesic with its sample path.
Geodesic exp_geodesic(const ManifoldSpec& m, const TangentVec& v);

// Global geodesic distance together with one minimizing geodesic.
// Closed form on Euclidean and sphere; multistart shooting on surfaces of
// revolution. Throws BvpError when no shooting candidate converges.
DistanceResult distance(const ManifoldSpec& m, const ChartPoint& p,
                        const ChartPoint& q);

// Inverse of exp along a minimizing geodesic: |v| = d(p,q), exp_p(v) = q.
LogResult log_map(const ManifoldSpec& m, const ChartPoint& p,
                  const ChartPoint& q);

// Conservative tangent-injectivity radius at p: every sampled direction
// (>= 64) is verified minimizing up to the returned radius by a distance
// check within 1e-7. Euclidean returns +infinity; the sphere result is
// capped at 0.95*pi*r and the sampled value must reach the cap.
double til_inner_radius(const ManifoldSpec& m, const ChartPoint& p);

inline constexpr double kTilUnbounded = std::numeric_limits<double>::infinity();

// Point at arclength s along the geodesic (geodesic interpolation).
ChartPoint geodesic_point_at(const ManifoldSpec& m, const Geodesic& g, double s);

// ---------------------------------------------------------------------------
// Tangent-space helpers
// ---------------------------------------------------------------------------

double metric_inner(const ManifoldSpec& m, const ChartPoint& p,
                    const Eigen::VectorXd& u, const Eigen::VectorXd& w);
double tangent_norm(const ManifoldSpec& m, const TangentVec& v);

// g-orthonormal coordinate frame at p (our charts all carry diagonal metrics).
std::vector<Eigen::VectorXd> orthonormal_frame(const ManifoldSpec& m,
                                               const ChartPoint& p);

// Unit tangent vector with uniformly random frame coefficients.
TangentVec random_unit_tangent(const ManifoldSpec& m, const ChartPoint& p,
                               Rng& rng);

// Uniform sample in the geodesic ball of the given radius around p.
ChartPoint sample_in_ball(const ManifoldSpec& m, const ChartPoint& p,
                          double radius, Rng& rng);

// Checks that p lies in its chart's domain; throws DomainError otherwise.
void require_in_domain(const ManifoldSpec& m, const ChartPoint& p);

}  // namespace bipolar

#endif  // BIPOLAR_MANIFOLD_HPP_
