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

#include "bipolar/manifold.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "shooting.hpp"
#include "revolution_ode.hpp"

namespace bipolar {

namespace internal {

namespace {

constexpr int kMaxSteps = 500000;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void SurfaceOde::rhs(const SurfState& y, double* d) const {
  const double f = prof_->f(y.t);
  const double df = prof_->df(y.t);
  d[0] = y.vt;
  d[1] = y.vth;
  d[2] = f * df * y.vth * y.vth;
  d[3] = -2.0 * (df / f) * y.vt * y.vth;
}

SurfState SurfaceOde::integrate(const SurfState& y0, double len,
                                std::vector<PathPoint>* path,
                                double max_step) const {
  SurfState y = y0;
  double s = 0.0;
  if (path) path->push_back({0.0, y});
  if (len <= 0.0) return y;

  const double span = prof_->t_max - prof_->t_min;
  const double h_max = std::min({len, 0.25 * span, max_step});
  double h = std::min(h_max, 1e-2);

  double k1[4], k2[4], k3[4], k4[4], k5[4], k6[4], k7[4];
  auto eval = [&](const SurfState& base, double hh, const double* c1,
                  const double* c2, const double* c3, const double* c4,
                  const double* c5, double w1, double w2, double w3, double w4,
                  double w5, double* out) {
    SurfState z = base;
    double* zp = &z.t;
    const double* bp = &base.t;
    for (int i = 0; i < 4; ++i) {
      double acc = w1 * c1[i];
      if (c2) acc += w2 * c2[i];
      if (c3) acc += w3 * c3[i];
      if (c4) acc += w4 * c4[i];
      if (c5) acc += w5 * c5[i];
      zp[i] = bp[i] + hh * acc;
    }
    rhs(z, out);
  };

  rhs(y, k1);
  int steps = 0;
  while (s < len) {
    if (++steps > kMaxSteps) {
      throw BvpError("geodesic integration exceeded step budget");
    }
    if (h > len - s) h = len - s;
    if (h < 1e-14 * std::max(1.0, len)) {
      throw BvpError("geodesic integration step-size underflow");
    }

    eval(y, h, k1, nullptr, nullptr, nullptr, nullptr, a21, 0, 0, 0, 0, k2);
    eval(y, h, k1, k2, nullptr, nullptr, nullptr, a31, a32, 0, 0, 0, k3);
    eval(y, h, k1, k2, k3, nullptr, nullptr, a41, a42, a43, 0, 0, k4);
    eval(y, h, k1, k2, k3, k4, nullptr, a51, a52, a53, a54, 0, k5);
    eval(y, h, k1, k2, k3, k4, k5, a61, a62, a63, a64, a65, k6);

    SurfState ynew = y;
    double* np = &ynew.t;
    const double* yp = &y.t;
    for (int i = 0; i < 4; ++i) {
      np[i] = yp[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
    }
    rhs(ynew, k7);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          atol_ + rtol_ * std::max(std::abs(yp[i]), std::abs(np[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / 4.0);

    if (!std::isfinite(err)) {
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      // Accepted. Domain exit is resolved to the crossing arclength.
      if (!prof_->in_domain(ynew.t)) {
        const double bound = ynew.t > prof_->t_max ? prof_->t_max : prof_->t_min;
        const double denom = ynew.t - y.t;
        const double lam =
            denom == 0.0 ? 0.0 : std::clamp((bound - y.t) / denom, 0.0, 1.0);
        throw GeodesicDomainExit("geodesic left the profile domain",
                                 s + lam * h);
      }
      s += h;
      y = ynew;
      for (int i = 0; i < 4; ++i) k1[i] = k7[i];  // FSAL
      if (path) path->push_back({s, y});
    }
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * factor, h_max);
  }
  return y;
}

}  // namespace internal

// ---------------------------------------------------------------------------
// ManifoldSpec
// ---------------------------------------------------------------------------

ManifoldSpec ManifoldSpec::euclidean(int dim) {
  if (dim < 2) throw ValidationError("euclidean: dim must be >= 2");
  return ManifoldSpec(Variant{EuclideanSpec{dim}});
}

ManifoldSpec ManifoldSpec::sphere(double radius) {
  if (!(radius > 0.0)) throw ValidationError("sphere: radius must be > 0");
  return ManifoldSpec(Variant{SphereSpec{radius}});
}

ManifoldSpec ManifoldSpec::revolution(Profile profile) {
  validate_profile(profile);
  RevolutionSpec spec;
  spec.profile = std::make_shared<const Profile>(std::move(profile));
  return ManifoldSpec(Variant{std::move(spec)});
}

int ManifoldSpec::dim() const {
  if (is_euclidean()) return as_euclidean().dim;
  return 2;
}

std::string ManifoldSpec::describe() const {
  std::ostringstream out;
  if (is_euclidean()) {
    out << "euclidean:dim=" << as_euclidean().dim;
  } else if (is_sphere()) {
    out << "sphere:r=" << as_sphere().radius;
  } else {
    out << "revolution:profile=" << profile().name;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Chart utilities
// ---------------------------------------------------------------------------

namespace {

using Eigen::Vector3d;

Vector3d sphere_embed(const SphereSpec& s, const ChartPoint& p) {
  const double phi = p.x[0], th = p.x[1];
  const double cs = p.chart == 0 ? 1.0 : -1.0;
  return s.radius * Vector3d(std::sin(phi) * std::cos(th),
                             std::sin(phi) * std::sin(th), cs * std::cos(phi));
}

ChartPoint sphere_from_embed(const SphereSpec&, const Vector3d& pos) {
  Vector3d u = pos;
  u.normalize();
  const int chart = u.z() >= 0.0 ? 0 : 1;
  const double cz = chart == 0 ? u.z() : -u.z();
  const double phi = std::acos(std::clamp(cz, -1.0, 1.0));
  double th = std::atan2(u.y(), u.x());
  if (!std::isfinite(th)) th = 0.0;
  return ChartPoint::of(phi, th, chart);
}

void sphere_basis(const SphereSpec& s, const ChartPoint& p, Vector3d* dphi,
                  Vector3d* dth) {
  const double phi = p.x[0], th = p.x[1];
  const double cs = p.chart == 0 ? 1.0 : -1.0;
  *dphi = s.radius * Vector3d(std::cos(phi) * std::cos(th),
                              std::cos(phi) * std::sin(th),
                              -cs * std::sin(phi));
  *dth = s.radius *
         Vector3d(-std::sin(phi) * std::sin(th), std::sin(phi) * std::cos(th),
                  0.0);
}

Vector3d sphere_tangent_embed(const SphereSpec& s, const TangentVec& v) {
  Vector3d dphi, dth;
  sphere_basis(s, v.base, &dphi, &dth);
  return v.v[0] * dphi + v.v[1] * dth;
}

Eigen::Vector2d sphere_tangent_components(const SphereSpec& s,
                                          const ChartPoint& p,
                                          const Vector3d& ambient) {
  Vector3d dphi, dth;
  sphere_basis(s, p, &dphi, &dth);
  const double n_phi = dphi.squaredNorm();
  const double n_th = dth.squaredNorm();
  Eigen::Vector2d out;
  out[0] = n_phi > 1e-30 ? ambient.dot(dphi) / n_phi : 0.0;
  out[1] = n_th > 1e-30 ? ambient.dot(dth) / n_th : 0.0;
  return out;
}

// Unit vector orthogonal to u, chosen deterministically.
Vector3d any_orthonormal(const Vector3d& u) {
  Vector3d e = std::abs(u.x()) <= std::abs(u.y())
                   ? (std::abs(u.x()) <= std::abs(u.z()) ? Vector3d::UnitX()
                                                         : Vector3d::UnitZ())
                   : (std::abs(u.y()) <= std::abs(u.z()) ? Vector3d::UnitY()
                                                         : Vector3d::UnitZ());
  return (e - e.dot(u) * u).normalized();
}

Geodesic sphere_arc(const SphereSpec& sp, const ChartPoint& p,
                    const Vector3d& unit_dir_ambient, double length,
                    bool minimizing, int n_samples = 33) {
  const double r = sp.radius;
  const Vector3d pos = sphere_embed(sp, p);
  const Vector3d u = pos / r;
  const Vector3d t = unit_dir_ambient;

  Geodesic g;
  g.start = p;
  g.initial_velocity.base = p;
  g.initial_velocity.v = sphere_tangent_components(sp, p, t);
  g.length = length;
  g.minimizing = minimizing;
  g.samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double s = length * i / (n_samples - 1);
    const Vector3d x = r * (std::cos(s / r) * u + std::sin(s / r) * t);
    const Vector3d vel = -std::sin(s / r) * u + std::cos(s / r) * t;
    GeodesicSample sample;
    sample.s = s;
    sample.point = sphere_from_embed(sp, x);
    sample.velocity = sphere_tangent_components(sp, sample.point, vel);
    g.samples.push_back(std::move(sample));
  }
  return g;
}

Geodesic euclidean_segment(const ChartPoint& p, const Eigen::VectorXd& dir,
                           double length) {
  Geodesic g;
  g.start = p;
  g.initial_velocity.base = p;
  g.initial_velocity.v = dir;
  g.length = length;
  g.minimizing = true;
  GeodesicSample a;
  a.s = 0.0;
  a.point = p;
  a.velocity = dir;
  GeodesicSample b;
  b.s = length;
  b.point = ChartPoint::of(Eigen::VectorXd(p.x + length * dir), p.chart);
  b.velocity = dir;
  g.samples = {std::move(a), std::move(b)};
  return g;
}

}  // namespace

void require_in_domain(const ManifoldSpec& m, const ChartPoint& p) {
  if (p.x.size() != m.dim()) {
    throw DomainError("chart point has wrong dimension");
  }
  if (m.is_euclidean()) return;
  if (m.is_sphere()) {
    if (p.chart != 0 && p.chart != 1) {
      throw DomainError("sphere: chart id must be 0 or 1");
    }
    const double phi = p.x[0];
    if (!(phi > 0.0 && phi <= 0.5 * M_PI + kSphereChartOverlap)) {
      throw DomainError("sphere: colatitude outside polar chart domain");
    }
    return;
  }
  const Profile& prof = m.profile();
  if (p.chart != 0) throw DomainError("revolution: chart id must be 0");
  if (!prof.in_domain(p.x[0])) {
    throw DomainError("revolution: t outside profile domain");
  }
}

// ---------------------------------------------------------------------------
// Metric and curvature
// ---------------------------------------------------------------------------

Eigen::MatrixXd metric_tensor(const ManifoldSpec& m, const ChartPoint& p) {
  require_in_domain(m, p);
  if (m.is_euclidean()) {
    return Eigen::MatrixXd::Identity(m.dim(), m.dim());
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
  if (m.is_sphere()) {
    const double r = m.as_sphere().radius;
    const double sp = std::sin(p.x[0]);
    g(0, 0) = r * r;
    g(1, 1) = r * r * sp * sp;
    return g;
  }
  const double f = m.profile().f(p.x[0]);
  g(0, 0) = 1.0;
  g(1, 1) = f * f;
  return g;
}

double gauss_curvature(const ManifoldSpec& m, const ChartPoint& p) {
  require_in_domain(m, p);
  if (m.is_euclidean()) return 0.0;
  if (m.is_sphere()) {
    const double r = m.as_sphere().radius;
    return 1.0 / (r * r);
  }
  const Profile& prof = m.profile();
  return -prof.ddf(p.x[0]) / prof.f(p.x[0]);
}

// ---------------------------------------------------------------------------
// Exponential map
// ---------------------------------------------------------------------------

Geodesic exp_geodesic(const ManifoldSpec& m, const TangentVec& v) {
  require_in_domain(m, v.base);
  const double len = tangent_norm(m, v);

  if (m.is_euclidean()) {
    Eigen::VectorXd dir = len > 0.0
                              ? Eigen::VectorXd(v.v / len)
                              : Eigen::VectorXd(Eigen::VectorXd::Unit(m.dim(), 0));
    return euclidean_segment(v.base, dir, len);
  }

  if (m.is_sphere()) {
    const SphereSpec& sp = m.as_sphere();
    Vector3d dir;
    if (len > 0.0) {
      dir = sphere_tangent_embed(sp, v) / len;
    } else {
      dir = any_orthonormal(sphere_embed(sp, v.base).normalized());
    }
    return sphere_arc(sp, v.base, dir, len, /*minimizing=*/false);
  }

  const Profile& prof = m.profile();
  internal::SurfaceOde ode(prof, internal::kFineAtol, internal::kFineRtol);
  internal::SurfState y0;
  y0.t = v.base.x[0];
  y0.th = v.base.x[1];
  if (len > 0.0) {
    y0.vt = v.v[0] / len;
    y0.vth = v.v[1] / len;
  } else {
    y0.vt = 1.0;
    y0.vth = 0.0;
  }
  std::vector<internal::PathPoint> path;
  ode.integrate(y0, len, &path);

  Geodesic g;
  g.start = v.base;
  g.initial_velocity.base = v.base;
  g.initial_velocity.v = Eigen::Vector2d(y0.vt, y0.vth);
  g.length = len;
  g.minimizing = false;
  g.samples.reserve(path.size());
  for (const auto& pp : path) {
    GeodesicSample sample;
    sample.s = pp.s;
    sample.point = ChartPoint::of(pp.y.t, pp.y.th);
    sample.velocity = Eigen::Vector2d(pp.y.vt, pp.y.vth);
    g.samples.push_back(std::move(sample));
  }
  return g;
}

ChartPoint exp_map(const ManifoldSpec& m, const TangentVec& v) {
  require_in_domain(m, v.base);
  const double len = tangent_norm(m, v);

  if (m.is_euclidean()) {
    return ChartPoint::of(Eigen::VectorXd(v.base.x + v.v), v.base.chart);
  }
  if (m.is_sphere()) {
    const SphereSpec& sp = m.as_sphere();
    if (len == 0.0) return v.base;
    const Vector3d pos = sphere_embed(sp, v.base);
    const Vector3d u = pos / sp.radius;
    const Vector3d dir = sphere_tangent_embed(sp, v) / len;
    const double ang = len / sp.radius;
    const Vector3d x =
        sp.radius * (std::cos(ang) * u + std::sin(ang) * dir);
    return sphere_from_embed(sp, x);
  }
  const Profile& prof = m.profile();
  internal::SurfaceOde ode(prof, internal::kFineAtol, internal::kFineRtol);
  internal::SurfState y0;
  y0.t = v.base.x[0];
  y0.th = v.base.x[1];
  if (len > 0.0) {
    y0.vt = v.v[0] / len;
    y0.vth = v.v[1] / len;
  } else {
    return v.base;
  }
  const internal::SurfState yf = ode.integrate(y0, len, nullptr);
  return ChartPoint::of(yf.t, yf.th);
}

// ---------------------------------------------------------------------------
// Distance and log map
// ---------------------------------------------------------------------------

DistanceResult distance(const ManifoldSpec& m, const ChartPoint& p,
                        const ChartPoint& q) {
  require_in_domain(m, p);
  require_in_domain(m, q);

  if (m.is_euclidean()) {
    Eigen::VectorXd delta = q.x - p.x;
    const double d = delta.norm();
    Eigen::VectorXd dir =
        d > 0.0 ? Eigen::VectorXd(delta / d)
                : Eigen::VectorXd(Eigen::VectorXd::Unit(m.dim(), 0));
    DistanceResult out;
    out.value = d;
    out.geodesic = euclidean_segment(p, dir, d);
    out.ambiguous = false;
    return out;
  }

  if (m.is_sphere()) {
    const SphereSpec& sp = m.as_sphere();
    const double r = sp.radius;
    const Vector3d u = sphere_embed(sp, p) / r;
    const Vector3d w = sphere_embed(sp, q) / r;
    const double ang = std::atan2(u.cross(w).norm(), u.dot(w));
    const double d = r * ang;
    Vector3d t = w - u.dot(w) * u;
    const double tn = t.norm();
    if (tn > 1e-14) {
      t /= tn;
    } else {
      t = any_orthonormal(u);
    }
    DistanceResult out;
    out.value = d;
    out.geodesic = sphere_arc(sp, p, t, d, /*minimizing=*/true);
    out.ambiguous = (M_PI - ang) * r <= 1e-9 * (1.0 + d);
    return out;
  }

  return internal::revolution_distance(m, p, q);
}

LogResult log_map(const ManifoldSpec& m, const ChartPoint& p,
                  const ChartPoint& q) {
  DistanceResult dr = distance(m, p, q);
  LogResult out;
  out.v.base = p;
  out.v.v = dr.value * dr.geodesic.initial_velocity.v;
  out.ambiguous = dr.ambiguous;
  return out;
}

// ---------------------------------------------------------------------------
// Tangent injectivity radius
// ---------------------------------------------------------------------------

namespace {

// Largest radius along one direction at which the exponential point is
// verified minimizing by a distance check within 1e-7.
double verified_radius_along(const ManifoldSpec& m, const ChartPoint& p,
                             const TangentVec& unit_dir, double cap) {
  double rho = cap;
  for (int step = 0; step < 48 && rho > 1e-3 * cap; ++step) {
    try {
      TangentVec v = unit_dir;
      v.v *= rho;
      const ChartPoint x = exp_map(m, v);
      const DistanceResult dr = distance(m, p, x);
      if (!dr.ambiguous && std::abs(dr.value - rho) <= 1e-7 * (1.0 + rho)) {
        return rho;
      }
    } catch (const Error&) {
      // Unverifiable at this radius; shrink and retry.
    }
    rho *= 0.8;
  }
  return 0.0;
}

}  // namespace

double til_inner_radius(const ManifoldSpec& m, const ChartPoint& p) {
  require_in_domain(m, p);
  if (m.is_euclidean()) return kTilUnbounded;

  const int n_dirs = 64;
  const auto frame = orthonormal_frame(m, p);

  if (m.is_sphere()) {
    const double r = m.as_sphere().radius;
    const double cap = 0.95 * M_PI * r;
    const double probe = 0.96 * M_PI * r;
    double computed = probe;
    for (int j = 0; j < n_dirs; ++j) {
      const double a = 2.0 * M_PI * j / n_dirs;
      TangentVec u;
      u.base = p;
      u.v = std::cos(a) * frame[0] + std::sin(a) * frame[1];
      computed = std::min(computed, verified_radius_along(m, p, u, probe));
      if (computed < cap) break;
    }
    return std::min(computed, cap);
  }

  const Profile& prof = m.profile();
  const double global_cap = prof.t_max - prof.t_min;
  internal::SurfaceOde coarse(prof, internal::kCoarseAtol,
                              internal::kCoarseRtol);
  double best = kTilUnbounded;
  for (int j = 0; j < n_dirs; ++j) {
    const double a = 2.0 * M_PI * j / n_dirs;
    TangentVec u;
    u.base = p;
    u.v = std::cos(a) * frame[0] + std::sin(a) * frame[1];

    double cap = global_cap;
    internal::SurfState y0;
    y0.t = p.x[0];
    y0.th = p.x[1];
    y0.vt = u.v[0];
    y0.vth = u.v[1];
    try {
      coarse.integrate(y0, global_cap, nullptr);
    } catch (const GeodesicDomainExit& exit) {
      cap = 0.98 * exit.exit_arclength();
    } catch (const Error&) {
      cap = 0.0;
    }
    const double rho = cap > 0.0 ? verified_radius_along(m, p, u, cap) : 0.0;
    best = std::min(best, rho);
    if (best == 0.0) return 0.0;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Geodesic interpolation
// ---------------------------------------------------------------------------

ChartPoint geodesic_point_at(const ManifoldSpec& m, const Geodesic& g,
                             double s) {
  s = std::clamp(s, 0.0, g.length);
  if (m.is_euclidean()) {
    return ChartPoint::of(Eigen::VectorXd(g.start.x + s * g.initial_velocity.v),
                          g.start.chart);
  }
  if (m.is_sphere()) {
    const SphereSpec& sp = m.as_sphere();
    const double r = sp.radius;
    const Vector3d pos = sphere_embed(sp, g.start);
    const Vector3d u = pos / r;
    Vector3d dir = sphere_tangent_embed(sp, g.initial_velocity);
    const double dn = dir.norm();
    if (dn < 1e-14) return g.start;
    dir /= dn;
    const Vector3d x = r * (std::cos(s / r) * u + std::sin(s / r) * dir);
    return sphere_from_embed(sp, x);
  }
  // Surface of revolution: restart the integration from the nearest recorded
  // sample at or before s.
  if (g.samples.empty()) throw Error("geodesic has no samples");
  std::size_t lo = 0, hi = g.samples.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (g.samples[mid].s <= s) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const GeodesicSample& base = g.samples[lo];
  internal::SurfState y0;
  y0.t = base.point.x[0];
  y0.th = base.point.x[1];
  y0.vt = base.velocity[0];
  y0.vth = base.velocity[1];
  internal::SurfaceOde ode(m.profile(), internal::kFineAtol,
                           internal::kFineRtol);
  const internal::SurfState yf = ode.integrate(y0, s - base.s, nullptr);
  return ChartPoint::of(yf.t, yf.th);
}

// ---------------------------------------------------------------------------
// Tangent-space helpers
// ---------------------------------------------------------------------------

double metric_inner(const ManifoldSpec& m, const ChartPoint& p,
                    const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
  if (m.is_euclidean()) return u.dot(w);
  const Eigen::MatrixXd g = metric_tensor(m, p);
  return u.dot(g * w);
}

double tangent_norm(const ManifoldSpec& m, const TangentVec& v) {
  return std::sqrt(std::max(0.0, metric_inner(m, v.base, v.v, v.v)));
}

std::vector<Eigen::VectorXd> orthonormal_frame(const ManifoldSpec& m,
                                               const ChartPoint& p) {
  std::vector<Eigen::VectorXd> frame;
  if (m.is_euclidean()) {
    for (int i = 0; i < m.dim(); ++i) {
      frame.push_back(Eigen::VectorXd::Unit(m.dim(), i));
    }
    return frame;
  }
  // Both curved charts carry diagonal metrics.
  const Eigen::MatrixXd g = metric_tensor(m, p);
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
    e[i] = 1.0 / std::sqrt(g(i, i));
    frame.push_back(std::move(e));
  }
  return frame;
}

TangentVec random_unit_tangent(const ManifoldSpec& m, const ChartPoint& p,
                               Rng& rng) {
  const auto frame = orthonormal_frame(m, p);
  TangentVec v;
  v.base = p;
  if (frame.size() == 2) {
    const double a = rng.uniform(0.0, 2.0 * M_PI);
    v.v = std::cos(a) * frame[0] + std::sin(a) * frame[1];
    return v;
  }
  Eigen::VectorXd coeff(frame.size());
  double norm2 = 0.0;
  do {
    for (int i = 0; i < coeff.size(); ++i) coeff[i] = rng.normal();
    norm2 = coeff.squaredNorm();
  } while (norm2 < 1e-12);
  coeff /= std::sqrt(norm2);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.dim());
  for (std::size_t i = 0; i < frame.size(); ++i) out += coeff[i] * frame[i];
  v.v = std::move(out);
  return v;
}

ChartPoint sample_in_ball(const ManifoldSpec& m, const ChartPoint& p,
                          double radius, Rng& rng) {
  const int dim = m.dim();
  const double rho = radius * std::pow(rng.uniform(), 1.0 / dim);
  TangentVec v = random_unit_tangent(m, p, rng);
  v.v *= rho;
  return exp_map(m, v);
}

}  // namespace bipolar
