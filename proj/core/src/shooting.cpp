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

#include "shooting.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "revolution_ode.hpp"

namespace bipolar {
namespace internal {

namespace {

constexpr int kGridStarts = 32;
constexpr int kMaxBasins = 6;
constexpr double kTwoPi = 2.0 * M_PI;

struct Target {
  double t = 0.0;
  double th = 0.0;
  double weight = 1.0;  // f(t_q): converts angular mismatch to length units
};

double mismatch2(const SurfState& y, const Target& q) {
  const double dt = y.t - q.t;
  const double dth = std::remainder(y.th - q.th, kTwoPi);
  return dt * dt + q.weight * q.weight * dth * dth;
}

double mismatch_slope(const SurfState& y, const Target& q) {
  const double dt = y.t - q.t;
  const double dth = std::remainder(y.th - q.th, kTwoPi);
  return 2.0 * (dt * y.vt + q.weight * q.weight * dth * y.vth);
}

struct Approach {
  double s = 0.0;
  double miss2 = std::numeric_limits<double>::infinity();
};

// Parabolic vertex through three (s, g) pairs; falls back to the middle one.
Approach parabolic_vertex(double s0, double g0, double s1, double g1,
                          double s2, double g2) {
  Approach out{s1, g1};
  const double d01 = (g0 - g1) / (s0 - s1);
  const double d12 = (g1 - g2) / (s1 - s2);
  const double curv = 2.0 * (d01 - d12) / (s0 - s2);
  if (!(curv > 0.0) || !std::isfinite(curv)) return out;
  const double sv = 0.5 * (s0 + s1) - d01 / curv;
  if (sv <= std::min(s0, s2) || sv >= std::max(s0, s2)) return out;
  // Evaluate the parabola at its vertex (Newton form).
  const double gv =
      g0 + d01 * (sv - s0) + 0.5 * curv * (sv - s0) * (sv - s1);
  if (std::isfinite(gv) && gv < out.miss2) out = {sv, std::max(gv, 0.0)};
  return out;
}

// One shot: integrate to len_max and return the best closest approach over
// the sampled path (all interior local minima, parabolic-refined).
Approach shoot(const SurfaceOde& ode, const SurfState& y0, double len_max,
               double max_step, const Target& q,
               std::vector<PathPoint>& path) {
  path.clear();
  try {
    ode.integrate(y0, len_max, &path, max_step);
  } catch (const GeodesicDomainExit&) {
    // Partial path up to the exit is still usable.
  } catch (const Error&) {
    return {};
  }
  Approach best;
  if (path.size() < 2) return best;
  double prev = mismatch2(path[0].y, q);
  double cur = mismatch2(path[1].y, q);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double next = mismatch2(path[i + 1].y, q);
    if (cur <= prev && cur <= next) {
      const Approach a =
          parabolic_vertex(path[i - 1].s, prev, path[i].s, cur,
                           path[i + 1].s, next);
      if (a.miss2 < best.miss2) best = a;
    }
    prev = cur;
    cur = next;
  }
  // A closest approach may sit between the last two samples when the upper
  // bound is nearly tight; seed it from the trailing sample and let the exact
  // polish slide inward.
  if (cur <= prev && cur < best.miss2) best = {path.back().s, cur};
  return best;
}

SurfState state_at(const SurfaceOde& ode, const std::vector<PathPoint>& path,
                   double s) {
  std::size_t lo = 0, hi = path.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (path[mid].s <= s) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return ode.integrate(path[lo].y, s - path[lo].s, nullptr);
}

// Exact closest approach along the path near s_init: safeguarded Newton on
// the slope of the squared mismatch; also reports the state there.
Approach polish_approach(const SurfaceOde& ode,
                         const std::vector<PathPoint>& path, double s_init,
                         double len_max, const Target& q, SurfState* state) {
  double s = std::clamp(s_init, 0.0, len_max);
  double lo = std::max(0.0, s - 0.25);
  double hi = std::min(len_max, s + 0.25);
  Approach out;
  for (int it = 0; it < 24; ++it) {
    SurfState y;
    try {
      y = state_at(ode, path, s);
    } catch (const Error&) {
      break;
    }
    const double g = mismatch2(y, q);
    if (g < out.miss2) {
      out = {s, g};
      if (state) *state = y;
    }
    const double slope = mismatch_slope(y, q);
    const double curv = 2.0 * (y.vt * y.vt +
                               q.weight * q.weight * y.vth * y.vth);
    if (slope > 0.0) {
      hi = std::min(hi, s);
    } else if (slope < 0.0) {
      lo = std::max(lo, s);
    }
    double step = curv > 0.0 ? -slope / curv : 0.0;
    double snew = s + step;
    if (!(snew > lo && snew < hi)) snew = 0.5 * (lo + hi);
    if (std::abs(snew - s) < 1e-13 * (1.0 + len_max)) {
      s = snew;
      try {
        const SurfState yf = state_at(ode, path, s);
        const double gf = mismatch2(yf, q);
        if (gf < out.miss2) {
          out = {s, gf};
          if (state) *state = yf;
        }
      } catch (const Error&) {
      }
      break;
    }
    s = snew;
  }
  return out;
}

struct Candidate {
  double angle = 0.0;
  double length = 0.0;
  double miss = 0.0;
};

// Exact shot evaluation: the signed transversal offset of q from the geodesic
// at the closest approach. It crosses zero transversally at a hit angle and
// its magnitude equals the miss distance, which makes it a clean root-finding
// objective with no interpolation floor.
struct ExactShot {
  bool ok = false;
  double rho = 0.0;   // signed transversal miss
  double miss = 0.0;  // |rho|
  double s = 0.0;     // arclength of the closest approach
};

ExactShot exact_shot(const SurfaceOde& polish, const Profile& prof, double pt,
                     double pth, double angle, double len_max,
                     double scan_step, const Target& q,
                     std::vector<PathPoint>& path) {
  const SurfState y0 = initial_state(prof, pt, pth, angle);
  const Approach rough = shoot(polish, y0, len_max, scan_step, q, path);
  if (!std::isfinite(rough.miss2)) return {};
  SurfState ystar = y0;
  const Approach exact =
      polish_approach(polish, path, rough.s, len_max, q, &ystar);
  if (!std::isfinite(exact.miss2)) return {};
  const double dt = ystar.t - q.t;
  const double dth = std::remainder(ystar.th - q.th, kTwoPi);
  const double w = q.weight;
  ExactShot out;
  out.ok = true;
  out.rho = ystar.vt * (w * dth) - (w * ystar.vth) * dt;
  out.miss = std::sqrt(std::max(exact.miss2, 0.0));
  out.s = exact.s;
  return out;
}

}  // namespace

DistanceResult revolution_distance(const ManifoldSpec& m, const ChartPoint& p,
                                   const ChartPoint& q) {
  const Profile& prof = m.profile();
  const double pt = p.x[0], pth = p.x[1];
  const double qt = q.x[0], qth = q.x[1];

  Target target;
  target.t = qt;
  target.th = qth;
  target.weight = prof.f(qt);

  const double dth = std::abs(std::remainder(qth - pth, kTwoPi));
  const double upper =
      std::abs(qt - pt) + std::min(prof.f(pt), prof.f(qt)) * dth;

  // Coincident points (up to chart wrap).
  if (upper <= 1e-13) {
    DistanceResult out;
    out.value = 0.0;
    out.geodesic.start = p;
    out.geodesic.initial_velocity.base = p;
    out.geodesic.initial_velocity.v = Eigen::Vector2d(1.0, 0.0);
    out.geodesic.length = 0.0;
    out.geodesic.minimizing = true;
    GeodesicSample s0;
    s0.s = 0.0;
    s0.point = p;
    s0.velocity = Eigen::Vector2d(1.0, 0.0);
    out.geodesic.samples = {s0, s0};
    return out;
  }

  const double len_max = upper * 1.005 + 1e-9;
  const double scan_step = std::min(0.35, upper / 24.0);
  const double miss_tol = 3e-9 * (1.0 + upper);

  const SurfaceOde coarse(prof, kCoarseAtol, kCoarseRtol);
  const SurfaceOde polish(prof, kPolishAtol, kPolishRtol);

  std::vector<PathPoint> path;
  path.reserve(256);

  auto coarse_miss = [&](double angle) {
    const SurfState y0 = initial_state(prof, pt, pth, angle);
    return shoot(coarse, y0, len_max, scan_step, target, path).miss2;
  };
  auto exact_eval = [&](double angle) {
    return exact_shot(polish, prof, pt, pth, angle, len_max, scan_step,
                      target, path);
  };

  // Grid over the initial angle.
  double grid_miss[kGridStarts];
  double grid_angle[kGridStarts];
  for (int i = 0; i < kGridStarts; ++i) {
    grid_angle[i] = kTwoPi * (i + 0.5) / kGridStarts;
    grid_miss[i] = coarse_miss(grid_angle[i]);
  }

  // Cyclic local minima form the refinement basins.
  struct Basin {
    double lo, hi, miss;
  };
  std::vector<Basin> basins;
  for (int i = 0; i < kGridStarts; ++i) {
    const int prev = (i + kGridStarts - 1) % kGridStarts;
    const int next = (i + 1) % kGridStarts;
    if (grid_miss[i] <= grid_miss[prev] && grid_miss[i] <= grid_miss[next] &&
        std::isfinite(grid_miss[i])) {
      basins.push_back({grid_angle[i] - kTwoPi / kGridStarts,
                        grid_angle[i] + kTwoPi / kGridStarts, grid_miss[i]});
    }
  }
  std::sort(basins.begin(), basins.end(),
            [](const Basin& a, const Basin& b) { return a.miss < b.miss; });
  if (basins.size() > kMaxBasins) basins.resize(kMaxBasins);

  const double inv_gr = 0.6180339887498949;
  // The parabolic path-minimum estimate used during the coarse golden phase
  // carries an O(step^4) interpolation floor, so the phase only has to narrow
  // the bracket to ~1e-3 before the exact signed-residual root finder takes
  // over.
  const double floor_est =
      25.0 * scan_step * scan_step * scan_step * scan_step;
  const double skip_thresh =
      std::max(4e-4 * (1.0 + upper) * (1.0 + upper), 4.0 * floor_est);

  std::vector<Candidate> candidates;
  for (const Basin& basin : basins) {
    double a = basin.lo, b = basin.hi;
    double x1 = b - inv_gr * (b - a);
    double x2 = a + inv_gr * (b - a);
    double f1 = coarse_miss(x1);
    double f2 = coarse_miss(x2);
    while (b - a > 2e-3) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_gr * (b - a);
        f1 = coarse_miss(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_gr * (b - a);
        f2 = coarse_miss(x2);
      }
    }
    // No crossing in this basin: skip before the expensive exact phase.
    if (std::min(f1, f2) > skip_thresh) continue;

    // Root-find the signed transversal miss over the angle. Expand the
    // bracket toward the basin bounds until the sign changes.
    double ra = a, rb = b;
    ExactShot sa = exact_eval(ra);
    ExactShot sb = exact_eval(rb);
    int guard = 0;
    while ((!sa.ok || !sb.ok || sa.rho * sb.rho > 0.0) && guard < 4) {
      const double mid = 0.5 * (ra + rb);
      const double half = 0.5 * (rb - ra) * 2.0;
      ra = std::max(basin.lo, mid - half);
      rb = std::min(basin.hi, mid + half);
      sa = exact_eval(ra);
      sb = exact_eval(rb);
      ++guard;
      if (ra == basin.lo && rb == basin.hi) break;
    }
    if (!sa.ok || !sb.ok) continue;
    if (sa.rho * sb.rho > 0.0) {
      // No sign change: accept only if an endpoint already hits.
      const ExactShot& best = sa.miss <= sb.miss ? sa : sb;
      if (best.miss <= miss_tol) {
        candidates.push_back({sa.miss <= sb.miss ? ra : rb, best.s, best.miss});
      }
      continue;
    }
    // Illinois-damped regula falsi on the signed miss.
    double fa = sa.rho, fb = sb.rho;
    ExactShot hit;
    double hit_angle = 0.0;
    bool have_hit = false;
    for (int it = 0; it < 60 && std::abs(rb - ra) > 1e-13; ++it) {
      double x = rb - fb * (rb - ra) / (fb - fa);
      const double lo = std::min(ra, rb), hi = std::max(ra, rb);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      const ExactShot sx = exact_eval(x);
      if (!sx.ok) break;
      if (!have_hit || sx.miss < hit.miss) {
        hit = sx;
        hit_angle = x;
        have_hit = true;
      }
      if (sx.miss <= 0.05 * miss_tol) break;
      if (sx.rho * fb < 0.0) {
        ra = rb;
        fa = fb;
        rb = x;
        fb = sx.rho;
      } else {
        rb = x;
        fb = sx.rho;
        fa *= 0.5;  // Illinois damping
      }
    }
    if (have_hit && hit.miss <= miss_tol) {
      candidates.push_back({hit_angle, hit.s, hit.miss});
    }
  }

  if (candidates.empty()) {
    throw BvpError("revolution distance: shooting did not converge (" +
                   std::to_string(basins.size()) + " basins explored)");
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.length < b.length;
            });
  // Merge solutions that are the same geodesic found twice.
  std::vector<Candidate> unique;
  for (const Candidate& c : candidates) {
    bool dup = false;
    for (const Candidate& u : unique) {
      if (std::abs(std::remainder(c.angle - u.angle, kTwoPi)) < 1e-7 &&
          std::abs(c.length - u.length) < 1e-7 * (1.0 + u.length)) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(c);
  }

  const Candidate& win = unique.front();
  bool ambiguous = false;
  for (std::size_t i = 1; i < unique.size(); ++i) {
    if (unique[i].length - win.length <= 1e-9 * (1.0 + win.length)) {
      ambiguous = true;
      break;
    }
  }

  // Final pass: rebuild the winner at polish accuracy, record the path, and
  // check the Clairaut constant as an integration-quality invariant.
  const SurfState y0 = initial_state(prof, pt, pth, win.angle);
  path.clear();
  SurfState yend;
  try {
    yend = polish.integrate(y0, win.length, &path, scan_step);
  } catch (const Error& e) {
    throw BvpError(std::string("revolution distance: final pass failed: ") +
                   e.what());
  }
  const double j0 = clairaut(prof, y0);
  const double j1 = clairaut(prof, yend);
  if (std::abs(j1 - j0) > 1e-7 * (1.0 + std::abs(j0))) {
    throw BvpError("revolution distance: Clairaut drift beyond tolerance");
  }

  DistanceResult out;
  out.value = win.length;
  out.ambiguous = ambiguous;
  out.geodesic.start = p;
  out.geodesic.initial_velocity.base = p;
  out.geodesic.initial_velocity.v = Eigen::Vector2d(y0.vt, y0.vth);
  out.geodesic.length = win.length;
  out.geodesic.minimizing = true;
  out.geodesic.samples.reserve(path.size());
  for (const auto& pp : path) {
    GeodesicSample sample;
    sample.s = pp.s;
    sample.point = ChartPoint::of(pp.y.t, pp.y.th);
    sample.velocity = Eigen::Vector2d(pp.y.vt, pp.y.vth);
    out.geodesic.samples.push_back(std::move(sample));
  }
  return out;
}

}  // namespace internal
}  // namespace bipolar
