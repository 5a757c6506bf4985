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

#include "bipolar/mtw.hpp"

#include <algorithm>
#include <cmath>

#include "bipolar/parallel.hpp"
#include "bipolar/rng.hpp"

namespace bipolar {

MtwProbe make_probe(const ManifoldSpec& m, const ChartPoint& p,
                    const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, bool perpendicular,
                    double til_guard) {
  require_in_domain(m, p);
  if (!(til_guard > 0.0)) {
    throw ValidationError("mtw probe: til_guard must be positive");
  }
  const double wn = std::sqrt(std::max(0.0, metric_inner(m, p, w, w)));
  if (!(wn < 0.9 * til_guard)) {
    throw ValidationError("mtw probe: |W| must stay below 0.9 * til_guard");
  }
  if (perpendicular) {
    const double xn = std::sqrt(std::max(0.0, metric_inner(m, p, x, x)));
    const double yn = std::sqrt(std::max(0.0, metric_inner(m, p, y, y)));
    if (std::abs(metric_inner(m, p, x, y)) > 1e-10 * xn * yn) {
      throw ValidationError("mtw probe: X and Y are not perpendicular");
    }
  }
  MtwProbe probe;
  probe.p = p;
  probe.w = w;
  probe.x = x;
  probe.y = y;
  probe.perpendicular = perpendicular;
  probe.til_guard = til_guard;
  return probe;
}

double cost_surface(const ManifoldSpec& m, const MtwProbe& probe, double s,
                    double t) {
  const double xn =
      std::sqrt(std::max(0.0, metric_inner(m, probe.p, probe.x, probe.x)));
  if (std::abs(s) * xn > 0.95 * probe.til_guard) {
    throw DomainError("cost_surface: s X leaves the guarded ball");
  }
  const Eigen::VectorXd wty = probe.w + t * probe.y;
  const double wtyn = std::sqrt(std::max(0.0, metric_inner(m, probe.p, wty, wty)));
  if (wtyn > 0.95 * probe.til_guard) {
    throw DomainError("cost_surface: W + t Y leaves the guarded ball");
  }
  TangentVec vs{probe.p, s * probe.x};
  TangentVec vt{probe.p, wty};
  const ChartPoint x1 = exp_map(m, vs);
  const ChartPoint x2 = exp_map(m, vt);
  const double d = distance(m, x1, x2).value;
  return d * d;
}

MtwValue fourth_mixed_derivative_of(
    const std::function<double(double, double)>& f, double h) {
  if (!(h > 0.0)) throw ValidationError("fourth derivative: h must be > 0");
  auto stencil = [&](double hh) {
    static constexpr double c[3] = {1.0, -2.0, 1.0};
    double acc = 0.0;
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        acc += c[i + 1] * c[j + 1] * f(i * hh, j * hh);
      }
    }
    return acc / (hh * hh * hh * hh);
  };
  const double coarse = stencil(h);
  const double fine = stencil(0.5 * h);
  MtwValue out;
  out.value = (4.0 * fine - coarse) / 3.0;
  out.error_estimate = std::abs(fine - coarse);
  out.h_used = h;
  if (out.error_estimate > 0.1 * std::abs(out.value) &&
      out.error_estimate > 1e-3) {
    throw UnresolvedError("fourth derivative unresolved: estimate " +
                          std::to_string(out.error_estimate) + " vs value " +
                          std::to_string(out.value));
  }
  return out;
}

MtwValue fourth_mixed_derivative(const ManifoldSpec& m, const MtwProbe& probe,
                                 double h) {
  return fourth_mixed_derivative_of(
      [&](double s, double t) { return cost_surface(m, probe, s, t); }, h);
}

double default_step(const ManifoldSpec& m, const MtwProbe& probe) {
  const double wn =
      std::sqrt(std::max(0.0, metric_inner(m, probe.p, probe.w, probe.w)));
  const double span = std::max(wn, 0.5);
  double h;
  if (m.is_euclidean()) {
    h = 0.25 * span;  // quadratic cost surface: any h is exact, large kills
                      // roundoff
  } else if (m.is_sphere()) {
    h = 0.0133 * span;  // (1e-15)^(1/8): closed-form distance accuracy
  } else {
    h = 0.075 * span;  // (1e-9)^(1/8): shooting-engine accuracy
  }
  // Keep the whole stencil inside the guarded ball.
  const double xn =
      std::sqrt(std::max(1e-12, metric_inner(m, probe.p, probe.x, probe.x)));
  const double yn =
      std::sqrt(std::max(1e-12, metric_inner(m, probe.p, probe.y, probe.y)));
  const double room = 0.9 * probe.til_guard - wn;
  h = std::min(h, 0.45 * room / std::max(xn, yn));
  return h;
}

MtwScanReport mtw_scan(const ManifoldSpec& m, const ChartPoint& base,
                       const MtwScanOptions& opts) {
  if (opts.trials < 1) throw ValidationError("mtw_scan: trials must be >= 1");
  require_in_domain(m, base);

  const double til = til_inner_radius(m, base);
  double region = opts.region_radius;
  double guard;
  if (std::isinf(til)) {
    guard = std::max(1.0, 2.0 * region);  // Euclidean: any radius is verified
  } else {
    region = std::min(region, 0.45 * til);
    guard = til - region;  // 1-Lipschitz bound on til at sampled p
  }

  std::vector<MtwProbeRecord> records(opts.trials);
  auto run_probe = [&](std::size_t idx) {
    Rng rng = Rng::stream(opts.seed ^ 0x6d74777363616eULL, idx);
    MtwProbeRecord& rec = records[idx];
    try {
      const ChartPoint p = sample_in_ball(m, base, region, rng);
      const auto frame = orthonormal_frame(m, p);
      auto random_unit = [&]() {
        if (frame.size() == 2) {
          const double a = rng.uniform(0.0, 2.0 * M_PI);
          return Eigen::VectorXd(std::cos(a) * frame[0] +
                                 std::sin(a) * frame[1]);
        }
        Eigen::VectorXd c(frame.size());
        for (int i = 0; i < c.size(); ++i) c[i] = rng.normal();
        c /= c.norm();
        Eigen::VectorXd out = Eigen::VectorXd::Zero(p.x.size());
        for (std::size_t i = 0; i < frame.size(); ++i) out += c[i] * frame[i];
        return out;
      };
      // W uniform in the guarded ball (strictly inside 0.9 * guard).
      const double wr =
          0.9 * guard * std::sqrt(rng.uniform()) * (1.0 - 1e-9);
      Eigen::VectorXd w = wr * random_unit();
      Eigen::VectorXd x = random_unit();
      Eigen::VectorXd y = random_unit();
      if (opts.perpendicular_only) {
        for (int tries = 0; tries < 16; ++tries) {
          const double xy = metric_inner(m, p, x, y);
          const double xx = metric_inner(m, p, x, x);
          Eigen::VectorXd perp = y - (xy / xx) * x;
          const double pn = std::sqrt(
              std::max(0.0, metric_inner(m, p, perp, perp)));
          if (pn > 1e-6) {
            y = perp / pn;
            break;
          }
          y = random_unit();
        }
      }
      MtwProbe probe = make_probe(m, p, w, x, y, opts.perpendicular_only,
                                  guard);
      const double h = default_step(m, probe);
      const MtwValue v = fourth_mixed_derivative(m, probe, h);
      rec.probe = std::move(probe);
      rec.value = v.value;
      rec.error_estimate = v.error_estimate;
      rec.h_used = v.h_used;
      rec.resolved = true;
    } catch (const Error& e) {
      rec.resolved = false;
      rec.failure = e.what();
    }
  };

  parallel_for(opts.trials, opts.workers, run_probe);

  MtwScanReport report;
  report.manifold = m.describe();
  report.trials = opts.trials;
  report.pos_tol = kMtwPosTol;
  report.perpendicular_only = opts.perpendicular_only;
  report.til_at_base = til;
  report.region_radius = region;
  report.seed = opts.seed;
  bool any = false;
  for (int i = 0; i < opts.trials; ++i) {
    const MtwProbeRecord& rec = records[i];
    if (!rec.resolved) {
      ++report.unresolved;
      continue;
    }
    if (rec.value > report.pos_tol) ++report.positives;
    if (!any || rec.value > report.max_value) {
      report.max_value = rec.value;
      report.argmax_index = i;
      any = true;
    }
  }
  report.records = std::move(records);
  return report;
}

}  // namespace bipolar
