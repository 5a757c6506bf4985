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

#include "bipolar/comparison.hpp"

#include <algorithm>
#include <cmath>

#include "bipolar/parallel.hpp"
#include "bipolar/rng.hpp"

namespace bipolar {

namespace {

Eigen::MatrixXd pairwise_distances(const ManifoldSpec& m,
                                   const std::vector<ChartPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = distance(m, pts[i], pts[j]).value;
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

std::vector<ChartPoint> concat(const std::vector<ChartPoint>& a,
                               const std::vector<ChartPoint>& b) {
  std::vector<ChartPoint> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

}  // namespace

ChartPoint default_base_point(const ManifoldSpec& m) {
  if (m.is_euclidean()) {
    return ChartPoint::of(Eigen::VectorXd(Eigen::VectorXd::Zero(m.dim())), 0);
  }
  if (m.is_sphere()) {
    return ChartPoint::of(0.5 * M_PI, 0.0, 0);
  }
  const Profile& prof = m.profile();
  double t0 = 0.0;
  if (!prof.in_domain(t0)) t0 = 0.5 * (prof.t_min + prof.t_max);
  return ChartPoint::of(t0, 0.0, 0);
}

SampledConfiguration sample_configuration(
    const ManifoldSpec& m, const std::vector<ChartPoint>& a_points,
    const std::vector<ChartPoint>& b_points) {
  if (a_points.empty() || b_points.empty()) {
    throw ValidationError("sample_configuration: needs a_0 and b_0");
  }
  SampledConfiguration config{m, a_points, b_points, {}};
  config.dist = pairwise_distances(m, concat(a_points, b_points));
  return config;
}

ComparisonInstance sample_instance(const ManifoldSpec& m,
                                   const std::vector<ChartPoint>& a_points,
                                   const std::vector<ChartPoint>& b_points) {
  const SampledConfiguration config =
      sample_configuration(m, a_points, b_points);
  return build_instance(static_cast<int>(a_points.size()) - 1,
                        static_cast<int>(b_points.size()) - 1, config.dist);
}

FeasibilityVerdict check_bipolar(const ManifoldSpec& m,
                                 const std::vector<ChartPoint>& a_points,
                                 const std::vector<ChartPoint>& b_points,
                                 int budget, std::uint64_t seed) {
  const ComparisonInstance inst = sample_instance(m, a_points, b_points);
  FeasibilityVerdict verdict = solve_lowrank(inst, budget, seed);
  if (!verdict.feasible()) {
    FeasibilityVerdict cross = solve_gram_projection(inst);
    if (cross.feasible()) return cross;
  }
  return verdict;
}

ScanReport random_scan(const ManifoldSpec& m, const ChartPoint& base, int k,
                       int l, const ScanOptions& opts) {
  if (opts.trials < 1) throw ValidationError("random_scan: trials must be >= 1");
  require_in_domain(m, base);

  const double til = til_inner_radius(m, base);
  const double radius = std::min(opts.radius, 0.5 * til);
  if (!(radius > 0.0)) {
    throw ValidationError("random_scan: no verified sampling radius at base");
  }

  struct TrialOut {
    ScanTrialRecord record;
    int redraws = 0;
    bool ok = false;
  };
  std::vector<TrialOut> outs(opts.trials);

  auto run_trial = [&](std::size_t idx) {
    Rng seeds = Rng::stream(opts.seed, idx);
    Rng rng(seeds.next_u64());
    const std::uint64_t solver_seed = seeds.next_u64();
    TrialOut& out = outs[idx];
    for (int attempt = 0; attempt <= opts.max_redraws_per_trial; ++attempt) {
      try {
        std::vector<ChartPoint> a, b;
        for (int i = 0; i < k + 1; ++i) {
          a.push_back(sample_in_ball(m, base, radius, rng));
        }
        for (int j = 0; j < l + 1; ++j) {
          b.push_back(sample_in_ball(m, base, radius, rng));
        }
        SampledConfiguration config = sample_configuration(m, a, b);
        ComparisonInstance inst = build_instance(k, l, config.dist);
        FeasibilityVerdict verdict = solve_lowrank(inst, opts.budget, solver_seed);
        if (!verdict.feasible()) {
          FeasibilityVerdict cross = solve_gram_projection(inst);
          if (cross.feasible()) verdict = std::move(cross);
        }
        out.record.config = std::move(config);
        out.record.feasible = verdict.feasible();
        out.record.best_penalty = verdict.best_penalty;
        out.record.residual = verdict.residual;
        if (!verdict.feasible() && k == 2 && l == 0) {
          out.record.oracle_feasible =
              alexandrov_quadruple_oracle(inst) ? 1 : 0;
        }
        out.ok = true;
        return;
      } catch (const BvpError&) {
        ++out.redraws;
      } catch (const DomainError&) {
        ++out.redraws;
      }
    }
  };

  parallel_for(opts.trials, opts.workers, run_trial);

  ScanReport report;
  report.manifold = m.describe();
  report.k = k;
  report.l = l;
  report.trials = opts.trials;
  report.radius_used = radius;
  report.til_at_base = til;
  report.budget = opts.budget;
  report.seed = opts.seed;
  report.oracle_confirmed_infeasible = (k == 2 && l == 0) ? 0 : -1;

  std::vector<const ScanTrialRecord*> all;
  for (const TrialOut& out : outs) {
    report.rejected_draws += out.redraws;
    if (!out.ok) {
      throw BvpError("random_scan: a trial exhausted its redraw budget");
    }
    if (out.record.feasible) {
      ++report.feasible;
    } else {
      ++report.undecided;
      if (out.record.oracle_feasible == 0) {
        ++report.oracle_confirmed_infeasible;
      }
    }
    all.push_back(&out.record);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const ScanTrialRecord* a, const ScanTrialRecord* b) {
                     return a->best_penalty > b->best_penalty;
                   });
  const int keep = std::min<int>(opts.worst_kept, static_cast<int>(all.size()));
  for (int i = 0; i < keep; ++i) report.worst.push_back(*all[i]);
  return report;
}

}  // namespace bipolar
