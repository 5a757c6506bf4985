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

#include "bipolar/distgeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "bipolar/parallel.hpp"
#include "bipolar/rng.hpp"

namespace bipolar {

// ---------------------------------------------------------------------------
// Instance machinery
// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> ComparisonInstance::equality_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(1 + k + l);
  pairs.emplace_back(0, b_index(0));  // a_0 -- b_0
  for (int i = 1; i <= k; ++i) pairs.emplace_back(a_index(i), 0);
  for (int j = 1; j <= l; ++j) pairs.emplace_back(b_index(j), b_index(0));
  return pairs;
}

std::vector<std::pair<int, int>> ComparisonInstance::lowerbound_pairs() const {
  const auto eq = equality_pairs();
  auto is_eq = [&](int i, int j) {
    for (const auto& [a, b] : eq) {
      if ((a == i && b == j) || (a == j && b == i)) return true;
    }
    return false;
  };
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n(); ++i) {
    for (int j = i + 1; j < n(); ++j) {
      if (!is_eq(i, j)) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

double ComparisonInstance::scale() const {
  return dist.size() == 0 ? 0.0 : dist.maxCoeff();
}

ComparisonInstance build_instance(int k, int l, Eigen::MatrixXd dist,
                                  bool metric_waiver) {
  if (k < 0 || l < 0) throw ValidationError("instance: k and l must be >= 0");
  const int n = k + l + 2;
  if (dist.rows() != n || dist.cols() != n) {
    throw ValidationError("instance: distance matrix must be " +
                          std::to_string(n) + "x" + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) {
      throw ValidationError("instance: nonzero diagonal at index " +
                            std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      if (dist(i, j) < 0.0) {
        throw ValidationError("instance: negative entry at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
      if (dist(i, j) != dist(j, i)) {
        throw ValidationError("instance: asymmetric at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
    }
  }
  ComparisonInstance inst;
  inst.k = k;
  inst.l = l;
  inst.dist = std::move(dist);
  inst.metric_waiver = metric_waiver;
  if (!metric_waiver) {
    const double slack = 1e-9 * std::max(1.0, inst.scale());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
          if (inst.dist(i, j) > inst.dist(i, m) + inst.dist(m, j) + slack) {
            throw ValidationError(
                "instance: triangle inequality violated on (" +
                std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(m) + "); pass metric_waiver for synthetic data");
          }
        }
      }
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Penalty
// ---------------------------------------------------------------------------

double penalty(const ModelConfiguration& config,
               const ComparisonInstance& inst) {
  if (config.count() != inst.n()) {
    throw ValidationError("penalty: configuration has wrong point count");
  }
  double acc = 0.0;
  for (const auto& [i, j] : inst.equality_pairs()) {
    const double r = (config.positions.row(i) - config.positions.row(j)).norm();
    const double e = r - inst.dist(i, j);
    acc += e * e;
  }
  for (const auto& [i, j] : inst.lowerbound_pairs()) {
    const double r = (config.positions.row(i) - config.positions.row(j)).norm();
    const double e = std::max(0.0, inst.dist(i, j) - r);
    acc += e * e;
  }
  return acc;
}

Eigen::MatrixXd penalty_gradient(const ModelConfiguration& config,
                                 const ComparisonInstance& inst) {
  Eigen::MatrixXd grad =
      Eigen::MatrixXd::Zero(config.count(), config.dim());
  auto accumulate = [&](int i, int j, bool equality) {
    const Eigen::RowVectorXd delta =
        config.positions.row(i) - config.positions.row(j);
    const double r = delta.norm();
    const double d = inst.dist(i, j);
    double coef = 0.0;
    if (equality) {
      if (r > 0.0) {
        coef = 2.0 * (r - d) / r;
      }
      // r == 0: subgradient 0 of |delta| is used.
    } else {
      if (r > 0.0 && r < d) coef = -2.0 * (d - r) / r;
    }
    if (coef != 0.0) {
      grad.row(i) += coef * delta;
      grad.row(j) -= coef * delta;
    }
  };
  for (const auto& [i, j] : inst.equality_pairs()) accumulate(i, j, true);
  for (const auto& [i, j] : inst.lowerbound_pairs()) accumulate(i, j, false);
  return grad;
}

double residual_max(const ModelConfiguration& config,
                    const ComparisonInstance& inst) {
  double worst = 0.0;
  for (const auto& [i, j] : inst.equality_pairs()) {
    const double r = (config.positions.row(i) - config.positions.row(j)).norm();
    worst = std::max(worst, std::abs(r - inst.dist(i, j)));
  }
  for (const auto& [i, j] : inst.lowerbound_pairs()) {
    const double r = (config.positions.row(i) - config.positions.row(j)).norm();
    worst = std::max(worst, inst.dist(i, j) - r);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Low-rank penalty solver
// ---------------------------------------------------------------------------

namespace {

struct ConstraintTable {
  std::vector<std::pair<int, int>> eq;
  std::vector<std::pair<int, int>> lb;
};

// One gradient-descent run with Armijo backtracking.
void gradient_descent(const ComparisonInstance& inst,
                      const ConstraintTable& table, int max_iters,
                      double grad_tol, double stop_resid,
                      ModelConfiguration& config) {
  (void)table;
  double fx = penalty(config, inst);
  double step = 1.0;
  int stagnant = 0;
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::MatrixXd g = penalty_gradient(config, inst);
    const double gn2 = g.squaredNorm();
    if (std::sqrt(gn2) <= grad_tol) break;
    step = std::min(step * 2.0, 1e3);
    bool moved = false;
    for (int bt = 0; bt < 48; ++bt) {
      ModelConfiguration trial{config.positions - step * g};
      const double ft = penalty(trial, inst);
      if (ft <= fx - 1e-4 * step * gn2) {
        const double drop = fx - ft;
        config = std::move(trial);
        fx = ft;
        moved = true;
        // The Gauss-Newton polish takes over once progress flattens.
        stagnant = drop <= 1e-14 * (1.0 + fx) ? stagnant + 1 : 0;
        break;
      }
      step *= 0.5;
    }
    if (!moved || stagnant >= 10) break;
    if (fx <= stop_resid * stop_resid) {
      if (residual_max(config, inst) <= stop_resid) break;
    }
  }
}

// Levenberg-damped Gauss-Newton polish on the active-set residual vector;
// quadratic tail convergence where gradient descent crawls.
void gauss_newton_polish(const ComparisonInstance& inst,
                         ModelConfiguration& config, double target_resid) {
  const int n = config.count();
  const int dim = config.dim();
  const int vars = n * dim;
  const auto eq = inst.equality_pairs();
  const auto lb = inst.lowerbound_pairs();
  double lambda = 1e-10 * std::max(1.0, inst.scale() * inst.scale());
  double fx = penalty(config, inst);

  for (int it = 0; it < 40; ++it) {
    // Push well below the feasibility tolerance so downstream residual
    // checks at 1e-8*scale hold with margin.
    if (residual_max(config, inst) <= 1e-3 * target_resid) return;
    std::vector<double> rows;
    std::vector<Eigen::RowVectorXd> deltas;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [i, j] : eq) {
      const Eigen::RowVectorXd delta =
          config.positions.row(i) - config.positions.row(j);
      const double r = delta.norm();
      rows.push_back(r - inst.dist(i, j));
      deltas.push_back(r > 1e-300 ? Eigen::RowVectorXd(delta / r)
                                  : Eigen::RowVectorXd::Zero(dim).eval());
      pairs.emplace_back(i, j);
    }
    for (const auto& [i, j] : lb) {
      const Eigen::RowVectorXd delta =
          config.positions.row(i) - config.positions.row(j);
      const double r = delta.norm();
      if (r < inst.dist(i, j)) {
        rows.push_back(r - inst.dist(i, j));  // negative residual, active
        deltas.push_back(r > 1e-300 ? Eigen::RowVectorXd(delta / r)
                                    : Eigen::RowVectorXd::Zero(dim).eval());
        pairs.emplace_back(i, j);
      }
    }
    const int m = static_cast<int>(rows.size());
    if (m == 0) return;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, vars);
    Eigen::VectorXd res(m);
    for (int r = 0; r < m; ++r) {
      res[r] = rows[r];
      const auto& [i, j] = pairs[r];
      jac.block(r, i * dim, 1, dim) = deltas[r];
      jac.block(r, j * dim, 1, dim) = -deltas[r];
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;
    bool moved = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd h = jtj;
      h.diagonal().array() += lambda;
      const Eigen::VectorXd dx = h.ldlt().solve(-jtr);
      ModelConfiguration trial = config;
      for (int i = 0; i < n; ++i) {
        trial.positions.row(i) += dx.segment(i * dim, dim).transpose();
      }
      const double ft = penalty(trial, inst);
      if (ft < fx) {
        config = std::move(trial);
        fx = ft;
        lambda = std::max(lambda * 0.3, 1e-14);
        moved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!moved) return;
  }
}

}  // namespace

FeasibilityVerdict solve_lowrank(const ComparisonInstance& inst, int budget,
                                 std::uint64_t seed) {
  LowrankOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  return solve_lowrank_opts(inst, opts);
}

FeasibilityVerdict solve_lowrank_opts(const ComparisonInstance& inst,
                                      const LowrankOptions& opts) {
  if (opts.budget < 1) throw ValidationError("solve_lowrank: budget must be >= 1");
  const int n = inst.n();
  const int dim = opts.dim_override > 0 ? opts.dim_override : n - 1;
  const double scale = std::max(inst.scale(), 1e-300);
  const double feas_tol = opts.feas_tol_factor * scale;
  const double grad_tol = 1e-12 * scale * scale;

  ConstraintTable table{inst.equality_pairs(), inst.lowerbound_pairs()};

  struct StartResult {
    double penalty_value = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    ModelConfiguration config;
  };

  if (opts.initial_guess &&
      (opts.initial_guess->count() != n || opts.initial_guess->dim() != dim)) {
    throw ValidationError("solve_lowrank: initial guess has wrong shape");
  }

  std::vector<StartResult> results(opts.budget);
  auto run_start = [&](std::size_t idx) {
    Rng rng = Rng::stream(opts.seed, idx);
    ModelConfiguration config;
    if (idx == 0 && opts.initial_guess) {
      config = *opts.initial_guess;
    } else {
      config.positions = Eigen::MatrixXd(n, dim);
      for (int i = 0; i < n; ++i) {
        for (int d = 0; d < dim; ++d) {
          config.positions(i, d) = rng.uniform(-scale, scale);
        }
      }
    }
    gradient_descent(inst, table, opts.max_iters, grad_tol, 0.5 * feas_tol,
                     config);
    gauss_newton_polish(inst, config, feas_tol);
    StartResult out;
    out.config = std::move(config);
    out.penalty_value = penalty(out.config, inst);
    out.residual = residual_max(out.config, inst);
    results[idx] = std::move(out);
  };

  // Fixed-size blocks keep the early exit independent of the worker count.
  // Exit only on a witness well inside the tolerance; a start that lands on a
  // barely-feasible stationary point should not stop the search for a clean
  // one (the status test itself stays at feas_tol).
  const double clean_tol = 0.05 * feas_tol;
  const int block = std::max(1, opts.exit_block);
  int used = 0;
  bool found = false;
  while (used < opts.budget && !found) {
    const int hi = std::min(opts.budget, used + block);
    parallel_for(hi - used, opts.workers,
                 [&](std::size_t off) { run_start(used + off); });
    for (int i = used; i < hi && !found; ++i) {
      found = results[i].residual <= clean_tol;
    }
    used = hi;
  }

  // Merge by (penalty, start index) lexicographic order.
  int best = -1;
  for (int i = 0; i < used; ++i) {
    if (best < 0 || results[i].penalty_value < results[best].penalty_value) {
      best = i;
    }
  }
  FeasibilityVerdict verdict;
  verdict.budget_used = used;
  verdict.best_penalty = results[best].penalty_value;
  verdict.residual = results[best].residual;
  verdict.witness = std::move(results[best].config);
  verdict.status = results[best].residual <= feas_tol
                       ? FeasibilityStatus::kFeasible
                       : FeasibilityStatus::kNotFoundAfterBudget;
  return verdict;
}

// ---------------------------------------------------------------------------
// Gram projection (Dykstra)
// ---------------------------------------------------------------------------

FeasibilityVerdict solve_gram_projection(const ComparisonInstance& inst,
                                         int max_iters) {
  const int n = inst.n();
  const int m = n - 1;  // points 1..n-1; a_0 anchored at the origin
  const double scale = std::max(inst.scale(), 1e-300);
  const double feas_tol = kFeasTolFactor * scale;
  const double gram_tol = 1e-11 * std::max(1.0, scale * scale);

  struct Linear {
    int i = -1, j = -1;  // Gram indices (0-based within 1..n-1); j<0: anchor
    double bound = 0.0;
    bool equality = false;
    double norm2 = 1.0;
    double apply(const Eigen::MatrixXd& g) const {
      if (j < 0) return g(i, i);
      return g(i, i) + g(j, j) - 2.0 * g(i, j);
    }
    void add(Eigen::MatrixXd& g, double t) const {
      if (j < 0) {
        g(i, i) += t;
        return;
      }
      g(i, i) += t;
      g(j, j) += t;
      g(i, j) -= t;
      g(j, i) -= t;
    }
  };

  std::vector<Linear> cons;
  auto add_pair = [&](int i, int j, bool equality) {
    const double d = inst.dist(i, j);
    Linear c;
    c.bound = d * d;
    c.equality = equality;
    if (i == 0 || j == 0) {
      c.i = (i == 0 ? j : i) - 1;
      c.j = -1;
      c.norm2 = 1.0;
    } else {
      c.i = i - 1;
      c.j = j - 1;
      c.norm2 = 4.0;
    }
    cons.push_back(c);
  };
  for (const auto& [i, j] : inst.equality_pairs()) add_pair(i, j, true);
  for (const auto& [i, j] : inst.lowerbound_pairs()) add_pair(i, j, false);

  // Classical-MDS warm start: the exact Gram matrix when the data is
  // Euclidean-realizable with equality everywhere.
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d0i = inst.dist(0, i + 1);
      const double d0j = inst.dist(0, j + 1);
      const double dij = inst.dist(i + 1, j + 1);
      g(i, j) = 0.5 * (d0i * d0i + d0j * d0j - dij * dij);
    }
  }
  g = 0.5 * (g + g.transpose()).eval();

  // Dykstra corrections: one for the PSD cone, one per linear constraint.
  Eigen::MatrixXd psd_corr = Eigen::MatrixXd::Zero(m, m);
  std::vector<Eigen::MatrixXd> lin_corr(
      cons.size(), Eigen::MatrixXd::Zero(m, m));

  int sweeps = 0;
  bool converged = false;
  double plateau_worst = std::numeric_limits<double>::infinity();
  for (; sweeps < max_iters; ++sweeps) {
    // PSD projection with correction.
    Eigen::MatrixXd z = g + psd_corr;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(z);
    Eigen::VectorXd ev = eig.eigenvalues().cwiseMax(0.0);
    g = eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
    g = 0.5 * (g + g.transpose()).eval();
    psd_corr = z - g;

    for (std::size_t c = 0; c < cons.size(); ++c) {
      z = g + lin_corr[c];
      const double v = cons[c].apply(z);
      double t = 0.0;
      if (cons[c].equality) {
        t = (cons[c].bound - v) / cons[c].norm2;
      } else if (v < cons[c].bound) {
        t = (cons[c].bound - v) / cons[c].norm2;
      }
      g = z;
      if (t != 0.0) cons[c].add(g, t);
      lin_corr[c] = z - g;
    }

    // Convergence: PSD within tolerance and all linear constraints met.
    double worst = 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(g);
    worst = std::max(worst, -check.eigenvalues().minCoeff());
    for (const auto& c : cons) {
      const double v = c.apply(g);
      if (c.equality) {
        worst = std::max(worst, std::abs(v - c.bound));
      } else {
        worst = std::max(worst, c.bound - v);
      }
    }
    if (worst <= gram_tol) {
      converged = true;
      ++sweeps;
      break;
    }
    // Infeasible instances plateau far from the tolerance; stop once the
    // violation has stopped moving instead of burning the full cap.
    if (sweeps >= 1500 && sweeps % 500 == 0) {
      if (std::abs(worst - plateau_worst) <= 1e-6 * worst) {
        ++sweeps;
        break;
      }
      plateau_worst = worst;
    }
  }

  // Convert to positions.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  const Eigen::VectorXd ev = eig.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd coords = eig.eigenvectors() * ev.cwiseSqrt().asDiagonal();
  ModelConfiguration config;
  config.positions = Eigen::MatrixXd::Zero(n, m);
  config.positions.bottomRows(m) = coords;

  FeasibilityVerdict verdict;
  verdict.budget_used = sweeps;
  verdict.best_penalty = penalty(config, inst);
  verdict.residual = residual_max(config, inst);
  verdict.witness = std::move(config);
  verdict.status = (converged && verdict.residual <= feas_tol)
                       ? FeasibilityStatus::kFeasible
                       : FeasibilityStatus::kNotFoundAfterBudget;
  // A converged Gram matrix whose positions still miss the tolerance (rare
  // eigen-decomposition noise) is reported as not found rather than patched.
  return verdict;
}

// ---------------------------------------------------------------------------
// Exact tools
// ---------------------------------------------------------------------------

double model_angle(double d_ab, double d_ac, double d_bc) {
  if (!(d_ab > 0.0) || !(d_ac > 0.0) || d_bc < 0.0) {
    throw ValidationError("model_angle: side lengths must be positive");
  }
  const double slack = 1e-9 * std::max(1.0, d_ab + d_ac + d_bc);
  if (d_bc > d_ab + d_ac + slack || d_ab > d_ac + d_bc + slack ||
      d_ac > d_ab + d_bc + slack) {
    throw ValidationError("model_angle: triangle inequality violated");
  }
  const double c =
      (d_ab * d_ab + d_ac * d_ac - d_bc * d_bc) / (2.0 * d_ab * d_ac);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool alexandrov_quadruple_oracle(const ComparisonInstance& inst) {
  if (inst.k != 2 || inst.l != 0) {
    throw ValidationError(
        "alexandrov_quadruple_oracle: requires a (2,0) instance");
  }
  const int a0 = 0, a1 = 1, a2 = 2, b0 = inst.b_index(0);
  const double s = model_angle(inst.dist(a0, a1), inst.dist(a0, a2),
                               inst.dist(a1, a2)) +
                   model_angle(inst.dist(a0, a1), inst.dist(a0, b0),
                               inst.dist(a1, b0)) +
                   model_angle(inst.dist(a0, a2), inst.dist(a0, b0),
                               inst.dist(a2, b0));
  return s <= 2.0 * M_PI + 1e-12;
}

namespace {

std::vector<int> merged_indices(const ComparisonInstance& inst,
                                const std::vector<int>& keep_a,
                                const std::vector<int>& keep_b) {
  auto sorted_unique = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto ka = sorted_unique(keep_a);
  const auto kb = sorted_unique(keep_b);
  if (ka.empty() || ka.front() != 0) {
    throw ValidationError("sub_instance: keep_a must contain the pole a_0");
  }
  if (kb.empty() || kb.front() != 0) {
    throw ValidationError("sub_instance: keep_b must contain the pole b_0");
  }
  if (ka.back() > inst.k || kb.back() > inst.l) {
    throw ValidationError("sub_instance: kept label out of range");
  }
  std::vector<int> idx;
  for (int i : ka) idx.push_back(inst.a_index(i));
  for (int j : kb) idx.push_back(inst.b_index(j));
  return idx;
}

}  // namespace

ComparisonInstance sub_instance(const ComparisonInstance& inst,
                                const std::vector<int>& keep_a,
                                const std::vector<int>& keep_b) {
  const auto idx = merged_indices(inst, keep_a, keep_b);
  const int nn = static_cast<int>(idx.size());
  Eigen::MatrixXd dist(nn, nn);
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) dist(i, j) = inst.dist(idx[i], idx[j]);
  }
  int ka = 0;
  for (int i : keep_a) {
    if (i != 0) ++ka;
  }
  return build_instance(ka, nn - ka - 2, std::move(dist), inst.metric_waiver);
}

ModelConfiguration restrict_witness(const ModelConfiguration& witness,
                                    const ComparisonInstance& parent,
                                    const std::vector<int>& keep_a,
                                    const std::vector<int>& keep_b) {
  const auto idx = merged_indices(parent, keep_a, keep_b);
  const int nn = static_cast<int>(idx.size());
  Eigen::MatrixXd kept(nn, witness.dim());
  for (int i = 0; i < nn; ++i) kept.row(i) = witness.positions.row(idx[i]);
  // Isometric re-embedding into dimension nn-1 via SVD about point 0.
  Eigen::MatrixXd centered = kept.bottomRows(nn - 1);
  centered.rowwise() -= kept.row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int rank_cap = std::min<int>(nn - 1, svd.singularValues().size());
  ModelConfiguration out;
  out.positions = Eigen::MatrixXd::Zero(nn, nn - 1);
  out.positions.bottomRows(nn - 1).leftCols(rank_cap) =
      svd.matrixU().leftCols(rank_cap) *
      svd.singularValues().head(rank_cap).asDiagonal();
  return out;
}

}  // namespace bipolar
