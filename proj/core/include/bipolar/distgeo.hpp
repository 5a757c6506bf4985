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

#ifndef BIPOLAR_DISTGEO_HPP_
#define BIPOLAR_DISTGEO_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bipolar/errors.hpp"

namespace bipolar {

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

// Distance data and constraint pattern of one (k,l)-bipolar comparison
// question on n = k+l+2 points. Index layout: 0..k are a_0..a_k, k+1..k+l+1
// are b_0..b_l. Pole distances (a_i to a_0, b_j to b_0, a_0 to b_0) carry
// equality constraints; every remaining pair carries a lower bound.
struct ComparisonInstance {
  int k = 0;
  int l = 0;
  Eigen::MatrixXd dist;
  bool metric_waiver = false;  // synthetic data exempt from the metric check

  int n() const { return k + l + 2; }
  int a_index(int i) const { return i; }
  int b_index(int j) const { return k + 1 + j; }

  std::vector<std::pair<int, int>> equality_pairs() const;
  std::vector<std::pair<int, int>> lowerbound_pairs() const;

  // Largest distance entry; tolerances scale with it.
  double scale() const;
};

// Validates the matrix (square of the right size, symmetric, zero diagonal,
// nonnegative, triangle inequality to 1e-9*scale slack unless waived).
ComparisonInstance build_instance(int k, int l, Eigen::MatrixXd dist,
                                  bool metric_waiver = false);

// Candidate point positions; row i is the position of point i. The ambient
// dimension is n-1: n points of a Hilbert space span no more, so the
// definition loses nothing.
struct ModelConfiguration {
  Eigen::MatrixXd positions;

  int count() const { return static_cast<int>(positions.rows()); }
  int dim() const { return static_cast<int>(positions.cols()); }
};

enum class FeasibilityStatus { kFeasible, kNotFoundAfterBudget };

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::kNotFoundAfterBudget;
  std::optional<ModelConfiguration> witness;
  double residual = 0.0;      // max constraint violation of the witness
  double best_penalty = 0.0;  // least penalty reached
  int budget_used = 0;        // multistarts (or projection sweeps) consumed

  bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

// ---------------------------------------------------------------------------
// Penalty machinery
// ---------------------------------------------------------------------------

// Sum over equality pairs of (|xi-xj| - d)^2 plus sum over lower-bound pairs
// of max(0, d - |xi-xj|)^2. Zero iff the configuration satisfies every
// constraint exactly.
double penalty(const ModelConfiguration& config,
               const ComparisonInstance& inst);

// Analytic gradient of the penalty with respect to the positions.
Eigen::MatrixXd penalty_gradient(const ModelConfiguration& config,
                                 const ComparisonInstance& inst);

// Max constraint violation: |‖xi-xj‖ - d| on equality pairs,
// max(0, d - ‖xi-xj‖) on lower-bound pairs.
double residual_max(const ModelConfiguration& config,
                    const ComparisonInstance& inst);

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

inline constexpr double kFeasTolFactor = 1e-7;  // feas_tol = factor * scale

struct LowrankOptions {
  int budget = 200;
  std::uint64_t seed = 0;
  double feas_tol_factor = kFeasTolFactor;
  int max_iters = 5000;   // gradient-descent cap per start
  int dim_override = 0;   // 0 means n-1
  int exit_block = 8;     // early-exit granularity (kept fixed for
                          // worker-count-independent determinism)
  int workers = 1;
  // Optional warm start replacing the random initialization of start 0;
  // callers that know a candidate witness (e.g. an unrolled flat
  // configuration) seed the search with it.
  std::optional<ModelConfiguration> initial_guess;
};

// Penalty minimization in dimension n-1: gradient descent with backtracking
// line search from scale-matched uniform random starts (start seeds derived
// from the master seed by counter mixing), followed by a Gauss-Newton polish
// of each endpoint. Feasible iff some witness has residual <= feas_tol.
FeasibilityVerdict solve_lowrank(const ComparisonInstance& inst, int budget,
                                 std::uint64_t seed);
FeasibilityVerdict solve_lowrank_opts(const ComparisonInstance& inst,
                                      const LowrankOptions& opts);

// Independent cross-check: Dykstra alternating projections on the Gram
// matrix (a_0 anchored at the origin) between the PSD cone and the squared
// distance equalities/lower bounds, converted back to positions by
// eigendecomposition.
FeasibilityVerdict solve_gram_projection(const ComparisonInstance& inst,
                                         int max_iters = 10000);

// ---------------------------------------------------------------------------
// Exact tools
// ---------------------------------------------------------------------------

// Euclidean comparison angle at the vertex joining sides d_ab, d_ac with
// opposite side d_bc (law of cosines, clamped). Requires positive inputs
// satisfying the triangle inequality to 1e-9 slack.
double model_angle(double d_ab, double d_ac, double d_bc);

// Exact decision procedure for the (2,0) pattern: feasible iff the three
// comparison angles at a_0 sum to at most 2*pi (+1e-12).
bool alexandrov_quadruple_oracle(const ComparisonInstance& inst);

// Restriction to kept labels; keep_a must contain 0 (a_0), keep_b must
// contain 0 (b_0).
ComparisonInstance sub_instance(const ComparisonInstance& inst,
                                const std::vector<int>& keep_a,
                                const std::vector<int>& keep_b);

// Restriction of a parent witness to the kept labels, re-embedded
// isometrically in dimension n'-1.
ModelConfiguration restrict_witness(const ModelConfiguration& witness,
                                    const ComparisonInstance& parent,
                                    const std::vector<int>& keep_a,
                                    const std::vector<int>& keep_b);

}  // namespace bipolar

#endif  // BIPOLAR_DISTGEO_HPP_
