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

#ifndef BIPOLAR_SRC_SHOOTING_HPP_
#define BIPOLAR_SRC_SHOOTING_HPP_

#include "bipolar/manifold.hpp"

namespace bipolar {
namespace internal {

// Integration tolerances. Fine is the contract accuracy of exp_map; polish is
// used for the final boundary-value candidates where the distance engine
// promises ~1e-8 absolute accuracy; coarse drives the global search phase.
inline constexpr double kFineAtol = 1e-10;
inline constexpr double kFineRtol = 1e-9;
inline constexpr double kPolishAtol = 1e-11;
inline constexpr double kPolishRtol = 1e-10;
inline constexpr double kCoarseAtol = 1e-8;
inline constexpr double kCoarseRtol = 1e-7;

// Global distance on a surface of revolution: shooting over the initial
// angle with a 32-start grid, golden-section refinement of each grid basin,
// and an exact closest-approach polish of the winners. Both windings compete
// through the wrapped angular mismatch. Throws BvpError when no candidate
// converges.
DistanceResult revolution_distance(const ManifoldSpec& m, const ChartPoint& p,
                                   const ChartPoint& q);

}  // namespace internal
}  // namespace bipolar

#endif  // BIPOLAR_SRC_SHOOTING_HPP_
