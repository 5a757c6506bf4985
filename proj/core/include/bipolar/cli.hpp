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

#ifndef BIPOLAR_CLI_HPP_
#define BIPOLAR_CLI_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bipolar/manifold.hpp"

namespace bipolar {

inline constexpr const char* kToolName = "bipolarlab";
inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 clean run without violation evidence, 3 violation evidence
// found (scriptable), 1 errors.
inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitEvidence = 3;

enum class Command { kCheck, kScan, kMtwScan, kRigidity, kFilling };

// Optional base-region override for scans on curved manifolds:
// "t=<v>,theta=<v>,r=<v>" (sphere uses colatitude phi in place of t).
struct RegionSpec {
  bool present = false;
  double t = 0.0;
  double theta = 0.0;
  double radius = 0.5;
};

struct RunConfig {
  Command command = Command::kCheck;
  std::string manifold_spec;   // CLI grammar, e.g. "sphere:r=1.0"
  int k = 3;
  int l = 3;
  int trials = 100;
  int budget = 200;
  std::uint64_t seed = 0;
  double tol_feas = 1e-7;      // feas_tol = tol_feas * scale
  int workers = 0;             // 0: hardware parallelism
  std::string out_path;        // empty: caller prints the envelope
  std::string instance_path;  // check: solve a stored instance file
  std::string mode = "perp";  // mtw-scan: "perp" or "noperp"
  int grid = 8;               // filling
  RegionSpec region;
};

struct RunResult {
  int exit_code = kExitClean;
  std::string envelope_text;  // full report (includes timestamp + checksum)
  std::string payload_text;   // canonical payload bytes (seed-deterministic)
  std::vector<std::string> dumped_files;
};

// Grammar: name:key=value,... with names euclidean (dim), sphere (r) and
// revolution (profile=cosh|flatband|spherecap plus profile parameters).
// Unknown names or keys are rejected with the offending token.
ManifoldSpec parse_manifold_spec(const std::string& text);

// Dispatches to the comparison / mtw / rigidity modules and assembles the
// report envelope. Validation problems throw; the caller maps them to exit
// code 1.
RunResult run(const RunConfig& config);

const char* command_name(Command c);

}  // namespace bipolar

#endif  // BIPOLAR_CLI_HPP_
