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

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "bipolar/cli.hpp"
#include "bipolar/errors.hpp"

namespace {

// --region t=<v>,theta=<v>,r=<v>
bipolar::RegionSpec parse_region(const std::string& text) {
  bipolar::RegionSpec region;
  region.present = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw bipolar::ValidationError("--region: expected key=value in '" +
                                     text + "'");
    }
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (key == "t" || key == "phi") {
      region.t = value;
    } else if (key == "theta") {
      region.theta = value;
    } else if (key == "r") {
      region.radius = value;
    } else {
      throw bipolar::ValidationError("--region: unknown key '" + key + "'");
    }
    pos = comma == std::string::npos ? text.size() : comma + 1;
  }
  return region;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for (k,l)-bipolar comparisons and the "
               "fourth mixed derivative of squared geodesic distance"};
  app.require_subcommand(1);

  bipolar::RunConfig config;
  std::string region_text;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool wants_manifold) {
    if (wants_manifold) {
      sub->add_option("--manifold", config.manifold_spec,
                      "manifold spec, e.g. euclidean:dim=3, sphere:r=1.0, "
                      "revolution:profile=flatband,r=1.0,band=1.0,blend=0.5");
    }
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", config.out_path, "write the report here");
    sub->add_option("--tol-feas", config.tol_feas,
                    "feasibility tolerance factor (feas_tol = factor * scale)");
    sub->add_option("--workers", config.workers,
                    "worker pool size (0: hardware parallelism)");
    sub->add_option("--region", region_text,
                    "base region override: t=<v>,theta=<v>,r=<v>");
  };

  CLI::App* check = app.add_subcommand(
      "check", "solve one (k,l) feasibility question");
  add_common(check, true);
  check->add_option("--k", config.k, "number of a-satellites");
  check->add_option("--l", config.l, "number of b-satellites");
  check->add_option("--budget", config.budget, "multistart budget");
  check->add_option("--instance", config.instance_path,
                    "solve a stored instance file instead of sampling");

  CLI::App* scan = app.add_subcommand(
      "scan", "random feasibility scan on a manifold");
  add_common(scan, true);
  scan->add_option("--k", config.k, "number of a-satellites");
  scan->add_option("--l", config.l, "number of b-satellites");
  scan->add_option("--trials", config.trials, "number of sampled instances");
  scan->add_option("--budget", config.budget, "multistart budget per trial");

  CLI::App* mtw = app.add_subcommand(
      "mtw-scan", "scan the fourth mixed derivative of squared distance");
  add_common(mtw, true);
  mtw->add_option("--trials", config.trials, "number of probes");
  mtw->add_option("--mode", config.mode,
                  "perp (X perpendicular to Y) or noperp");

  CLI::App* rigidity = app.add_subcommand(
      "rigidity", "flat-band rigidity experiment");
  add_common(rigidity, true);
  rigidity->add_option("--trials", config.trials, "key-lemma trials");
  rigidity->add_option("--budget", config.budget, "solver budget per trial");

  CLI::App* filling = app.add_subcommand(
      "filling", "flat-triangle filling deviation of a sampled triangle");
  add_common(filling, true);
  filling->add_option("--grid", config.grid, "side sampling density");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) config.command = bipolar::Command::kCheck;
    if (scan->parsed()) config.command = bipolar::Command::kScan;
    if (mtw->parsed()) config.command = bipolar::Command::kMtwScan;
    if (rigidity->parsed()) config.command = bipolar::Command::kRigidity;
    if (filling->parsed()) config.command = bipolar::Command::kFilling;
    config.seed = seed;
    if (!region_text.empty()) config.region = parse_region(region_text);
    if (config.manifold_spec.empty() && config.instance_path.empty()) {
      std::fprintf(stderr, "error: --manifold (or --instance) is required\n");
      return bipolar::kExitError;
    }

    const bipolar::RunResult result = bipolar::run(config);
    if (config.out_path.empty()) {
      std::fputs(result.envelope_text.c_str(), stdout);
    } else {
      std::fprintf(stderr, "report written to %s\n", config.out_path.c_str());
      for (const std::string& f : result.dumped_files) {
        std::fprintf(stderr, "violating instance written to %s\n", f.c_str());
      }
    }
    return result.exit_code;
  } catch (const bipolar::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return bipolar::kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return bipolar::kExitError;
  }
}
