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

#include "bipolar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#include "bipolar/comparison.hpp"
#include "bipolar/distgeo.hpp"
#include "bipolar/io.hpp"
#include "bipolar/mtw.hpp"
#include "bipolar/rigidity.hpp"
#include "bipolar/rng.hpp"
#include "json_io.hpp"

namespace bipolar {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Spec-string parsing
// ---------------------------------------------------------------------------

struct ParsedSpec {
  std::string name;
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> words;
  std::vector<std::string> order;
};

ParsedSpec parse_spec_string(const std::string& text) {
  ParsedSpec out;
  const auto colon = text.find(':');
  out.name = text.substr(0, colon);
  if (out.name.empty()) {
    throw ValidationError("manifold spec: empty name at position 0 in '" +
                          text + "'");
  }
  if (colon == std::string::npos) return out;
  std::size_t pos = colon + 1;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size()) {
      throw ValidationError("manifold spec: expected key=value at position " +
                            std::to_string(pos) + " in '" + text + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double num = std::strtod(value.c_str(), &end);
    if (end && *end == '\0') {
      out.numbers[key] = num;
    } else {
      out.words[key] = value;
    }
    out.order.push_back(key);
    pos = comma == std::string::npos ? text.size() : comma + 1;
  }
  return out;
}

double take_number(ParsedSpec& spec, const std::string& key, double fallback,
                   bool required = false) {
  const auto it = spec.numbers.find(key);
  if (it == spec.numbers.end()) {
    if (required) {
      throw ValidationError("manifold spec: missing key '" + key + "'");
    }
    return fallback;
  }
  const double v = it->second;
  spec.numbers.erase(it);
  return v;
}

void reject_leftovers(const ParsedSpec& spec) {
  if (!spec.numbers.empty()) {
    throw ValidationError("manifold spec: unknown key '" +
                          spec.numbers.begin()->first + "'");
  }
  if (!spec.words.empty()) {
    throw ValidationError("manifold spec: unknown or non-numeric key '" +
                          spec.words.begin()->first + "'");
  }
}

// Flat-band specs need their band parameters downstream (rigidity).
struct ParsedManifold {
  ManifoldSpec manifold;
  bool is_flatband = false;
  double fb_radius = 0.0, fb_band = 0.0, fb_blend = 0.0, fb_cap = 0.0;
};

ParsedManifold parse_manifold_details(const std::string& text) {
  ParsedSpec spec = parse_spec_string(text);
  ParsedManifold out;
  if (spec.name == "euclidean") {
    const double dim = take_number(spec, "dim", 2.0);
    reject_leftovers(spec);
    if (dim != std::floor(dim)) {
      throw ValidationError("manifold spec: dim must be an integer");
    }
    out.manifold = ManifoldSpec::euclidean(static_cast<int>(dim));
    return out;
  }
  if (spec.name == "sphere") {
    const double r = take_number(spec, "r", 1.0);
    reject_leftovers(spec);
    out.manifold = ManifoldSpec::sphere(r);
    return out;
  }
  if (spec.name == "revolution") {
    const auto it = spec.words.find("profile");
    if (it == spec.words.end()) {
      throw ValidationError("manifold spec: revolution requires profile=<name>");
    }
    const std::string profile = it->second;
    spec.words.erase(it);
    if (profile == "cosh") {
      const double extent = take_number(spec, "extent", 3.0);
      reject_leftovers(spec);
      out.manifold = ManifoldSpec::revolution(make_cosh_profile(extent));
      return out;
    }
    if (profile == "spherecap") {
      const double r = take_number(spec, "r", 1.0);
      const double extent = take_number(spec, "extent", 0.9);
      reject_leftovers(spec);
      out.manifold =
          ManifoldSpec::revolution(make_sphere_cap_profile(r, extent));
      return out;
    }
    if (profile == "flatband") {
      const double r = take_number(spec, "r", 1.0);
      const double band = take_number(spec, "band", 1.0);
      const double blend = take_number(spec, "blend", 0.5);
      const double cap = take_number(spec, "cap", 0.0);
      reject_leftovers(spec);
      FlatBandSurfaceSpec fb = build_flat_band_profile(r, band, blend, cap);
      out.manifold = fb.manifold;
      out.is_flatband = true;
      out.fb_radius = fb.radius;
      out.fb_band = fb.band_halfwidth;
      out.fb_blend = fb.blend_width;
      out.fb_cap = fb.cap_curvature;
      return out;
    }
    throw ValidationError("manifold spec: unknown profile '" + profile + "'");
  }
  throw ValidationError("manifold spec: unknown manifold '" + spec.name + "'");
}

// ---------------------------------------------------------------------------
// Payload building
// ---------------------------------------------------------------------------

json chart_point_json(const ChartPoint& p) {
  json j;
  j["chart"] = p.chart;
  json coords = json::array();
  for (int i = 0; i < p.x.size(); ++i) coords.push_back(p.x[i]);
  j["x"] = std::move(coords);
  return j;
}

json vector_json(const Eigen::VectorXd& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json instance_json(const ComparisonInstance& inst) {
  json j;
  j["k"] = inst.k;
  j["l"] = inst.l;
  j["metric_waiver"] = inst.metric_waiver;
  j["dist"] = matrix_json(inst.dist);
  return j;
}

json verdict_json(const FeasibilityVerdict& v) {
  json j;
  j["status"] = v.feasible() ? "feasible" : "not_found_after_budget";
  j["residual"] = v.residual;
  j["best_penalty"] = v.best_penalty;
  j["budget_used"] = v.budget_used;
  if (v.witness) {
    j["witness"] = matrix_json(v.witness->positions);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json scan_json(const ScanReport& report) {
  json j;
  j["type"] = "scan";
  j["manifold"] = report.manifold;
  j["k"] = report.k;
  j["l"] = report.l;
  j["trials"] = report.trials;
  j["feasible"] = report.feasible;
  j["undecided"] = report.undecided;
  j["rejected_draws"] = report.rejected_draws;
  j["oracle_confirmed_infeasible"] = report.oracle_confirmed_infeasible;
  j["radius_used"] = report.radius_used;
  j["til_at_base"] = report.til_at_base;
  j["budget"] = report.budget;
  j["seed"] = report.seed;
  j["feas_tol_factor"] = report.feas_tol_factor;
  json worst = json::array();
  for (const ScanTrialRecord& rec : report.worst) {
    json e;
    e["best_penalty"] = rec.best_penalty;
    e["residual"] = rec.residual;
    e["feasible"] = rec.feasible;
    e["oracle_feasible"] = rec.oracle_feasible;
    json a = json::array();
    for (const ChartPoint& p : rec.config.a_points) a.push_back(chart_point_json(p));
    json b = json::array();
    for (const ChartPoint& p : rec.config.b_points) b.push_back(chart_point_json(p));
    e["a_points"] = std::move(a);
    e["b_points"] = std::move(b);
    e["dist"] = matrix_json(rec.config.dist);
    worst.push_back(std::move(e));
  }
  j["worst"] = std::move(worst);
  return j;
}

json mtw_json(const MtwScanReport& report) {
  json j;
  j["type"] = "mtw_scan";
  j["manifold"] = report.manifold;
  j["trials"] = report.trials;
  j["positives"] = report.positives;
  j["unresolved"] = report.unresolved;
  j["max_value"] = report.max_value;
  j["argmax_index"] = report.argmax_index;
  j["pos_tol"] = report.pos_tol;
  j["perpendicular_only"] = report.perpendicular_only;
  j["til_at_base"] = report.til_at_base;
  j["region_radius"] = report.region_radius;
  j["seed"] = report.seed;
  json records = json::array();
  for (const MtwProbeRecord& rec : report.records) {
    json e;
    e["resolved"] = rec.resolved;
    if (rec.resolved) {
      e["value"] = rec.value;
      e["error_estimate"] = rec.error_estimate;
      e["h"] = rec.h_used;
      e["p"] = chart_point_json(rec.probe.p);
      e["w"] = vector_json(rec.probe.w);
      e["x"] = vector_json(rec.probe.x);
      e["y"] = vector_json(rec.probe.y);
      e["perpendicular"] = rec.probe.perpendicular;
      e["til_guard"] = rec.probe.til_guard;
    } else {
      e["failure"] = rec.failure;
    }
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  return j;
}

json rigidity_json(const ExperimentReport& report) {
  json j;
  j["type"] = "rigidity_experiment";
  j["manifold"] = report.manifold;
  j["trials"] = report.trials;
  j["budget"] = report.budget;
  j["seed"] = report.seed;
  j["feas_tol_factor"] = report.feas_tol_factor;
  j["penalty_evidence_factor"] = report.penalty_evidence_factor;
  j["built"] = report.built;
  j["rejected"] = report.rejected;
  j["in_band_count"] = report.in_band_count;
  j["in_band_feasible"] = report.in_band_feasible;
  j["violations"] = report.violations;
  j["comparison_violation_evidence"] = report.comparison_violation_evidence;
  j["mtw_violation_evidence"] = report.mtw_violation_evidence;
  json trials = json::array();
  for (const RigidityTrialRecord& rec : report.trial_records) {
    json e;
    e["built"] = rec.built;
    if (!rec.built) {
      e["reject_reason"] = rec.reject_reason;
      trials.push_back(std::move(e));
      continue;
    }
    e["t_p"] = rec.t_p;
    e["t_q"] = rec.t_q;
    e["base_length"] = rec.base_length;
    e["angle_p"] = rec.angle_p;
    e["angle_q"] = rec.angle_q;
    e["side_p"] = rec.side_p;
    e["side_q"] = rec.side_q;
    e["apex_gap"] = rec.apex_gap;
    e["in_band"] = rec.in_band;
    e["feasible"] = rec.feasible;
    e["residual"] = rec.residual;
    e["best_penalty"] = rec.best_penalty;
    e["gram_penalty"] = rec.gram_penalty;
    e["gram_feasible"] = rec.gram_feasible;
    e["violation"] = rec.violation;
    trials.push_back(std::move(e));
  }
  j["trial_records"] = std::move(trials);
  j["mtw"] = mtw_json(report.mtw);
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["manifold"] = c.manifold_spec;
  j["k"] = c.k;
  j["l"] = c.l;
  j["trials"] = c.trials;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["tol_feas"] = c.tol_feas;
  j["workers"] = c.workers;
  j["mode"] = c.mode;
  j["grid"] = c.grid;
  j["instance"] = c.instance_path;
  if (c.region.present) {
    json r;
    r["t"] = c.region.t;
    r["theta"] = c.region.theta;
    r["r"] = c.region.radius;
    j["region"] = std::move(r);
  } else {
    j["region"] = nullptr;
  }
  return j;
}

std::string iso_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

ChartPoint region_base(const ManifoldSpec& m, const RegionSpec& region) {
  if (!region.present) return default_base_point(m);
  if (m.is_euclidean()) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m.dim());
    x[0] = region.t;
    if (m.dim() > 1) x[1] = region.theta;
    return ChartPoint::of(std::move(x), 0);
  }
  return ChartPoint::of(region.t, region.theta, 0);
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kCheck:
      return "check";
    case Command::kScan:
      return "scan";
    case Command::kMtwScan:
      return "mtw-scan";
    case Command::kRigidity:
      return "rigidity";
    case Command::kFilling:
      return "filling";
  }
  return "?";
}

ManifoldSpec parse_manifold_spec(const std::string& text) {
  return parse_manifold_details(text).manifold;
}

RunResult run(const RunConfig& config) {
  if (config.trials < 1 || config.budget < 1 || config.grid < 2 ||
      config.k < 0 || config.l < 0 || !(config.tol_feas > 0.0)) {
    throw ValidationError("run config: numeric fields out of range");
  }
  if (config.mode != "perp" && config.mode != "noperp") {
    throw ValidationError("run config: mode must be 'perp' or 'noperp'");
  }

  json payload;
  int exit_code = kExitClean;
  std::vector<std::string> dumped;

  switch (config.command) {
    case Command::kCheck: {
      ComparisonInstance inst;
      json source;
      if (!config.instance_path.empty()) {
        inst = read_instance_file(config.instance_path);
        source = config.instance_path;
      } else {
        const ParsedManifold pm = parse_manifold_details(config.manifold_spec);
        const ChartPoint base = region_base(pm.manifold, config.region);
        const double til = til_inner_radius(pm.manifold, base);
        const double radius =
            std::min(config.region.present ? config.region.radius : 0.5,
                     0.5 * til);
        Rng rng = Rng::stream(config.seed, 0xc0de);
        std::vector<ChartPoint> a, b;
        for (int i = 0; i < config.k + 1; ++i) {
          a.push_back(sample_in_ball(pm.manifold, base, radius, rng));
        }
        for (int j = 0; j < config.l + 1; ++j) {
          b.push_back(sample_in_ball(pm.manifold, base, radius, rng));
        }
        inst = sample_instance(pm.manifold, a, b);
        source = "sampled";
      }
      LowrankOptions lopts;
      lopts.budget = config.budget;
      lopts.seed = config.seed;
      lopts.feas_tol_factor = config.tol_feas;
      lopts.workers = config.workers;
      FeasibilityVerdict verdict = solve_lowrank_opts(inst, lopts);
      json cross = nullptr;
      if (!verdict.feasible()) {
        const FeasibilityVerdict gram = solve_gram_projection(inst);
        cross = verdict_json(gram);
        if (gram.feasible()) verdict = gram;
      }
      payload["type"] = "check";
      payload["source"] = std::move(source);
      payload["instance"] = instance_json(inst);
      payload["verdict"] = verdict_json(verdict);
      payload["gram_cross_check"] = std::move(cross);
      payload["seed"] = config.seed;
      payload["tol_feas"] = config.tol_feas;
      exit_code = verdict.feasible() ? kExitClean : kExitEvidence;
      break;
    }
    case Command::kScan: {
      const ParsedManifold pm = parse_manifold_details(config.manifold_spec);
      const ChartPoint base = region_base(pm.manifold, config.region);
      ScanOptions opts;
      opts.trials = config.trials;
      opts.budget = config.budget;
      opts.seed = config.seed;
      opts.workers = config.workers;
      opts.radius = config.region.present ? config.region.radius : 0.5;
      const ScanReport report =
          random_scan(pm.manifold, base, config.k, config.l, opts);
      payload = scan_json(report);
      exit_code = report.undecided > 0 ? kExitEvidence : kExitClean;
      break;
    }
    case Command::kMtwScan: {
      const ParsedManifold pm = parse_manifold_details(config.manifold_spec);
      const ChartPoint base = region_base(pm.manifold, config.region);
      MtwScanOptions opts;
      opts.trials = config.trials;
      opts.perpendicular_only = config.mode == "perp";
      opts.seed = config.seed;
      opts.workers = config.workers;
      opts.region_radius = config.region.present ? config.region.radius : 0.4;
      const MtwScanReport report = mtw_scan(pm.manifold, base, opts);
      payload = mtw_json(report);
      exit_code = report.positives > 0 ? kExitEvidence : kExitClean;
      break;
    }
    case Command::kRigidity: {
      const ParsedManifold pm = parse_manifold_details(config.manifold_spec);
      RigidityOptions opts;
      opts.trials = config.trials;
      opts.budget = config.budget;
      opts.seed = config.seed;
      opts.workers = config.workers;
      opts.feas_tol_factor = config.tol_feas;
      ExperimentReport report;
      if (pm.is_flatband) {
        FlatBandSurfaceSpec fb;
        fb.radius = pm.fb_radius;
        fb.band_halfwidth = pm.fb_band;
        fb.blend_width = pm.fb_blend;
        fb.cap_curvature = pm.fb_cap;
        fb.manifold = pm.manifold;
        report = rigidity_experiment(fb, opts);
      } else if (pm.manifold.is_euclidean() && pm.manifold.dim() == 2) {
        report = rigidity_experiment_control(pm.manifold, opts);
      } else {
        throw ValidationError(
            "rigidity: requires revolution:profile=flatband,... or "
            "euclidean:dim=2 (control)");
      }
      // Violating instances become standalone files for independent
      // re-checking.
      const std::string stem =
          config.out_path.empty() ? "rigidity" : config.out_path;
      int dumped_count = 0;
      json dump_names = json::array();
      for (const RigidityTrialRecord& rec : report.trial_records) {
        if (rec.violating_instance) {
          char suffix[48];
          std::snprintf(suffix, sizeof suffix, ".violation-%03d.json",
                        dumped_count);
          const std::string path = stem + suffix;
          write_instance_file(path, *rec.violating_instance);
          dumped.push_back(path);
          dump_names.push_back(path);
          ++dumped_count;
        }
      }
      payload = rigidity_json(report);
      payload["violation_files"] = std::move(dump_names);
      exit_code = (report.comparison_violation_evidence ||
                   report.mtw_violation_evidence)
                      ? kExitEvidence
                      : kExitClean;
      break;
    }
    case Command::kFilling: {
      const ParsedManifold pm = parse_manifold_details(config.manifold_spec);
      const ChartPoint base = region_base(pm.manifold, config.region);
      const double til = til_inner_radius(pm.manifold, base);
      const double radius =
          std::min(config.region.present ? config.region.radius : 0.5,
                   0.5 * til);
      Rng rng = Rng::stream(config.seed, 0xf111);
      const ChartPoint p = sample_in_ball(pm.manifold, base, radius, rng);
      const ChartPoint q = sample_in_ball(pm.manifold, base, radius, rng);
      const ChartPoint x = sample_in_ball(pm.manifold, base, radius, rng);
      const double deviation =
          flat_filling_check(pm.manifold, p, q, x, config.grid);
      payload["type"] = "filling";
      payload["manifold"] = pm.manifold.describe();
      payload["grid"] = config.grid;
      payload["deviation"] = deviation;
      payload["p"] = chart_point_json(p);
      payload["q"] = chart_point_json(q);
      payload["x"] = chart_point_json(x);
      payload["seed"] = config.seed;
      exit_code = kExitClean;
      break;
    }
  }

  RunResult result;
  result.exit_code = exit_code;
  result.payload_text = internal::canonical_dump(payload);
  json envelope;
  envelope["format"] = "bipolarlab-report";
  envelope["version"] = 1;
  json tool;
  tool["name"] = kToolName;
  tool["version"] = kToolVersion;
  envelope["tool"] = std::move(tool);
  envelope["timestamp"] = iso_timestamp();
  envelope["config"] = config_json(config);
  envelope["payload"] = std::move(payload);
  envelope["payload_checksum"] = checksum_string(result.payload_text);
  result.envelope_text = internal::canonical_dump(envelope) + "\n";
  result.dumped_files = std::move(dumped);

  if (!config.out_path.empty()) {
    spill_file(config.out_path, result.envelope_text);
  }
  return result;
}

}  // namespace bipolar
