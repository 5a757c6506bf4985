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

#include "bipolar/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace bipolar {

namespace internal {

namespace {

void emit(const nlohmann::json& v, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (v.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        emit(nlohmann::json(it.key()), out);
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      return;
    }
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        emit(item, out);
      }
      out += ']';
      return;
    }
    case value_t::string: {
      // nlohmann's own escaping is deterministic.
      out += nlohmann::json(v.get<std::string>()).dump();
      return;
    }
    case value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case value_t::number_integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRId64, v.get<std::int64_t>());
      out += buf;
      return;
    }
    case value_t::number_unsigned: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRIu64, v.get<std::uint64_t>());
      out += buf;
      return;
    }
    case value_t::number_float: {
      const double x = v.get<double>();
      if (std::isnan(x)) {
        out += "\"NaN\"";
      } else if (std::isinf(x)) {
        out += x > 0 ? "\"Infinity\"" : "\"-Infinity\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
      }
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  out.reserve(256);
  emit(value, out);
  return out;
}

}  // namespace internal

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string checksum_string(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, fnv1a64(bytes));
  return buf;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

std::string instance_to_text(const ComparisonInstance& inst) {
  nlohmann::json j;
  j["format"] = "bipolarlab-instance";
  j["version"] = 1;
  j["k"] = inst.k;
  j["l"] = inst.l;
  j["metric_waiver"] = inst.metric_waiver;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < inst.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < inst.n(); ++c) row.push_back(inst.dist(i, c));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  return internal::canonical_dump(j) + "\n";
}

ComparisonInstance instance_from_text(const std::string& text,
                                      const std::string& where) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(where + ": not valid JSON: " + e.what());
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) {
      throw SchemaError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
  };
  if (require("format").get<std::string>() != "bipolarlab-instance") {
    throw SchemaError(where + ": format: expected 'bipolarlab-instance'");
  }
  if (!require("k").is_number_integer() || !require("l").is_number_integer()) {
    throw SchemaError(where + ": k, l: expected integers");
  }
  const int k = j["k"].get<int>();
  const int l = j["l"].get<int>();
  if (k < 0 || l < 0) throw SchemaError(where + ": k, l: must be >= 0");
  const int n = k + l + 2;
  const bool waiver =
      j.contains("metric_waiver") && j["metric_waiver"].get<bool>();
  const nlohmann::json& rows = require("dist");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw SchemaError(where + ": dist: expected " + std::to_string(n) +
                      " rows");
  }
  Eigen::MatrixXd dist(n, n);
  for (int i = 0; i < n; ++i) {
    const nlohmann::json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw SchemaError(where + ": dist[" + std::to_string(i) +
                        "]: expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const nlohmann::json& cell = row.at(c);
      if (!cell.is_number()) {
        throw SchemaError(where + ": dist[" + std::to_string(i) + "][" +
                          std::to_string(c) + "]: expected a number");
      }
      dist(i, c) = cell.get<double>();
    }
  }
  for (int i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) {
      throw SchemaError(where + ": dist[" + std::to_string(i) + "][" +
                        std::to_string(i) + "]: diagonal must be zero");
    }
    for (int c = i + 1; c < n; ++c) {
      if (dist(i, c) != dist(c, i)) {
        throw SchemaError(where + ": dist[" + std::to_string(c) + "][" +
                          std::to_string(i) + "]: matrix asymmetry");
      }
      if (dist(i, c) < 0.0) {
        throw SchemaError(where + ": dist[" + std::to_string(i) + "][" +
                          std::to_string(c) + "]: negative distance");
      }
    }
  }
  try {
    return build_instance(k, l, std::move(dist), waiver);
  } catch (const ValidationError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

void write_instance_file(const std::string& path,
                         const ComparisonInstance& inst) {
  spill_file(path, instance_to_text(inst));
}

ComparisonInstance read_instance_file(const std::string& path) {
  return instance_from_text(slurp_file(path), path);
}

}  // namespace bipolar
