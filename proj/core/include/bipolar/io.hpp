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

#ifndef BIPOLAR_IO_HPP_
#define BIPOLAR_IO_HPP_

#include <cstdint>
#include <string>

#include "bipolar/distgeo.hpp"

namespace bipolar {

// Instance files: a JSON record carrying k, l, the dense row-major distance
// matrix at 17 significant digits, and the metric waiver flag. Writing then
// reading then writing again reproduces the bytes exactly.
std::string instance_to_text(const ComparisonInstance& inst);
ComparisonInstance instance_from_text(const std::string& text,
                                      const std::string& where = "<string>");

void write_instance_file(const std::string& path,
                         const ComparisonInstance& inst);
ComparisonInstance read_instance_file(const std::string& path);

// FNV-1a 64-bit checksum used by the report envelope.
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_string(const std::string& bytes);

// Whole-file helpers.
std::string slurp_file(const std::string& path);
void spill_file(const std::string& path, const std::string& content);

}  // namespace bipolar

#endif  // BIPOLAR_IO_HPP_
