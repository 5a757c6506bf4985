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

#ifndef BIPOLAR_SRC_JSON_IO_HPP_
#define BIPOLAR_SRC_JSON_IO_HPP_

#include <json.hpp>
#include <string>

namespace bipolar {
namespace internal {

// Canonical serialization: object keys in sorted order (nlohmann's default
// map), doubles at 17 significant digits, no whitespace. Writing, parsing,
// and writing again is byte-stable, which the report checksum relies on.
std::string canonical_dump(const nlohmann::json& value);

}  // namespace internal
}  // namespace bipolar

#endif  // BIPOLAR_SRC_JSON_IO_HPP_
