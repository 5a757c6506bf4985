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

#ifndef BIPOLAR_ERRORS_HPP_
#define BIPOLAR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bipolar {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input: bad spec string, malformed matrix, out-of-range parameter.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A point or a geodesic left the declared chart/profile domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// The two-point boundary value problem did not converge within budget.
class BvpError : public Error {
 public:
  explicit BvpError(const std::string& what) : Error(what) {}
};

// A finite-difference evaluation whose error estimate disqualifies the value.
class UnresolvedError : public Error {
 public:
  explicit UnresolvedError(const std::string& what) : Error(what) {}
};

// File format violations, reported with a field path.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

}  // namespace bipolar

#endif  // BIPOLAR_ERRORS_HPP_
