// Copyright 2026 The Rogue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace rogue {

enum class ErrorKind {
  validation,     // malformed spec, config, or argument
  unsupported,    // combination with no closed form (harmonic of multimode)
  undefined,      // quantity does not exist (moments of a Pareto-like law)
  resolution,     // numeric grid too coarse or too narrow
  range,          // result would overflow double
  ordering,       // pipeline stage applied out of order
  format,         // corrupt or unreadable persisted data
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by moment-based queries on regularly varying laws. Carries the
/// Pareto tail exponent so callers can report why no moment exists.
class MomentsUndefined : public Error {
 public:
  MomentsUndefined(const std::string& what, double tail_exponent)
      : Error(ErrorKind::undefined, what), tail_exponent_(tail_exponent) {}

  double tail_exponent() const noexcept { return tail_exponent_; }

 private:
  double tail_exponent_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace rogue
