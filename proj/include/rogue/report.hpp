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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace rogue {

/// Compact JSON with every floating-point number printed as a 17 significant
/// digit decimal, so doubles round-trip exactly. Keys keep nlohmann's sorted
/// order, which makes the output byte-stable.
std::string dump_json(const nlohmann::json& value);

/// "%.17g" rendering; non-finite values print as "inf", "-inf", "nan".
std::string format_double(double value);

/// Line-oriented writer for analysis reports: one JSON object per line.
class NdjsonWriter {
 public:
  explicit NdjsonWriter(std::ostream& out) : out_(out) {}

  void write(const nlohmann::json& record);

 private:
  std::ostream& out_;
};

/// Two-column (or wider) CSV with a header line.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<Eigen::ArrayXd>& columns);

}  // namespace rogue
