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

#include "rogue/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rogue/error.hpp"

namespace rogue {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      // JSON has no literal for non-finite numbers.
      out += std::isfinite(d) ? format_double(d) : "null";
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

void NdjsonWriter::write(const json& record) {
  out_ << dump_json(record) << '\n';
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<Eigen::ArrayXd>& columns) {
  require(header.size() == columns.size(), ErrorKind::validation,
          "csv: header and column count differ");
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << '\n';
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    require(c.size() == rows, ErrorKind::validation,
            "csv: columns have different lengths");
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << (j ? "," : "") << format_double(columns[j](i));
    out << '\n';
  }
}

}  // namespace rogue
