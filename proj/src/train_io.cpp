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

#include "rogue/train_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "rogue/error.hpp"
#include "rogue/report.hpp"

namespace rogue {

using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::array<unsigned char, sizeof(T)> b;
    std::memcpy(b.data(), &v, sizeof(T));
    std::reverse(b.begin(), b.end());
    std::memcpy(&v, b.data(), sizeof(T));
  }
  return v;
}

template <typename T>
void put(unsigned char* at, T v) {
  v = to_little(v);
  std::memcpy(at, &v, sizeof(T));
}

template <typename T>
T get(const unsigned char* at) {
  T v;
  std::memcpy(&v, at, sizeof(T));
  return to_little(v);
}

json meta_json(const TrainMeta& meta) {
  return json{{"spec", meta.spec},
              {"master_seed", meta.master_seed},
              {"pulse_count", meta.pulse_count},
              {"chunk_size", meta.chunk_size},
              {"history", meta.history},
              {"detected", meta.detected}};
}

TrainMeta meta_from_json(const json& doc) {
  try {
    TrainMeta meta;
    meta.spec = doc.at("spec").get<std::string>();
    meta.master_seed = doc.at("master_seed").get<std::uint64_t>();
    meta.pulse_count = doc.at("pulse_count").get<std::int64_t>();
    meta.chunk_size = doc.at("chunk_size").get<std::int64_t>();
    meta.history = doc.at("history").get<std::vector<std::string>>();
    meta.detected = doc.at("detected").get<bool>();
    return meta;
  } catch (const json::exception& e) {
    fail(ErrorKind::format, std::string("train meta: ") + e.what());
  }
}

void write_ndjson(std::ostream& out, const PulseTrain& train) {
  json head = meta_json(train.meta);
  head["type"] = "meta";
  head["format"] = "pstn-ndjson";
  head["version"] = kTrainFormatVersion;
  out << dump_json(head) << '\n';
  for (Eigen::Index i = 0; i < train.size(); ++i)
    out << "{\"index\":" << i << ",\"value\":" << format_double(train.values(i))
        << "}\n";
}

void write_binary(std::ostream& out, const PulseTrain& train) {
  const std::string trailer = dump_json(meta_json(train.meta));
  std::array<unsigned char, kBinaryHeaderBytes> header{};
  std::memcpy(header.data(), "PSTN", 4);
  put<std::uint32_t>(header.data() + 4, kTrainFormatVersion);
  put<std::uint64_t>(header.data() + 8,
                     static_cast<std::uint64_t>(train.size()));
  put<std::uint64_t>(header.data() + 16, train.meta.master_seed);
  const std::uint64_t spec_digest =
      train.meta.spec.empty() ? 0 : fnv1a64(train.meta.spec);
  put<std::uint64_t>(header.data() + 24, spec_digest);
  put<std::uint64_t>(header.data() + 32,
                     static_cast<std::uint64_t>(train.meta.chunk_size));
  put<std::uint64_t>(header.data() + 40, trailer.size());
  put<std::uint32_t>(header.data() + 48, train.meta.detected ? 1u : 0u);
  out.write(reinterpret_cast<const char*>(header.data()), header.size());
  std::vector<unsigned char> body(sizeof(double) * train.size());
  for (Eigen::Index i = 0; i < train.size(); ++i)
    put<double>(body.data() + sizeof(double) * i, train.values(i));
  out.write(reinterpret_cast<const char*>(body.data()),
            static_cast<std::streamsize>(body.size()));
  out << trailer;
}

PulseTrain read_binary(std::istream& in) {
  std::array<unsigned char, kBinaryHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  require(in.gcount() == static_cast<std::streamsize>(header.size()),
          ErrorKind::format, "binary train: truncated header");
  require(std::memcmp(header.data(), "PSTN", 4) == 0, ErrorKind::format,
          "binary train: bad magic");
  const auto version = get<std::uint32_t>(header.data() + 4);
  require(version == kTrainFormatVersion, ErrorKind::format,
          "binary train: unsupported version " + std::to_string(version));
  const auto count = get<std::uint64_t>(header.data() + 8);
  const auto trailer_bytes = get<std::uint64_t>(header.data() + 40);
  require(count < (std::uint64_t{1} << 40) && trailer_bytes < (1u << 30),
          ErrorKind::format, "binary train: implausible header sizes");
  // Check the declared sizes against the stream before allocating.
  const std::streampos here = in.tellg();
  if (here != std::streampos(-1)) {
    in.seekg(0, std::ios::end);
    const std::streampos end = in.tellg();
    in.seekg(here);
    require(static_cast<std::uint64_t>(end - here) >=
                sizeof(double) * count + trailer_bytes,
            ErrorKind::format, "binary train: file shorter than its header declares");
  }

  PulseTrain train;
  train.values.resize(static_cast<Eigen::Index>(count));
  std::vector<unsigned char> body(sizeof(double) * count);
  in.read(reinterpret_cast<char*>(body.data()),
          static_cast<std::streamsize>(body.size()));
  require(in.gcount() == static_cast<std::streamsize>(body.size()),
          ErrorKind::format, "binary train: truncated values");
  for (std::uint64_t i = 0; i < count; ++i)
    train.values(static_cast<Eigen::Index>(i)) =
        get<double>(body.data() + sizeof(double) * i);

  std::string trailer(trailer_bytes, '\0');
  in.read(trailer.data(), static_cast<std::streamsize>(trailer_bytes));
  require(in.gcount() == static_cast<std::streamsize>(trailer_bytes),
          ErrorKind::format, "binary train: truncated trailer");
  json doc = json::parse(trailer, nullptr, false);
  require(!doc.is_discarded(), ErrorKind::format,
          "binary train: trailer is not JSON");
  train.meta = meta_from_json(doc);
  const std::uint64_t spec_digest =
      train.meta.spec.empty() ? 0 : fnv1a64(train.meta.spec);
  require(train.meta.pulse_count == static_cast<std::int64_t>(count) &&
              train.meta.master_seed == get<std::uint64_t>(header.data() + 16) &&
              spec_digest == get<std::uint64_t>(header.data() + 24),
          ErrorKind::format, "binary train: header and trailer disagree");
  return train;
}

PulseTrain read_ndjson(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::format,
          "ndjson train: empty input");
  json head = json::parse(line, nullptr, false);
  require(!head.is_discarded() && head.is_object() &&
              head.value("type", "") == "meta" &&
              head.value("format", "") == "pstn-ndjson",
          ErrorKind::format, "ndjson train: missing meta record");
  require(head.value("version", 0u) == kTrainFormatVersion, ErrorKind::format,
          "ndjson train: unsupported version");
  PulseTrain train;
  train.meta = meta_from_json(head);
  require(train.meta.pulse_count >= 0, ErrorKind::format,
          "ndjson train: negative pulse_count");
  train.values.resize(train.meta.pulse_count);
  std::int64_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    require(!rec.is_discarded() && rec.contains("index") &&
                rec.contains("value") && rec["index"].is_number_integer() &&
                rec["value"].is_number(),
            ErrorKind::format,
            "ndjson train: bad record at line " + std::to_string(seen + 2));
    const auto index = rec["index"].get<std::int64_t>();
    require(index == seen && index < train.meta.pulse_count, ErrorKind::format,
            "ndjson train: records out of order at index " +
                std::to_string(index));
    train.values(index) = rec["value"].get<double>();
    ++seen;
  }
  require(seen == train.meta.pulse_count, ErrorKind::format,
          "ndjson train: expected " + std::to_string(train.meta.pulse_count) +
              " records, found " + std::to_string(seen));
  return train;
}

}  // namespace

TrainFormat format_for_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".ndjson" || ext == ".jsonl") return TrainFormat::ndjson;
  if (ext == ".bin" || ext == ".pstn") return TrainFormat::binary;
  fail(ErrorKind::validation,
       "cannot infer train format from extension '" + ext +
           "'; use .ndjson/.jsonl or .bin/.pstn");
}

void write_train(std::ostream& out, const PulseTrain& train,
                 TrainFormat format) {
  require(train.meta.pulse_count == train.size(), ErrorKind::validation,
          "pulse train meta does not match its value count");
  if (format == TrainFormat::ndjson) {
    write_ndjson(out, train);
  } else {
    write_binary(out, train);
  }
}

void write_train(const std::filesystem::path& path, const PulseTrain& train,
                 TrainFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_train(out, train, format);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_train(const std::filesystem::path& path, const PulseTrain& train) {
  write_train(path, train, format_for_path(path));
}

PulseTrain read_train(std::istream& in) {
  const int first = in.peek();
  require(first != std::char_traits<char>::eof(), ErrorKind::format,
          "train: empty input");
  if (first == 'P') return read_binary(in);
  return read_ndjson(in);
}

PulseTrain read_train(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::format,
          "cannot open train file " + path.string());
  return read_train(in);
}

}  // namespace rogue
