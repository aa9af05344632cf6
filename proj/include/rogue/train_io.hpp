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

#include <filesystem>
#include <iosfwd>

#include "rogue/sampler.hpp"

namespace rogue {

enum class TrainFormat { ndjson, binary };

/// .ndjson/.jsonl -> ndjson; .bin/.pstn -> binary.
TrainFormat format_for_path(const std::filesystem::path& path);

// NDJSON layout: a meta record {"type":"meta", ...} followed by one
// {"index": i, "value": v} record per pulse.
//
// Binary layout (little endian):
//   0  char[4] "PSTN"      4  u32 version
//   8  u64 pulse_count    16  u64 master_seed
//  24  u64 spec digest    32  u64 chunk_size
//  40  u64 trailer bytes  48  u32 flags (bit 0: detected)
//  52  reserved (zero) up to byte 64
//  64  pulse_count f64 values, then a JSON trailer with spec and history.
inline constexpr std::uint32_t kTrainFormatVersion = 1;
inline constexpr std::size_t kBinaryHeaderBytes = 64;

void write_train(std::ostream& out, const PulseTrain& train, TrainFormat format);
void write_train(const std::filesystem::path& path, const PulseTrain& train,
                 TrainFormat format);
void write_train(const std::filesystem::path& path, const PulseTrain& train);

/// Detects the format from the leading bytes. Throws Error(format) on a bad
/// magic, version, size, or record.
PulseTrain read_train(std::istream& in);
PulseTrain read_train(const std::filesystem::path& path);

}  // namespace rogue
