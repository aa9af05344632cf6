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

#include <cmath>
#include <cstdint>
#include <random>

namespace rogue {

/// Pulses per RNG substream.
inline constexpr std::int64_t kDefaultChunkSize = std::int64_t{1} << 16;

/// Output of one SplitMix64 step from state x (golden-ratio increment, then
/// the finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Seed of substream `index` derived from `master_seed`:
///   mix64(mix64(master_seed) ^ (0x9E3779B97F4A7C15 * (index + 1))).
/// Independent of how chunks are scheduled across workers.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Per-chunk generator with the variates the sampler needs. The transforms
/// are written out here (not std:: distributions) so streams are
/// bit-identical across standard library implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential.
  double exponential() { return -std::log1p(-uniform()); }

  /// Standard normal (Marsaglia polar method, second value cached).
  double normal();

  /// Uniform index in [0, n).
  std::uint64_t index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rogue
