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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rogue/rng.hpp"
#include "rogue/spec.hpp"

namespace rogue {

struct TrainMeta {
  std::string spec;  // canonical spec serialization, empty when unknown
  std::uint64_t master_seed = 0;
  std::int64_t pulse_count = 0;
  std::int64_t chunk_size = kDefaultChunkSize;
  std::vector<std::string> history;
  bool detected = false;  // noise or saturation applied; no stage may follow

  bool operator==(const TrainMeta&) const = default;
};

/// Per-pulse photon numbers plus provenance. Values are >= 0 until a
/// detector stage has run.
struct PulseTrain {
  Eigen::ArrayXd values;
  TrainMeta meta;

  Eigen::Index size() const { return values.size(); }
};

struct DetectorModel {
  double noise_sigma = 0.0;
  std::optional<double> saturation;  // hard clamp, photons/pulse
};

void validate(const DetectorModel& model);

struct ParallelOptions {
  int threads = 0;  // 0: hardware concurrency
  std::int64_t chunk_size = kDefaultChunkSize;
};

/// Draws `pulses` values of `spec`. Chunk c uses the substream
/// substream_seed(master_seed, c), so the output depends on
/// (spec, pulses, master_seed, chunk_size) and never on the thread count.
PulseTrain sample(const DistributionSpec& spec, std::int64_t pulses,
                  std::uint64_t master_seed, const ParallelOptions& opts = {});

/// N -> K N^n.
PulseTrain harmonic_transform(PulseTrain train, int n, double conversion);

/// N_p -> sinh^2(kappa N_p). Throws Error(range) if kappa N_p > 350.
PulseTrain fwm_transform(PulseTrain train, double kappa);

/// Deterministic attenuation N -> eta N, eta in (0, 1].
PulseTrain apply_loss(PulseTrain train, double eta);

/// Adds Gaussian(0, sigma) noise, then clamps at the saturation ceiling.
PulseTrain apply_detector(PulseTrain train, const DetectorModel& model,
                          std::uint64_t noise_seed,
                          const ParallelOptions& opts = {});

/// Largest gain argument accepted before sinh^2 would approach overflow.
inline constexpr double kMaxGain = 350.0;

}  // namespace rogue
