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
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace rogue {

// Source laws. Photon numbers are continuous and in photons/pulse.

/// Single beam of nondegenerate BSV: exponential photon-number law.
struct Thermal {
  double mean = 0.0;
  bool operator==(const Thermal&) const = default;
};

/// Degenerate BSV: Gamma law with shape 1/2 (envelope, no even/odd structure).
struct Superbunched {
  double mean = 0.0;
  bool operator==(const Superbunched&) const = default;
};

/// Four-wave mixing N = sinh^2(kappa N_p) from a thermal pump. `kappa_np`
/// is the dimensionless mean gain kappa <N_p>.
struct FwmThermal {
  double kappa_np = 0.0;
  bool operator==(const FwmThermal&) const = default;
};

/// Four-wave mixing from a superbunched pump.
struct FwmSuperbunched {
  double kappa_np = 0.0;
  bool operator==(const FwmSuperbunched&) const = default;
};

using Source = std::variant<Thermal, Superbunched, FwmThermal, FwmSuperbunched>;

/// Full description of a light statistic: source law, optional n-th harmonic
/// power law, number of independent modes, and additive detector noise.
/// Shared by the analytic and the Monte Carlo code paths.
struct DistributionSpec {
  Source source = Thermal{1.0};
  int harmonic_order = 1;      // 1: no harmonic transform
  double harmonic_mean = 0.0;  // <N_{n omega}> when harmonic_order >= 2
  int modes = 1;
  double noise_sigma = 0.0;

  bool operator==(const DistributionSpec&) const = default;
};

inline constexpr int kSpecVersion = 1;

bool is_fwm(const DistributionSpec& spec);
bool is_harmonic(const DistributionSpec& spec);

/// Source mean for Thermal/Superbunched; throws for FWM sources.
double source_mean(const DistributionSpec& spec);

/// Mean photon number of the (noise-free) law; +inf for FWM sources whose
/// tail exponent is <= 1, otherwise the finite mean of the sinh^2 image.
double mean_photons(const DistributionSpec& spec);

/// Throws Error(validation) or Error(unsupported) naming the offending field.
void validate(const DistributionSpec& spec);

/// Copy without detector noise.
DistributionSpec noise_free(DistributionSpec spec);

// Convenience builders.
DistributionSpec thermal(double mean, int modes = 1);
DistributionSpec superbunched(double mean, int modes = 1);
DistributionSpec thermal_harmonic(int order, double harmonic_mean,
                                  double fundamental_mean = 1.0);
DistributionSpec superbunched_harmonic(int order, double harmonic_mean,
                                       double fundamental_mean = 1.0);
DistributionSpec fwm_thermal(double kappa_np, int modes = 1);
DistributionSpec fwm_superbunched(double kappa_np, int modes = 1);

/// Versioned key-value document:
///   {"spec_version": 1, "source": "thermal", "mean": 1.33e5,
///    "harmonic_order": 1, "harmonic_mean": 0, "modes": 1, "noise_sigma": 0}
/// FWM sources carry "kappa_np" instead of "mean".
nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& doc);

/// Canonical serialization (sorted keys, 17 significant digits).
std::string canonical_string(const DistributionSpec& spec);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// fnv1a64 of the canonical serialization.
std::uint64_t digest(const DistributionSpec& spec);

std::string describe(const DistributionSpec& spec);

}  // namespace rogue
