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

#include <Eigen/Core>

#include "rogue/spec.hpp"

namespace rogue {

/// Per-pulse spectral densities S(lambda): one row per pulse, one column per
/// wavelength bin.
struct SpectralEnsemble {
  Eigen::ArrayXd wavelengths;  // bin centers, nm
  Eigen::MatrixXd spectra;     // [pulse x bin], >= 0
};

/// Synthetic signal/idler ensemble. Bins must be symmetric around the
/// central (pump) bin. Per pulse one pump value N_p is drawn from
/// `pump_spec`; the bin pair (i, B-1-i) receives sinh^2(kappa_i N_p) in bin i
/// and sinh^2(kappa_{B-1-i} N_p) in its mirror, both multiplied by one
/// shared unit-mean exponential factor when `speckle` is set.
SpectralEnsemble synth_spectral_ensemble(const DistributionSpec& pump_spec,
                                         const Eigen::ArrayXd& wavelengths,
                                         const Eigen::ArrayXd& kappa_profile,
                                         bool speckle, std::int64_t pulses,
                                         std::uint64_t seed);

/// Same construction from given per-pulse pump photon numbers.
SpectralEnsemble synth_spectral_ensemble(const Eigen::ArrayXd& pump_values,
                                         const Eigen::ArrayXd& wavelengths,
                                         const Eigen::ArrayXd& kappa_profile,
                                         bool speckle, std::uint64_t seed);

}  // namespace rogue
