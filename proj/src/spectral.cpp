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

#include "rogue/spectral.hpp"

#include <cmath>

#include "rogue/error.hpp"
#include "rogue/rng.hpp"
#include "rogue/sampler.hpp"

namespace rogue {

SpectralEnsemble synth_spectral_ensemble(const Eigen::ArrayXd& pump_values,
                                         const Eigen::ArrayXd& wavelengths,
                                         const Eigen::ArrayXd& kappa_profile,
                                         bool speckle, std::uint64_t seed) {
  const Eigen::Index pulses = pump_values.size();
  const Eigen::Index bins = wavelengths.size();
  require(bins >= 1 && bins % 2 == 1, ErrorKind::validation,
          "spectral grid needs an odd number of bins centred on the pump");
  require(kappa_profile.size() == bins, ErrorKind::validation,
          "kappa_profile must have one entry per bin");
  require((kappa_profile >= 0.0).all() && kappa_profile.isFinite().all(),
          ErrorKind::validation, "kappa_profile must be >= 0");
  require(pulses >= 1, ErrorKind::validation, "need at least one pump value");
  require(pump_values.isFinite().all(), ErrorKind::validation,
          "pump values must be finite");
  const double centre = wavelengths(bins / 2);
  const double span = (wavelengths - centre).abs().maxCoeff();
  for (Eigen::Index i = 0; i < bins; ++i) {
    const double mirror = wavelengths(bins - 1 - i);
    require(std::abs((wavelengths(i) - centre) + (mirror - centre)) <=
                1e-9 * std::max(span, 1.0),
            ErrorKind::validation,
            "spectral grid is not symmetric around the pump bin");
  }

  require(kappa_profile.maxCoeff() * pump_values.maxCoeff() <= kMaxGain,
          ErrorKind::range, "spectral gain kappa*N_p exceeds the sinh^2 range");

  Stream rng(substream_seed(seed, 0xB1B5ULL));
  SpectralEnsemble out;
  out.wavelengths = wavelengths;
  out.spectra.resize(pulses, bins);
  for (Eigen::Index p = 0; p < pulses; ++p) {
    const double np = std::max(pump_values(p), 0.0);
    for (Eigen::Index i = 0; i <= bins / 2; ++i) {
      const Eigen::Index j = bins - 1 - i;
      const double factor = speckle ? rng.exponential() : 1.0;
      const double si = std::sinh(kappa_profile(i) * np);
      const double sj = std::sinh(kappa_profile(j) * np);
      out.spectra(p, i) = factor * si * si;
      out.spectra(p, j) = factor * sj * sj;
    }
  }
  return out;
}

SpectralEnsemble synth_spectral_ensemble(const DistributionSpec& pump_spec,
                                         const Eigen::ArrayXd& wavelengths,
                                         const Eigen::ArrayXd& kappa_profile,
                                         bool speckle, std::int64_t pulses,
                                         std::uint64_t seed) {
  require(pulses >= 1, ErrorKind::validation, "pulses must be >= 1");
  // Pump values come from the regular sampler so they follow the same law.
  const PulseTrain pump = sample(pump_spec, pulses, seed);
  return synth_spectral_ensemble(pump.values, wavelengths, kappa_profile,
                                 speckle, seed);
}

}  // namespace rogue
