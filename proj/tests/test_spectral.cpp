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

#include <sstream>

#include <gtest/gtest.h>

#include "rogue/error.hpp"
#include "rogue/estimators.hpp"
#include "rogue/spectral.hpp"

namespace {

using namespace rogue;

Eigen::ArrayXd grid(int bins, double centre = 800.0, double step = 2.0) {
  return Eigen::ArrayXd::LinSpaced(bins, centre - step * (bins / 2),
                                   centre + step * (bins / 2));
}

Eigen::ArrayXd bell(int bins, double peak) {
  Eigen::ArrayXd k(bins);
  for (int i = 0; i < bins; ++i) {
    const double d = (i - bins / 2) / (0.35 * bins);
    k(i) = peak * std::exp(-d * d);
  }
  return k;
}

TEST(Spectral, ZeroGainGivesZeroEnsembleAndMaskedG2) {
  const SpectralEnsemble e = synth_spectral_ensemble(
      thermal(1.0), grid(9), Eigen::ArrayXd::Zero(9), true, 100, 1);
  EXPECT_TRUE((e.spectra.array() == 0.0).all());
  const G2Matrix g2 = spectral_g2_matrix(e);
  EXPECT_TRUE(g2.masked_bins.all());
  EXPECT_TRUE((g2.values.array() == kMaskedG2).all());
}

TEST(Spectral, ConstantPumpWithoutSpeckleIsFlat) {
  const Eigen::ArrayXd pump = Eigen::ArrayXd::Constant(500, 1.3);
  const SpectralEnsemble e = synth_spectral_ensemble(pump, grid(11), bell(11, 1.0), false, 3);
  for (Eigen::Index p = 1; p < e.spectra.rows(); ++p)
    EXPECT_TRUE(e.spectra.row(p) == e.spectra.row(0));
  const G2Matrix g2 = spectral_g2_matrix(e);
  EXPECT_TRUE(((g2.values.array() - 1.0).abs() < 1e-12).all());
}

TEST(Spectral, MatchesBruteForceMoments) {
  const int bins = 15;
  const SpectralEnsemble e =
      synth_spectral_ensemble(thermal(1.0), grid(bins), bell(bins, 1.2), true, 10'000, 77);
  const G2Matrix g2 = spectral_g2_matrix(e);
  const Eigen::Index P = e.spectra.rows();
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      double sij = 0.0, si = 0.0, sj = 0.0;
      for (Eigen::Index p = 0; p < P; ++p) {
        sij += e.spectra(p, i) * e.spectra(p, j);
        si += e.spectra(p, i);
        sj += e.spectra(p, j);
      }
      const double ref = (sij / P) / ((si / P) * (sj / P));
      EXPECT_NEAR(g2.values(i, j), ref, 1e-10 * ref) << i << ' ' << j;
    }
  }
  for (int i = 0; i < bins; ++i) {
    EXPECT_GT(g2.values(i, i), 2.0) << i;
    EXPECT_GT(g2.values(i, bins - 1 - i), 1.0) << i;
  }
  EXPECT_DOUBLE_EQ(g2.values(3, 9), g2.values(9, 3));
}

TEST(Spectral, SpeckleCorrelatesOnlyMirrorBins) {
  // Constant pump: only the shared exponential factor correlates bins, so
  // paired bins show g2 = 2 and unpaired ones g2 = 1.
  const int bins = 7;
  const Eigen::ArrayXd pump = Eigen::ArrayXd::Constant(200'000, 1.0);
  const G2Matrix g2 = spectral_g2_matrix(
      synth_spectral_ensemble(pump, grid(bins), bell(bins, 1.0), true, 6));
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      const bool paired = i == j || i + j == bins - 1;
      EXPECT_NEAR(g2.values(i, j), paired ? 2.0 : 1.0, 0.03) << i << ' ' << j;
    }
  }
}

TEST(Spectral, SingleBinEqualsTrainG2) {
  const SpectralEnsemble e = synth_spectral_ensemble(
      superbunched(1.0), grid(1), Eigen::ArrayXd::Constant(1, 0.8), true, 20'000, 4);
  const G2Matrix g2 = spectral_g2_matrix(e);
  const Eigen::ArrayXd bin = e.spectra.col(0).array();
  EXPECT_NEAR(g2.values(0, 0), empirical_gm(bin, 2).value, 1e-12 * g2.values(0, 0));
}

TEST(Spectral, DeterministicAndValidated) {
  const auto a = synth_spectral_ensemble(thermal(1.0), grid(5), bell(5, 1.0), true, 50, 9);
  const auto b = synth_spectral_ensemble(thermal(1.0), grid(5), bell(5, 1.0), true, 50, 9);
  EXPECT_EQ(a.spectra, b.spectra);
  EXPECT_TRUE((a.spectra.array() >= 0.0).all());

  Eigen::ArrayXd skew = grid(5);
  skew(4) += 0.5;
  EXPECT_THROW(synth_spectral_ensemble(thermal(1.0), skew, bell(5, 1.0), true, 10, 1), Error);
  EXPECT_THROW(synth_spectral_ensemble(thermal(1.0), grid(4), bell(4, 1.0), true, 10, 1), Error);
  EXPECT_THROW(synth_spectral_ensemble(thermal(1.0), grid(5), bell(3, 1.0), true, 10, 1), Error);
  Eigen::ArrayXd negative = bell(5, 1.0);
  negative(0) = -1.0;
  EXPECT_THROW(synth_spectral_ensemble(thermal(1.0), grid(5), negative, true, 10, 1), Error);
}

TEST(Spectral, CsvHasWavelengthHeader) {
  const auto e = synth_spectral_ensemble(thermal(1.0), grid(3), bell(3, 1.0), true, 100, 2);
  std::ostringstream os;
  write_g2_csv(os, spectral_g2_matrix(e));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "wavelength_nm,798,800,802");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

}  // namespace
