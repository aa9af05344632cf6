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

#include <Eigen/Core>

#include "rogue/spec.hpp"

namespace rogue {

/// Density tabulated on a monotonically increasing grid. Output of the
/// detector-noise convolution; abscissae may be negative.
struct TabulatedPdf {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd density;
  /// |trapezoidal integral - 1|
  double normalization_error = 0.0;

  /// Cumulative trapezoid, linearly interpolated; 0 below and the total
  /// mass above the grid.
  double cdf(double x) const;
  double mean() const;
  double integral() const;

 private:
  mutable Eigen::ArrayXd cumulative_;
  const Eigen::ArrayXd& cumulative() const;
};

/// Grid from -6 sigma to the 1 - 1e-8 quantile plus 6 sigma, spacing
/// sigma/10. Throws Error(resolution) when that needs more than `max_points`.
Eigen::ArrayXd noise_grid(const DistributionSpec& spec, double sigma,
                          Eigen::Index max_points = 20'000'000);

/// pdf(spec) convolved with a zero-mean Gaussian of standard deviation
/// sigma. The grid must span [-6 sigma, quantile(1 - 1e-6)] with spacing at
/// most sigma/10; otherwise Error(resolution) reports the required bounds.
/// The noise-free law is discretized into cells of width sigma/20 with
/// exact mass and first moment, each replaced by a uniform block with the
/// same mass and mean, so divergent densities at 0 keep the mean exact.
TabulatedPdf convolve_with_noise(const DistributionSpec& spec, double sigma,
                                 const Eigen::ArrayXd& grid);

}  // namespace rogue
