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

#include "rogue/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rogue/distributions.hpp"
#include "rogue/error.hpp"
#include "rogue/special.hpp"

namespace rogue {
namespace {

// First moment of the law restricted to each cell [edges(i), edges(i+1)].
// Linear and power images reduce to incomplete gammas of a shifted shape;
// the sinh^2 image uses integration by parts against the CCDF.
Eigen::ArrayXd cell_first_moments(const DistributionSpec& law,
                                  const Eigen::ArrayXd& edges,
                                  const Eigen::ArrayXd& upper) {
  const GammaImage g = gamma_image(law);
  const Eigen::Index cells = edges.size() - 1;
  Eigen::ArrayXd out(cells);
  if (g.map != GammaImage::Map::sinh2) {
    const int beta = g.map == GammaImage::Map::linear ? 1 : g.power;
    const double total = g.scale * special::rising_factorial(g.shape, beta);
    const double s = g.shape + beta;
    Eigen::ArrayXd p(cells + 1), q(cells + 1);
    for (Eigen::Index i = 0; i <= cells; ++i) {
      const double u = g.inverse(edges(i));
      p(i) = special::gamma_p(s, u);
      q(i) = special::gamma_q(s, u);
    }
    for (Eigen::Index i = 0; i < cells; ++i)
      out(i) = total * (q(i) > 0.5 ? p(i + 1) - p(i) : q(i) - q(i + 1));
    return out;
  }
  for (Eigen::Index i = 0; i < cells; ++i) {
    const double a = edges(i);
    const double b = edges(i + 1);
    const double mid = ccdf(law, 0.5 * (a + b));
    const double area = (b - a) * (upper(i) + 4.0 * mid + upper(i + 1)) / 6.0;
    out(i) = a * upper(i) - b * upper(i + 1) + area;
  }
  return out;
}

}  // namespace

const Eigen::ArrayXd& TabulatedPdf::cumulative() const {
  if (cumulative_.size() != grid.size()) {
    cumulative_.resize(grid.size());
    if (grid.size() > 0) cumulative_(0) = 0.0;
    for (Eigen::Index i = 1; i < grid.size(); ++i)
      cumulative_(i) = cumulative_(i - 1) + 0.5 * (density(i) + density(i - 1)) *
                                                (grid(i) - grid(i - 1));
  }
  return cumulative_;
}

double TabulatedPdf::integral() const {
  return grid.size() ? cumulative()(grid.size() - 1) : 0.0;
}

double TabulatedPdf::cdf(double x) const {
  const auto& c = cumulative();
  const Eigen::Index n = grid.size();
  if (n == 0 || x <= grid(0)) return 0.0;
  if (x >= grid(n - 1)) return c(n - 1);
  const double* begin = grid.data();
  const Eigen::Index i = std::upper_bound(begin, begin + n, x) - begin;
  const double t = (x - grid(i - 1)) / (grid(i) - grid(i - 1));
  return c(i - 1) + t * (c(i) - c(i - 1));
}

double TabulatedPdf::mean() const {
  double acc = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    acc += 0.5 * (grid(i) * density(i) + grid(i - 1) * density(i - 1)) *
           (grid(i) - grid(i - 1));
  return acc;
}

Eigen::ArrayXd noise_grid(const DistributionSpec& spec, double sigma,
                          Eigen::Index max_points) {
  require(sigma > 0.0, ErrorKind::validation, "noise sigma must be positive");
  const double top = quantile(noise_free(spec), 1.0 - 1e-8) + 6.0 * sigma;
  const double step = sigma / 10.0;
  const double count = std::ceil((top + 6.0 * sigma) / step) + 1.0;
  require(count <= static_cast<double>(max_points), ErrorKind::resolution,
          "noise grid would need " + std::to_string(count) +
              " points; the law is too wide relative to sigma");
  const auto n = static_cast<Eigen::Index>(count);
  return Eigen::ArrayXd::LinSpaced(n, -6.0 * sigma,
                                   -6.0 * sigma + step * (n - 1));
}

TabulatedPdf convolve_with_noise(const DistributionSpec& spec, double sigma,
                                 const Eigen::ArrayXd& grid) {
  const DistributionSpec law = noise_free(spec);
  validate(law);
  require(sigma > 0.0, ErrorKind::validation, "noise sigma must be positive");
  require(grid.size() >= 2, ErrorKind::resolution, "grid needs >= 2 points");

  const double needed_top = quantile(law, 1.0 - 1e-6);
  const double max_step = sigma / 10.0;
  const double step = (grid.tail(grid.size() - 1) - grid.head(grid.size() - 1))
                          .maxCoeff();
  const bool increasing =
      ((grid.tail(grid.size() - 1) - grid.head(grid.size() - 1)) > 0.0).all();
  if (!increasing || step > max_step * (1.0 + 1e-9) ||
      grid(0) > -6.0 * sigma * (1.0 - 1e-12) ||
      grid(grid.size() - 1) < needed_top) {
    std::ostringstream os;
    os << "convolution grid must be increasing, span [" << -6.0 * sigma
       << ", " << needed_top << "] and have spacing <= " << max_step
       << "; got [" << grid(0) << ", " << grid(grid.size() - 1)
       << "] with max spacing " << step;
    fail(ErrorKind::resolution, os.str());
  }

  // Cells of width sigma/20 over [0, top]; mass from exact CDF differences.
  const double cell = sigma / 20.0;
  const double top = grid(grid.size() - 1) + 9.0 * sigma;
  const auto cells = static_cast<Eigen::Index>(std::ceil(top / cell));
  const Eigen::ArrayXd edges =
      Eigen::ArrayXd::LinSpaced(cells + 1, 0.0, cell * cells);
  Eigen::ArrayXd lower(cells + 1), upper(cells + 1);
  for (Eigen::Index i = 0; i <= cells; ++i) {
    lower(i) = cdf(law, edges(i));
    upper(i) = ccdf(law, edges(i));
  }
  const Eigen::ArrayXd moments = cell_first_moments(law, edges, upper);
  // Each cell becomes a uniform block carrying its exact mass and mean: the
  // block starts at the cell edge nearer to the conditional mean.
  Eigen::ArrayXd block_lo(cells), block_hi(cells), block_density(cells);
  for (Eigen::Index i = 0; i < cells; ++i) {
    // Subtract whichever tail keeps the digits.
    const double mass = upper(i) > 0.5 ? lower(i + 1) - lower(i)
                                       : upper(i) - upper(i + 1);
    const double a = edges(i);
    const double b = edges(i + 1);
    double mu = mass > 0.0 ? moments(i) / mass : 0.5 * (a + b);
    if (!(mu > a && mu < b)) mu = 0.5 * (a + b);
    if (mu <= 0.5 * (a + b)) {
      block_lo(i) = a;
      block_hi(i) = 2.0 * mu - a;
    } else {
      block_lo(i) = 2.0 * mu - b;
      block_hi(i) = b;
    }
    block_density(i) = mass / (block_hi(i) - block_lo(i));
  }

  // f(x) = sum_i d_i [Phi((x - lo_i)/sigma) - Phi((x - hi_i)/sigma)].
  const double reach = 9.0 * sigma;
  const double inv = 1.0 / (sigma * std::sqrt(2.0));
  TabulatedPdf out;
  out.grid = grid;
  out.density.resize(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x = grid(j);
    const auto first = std::max<Eigen::Index>(
        0, static_cast<Eigen::Index>(std::floor((x - reach) / cell)));
    const auto last = std::min<Eigen::Index>(
        cells, static_cast<Eigen::Index>(std::ceil((x + reach) / cell)));
    double acc = 0.0;
    if (first < last) {
      // 0.5 erfc((b - x)/(sigma sqrt 2)) is the Gaussian mass above b - x.
      for (Eigen::Index i = first; i < last; ++i)
        acc += block_density(i) * 0.5 *
               (std::erfc((block_lo(i) - x) * inv) -
                std::erfc((block_hi(i) - x) * inv));
    }
    out.density(j) = acc;
  }
  out.normalization_error = std::abs(out.integral() - 1.0);
  return out;
}

}  // namespace rogue
