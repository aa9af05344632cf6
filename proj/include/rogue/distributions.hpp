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

#include <limits>
#include <optional>

#include <Eigen/Core>

#include "rogue/spec.hpp"

namespace rogue {

/// Every supported law is the image of a standard Gamma(shape, 1) variate u
/// under a monotone map: N = scale*u (source), N = scale*u^n (harmonic),
/// N = sinh^2(scale*u) (four-wave mixing). Densities and CCDFs of all
/// families follow from this one change of variables.
struct GammaImage {
  enum class Map { linear, power, sinh2 };

  double shape = 1.0;
  Map map = Map::linear;
  double scale = 1.0;
  int power = 1;

  double forward(double u) const;
  double inverse(double n) const;
  /// du/dn at n > 0.
  double inverse_derivative(double n) const;
  /// Exponent p of the small-n behaviour pdf ~ n^p.
  double origin_exponent() const;
};

GammaImage gamma_image(const DistributionSpec& spec);

/// Marker for a density that diverges at N = 0.
inline constexpr double kInfiniteDensity = std::numeric_limits<double>::infinity();

inline bool is_infinite_density(double d) { return d == kInfiniteDensity; }

// Scalar evaluation. All require a valid, noise-free spec and n >= 0.

double pdf(const DistributionSpec& spec, double n);
double cdf(const DistributionSpec& spec, double n);
double ccdf(const DistributionSpec& spec, double n);
/// log CCDF, finite far beyond the point where the CCDF underflows.
double log_ccdf(const DistributionSpec& spec, double n);
/// H(n) = -log CCDF(n).
double hazard(const DistributionSpec& spec, double n);

/// n with CCDF(n) = tail_probability, found by bisection on the CCDF to
/// 1e-10 relative tolerance.
double upper_quantile(const DistributionSpec& spec, double tail_probability);
/// n with CDF(n) = p.
double quantile(const DistributionSpec& spec, double p);

/// g^(m) = <N^m>/<N>^m. Throws MomentsUndefined for FWM sources.
double analytic_gm(const DistributionSpec& spec, int m);

/// Pareto index of the CCDF for FWM sources; empty for families that are
/// not regularly varying.
std::optional<double> analytic_tail_exponent(const DistributionSpec& spec);

// Element-wise expressions over Eigen arrays.

template <typename Derived>
auto pdf(const DistributionSpec& spec, const Eigen::ArrayBase<Derived>& n) {
  return n.derived().unaryExpr([spec](double x) { return pdf(spec, x); });
}

template <typename Derived>
auto ccdf(const DistributionSpec& spec, const Eigen::ArrayBase<Derived>& n) {
  return n.derived().unaryExpr([spec](double x) { return ccdf(spec, x); });
}

template <typename Derived>
auto log_ccdf(const DistributionSpec& spec,
              const Eigen::ArrayBase<Derived>& n) {
  return n.derived().unaryExpr([spec](double x) { return log_ccdf(spec, x); });
}

enum class TailTrend { diverging, vanishing, converging_to_one, bounded };

const char* to_string(TailTrend trend);

struct TailComparison {
  Eigen::ArrayXd n;
  Eigen::ArrayXd log_ratio;  // log(CCDF_a / CCDF_b)
  Eigen::ArrayXd ratio;      // may overflow to inf; log_ratio stays finite
  TailTrend trend = TailTrend::converging_to_one;
};

/// Ratio CCDF_a/CCDF_b on `samples` log-spaced points over
/// [n_max/1000, n_max], classified from its change over the last decade.
TailComparison compare_tails(const DistributionSpec& a,
                             const DistributionSpec& b, double n_max,
                             int samples = 61);

}  // namespace rogue
