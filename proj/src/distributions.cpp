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

#include "rogue/distributions.hpp"

#include <cmath>

#include "rogue/error.hpp"
#include "rogue/special.hpp"

namespace rogue {
namespace {

void require_analytic(const DistributionSpec& spec) {
  validate(spec);
  require(spec.noise_sigma == 0.0, ErrorKind::validation,
          "closed forms are noise-free; use convolve_with_noise for "
          "noise_sigma > 0");
}

void require_abscissa(double n) {
  require(n >= 0.0 && !std::isnan(n), ErrorKind::validation,
          "photon number must be >= 0");
}

}  // namespace

double GammaImage::forward(double u) const {
  switch (map) {
    case Map::linear:
      return scale * u;
    case Map::power:
      return scale * std::pow(u, power);
    case Map::sinh2: {
      const double s = std::sinh(scale * u);
      return s * s;
    }
  }
  return 0.0;
}

double GammaImage::inverse(double n) const {
  switch (map) {
    case Map::linear:
      return n / scale;
    case Map::power:
      return std::pow(n / scale, 1.0 / power);
    case Map::sinh2:
      return std::asinh(std::sqrt(n)) / scale;
  }
  return 0.0;
}

double GammaImage::inverse_derivative(double n) const {
  switch (map) {
    case Map::linear:
      return 1.0 / scale;
    case Map::power:
      return inverse(n) / (power * n);
    case Map::sinh2:
      // sqrt(n) * sqrt(1 + n) avoids overflowing n * (1 + n).
      return 1.0 / (2.0 * scale * std::sqrt(n) * std::sqrt(1.0 + n));
  }
  return 0.0;
}

double GammaImage::origin_exponent() const {
  // Near 0 the map behaves as n ~ a u^beta with beta = 1, n, 2.
  const double beta =
      map == Map::linear ? 1.0 : map == Map::power ? power : 2.0;
  return shape / beta - 1.0;
}

GammaImage gamma_image(const DistributionSpec& spec) {
  GammaImage g;
  const double m = spec.modes;
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, Thermal>) {
          g.shape = m;
          g.scale = src.mean / m;
        } else if constexpr (std::is_same_v<T, Superbunched>) {
          g.shape = 0.5 * m;
          g.scale = 2.0 * src.mean / m;
        } else if constexpr (std::is_same_v<T, FwmThermal>) {
          g.shape = m;
          g.map = GammaImage::Map::sinh2;
          g.scale = src.kappa_np / m;
        } else {
          g.shape = 0.5 * m;
          g.map = GammaImage::Map::sinh2;
          g.scale = 2.0 * src.kappa_np / m;
        }
      },
      spec.source);
  if (is_harmonic(spec)) {
    g.map = GammaImage::Map::power;
    g.power = spec.harmonic_order;
    g.scale = spec.harmonic_mean /
              special::rising_factorial(g.shape, spec.harmonic_order);
  }
  return g;
}

double pdf(const DistributionSpec& spec, double n) {
  require_analytic(spec);
  require_abscissa(n);
  const GammaImage g = gamma_image(spec);
  if (n == 0.0) {
    const double p = g.origin_exponent();
    if (p < 0.0) return kInfiniteDensity;
    if (p > 0.0) return 0.0;
    // Finite nonzero limit: u^(s-1)/Gamma(s) * du/dn with s/beta = 1.
    const double eps = 1e-300;
    const double u = g.inverse(eps);
    return std::exp((g.shape - 1.0) * std::log(u) - std::lgamma(g.shape)) *
           g.inverse_derivative(eps);
  }
  if (std::isinf(n)) return 0.0;
  const double u = g.inverse(n);
  const double log_density = (g.shape - 1.0) * std::log(u) - u -
                             std::lgamma(g.shape) +
                             std::log(g.inverse_derivative(n));
  return std::exp(log_density);
}

double cdf(const DistributionSpec& spec, double n) {
  require_analytic(spec);
  require_abscissa(n);
  const GammaImage g = gamma_image(spec);
  return special::gamma_p(g.shape, g.inverse(n));
}

double ccdf(const DistributionSpec& spec, double n) {
  require_analytic(spec);
  require_abscissa(n);
  const GammaImage g = gamma_image(spec);
  return special::gamma_q(g.shape, g.inverse(n));
}

double log_ccdf(const DistributionSpec& spec, double n) {
  require_analytic(spec);
  require_abscissa(n);
  const GammaImage g = gamma_image(spec);
  return special::log_gamma_q(g.shape, g.inverse(n));
}

double hazard(const DistributionSpec& spec, double n) {
  return -log_ccdf(spec, n);
}

double upper_quantile(const DistributionSpec& spec, double tail_probability) {
  require_analytic(spec);
  require(tail_probability > 0.0 && tail_probability < 1.0,
          ErrorKind::validation, "tail probability must lie in (0, 1)");
  const double target = std::log(tail_probability);
  const GammaImage g = gamma_image(spec);
  double lo = 0.0;
  double hi = g.forward(g.shape);
  while (log_ccdf(spec, hi) > target) {
    lo = hi;
    hi *= 2.0;
    require(std::isfinite(hi), ErrorKind::range,
            "quantile exceeds the double range for tail probability " +
                std::to_string(tail_probability));
  }
  for (int i = 0; i < 4000 && hi - lo > 1e-10 * hi; ++i) {
    const double mid =
        (lo > 0.0 && hi > 2.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (log_ccdf(spec, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double quantile(const DistributionSpec& spec, double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::validation,
          "probability must lie in (0, 1)");
  return upper_quantile(spec, 1.0 - p);
}

double analytic_gm(const DistributionSpec& spec, int m) {
  require_analytic(spec);
  require(m >= 1, ErrorKind::validation, "correlation order must be >= 1");
  if (auto k = analytic_tail_exponent(spec)) {
    throw MomentsUndefined(
        "moments of the FWM law are not finite (Pareto tail, k = " +
            std::to_string(*k) + ")",
        *k);
  }
  // N is proportional to u^n with u ~ Gamma(s, 1), so
  // g^(m) = E[u^(nm)] / E[u^n]^m with E[u^k] the rising factorial (s)_k.
  const GammaImage g = gamma_image(spec);
  const int n = spec.harmonic_order;
  const double base = special::rising_factorial(g.shape, n);
  return special::rising_factorial(g.shape, n * m) / std::pow(base, m);
}

std::optional<double> analytic_tail_exponent(const DistributionSpec& spec) {
  validate(spec);
  if (!is_fwm(spec)) return std::nullopt;
  // CCDF ~ Q(s, asinh(sqrt N)/theta) ~ N^(-1/(2 theta)) up to a slowly
  // varying factor.
  return 1.0 / (2.0 * gamma_image(spec).scale);
}

const char* to_string(TailTrend trend) {
  switch (trend) {
    case TailTrend::diverging:
      return "diverging";
    case TailTrend::vanishing:
      return "vanishing";
    case TailTrend::converging_to_one:
      return "converging-to-1";
    case TailTrend::bounded:
      return "bounded";
  }
  return "?";
}

TailComparison compare_tails(const DistributionSpec& a,
                             const DistributionSpec& b, double n_max,
                             int samples) {
  require(n_max > 0.0 && std::isfinite(n_max), ErrorKind::validation,
          "compare_tails: n_max must be positive");
  require(samples >= 2, ErrorKind::validation,
          "compare_tails: need at least two samples");
  TailComparison out;
  out.n = Eigen::ArrayXd::LinSpaced(samples, std::log10(n_max) - 3.0,
                                    std::log10(n_max))
              .unaryExpr([](double e) { return std::pow(10.0, e); });
  out.n(samples - 1) = n_max;
  out.log_ratio = log_ccdf(a, out.n) - log_ccdf(b, out.n);
  require(out.log_ratio.isFinite().all(), ErrorKind::range,
          "compare_tails: a CCDF vanishes on the probe grid");
  out.ratio = out.log_ratio.exp();

  constexpr double tol = 0.01;
  const double last = log_ccdf(a, n_max) - log_ccdf(b, n_max);
  const double decade_change = last - (log_ccdf(a, 0.1 * n_max) -
                                       log_ccdf(b, 0.1 * n_max));
  if (std::abs(last) <= tol && std::abs(decade_change) <= tol) {
    out.trend = TailTrend::converging_to_one;
  } else if (decade_change > tol) {
    out.trend = TailTrend::diverging;
  } else if (decade_change < -tol) {
    out.trend = TailTrend::vanishing;
  } else {
    out.trend = TailTrend::bounded;
  }
  return out;
}

}  // namespace rogue
