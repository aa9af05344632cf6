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

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "families.hpp"
#include "rogue/distributions.hpp"
#include "rogue/error.hpp"
#include "rogue/special.hpp"

namespace {

using namespace rogue;
using rogue::testing::all_noise_free_specs;

constexpr double kPi = 3.14159265358979323846;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> probes(const DistributionSpec& spec) {
  std::vector<double> out;
  for (double p : {0.9, 0.5, 0.1, 1e-2, 1e-4, 1e-6}) out.push_back(upper_quantile(spec, p));
  return out;
}

// Closed-form densities written out term by term, independent of the
// Gamma-image machinery in the library.

double thermal_pdf(double m, double n) { return std::exp(-n / m) / m; }

double superbunched_pdf(double m, double n) {
  return std::exp(-n / (2.0 * m)) / std::sqrt(2.0 * kPi * m * n);
}

double thermal_multimode_pdf(double m, int M, double n) {
  return std::exp((M - 1) * std::log(n) - std::lgamma(M) + M * std::log(M / m) -
                  M * n / m);
}

double superbunched_multimode_pdf(double m, int M, double n) {
  const double h = 0.5 * M;
  return std::exp((h - 1.0) * std::log(n) - std::lgamma(h) + h * std::log(M / (2.0 * m)) -
                  M * n / (2.0 * m));
}

double thermal_harmonic_pdf(int k, double mk, double n) {
  const double f = std::pow(boost::math::factorial<double>(k), 1.0 / k);
  return f / (k * std::pow(mk, 1.0 / k) * std::pow(n, 1.0 - 1.0 / k)) *
         std::exp(-std::pow(boost::math::factorial<double>(k) * n / mk, 1.0 / k));
}

double superbunched_harmonic_pdf(int k, double mk, double n) {
  const double df = special::odd_double_factorial(k);
  return std::pow(df, 0.5 / k) /
         (k * std::sqrt(2.0 * kPi) * std::pow(mk, 0.5 / k) * std::pow(n, 1.0 - 0.5 / k)) *
         std::exp(-0.5 * std::pow(df * n / mk, 1.0 / k));
}

double fwm_thermal_pdf(double kn, int M, double n) {
  const double a = std::asinh(std::sqrt(n));
  const double t = kn / M;
  return std::exp(-a / t + (M - 1) * std::log(a) - std::lgamma(M) - M * std::log(t)) /
         (2.0 * std::sqrt(n * (n + 1.0)));
}

// The superbunched-pump multimode form with denominator power M/2, the
// value that makes it the change-of-variables image of the M-mode law.
double fwm_superbunched_pdf(double kn, int M, double n) {
  const double a = std::asinh(std::sqrt(n));
  const double t = 2.0 * kn / M;
  const double h = 0.5 * M;
  return std::exp(-a / t + (h - 1.0) * std::log(a) - std::lgamma(h) - h * std::log(t)) /
         (2.0 * std::sqrt(n * (n + 1.0)));
}

TEST(Pdf, ThermalAndSuperbunched) {
  EXPECT_DOUBLE_EQ(pdf(thermal(1e5), 0.0), 1e-5);
  for (double m : {1.0, 1.33e5}) {
    for (double n : {0.01 * m, m, 7.0 * m, 40.0 * m}) {
      EXPECT_LT(rel(pdf(thermal(m), n), thermal_pdf(m, n)), 1e-12);
      EXPECT_LT(rel(pdf(superbunched(m), n), superbunched_pdf(m, n)), 1e-12);
    }
  }
}

TEST(Pdf, SingleModeFwmThermalHighPrecision) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big n = 10;
  const big ref = exp(-asinh(sqrt(n)) / big(0.5)) / (big(2) * big(0.5) * sqrt(big(110)));
  EXPECT_LT(rel(pdf(fwm_thermal(0.5), 10.0), static_cast<double>(ref)), 1e-12);
}

TEST(Pdf, Multimode) {
  for (int M : {2, 3, 5, 10}) {
    for (double n : {10.0, 1e4, 3e4, 9e4}) {
      EXPECT_LT(rel(pdf(thermal(1e4, M), n), thermal_multimode_pdf(1e4, M, n)), 1e-11);
      EXPECT_LT(rel(pdf(superbunched(1e4, M), n), superbunched_multimode_pdf(1e4, M, n)),
                1e-11);
    }
  }
}

TEST(Pdf, Harmonics) {
  for (int k : {2, 3, 4}) {
    for (double n : {0.3, 50.0, 1e3, 2e4, 1e6}) {
      EXPECT_LT(rel(pdf(thermal_harmonic(k, 1150.0), n), thermal_harmonic_pdf(k, 1150.0, n)),
                1e-11)
          << k << ' ' << n;
      EXPECT_LT(rel(pdf(superbunched_harmonic(k, 1590.0), n),
                    superbunched_harmonic_pdf(k, 1590.0, n)),
                1e-11)
          << k << ' ' << n;
    }
  }
}

TEST(Pdf, HarmonicChangeOfVariables) {
  // P_nw(N) dN = P_w(N_w) dN_w with N = K N_w^n; K fixed by the harmonic mean.
  const double mw = 7.6e4;
  for (int k : {2, 3}) {
    const double mk = 1080.0;
    const DistributionSpec h = superbunched_harmonic(k, mk, mw);
    const double K = mk / (std::pow(mw, k) * special::odd_double_factorial(k));
    for (double nw : {0.1 * mw, mw, 5.0 * mw}) {
      const double n = K * std::pow(nw, k);
      const double jac = k * K * std::pow(nw, k - 1);
      EXPECT_LT(rel(pdf(h, n) * jac, pdf(superbunched(mw), nw)), 1e-9);
    }
  }
}

TEST(Pdf, Fwm) {
  for (const auto& [kn, M] : {std::pair{0.5, 1}, {2.5, 1}, {4.0, 5}, {2.5, 2}, {2.5, 5}}) {
    for (double n : {1e-3, 1.0, 1e2, 1e4, 1e6, 1e9}) {
      EXPECT_LT(rel(pdf(fwm_thermal(kn, M), n), fwm_thermal_pdf(kn, M, n)), 1e-11);
      EXPECT_LT(rel(pdf(fwm_superbunched(kn, M), n), fwm_superbunched_pdf(kn, M, n)), 1e-11);
    }
  }
  // Single-mode superbunched pump, written as printed.
  const double kn = 2.5;
  for (double n : {0.5, 1e3, 1e7}) {
    const double a = std::asinh(std::sqrt(n));
    const double ref =
        std::exp(-a / (2.0 * kn)) / std::sqrt(8.0 * kPi * kn * n * (1.0 + n) * a);
    EXPECT_LT(rel(pdf(fwm_superbunched(kn), n), ref), 1e-11);
  }
}

TEST(Pdf, OriginLimits) {
  EXPECT_TRUE(is_infinite_density(pdf(superbunched(1.0), 0.0)));
  EXPECT_TRUE(is_infinite_density(pdf(thermal_harmonic(2, 1.0), 0.0)));
  EXPECT_TRUE(is_infinite_density(pdf(superbunched_harmonic(3, 1.0), 0.0)));
  EXPECT_TRUE(is_infinite_density(pdf(fwm_thermal(1.0), 0.0)));
  EXPECT_TRUE(is_infinite_density(pdf(superbunched(1.0, 1), 0.0)));
  EXPECT_EQ(pdf(thermal(1.0, 2), 0.0), 0.0);
  EXPECT_EQ(pdf(superbunched(1.0, 3), 0.0), 0.0);
  EXPECT_DOUBLE_EQ(pdf(superbunched(4.0, 2), 0.0), 0.25);
  // sinh^2 image of Gamma(2): density tends to 1/(2 theta^2).
  EXPECT_NEAR(pdf(fwm_thermal(1.0, 2), 0.0), 2.0, 1e-12);
  EXPECT_NEAR(pdf(fwm_thermal(1.0, 2), 1e-12), 2.0, 1e-5);
}

TEST(Ccdf, ClosedForms) {
  const double m = 1.33e5;
  EXPECT_NEAR(ccdf(thermal(m), m), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(ccdf(superbunched(m), 2.0 * m), boost::math::erfc(1.0), 1e-15);
  EXPECT_NEAR(ccdf(superbunched(m), 2.0 * m), 0.157299207050285, 1e-14);
  for (double n : {0.01 * m, m, 9.0 * m}) {
    EXPECT_LT(rel(ccdf(thermal(m), n), std::exp(-n / m)), 1e-13);
    EXPECT_LT(rel(ccdf(superbunched(m), n), boost::math::erfc(std::sqrt(n / (2.0 * m)))),
              1e-12);
  }
  for (int k : {2, 3}) {
    const double mk = 1590.0;
    for (double n : {10.0, 1e3, 1e5, 1e7}) {
      const double th = std::exp(-std::pow(boost::math::factorial<double>(k) * n / mk, 1.0 / k));
      const double sb = boost::math::erfc(
          std::pow(special::odd_double_factorial(k) * n / mk, 0.5 / k) / std::sqrt(2.0));
      EXPECT_LT(rel(ccdf(thermal_harmonic(k, mk), n), th), 1e-11);
      EXPECT_LT(rel(ccdf(superbunched_harmonic(k, mk), n), sb), 1e-11);
    }
  }
  for (const auto& [kn, M] : {std::pair{0.5, 1}, {4.0, 5}, {2.5, 2}, {2.5, 5}}) {
    for (double n : {1.0, 1e4, 1e8}) {
      const double a = std::asinh(std::sqrt(n));
      EXPECT_LT(rel(ccdf(fwm_thermal(kn, M), n), boost::math::gamma_q(double(M), a * M / kn)),
                1e-11);
      EXPECT_LT(rel(ccdf(fwm_superbunched(kn, M), n),
                    boost::math::gamma_q(0.5 * M, a * M / (2.0 * kn))),
                1e-11);
    }
  }
}

TEST(Ccdf, MonotoneWithUnitStart) {
  for (const DistributionSpec& s : all_noise_free_specs()) {
    EXPECT_EQ(ccdf(s, 0.0), 1.0) << describe(s);
    double last = 1.0;
    for (double n = 1e-3; n < 1e12; n *= 1.7) {
      const double c = ccdf(s, n);
      EXPECT_LE(c, last) << describe(s) << ' ' << n;
      last = c;
    }
    EXPECT_LT(ccdf(s, 1e300), 1e-10) << describe(s);
  }
}

TEST(Ccdf, LogSpaceExtremeTail) {
  const double m = 1.0;
  const double lc = log_ccdf(thermal(m), 670.0 * m);
  EXPECT_DOUBLE_EQ(lc, -670.0);
  EXPECT_LT(lc / std::log(10.0), -290.0);
  EXPECT_EQ(ccdf(thermal(m), 1e4), 0.0);
  EXPECT_NEAR(log_ccdf(superbunched(1.0), 2e4),
              static_cast<double>(log(boost::math::erfc(
                  boost::multiprecision::cpp_bin_float_50(100.0)))),
              1e-9);
  EXPECT_NEAR(hazard(thermal(5.0), 35.0) / 35.0, 0.2, 1e-14);
}

TEST(Properties, Normalization) {
  boost::math::quadrature::tanh_sinh<double> q;
  for (const DistributionSpec& s : all_noise_free_specs()) {
    const double cut = upper_quantile(s, 1e-8);
    // Split at quantiles so each panel sees a smooth integrand.
    std::vector<double> edges{0.0};
    for (double p : {0.9, 0.5, 0.1, 1e-2, 1e-4, 1e-6}) edges.push_back(upper_quantile(s, p));
    edges.push_back(cut);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i + 1] <= edges[i]) continue;
      total += q.integrate([&](double n) { return pdf(s, n); }, edges[i], edges[i + 1]);
    }
    const double expected = 1.0 - ccdf(s, cut);
    EXPECT_NEAR(total, expected, 1e-6) << describe(s);
    if (!is_fwm(s)) {
      EXPECT_LE(total, 1.0 + 1e-12) << describe(s);
      EXPECT_GE(total, 1.0 - 1e-6) << describe(s);
    }
  }
}

TEST(Properties, PdfMatchesCcdfDerivative) {
  for (const DistributionSpec& s : all_noise_free_specs()) {
    for (double n : probes(s)) {
      const double h = 1e-4 * n;
      // d log C / dn = -pdf / C, differenced in log space so deep tails work.
      const double dlog = (log_ccdf(s, n + h) - log_ccdf(s, n - h)) / (2.0 * h);
      const double fd = -dlog * std::exp(log_ccdf(s, n));
      EXPECT_LT(rel(fd, pdf(s, n)), 1e-6) << describe(s) << " n=" << n;
    }
  }
}

TEST(Properties, MomentIdentities) {
  for (int m = 1; m <= 6; ++m) {
    EXPECT_DOUBLE_EQ(analytic_gm(thermal(3.0), m), boost::math::factorial<double>(m));
    EXPECT_DOUBLE_EQ(analytic_gm(superbunched(3.0), m), special::odd_double_factorial(m));
  }
  // Var = <N>^2 (g2 = 2) and 2 <N>^2 (g2 = 3).
  EXPECT_DOUBLE_EQ(analytic_gm(thermal(1.0), 2) - 1.0, 1.0);
  EXPECT_DOUBLE_EQ(analytic_gm(superbunched(1.0), 2) - 1.0, 2.0);
  EXPECT_DOUBLE_EQ(analytic_gm(thermal_harmonic(2, 1.0), 2), 6.0);
  EXPECT_NEAR(analytic_gm(superbunched_harmonic(2, 1.0), 2), 105.0 / 9.0, 1e-12);
  EXPECT_NEAR(analytic_gm(superbunched_harmonic(3, 1.0), 2), 10395.0 / 225.0, 1e-12);
  for (int M : {1, 2, 5, 9}) {
    EXPECT_NEAR(analytic_gm(thermal(1.0, M), 2), 1.0 + 1.0 / M, 1e-14);
    EXPECT_NEAR(analytic_gm(superbunched(1.0, M), 2), 1.0 + 2.0 / M, 1e-14);
  }
}

TEST(Properties, MultimodeMeanIndependentOfModes) {
  boost::math::quadrature::tanh_sinh<double> q;
  for (int M : {1, 2, 5}) {
    for (const DistributionSpec& s : {thermal(50.0, M), superbunched(50.0, M)}) {
      // <N> = integral of the CCDF.
      const double mean = q.integrate([&](double n) { return ccdf(s, n); }, 0.0,
                                      upper_quantile(s, 1e-14));
      EXPECT_NEAR(mean, 50.0, 1e-6) << describe(s);
    }
  }
}

TEST(Moments, FwmUndefinedCarriesExponent) {
  try {
    analytic_gm(fwm_superbunched(4.0, 5), 2);
    FAIL();
  } catch (const MomentsUndefined& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined);
    EXPECT_DOUBLE_EQ(e.tail_exponent(), 0.3125);
  }
}

TEST(TailExponent, AnalyticValues) {
  EXPECT_DOUBLE_EQ(*analytic_tail_exponent(fwm_superbunched(4.0, 5)), 0.3125);
  EXPECT_DOUBLE_EQ(*analytic_tail_exponent(fwm_superbunched(2.5, 5)), 0.5);
  EXPECT_DOUBLE_EQ(*analytic_tail_exponent(fwm_superbunched(2.5, 2)), 0.2);
  EXPECT_DOUBLE_EQ(*analytic_tail_exponent(fwm_thermal(0.5)), 1.0);
  EXPECT_DOUBLE_EQ(*analytic_tail_exponent(fwm_thermal(2.5, 5)), 1.0);
  EXPECT_FALSE(analytic_tail_exponent(thermal(1.0)));
  EXPECT_FALSE(analytic_tail_exponent(superbunched_harmonic(3, 1.0)));
}

double secant_slope(const DistributionSpec& s, double a, double b) {
  return (log_ccdf(s, b) - log_ccdf(s, a)) / (std::log(b) - std::log(a));
}

TEST(TailExponent, LocalSlopeSingleModeThermalPump) {
  for (double kn : {0.5, 2.5, 4.0}) {
    const DistributionSpec s = fwm_thermal(kn);
    EXPECT_LT(rel(-secant_slope(s, 1e8, 1e10), *analytic_tail_exponent(s)), 0.05) << kn;
  }
}

TEST(TailExponent, LocalSlopeFarTail) {
  // Gamma(s > 1) and Gamma(1/2) images carry a log-power correction that
  // decays only as 1/log N; the slope settles far beyond 1e10.
  for (const DistributionSpec& s :
       {fwm_superbunched(4.0, 5), fwm_superbunched(2.5, 5), fwm_superbunched(2.5, 2),
        fwm_superbunched(1.0, 1), fwm_thermal(4.0, 5), fwm_thermal(2.5, 3)}) {
    EXPECT_LT(rel(-secant_slope(s, 1e250, 1e300), *analytic_tail_exponent(s)), 0.05)
        << describe(s);
  }
  EXPECT_LT(rel(-secant_slope(fwm_superbunched(2.5, 2), 1e4, 1e6), 0.2), 1e-4);
}

TEST(Quantile, RoundTrip) {
  for (const DistributionSpec& s : all_noise_free_specs()) {
    for (double p : {0.5, 1e-3, 1e-9}) {
      EXPECT_NEAR(ccdf(s, upper_quantile(s, p)) / p, 1.0, 1e-8) << describe(s);
    }
    EXPECT_NEAR(cdf(s, quantile(s, 0.25)), 0.25, 1e-9) << describe(s);
  }
  EXPECT_NEAR(upper_quantile(thermal(2.0), std::exp(-3.0)), 6.0, 1e-9);
}

TEST(Hazard, ThermalFlatSuperbunchedLimit) {
  for (double n : {1.0, 1e3, 1e6}) EXPECT_NEAR(hazard(thermal(1e3), n) / n, 1e-3, 1e-15);
  EXPECT_LT(rel(hazard(superbunched(1e3), 1e9) / 1e9, 0.5e-3), 1e-4);
  EXPECT_LT(hazard(fwm_thermal(0.5), 1e12) / 1e12, 1e-10);
}

TEST(Eigen, VectorizedOverloads) {
  const DistributionSpec s = superbunched(10.0);
  Eigen::ArrayXd n = Eigen::ArrayXd::LinSpaced(7, 1.0, 50.0);
  const Eigen::ArrayXd p = pdf(s, n);
  const Eigen::ArrayXd c = ccdf(s, n * 2.0);
  const Eigen::ArrayXd lc = log_ccdf(s, n);
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    EXPECT_EQ(p(i), pdf(s, n(i)));
    EXPECT_EQ(c(i), ccdf(s, 2.0 * n(i)));
    EXPECT_EQ(lc(i), log_ccdf(s, n(i)));
  }
}

TEST(Errors, Preconditions) {
  DistributionSpec noisy = thermal(1.0);
  noisy.noise_sigma = 3.0;
  EXPECT_THROW(pdf(noisy, 1.0), Error);
  EXPECT_THROW(ccdf(thermal(1.0), -1.0), Error);
  DistributionSpec multimode = thermal_harmonic(2, 1.0);
  multimode.modes = 2;
  try {
    pdf(multimode, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported);
  }
}

TEST(CompareTails, Classification) {
  const auto same = compare_tails(thermal(5.0), thermal(5.0), 1e4);
  EXPECT_EQ(same.trend, TailTrend::converging_to_one);
  EXPECT_TRUE((same.ratio == 1.0).all());

  const auto harm = compare_tails(superbunched_harmonic(2, 100.0),
                                  thermal_harmonic(2, 100.0), 1e7);
  EXPECT_EQ(harm.trend, TailTrend::diverging);
  const auto rev = compare_tails(thermal(1.0), superbunched(1.0), 1e3);
  EXPECT_EQ(rev.trend, TailTrend::vanishing);

  // Equal tail index: log C differs only by a sub-linear term, so the
  // hazard ratio goes to one even though C_a / C_b itself grows like sqrt(N).
  const double m = 100.0;
  const auto eq = compare_tails(thermal(2.0 * m), superbunched(m), 1e6);
  const double n_last = eq.n(eq.n.size() - 1);
  EXPECT_LT(rel(hazard(thermal(2.0 * m), n_last), hazard(superbunched(m), n_last)), 0.01);
  EXPECT_NE(eq.trend, TailTrend::vanishing);
  EXPECT_TRUE(eq.log_ratio.isFinite().all());
}

}  // namespace
