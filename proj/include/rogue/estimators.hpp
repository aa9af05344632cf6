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
#include <iosfwd>
#include <optional>

#include <Eigen/Core>

#include "rogue/convolution.hpp"
#include "rogue/sampler.hpp"
#include "rogue/spec.hpp"
#include "rogue/spectral.hpp"

namespace rogue {

// ---------------------------------------------------------------------------
// Histograms

struct HistogramSpec {
  enum class Binning { linear, logarithmic };

  Binning binning = Binning::linear;
  double width = 1.0;             // linear bins
  double bins_per_decade = 10.0;  // logarithmic bins
  double lo = 0.0;
  double hi = 1.0;
};

void validate(const HistogramSpec& spec);

struct Histogram {
  Eigen::ArrayXd lo, hi;
  Eigen::ArrayXd count;    // integral-valued
  Eigen::ArrayXd density;  // count / (pulses * width)
  std::int64_t pulses = 0;
  std::int64_t out_of_range = 0;

  Eigen::ArrayXd centers() const;
};

/// Bins are half-open [lo, hi) except the last, which includes `hi`.
Histogram empirical_histogram(const Eigen::ArrayXd& values,
                              const HistogramSpec& spec);

// ---------------------------------------------------------------------------
// Empirical CCDF

/// Right-continuous survival function C(v) = #{x > v} / n.
class EmpiricalCcdf {
 public:
  explicit EmpiricalCcdf(Eigen::ArrayXd values);

  double operator()(double v) const;
  /// Number of values strictly above v.
  std::int64_t count_above(double v) const;
  std::int64_t size() const { return sorted_.size(); }
  const Eigen::ArrayXd& sorted() const { return sorted_; }

  /// Distinct values and the survival fraction just after each.
  void steps(Eigen::ArrayXd& at, Eigen::ArrayXd& survival) const;

 private:
  Eigen::ArrayXd sorted_;
};

EmpiricalCcdf empirical_ccdf(const Eigen::ArrayXd& values);

// ---------------------------------------------------------------------------
// Intensity correlation functions

struct BootstrapOptions {
  int resamples = 200;
  std::uint64_t seed = 0x5EEDULL;
  /// Resampling unit: contiguous blocks of ceil(n / max_blocks) pulses.
  /// Blocks of one pulse (the classical bootstrap) whenever n <= max_blocks.
  std::int64_t max_blocks = 4096;
};

struct GmEstimate {
  int order = 2;
  double value = 0.0;
  double std_error = 0.0;  // NaN when fewer than 100 pulses
  int resamples = 0;
};

/// g^(m) = <N^m>/<N>^m with a bootstrap standard error. Raw values are used
/// as-is: additive detector noise biases the estimate.
GmEstimate empirical_gm(const Eigen::ArrayXd& values, int m,
                        const BootstrapOptions& opts = {});

// ---------------------------------------------------------------------------
// Tail fitting

enum class TailFitMethod { ccdf_regression, hill };

const char* to_string(TailFitMethod method);
TailFitMethod tail_fit_method_from_string(const std::string& name);

struct TailFitReport {
  double k = 0.0;
  double k_stderr = 0.0;
  double fit_lo = 0.0;
  double fit_hi = 0.0;
  int points_used = 0;
  double r_squared = 0.0;  // regression only; NaN for hill
  TailFitMethod method = TailFitMethod::ccdf_regression;
};

/// ccdf_regression: least squares of log C vs log N on `points_per_decade`
/// log-spaced probes in [fit_lo, fit_hi], k = -slope; stderr combines the
/// residual scatter with the sampling covariance of the empirical CCDF.
/// hill: Pareto maximum likelihood over values above fit_lo, censored at
/// fit_hi (classical Hill when fit_hi is infinite); stderr = k/sqrt(count).
TailFitReport fit_tail_exponent(const EmpiricalCcdf& ccdf, double fit_lo,
                                double fit_hi, TailFitMethod method,
                                int points_per_decade = 20);

/// True when the two estimates differ by more than 3 joint standard errors,
/// which flags a tail that is not Pareto over the window.
bool tail_fits_disagree(const TailFitReport& a, const TailFitReport& b);

struct TailWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// [1.5 mean, 0.8 saturation] with a saturating detector, else the central
/// two decades of the positive values.
TailWindow default_tail_window(const Eigen::ArrayXd& values,
                               const std::optional<DetectorModel>& detector);

// ---------------------------------------------------------------------------
// Hazard

struct HazardCurve {
  Eigen::ArrayXd n;
  Eigen::ArrayXd h_over_n;  // -log C(N) / N
};

/// H(N)/N on a log grid over the positive values; points whose survival is
/// below 10/pulses are dropped.
HazardCurve hazard_curve(const Eigen::ArrayXd& values,
                         int points_per_decade = 10);

// ---------------------------------------------------------------------------
// Mode number

struct ModeEstimate {
  double modes = 1.0;
  int rounded = 1;
};

/// Inverts g_M = 1 + (g_1 - 1)/M.
ModeEstimate estimate_mode_number(double g_measured, double g_single);

// ---------------------------------------------------------------------------
// Spectral correlations

/// Entry value used for bins whose mean spectral density is zero.
inline constexpr double kMaskedG2 = -1.0;

struct G2Matrix {
  Eigen::ArrayXd wavelengths;
  Eigen::MatrixXd values;  // symmetric; kMaskedG2 where masked
  Eigen::Array<bool, Eigen::Dynamic, 1> masked_bins;
};

/// g2(l, l') = <S(l) S(l')> / (<S(l)> <S(l')>) averaged over pulses.
G2Matrix spectral_g2_matrix(const SpectralEnsemble& ensemble);

/// CSV with a header row and a leading column of wavelengths.
void write_g2_csv(std::ostream& out, const G2Matrix& g2);

// ---------------------------------------------------------------------------
// Goodness of fit

struct KsResult {
  double statistic = 0.0;
  double p_bound = 1.0;  // asymptotic Kolmogorov tail probability
  std::int64_t samples = 0;
};

/// Kolmogorov distribution tail P(sqrt(n) D > lambda).
double kolmogorov_survival(double lambda);

/// Against a noise-free analytic law.
KsResult ks_distance(const Eigen::ArrayXd& values, const DistributionSpec& spec);
/// Against a tabulated (noise-convolved) law.
KsResult ks_distance(const Eigen::ArrayXd& values, const TabulatedPdf& law);

// ---------------------------------------------------------------------------
// Application formulas

/// Ghost-imaging contrast R = 1 + (g2 - 1) a/A.
double ghost_contrast(double g2, double object_area, double field_area);

/// Mean photon number after single-photon subtraction, g2 <N>.
double subtracted_mean(double g2, double mean);

}  // namespace rogue
