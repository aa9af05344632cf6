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

#include "rogue/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "rogue/distributions.hpp"
#include "rogue/error.hpp"
#include "rogue/report.hpp"
#include "rogue/rng.hpp"

namespace rogue {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::ArrayXd log_grid(double lo, double hi, double per_decade) {
  const double decades = std::log10(hi / lo);
  const auto points = std::max<Eigen::Index>(
      2, static_cast<Eigen::Index>(std::ceil(decades * per_decade)) + 1);
  Eigen::ArrayXd g = Eigen::ArrayXd::LinSpaced(points, std::log10(lo),
                                               std::log10(hi))
                         .unaryExpr([](double e) { return std::pow(10.0, e); });
  g(0) = lo;
  g(points - 1) = hi;
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const HistogramSpec& spec) {
  require(std::isfinite(spec.lo) && std::isfinite(spec.hi) && spec.hi > spec.lo,
          ErrorKind::validation, "histogram: range needs hi > lo");
  if (spec.binning == HistogramSpec::Binning::linear) {
    require(spec.width > 0.0, ErrorKind::validation,
            "histogram: bin width must be positive");
  } else {
    require(spec.bins_per_decade > 0.0, ErrorKind::validation,
            "histogram: bins_per_decade must be positive");
    require(spec.lo > 0.0, ErrorKind::validation,
            "histogram: logarithmic bins need lo > 0");
  }
}

Eigen::ArrayXd Histogram::centers() const {
  return 0.5 * (lo + hi);
}

Histogram empirical_histogram(const Eigen::ArrayXd& values,
                              const HistogramSpec& spec) {
  validate(spec);
  require(values.size() > 0, ErrorKind::validation, "histogram: no data");

  Eigen::ArrayXd edges;
  const bool linear = spec.binning == HistogramSpec::Binning::linear;
  if (linear) {
    const auto bins = static_cast<Eigen::Index>(
        std::ceil((spec.hi - spec.lo) / spec.width - 1e-9));
    edges = spec.lo + spec.width * Eigen::ArrayXd::LinSpaced(bins + 1, 0, bins);
  } else {
    const double decades = std::log10(spec.hi / spec.lo);
    const auto bins = static_cast<Eigen::Index>(
        std::ceil(decades * spec.bins_per_decade - 1e-9));
    edges = Eigen::ArrayXd::LinSpaced(bins + 1, 0, bins).unaryExpr(
        [&](double k) { return spec.lo * std::pow(10.0, k / spec.bins_per_decade); });
  }
  const Eigen::Index bins = edges.size() - 1;
  edges(bins) = spec.hi;

  Histogram h;
  h.lo = edges.head(bins);
  h.hi = edges.tail(bins);
  h.count = Eigen::ArrayXd::Zero(bins);
  h.pulses = values.size();
  for (double x : values) {
    if (!(x >= spec.lo && x <= spec.hi)) {
      ++h.out_of_range;
      continue;
    }
    Eigen::Index b = linear
                         ? static_cast<Eigen::Index>((x - spec.lo) / spec.width)
                         : static_cast<Eigen::Index>(spec.bins_per_decade *
                                                     std::log10(x / spec.lo));
    b = std::clamp<Eigen::Index>(b, 0, bins - 1);
    // Floating-point rounding near an edge.
    while (b > 0 && x < h.lo(b)) --b;
    while (b < bins - 1 && x >= h.hi(b)) ++b;
    h.count(b) += 1.0;
  }
  require(h.out_of_range < h.pulses, ErrorKind::validation,
          "histogram: range does not overlap the data");
  h.density = h.count / (static_cast<double>(h.pulses) * (h.hi - h.lo));
  return h;
}

// ---------------------------------------------------------------------------

EmpiricalCcdf::EmpiricalCcdf(Eigen::ArrayXd values) : sorted_(std::move(values)) {
  require(sorted_.size() >= 1, ErrorKind::validation,
          "empirical CCDF needs at least one value");
  require(!sorted_.isNaN().any(), ErrorKind::validation,
          "empirical CCDF: values contain NaN");
  std::sort(sorted_.data(), sorted_.data() + sorted_.size());
}

std::int64_t EmpiricalCcdf::count_above(double v) const {
  const double* end = sorted_.data() + sorted_.size();
  return end - std::upper_bound(sorted_.data(), end, v);
}

double EmpiricalCcdf::operator()(double v) const {
  return static_cast<double>(count_above(v)) / static_cast<double>(size());
}

void EmpiricalCcdf::steps(Eigen::ArrayXd& at, Eigen::ArrayXd& survival) const {
  std::vector<double> xs, ss;
  const auto n = static_cast<double>(size());
  for (Eigen::Index i = 0; i < sorted_.size();) {
    Eigen::Index j = i;
    while (j < sorted_.size() && sorted_(j) == sorted_(i)) ++j;
    xs.push_back(sorted_(i));
    ss.push_back(static_cast<double>(sorted_.size() - j) / n);
    i = j;
  }
  at = Eigen::Map<Eigen::ArrayXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  survival =
      Eigen::Map<Eigen::ArrayXd>(ss.data(), static_cast<Eigen::Index>(ss.size()));
}

EmpiricalCcdf empirical_ccdf(const Eigen::ArrayXd& values) {
  return EmpiricalCcdf(values);
}

// ---------------------------------------------------------------------------

GmEstimate empirical_gm(const Eigen::ArrayXd& values, int m,
                        const BootstrapOptions& opts) {
  require(m >= 1, ErrorKind::validation, "g^(m): order must be >= 1");
  const Eigen::Index n = values.size();
  require(n >= 1, ErrorKind::validation, "g^(m): empty train");
  const double mean = values.mean();
  require(mean > 0.0, ErrorKind::validation,
          "g^(m): nonpositive mean; noisy trains need a noise-aware "
          "(convolution) analysis instead of raw moments");

  // Work with x / mean so high orders of large photon numbers stay finite.
  const Eigen::ArrayXd x = values / mean;
  const Eigen::ArrayXd xm = x.pow(m);
  GmEstimate out;
  out.order = m;
  out.value = xm.mean() / std::pow(x.mean(), m);
  if (n < 100) {
    out.std_error = kNaN;
    return out;
  }
  require(opts.resamples >= 2 && opts.max_blocks >= 1, ErrorKind::validation,
          "bootstrap needs >= 2 resamples and >= 1 block");

  const Eigen::Index blocks = std::min<Eigen::Index>(n, opts.max_blocks);
  Eigen::ArrayXd s1(blocks), sm(blocks), cnt(blocks);
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index begin = b * n / blocks;
    const Eigen::Index end = (b + 1) * n / blocks;
    s1(b) = x.segment(begin, end - begin).sum();
    sm(b) = xm.segment(begin, end - begin).sum();
    cnt(b) = static_cast<double>(end - begin);
  }
  Eigen::ArrayXd replicates(opts.resamples);
  for (int r = 0; r < opts.resamples; ++r) {
    Stream rng(substream_seed(opts.seed, static_cast<std::uint64_t>(r)));
    double a1 = 0.0, am = 0.0, c = 0.0;
    for (Eigen::Index k = 0; k < blocks; ++k) {
      const auto b = static_cast<Eigen::Index>(
          rng.index(static_cast<std::uint64_t>(blocks)));
      a1 += s1(b);
      am += sm(b);
      c += cnt(b);
    }
    replicates(r) = (am / c) / std::pow(a1 / c, m);
  }
  const double centre = replicates.mean();
  out.std_error = std::sqrt((replicates - centre).square().sum() /
                            (opts.resamples - 1));
  out.resamples = opts.resamples;
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(TailFitMethod method) {
  return method == TailFitMethod::hill ? "hill" : "ccdf-regression";
}

TailFitMethod tail_fit_method_from_string(const std::string& name) {
  if (name == "hill") return TailFitMethod::hill;
  if (name == "ccdf-regression" || name == "regression")
    return TailFitMethod::ccdf_regression;
  fail(ErrorKind::validation, "unknown tail-fit method '" + name + "'");
}

TailFitReport fit_tail_exponent(const EmpiricalCcdf& ccdf, double fit_lo,
                                double fit_hi, TailFitMethod method,
                                int points_per_decade) {
  require(fit_lo > 0.0 && fit_hi > fit_lo, ErrorKind::validation,
          "tail fit: window needs 0 < fit_lo < fit_hi");
  require(points_per_decade >= 1, ErrorKind::validation,
          "tail fit: points_per_decade must be >= 1");

  const auto& xs = ccdf.sorted();
  const double* begin = xs.data();
  const double* end = begin + xs.size();
  const double* first = std::lower_bound(begin, end, fit_lo);
  const double* last = std::upper_bound(begin, end, fit_hi);
  std::int64_t distinct_count = 0;
  for (const double* p = first; p != last; ++p)
    if (p == first || *p != *(p - 1)) ++distinct_count;
  require(distinct_count >= 8, ErrorKind::validation,
          "tail fit: fewer than 8 distinct data points inside the window");

  TailFitReport rep;
  rep.fit_lo = fit_lo;
  rep.fit_hi = fit_hi;
  rep.method = method;

  if (method == TailFitMethod::ccdf_regression) {
    const double finite_hi = std::isfinite(fit_hi) ? fit_hi : xs(xs.size() - 1);
    // At least 16 probes however narrow the window.
    const double per_decade = std::max<double>(
        points_per_decade, 15.0 / std::log10(finite_hi / fit_lo));
    const Eigen::ArrayXd probes = log_grid(fit_lo, finite_hi, per_decade);
    const Eigen::ArrayXd survival = probes.unaryExpr([&](double v) { return ccdf(v); });
    require((survival > 0.0).all(), ErrorKind::validation,
            "tail fit: zero survival inside the window");
    const Eigen::ArrayXd lx = probes.log();
    const Eigen::ArrayXd ly = survival.log();
    const double n = static_cast<double>(lx.size());
    const double mx = lx.mean(), my = ly.mean();
    const double sxx = (lx - mx).square().sum();
    const double sxy = ((lx - mx) * (ly - my)).sum();
    const double slope = sxy / sxx;
    const double sse = (ly - my - slope * (lx - mx)).square().sum();
    const double sst = (ly - my).square().sum();
    // Sampling variance of the slope from the covariance of the empirical
    // CCDF points, cov(log C_i, log C_j) = (1/max(C_i, C_j) - 1) / pulses,
    // added to the residual (misfit) variance.
    const Eigen::ArrayXd w = (lx - mx) / sxx;
    double sampling = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      for (Eigen::Index j = 0; j < w.size(); ++j)
        sampling += w(i) * w(j) * (1.0 / std::max(survival(i), survival(j)) - 1.0);
    sampling /= static_cast<double>(ccdf.size());
    rep.k = -slope;
    rep.k_stderr = std::sqrt(sse / (n - 2.0) / sxx + std::max(sampling, 0.0));
    rep.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    rep.points_used = static_cast<int>(lx.size());
  } else {
    // Pareto likelihood above fit_lo with values beyond fit_hi censored.
    const double* tail = std::upper_bound(begin, end, fit_lo);
    std::int64_t uncensored = 0;
    double log_sum = 0.0;
    for (const double* p = tail; p != end; ++p) {
      if (*p <= fit_hi) ++uncensored;
      log_sum += std::log(std::min(*p, fit_hi) / fit_lo);
    }
    require(uncensored >= 8 && log_sum > 0.0, ErrorKind::validation,
            "tail fit: fewer than 8 order statistics above fit_lo");
    rep.k = static_cast<double>(uncensored) / log_sum;
    rep.k_stderr = rep.k / std::sqrt(static_cast<double>(uncensored));
    rep.r_squared = kNaN;
    rep.points_used = static_cast<int>(
        std::min<std::int64_t>(uncensored, std::numeric_limits<int>::max()));
  }
  require(rep.k > 0.0, ErrorKind::validation,
          "tail fit: nonpositive exponent; the window is not in a decaying tail");
  return rep;
}

bool tail_fits_disagree(const TailFitReport& a, const TailFitReport& b) {
  const double joint = std::sqrt(a.k_stderr * a.k_stderr + b.k_stderr * b.k_stderr);
  return std::abs(a.k - b.k) > 3.0 * joint;
}

TailWindow default_tail_window(const Eigen::ArrayXd& values,
                               const std::optional<DetectorModel>& detector) {
  require(values.size() > 0, ErrorKind::validation, "tail window: no data");
  if (detector && detector->saturation) {
    TailWindow w{1.5 * values.mean(), 0.8 * *detector->saturation};
    require(w.lo > 0.0 && w.lo < w.hi, ErrorKind::validation,
            "tail window: 1.5*mean is not below 0.8*saturation");
    return w;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : values) {
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  require(hi > lo, ErrorKind::validation,
          "tail window: need at least two distinct positive values");
  const double centre = 0.5 * (std::log10(lo) + std::log10(hi));
  return {std::max(lo, std::pow(10.0, centre - 1.0)),
          std::min(hi, std::pow(10.0, centre + 1.0))};
}

// ---------------------------------------------------------------------------

HazardCurve hazard_curve(const Eigen::ArrayXd& values, int points_per_decade) {
  require(values.size() >= 1000, ErrorKind::validation,
          "hazard curve needs at least 1000 pulses");
  require(points_per_decade >= 1, ErrorKind::validation,
          "hazard curve: points_per_decade must be >= 1");
  const EmpiricalCcdf c(values);
  const auto& xs = c.sorted();
  const double* pos =
      std::upper_bound(xs.data(), xs.data() + xs.size(), 0.0);
  require(pos != xs.data() + xs.size() && *pos < xs(xs.size() - 1),
          ErrorKind::validation, "hazard curve: needs positive values");
  const Eigen::ArrayXd grid = log_grid(*pos, xs(xs.size() - 1), points_per_decade);
  std::vector<double> ns, hs;
  for (double v : grid) {
    if (c.count_above(v) < 10) continue;
    ns.push_back(v);
    hs.push_back(-std::log(c(v)) / v);
  }
  HazardCurve out;
  out.n = Eigen::Map<Eigen::ArrayXd>(ns.data(), static_cast<Eigen::Index>(ns.size()));
  out.h_over_n =
      Eigen::Map<Eigen::ArrayXd>(hs.data(), static_cast<Eigen::Index>(hs.size()));
  return out;
}

// ---------------------------------------------------------------------------

ModeEstimate estimate_mode_number(double g_measured, double g_single) {
  require(g_measured > 1.0, ErrorKind::validation,
          "mode number: g_measured <= 1 means no excess bunching (incoherent "
          "or coherent input)");
  require(g_single >= g_measured, ErrorKind::validation,
          "mode number: g_single must be >= g_measured");
  ModeEstimate e;
  e.modes = (g_single - 1.0) / (g_measured - 1.0);
  e.rounded = static_cast<int>(std::lround(e.modes));
  return e;
}

// ---------------------------------------------------------------------------

G2Matrix spectral_g2_matrix(const SpectralEnsemble& ensemble) {
  const Eigen::MatrixXd& s = ensemble.spectra;
  require(s.rows() >= 2, ErrorKind::validation,
          "spectral g2 needs at least two pulses");
  require(s.cols() == ensemble.wavelengths.size(), ErrorKind::validation,
          "spectral ensemble: one wavelength per column required");
  require((s.array() >= 0.0).all(), ErrorKind::validation,
          "spectral densities must be >= 0");
  const double pulses = static_cast<double>(s.rows());
  const Eigen::VectorXd means = s.colwise().mean().transpose();
  const Eigen::MatrixXd second = (s.transpose() * s) / pulses;

  G2Matrix out;
  out.wavelengths = ensemble.wavelengths;
  out.masked_bins = means.array() <= 0.0;
  out.values = second.array() / (means * means.transpose()).array();
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    if (out.masked_bins(i)) {
      out.values.row(i).setConstant(kMaskedG2);
      out.values.col(i).setConstant(kMaskedG2);
    }
  }
  return out;
}

void write_g2_csv(std::ostream& out, const G2Matrix& g2) {
  out << "wavelength_nm";
  for (double w : g2.wavelengths) out << ',' << format_double(w);
  out << '\n';
  for (Eigen::Index i = 0; i < g2.values.rows(); ++i) {
    out << format_double(g2.wavelengths(i));
    for (Eigen::Index j = 0; j < g2.values.cols(); ++j)
      out << ',' << format_double(g2.values(i, j));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

template <typename Cdf>
KsResult ks_against(const Eigen::ArrayXd& values, Cdf&& cdf_at) {
  require(values.size() > 0, ErrorKind::validation,
          "KS distance: empty train");
  Eigen::ArrayXd xs = values;
  std::sort(xs.data(), xs.data() + xs.size());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (Eigen::Index i = 0; i < xs.size();) {
    Eigen::Index j = i;
    while (j < xs.size() && xs(j) == xs(i)) ++j;
    const double f = cdf_at(xs(i));
    d = std::max({d, std::abs(f - i / n), std::abs(f - j / n)});
    i = j;
  }
  KsResult r;
  r.statistic = d;
  r.samples = xs.size();
  const double rn = std::sqrt(n);
  r.p_bound = kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d);
  return r;
}

}  // namespace

KsResult ks_distance(const Eigen::ArrayXd& values, const DistributionSpec& spec) {
  validate(spec);
  require(spec.noise_sigma == 0.0, ErrorKind::validation,
          "KS distance: noisy specs need the tabulated (convolved) law");
  return ks_against(values, [&](double x) { return x <= 0.0 ? 0.0 : cdf(spec, x); });
}

KsResult ks_distance(const Eigen::ArrayXd& values, const TabulatedPdf& law) {
  require(law.grid.size() >= 2, ErrorKind::validation,
          "KS distance: tabulated law has no grid");
  const double total = law.integral();
  require(total > 0.0, ErrorKind::validation,
          "KS distance: tabulated law has zero mass");
  return ks_against(values, [&](double x) { return law.cdf(x) / total; });
}

// ---------------------------------------------------------------------------

double ghost_contrast(double g2, double object_area, double field_area) {
  require(object_area > 0.0 && field_area > 0.0, ErrorKind::validation,
          "ghost contrast: areas must be positive");
  require(object_area <= field_area, ErrorKind::validation,
          "ghost contrast: object area a exceeds field area A");
  require(g2 >= 1.0, ErrorKind::validation, "ghost contrast: g2 must be >= 1");
  return 1.0 + (g2 - 1.0) * object_area / field_area;
}

double subtracted_mean(double g2, double mean) {
  require(g2 >= 1.0, ErrorKind::validation, "subtracted mean: g2 must be >= 1");
  require(mean > 0.0, ErrorKind::validation,
          "subtracted mean: mean must be positive");
  return g2 * mean;
}

}  // namespace rogue
