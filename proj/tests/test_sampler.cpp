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

#include <gtest/gtest.h>

#include "rogue/distributions.hpp"
#include "rogue/error.hpp"
#include "rogue/estimators.hpp"
#include "rogue/sampler.hpp"

namespace {

using namespace rogue;

ParallelOptions workers(int n, std::int64_t chunk = kDefaultChunkSize) {
  ParallelOptions o;
  o.threads = n;
  o.chunk_size = chunk;
  return o;
}

double sample_variance(const Eigen::ArrayXd& v) {
  return (v - v.mean()).square().sum() / static_cast<double>(v.size() - 1);
}

TEST(Rng, SubstreamSeedsAreDocumentedMix) {
  // First SplitMix64 outputs for states 0 and 1.
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(mix64(1), 0x910A2DEC89025CC1ULL);
  EXPECT_EQ(substream_seed(7, 3), mix64(mix64(7) ^ (0x9E3779B97F4A7C15ULL * 4)));
  EXPECT_NE(substream_seed(7, 0), substream_seed(7, 1));
  EXPECT_NE(substream_seed(7, 0), substream_seed(8, 0));
}

TEST(Rng, StreamVariates) {
  Stream rng(123);
  double su = 0.0, se = 0.0, sn = 0.0, sn2 = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    se += rng.exponential();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    ASSERT_LT(rng.index(7), 7u);
  }
  EXPECT_NEAR(su / n, 0.5, 0.003);
  EXPECT_NEAR(se / n, 1.0, 0.006);
  EXPECT_NEAR(sn / n, 0.0, 0.006);
  EXPECT_NEAR(sn2 / n, 1.0, 0.008);
}

TEST(Sampler, IdenticalAcrossWorkerCounts) {
  for (const DistributionSpec& s :
       {thermal(10.0, 3), superbunched_harmonic(3, 5.0), fwm_superbunched(2.5, 2)}) {
    const PulseTrain ref = sample(s, 300'001, 99, workers(1, 4096));
    for (int t : {2, 3, 8}) {
      const PulseTrain other = sample(s, 300'001, 99, workers(t, 4096));
      EXPECT_TRUE((other.values == ref.values).all()) << describe(s) << " threads=" << t;
      EXPECT_EQ(other.meta, ref.meta);
    }
  }
}

TEST(Sampler, SeedAndMeta) {
  const DistributionSpec s = superbunched(2.0);
  const PulseTrain a = sample(s, 1000, 1);
  const PulseTrain b = sample(s, 1000, 2);
  EXPECT_FALSE((a.values == b.values).all());
  EXPECT_EQ(a.meta.pulse_count, 1000);
  EXPECT_EQ(a.meta.master_seed, 1u);
  EXPECT_EQ(a.meta.chunk_size, kDefaultChunkSize);
  EXPECT_EQ(a.meta.spec, canonical_string(s));
  EXPECT_EQ(a.meta.history.size(), 1u);
  EXPECT_FALSE(a.meta.detected);
  EXPECT_TRUE((a.values >= 0.0).all());
  // Regeneration from meta.
  const PulseTrain again = sample(spec_from_json(nlohmann::json::parse(a.meta.spec)),
                                  a.meta.pulse_count, a.meta.master_seed,
                                  workers(0, a.meta.chunk_size));
  EXPECT_TRUE((again.values == a.values).all());
}

TEST(Sampler, RejectsBadArguments) {
  EXPECT_THROW(sample(thermal(1.0), 0, 1), Error);
  EXPECT_THROW(sample(thermal(-1.0), 10, 1), Error);
  EXPECT_THROW(sample(thermal(1.0), 10, 1, workers(1, 0)), Error);
  try {
    sample(fwm_thermal(100.0), 100000, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::range);
  }
}

TEST(Sampler, SuperbunchedVariance) {
  const PulseTrain t = sample(superbunched(50.0), 10'000'000, 5);
  EXPECT_NEAR(sample_variance(t.values) / (50.0 * 50.0), 2.0, 0.01);
  EXPECT_NEAR(t.values.mean() / 50.0, 1.0, 0.002);
}

TEST(Sampler, ManyModesApproachPoisson) {
  const PulseTrain t = sample(thermal(1e3, 100), 400'000, 6);
  EXPECT_NEAR(empirical_gm(t.values, 2).value, 1.01, 0.005);
}

TEST(Sampler, ThermalMoments) {
  const PulseTrain t = sample(thermal(3.0), 10'000'000, 17);
  EXPECT_NEAR(empirical_gm(t.values, 2).value, 2.0, 0.01);
  EXPECT_NEAR(empirical_gm(t.values, 3).value, 6.0, 0.1);
  EXPECT_NEAR(empirical_gm(t.values, 4).value, 24.0, 1.0);
}

TEST(Sampler, SingleModeFwmDeepTail) {
  const DistributionSpec s = fwm_superbunched(2.5);
  const PulseTrain t = sample(s, 10'000'000, 23);
  const TailFitReport fit = fit_tail_exponent(empirical_ccdf(t.values), 1e10, 1e40,
                                              TailFitMethod::ccdf_regression);
  EXPECT_NEAR(fit.k, 0.1, 0.02);
  const double secant = -(log_ccdf(s, 1e40) - log_ccdf(s, 1e10)) / std::log(1e30);
  EXPECT_NEAR(fit.k, secant, 0.005 + 3.0 * fit.k_stderr);
}

TEST(Sampler, KsAgainstAnalyticCcdf) {
  for (const DistributionSpec& s : {fwm_thermal(0.5), superbunched(2.0, 3),
                                    thermal_harmonic(2, 7.0)}) {
    const PulseTrain t = sample(s, 1'000'000, 31);
    EXPECT_LE(ks_distance(t.values, s).statistic, 0.005) << describe(s);
  }
}

TEST(Transforms, Harmonic) {
  PulseTrain t;
  t.values = Eigen::ArrayXd::Constant(3, 10.0);
  t.meta.pulse_count = 3;
  EXPECT_DOUBLE_EQ(harmonic_transform(t, 2, 1.0).values(0), 100.0);

  // Sampling a harmonic spec equals transforming the fundamental with K
  // fixed by the harmonic mean; the draws coincide, so values agree.
  const double m = 4.0, mk = 9.0;
  const double K = mk / (m * m * analytic_gm(thermal(m), 2));
  const PulseTrain fund = sample(thermal(m), 200'000, 8);
  const PulseTrain direct = sample(thermal_harmonic(2, mk, m), 200'000, 8);
  const PulseTrain via = harmonic_transform(fund, 2, K);
  EXPECT_TRUE(((via.values - direct.values).abs() <= 1e-12 * direct.values.abs() + 1e-300)
                  .all());
  EXPECT_LE(ks_distance(via.values, thermal_harmonic(2, mk)).statistic, 0.005);
  EXPECT_EQ(via.meta.history.size(), 2u);
}

TEST(Transforms, HarmonicG2AtScale) {
  const PulseTrain th = harmonic_transform(sample(thermal(1.0), 10'000'000, 41), 2, 1.0);
  EXPECT_NEAR(empirical_gm(th.values, 2).value, 6.0, 0.3);
  const PulseTrain sb =
      harmonic_transform(sample(superbunched(1.0), 10'000'000, 42), 3, 1.0);
  EXPECT_NEAR(empirical_gm(sb.values, 2).value / 46.2, 1.0, 0.2);
}

TEST(Transforms, Fwm) {
  PulseTrain t;
  t.values.resize(2);
  t.values << 0.0, 2.0;
  t.meta.pulse_count = 2;
  const PulseTrain out = fwm_transform(t, 0.5);
  EXPECT_EQ(out.values(0), 0.0);
  EXPECT_NEAR(out.values(1), 1.38109, 1e-5);
  t.values(1) = 800.0;
  EXPECT_THROW(fwm_transform(t, 0.5), Error);

  const PulseTrain pump = sample(thermal(1.0), 1'000'000, 3);
  const PulseTrain scg = fwm_transform(pump, 0.5);
  EXPECT_LE(ks_distance(scg.values, fwm_thermal(0.5)).statistic, 0.01);
}

TEST(Transforms, LossAndDetector) {
  const PulseTrain t = sample(thermal(6.5e3), 1'000'000, 4);
  EXPECT_TRUE((apply_loss(t, 1.0).values == t.values).all());
  const PulseTrain lossy = apply_loss(t, 0.43);
  EXPECT_NEAR(lossy.values.mean() / 2.8e3, 1.0, 0.01);
  EXPECT_THROW(apply_loss(t, 0.0), Error);
  EXPECT_THROW(apply_loss(t, 1.5), Error);

  EXPECT_TRUE((apply_detector(t, DetectorModel{}, 1).values == t.values).all());

  PulseTrain zero;
  zero.values = Eigen::ArrayXd::Zero(1'000'000);
  zero.meta.pulse_count = zero.values.size();
  const PulseTrain noise = apply_detector(zero, DetectorModel{1600.0, std::nullopt}, 9);
  EXPECT_NEAR(std::sqrt(sample_variance(noise.values)) / 1600.0, 1.0, 0.01);
  EXPECT_TRUE((noise.values < 0.0).any());
  EXPECT_TRUE(noise.meta.detected);

  const PulseTrain scg = sample(fwm_superbunched(4.0, 5), 200'000, 10);
  const PulseTrain sat = apply_detector(scg, DetectorModel{270.0, 1e6}, 11);
  EXPECT_LE(sat.values.maxCoeff(), 1e6);
  EXPECT_GT((sat.values == 1e6).count(), 0);

  EXPECT_THROW(apply_detector(t, DetectorModel{10.0, 5.0}, 1), Error);
}

TEST(Transforms, NoiseIsLast) {
  PulseTrain detected = apply_detector(sample(thermal(5.0), 100, 1),
                                       DetectorModel{1.0, std::nullopt}, 2);
  for (const auto& f : std::vector<std::function<void()>>{
           [&] { harmonic_transform(detected, 2, 1.0); },
           [&] { fwm_transform(detected, 0.1); },
           [&] { apply_loss(detected, 0.5); }}) {
    try {
      f();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ordering);
    }
  }
  DistributionSpec noisy = thermal(5.0);
  noisy.noise_sigma = 1.0;
  EXPECT_TRUE(sample(noisy, 10, 1).meta.detected);
}

TEST(Transforms, DetectorNoiseIndependentOfWorkers) {
  const PulseTrain t = sample(superbunched(3.0), 200'000, 12, workers(1, 1000));
  const PulseTrain a = apply_detector(t, DetectorModel{1.0, 40.0}, 5, workers(1, 1000));
  const PulseTrain b = apply_detector(t, DetectorModel{1.0, 40.0}, 5, workers(4, 1000));
  EXPECT_TRUE((a.values == b.values).all());
}

}  // namespace
