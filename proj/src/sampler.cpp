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

#include "rogue/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "rogue/distributions.hpp"
#include "rogue/error.hpp"
#include "rogue/report.hpp"

namespace rogue {
namespace {

int worker_count(int requested, std::int64_t chunks) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::int64_t>(n, std::max<std::int64_t>(chunks, 1)));
}

// Runs body(chunk, begin, end) for every chunk; chunks are claimed
// dynamically, so each must be independent of scheduling.
template <typename Body>
void for_each_chunk(std::int64_t total, std::int64_t chunk_size, int threads,
                    Body&& body) {
  const std::int64_t chunks = (total + chunk_size - 1) / chunk_size;
  const int workers = worker_count(threads, chunks);
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::int64_t c; (c = next.fetch_add(1)) < chunks;) {
      try {
        const std::int64_t begin = c * chunk_size;
        body(c, begin, std::min(total, begin + chunk_size));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
}

void require_undetected(const PulseTrain& train, const char* stage) {
  require(!train.meta.detected, ErrorKind::ordering,
          std::string(stage) +
              " must run before detector noise/saturation; noise is always "
              "the last stage");
}

void require_consistent(PulseTrain& train) {
  require(train.meta.pulse_count == train.values.size(), ErrorKind::validation,
          "pulse train meta does not match its value count");
}

// Unit-mean draw from the M-mode source law: the sum of M single-mode
// draws of mean 1/M.
struct UnitSource {
  bool thermal = true;
  int modes = 1;

  double operator()(Stream& rng) const {
    double acc = 0.0;
    if (thermal) {
      for (int j = 0; j < modes; ++j) acc += rng.exponential();
    } else {
      for (int j = 0; j < modes; ++j) {
        const double z = rng.normal();
        acc += z * z;
      }
    }
    return acc / modes;
  }
};

std::string number(double v) { return format_double(v); }

}  // namespace

void validate(const DetectorModel& model) {
  require(std::isfinite(model.noise_sigma) && model.noise_sigma >= 0.0,
          ErrorKind::validation, "detector noise_sigma must be >= 0");
  if (model.saturation) {
    require(*model.saturation > 0.0, ErrorKind::validation,
            "detector saturation must be positive");
    require(*model.saturation > model.noise_sigma, ErrorKind::validation,
            "detector saturation must exceed noise_sigma");
  }
}

PulseTrain sample(const DistributionSpec& spec, std::int64_t pulses,
                  std::uint64_t master_seed, const ParallelOptions& opts) {
  validate(spec);
  require(pulses >= 1, ErrorKind::validation, "pulses must be >= 1");
  require(opts.chunk_size >= 1, ErrorKind::validation,
          "chunk_size must be >= 1");

  const bool thermal_like = std::holds_alternative<Thermal>(spec.source) ||
                            std::holds_alternative<FwmThermal>(spec.source);
  const UnitSource unit{thermal_like, spec.modes};

  // Each sample is a unit-mean source draw x mapped to photons.
  enum class Kind { plain, harmonic, fwm } kind = Kind::plain;
  double scale = 0.0;
  int order = 1;
  if (is_fwm(spec)) {
    kind = Kind::fwm;
    scale = std::visit(
        [](const auto& src) -> double {
          using T = std::decay_t<decltype(src)>;
          if constexpr (std::is_same_v<T, FwmThermal> ||
                        std::is_same_v<T, FwmSuperbunched>) {
            return src.kappa_np;
          } else {
            return 0.0;
          }
        },
        spec.source);
  } else if (is_harmonic(spec)) {
    kind = Kind::harmonic;
    order = spec.harmonic_order;
    DistributionSpec fundamental = noise_free(spec);
    fundamental.harmonic_order = 1;
    // x is unit mean, so <x^n> = g^(n) of the fundamental.
    scale = spec.harmonic_mean / analytic_gm(fundamental, order);
  } else {
    scale = source_mean(spec);
  }
  const double sigma = spec.noise_sigma;

  PulseTrain train;
  train.values.resize(pulses);
  for_each_chunk(
      pulses, opts.chunk_size, opts.threads,
      [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
        Stream rng(substream_seed(master_seed, static_cast<std::uint64_t>(chunk)));
        for (std::int64_t i = begin; i < end; ++i) {
          const double x = unit(rng);
          double v = 0.0;
          switch (kind) {
            case Kind::plain:
              v = scale * x;
              break;
            case Kind::harmonic:
              v = scale * std::pow(x, order);
              break;
            case Kind::fwm: {
              const double gain = scale * x;
              require(gain <= kMaxGain, ErrorKind::range,
                      "FWM gain " + number(gain) + " exceeds " +
                          number(kMaxGain) + " at pulse " + std::to_string(i));
              const double s = std::sinh(gain);
              v = s * s;
              break;
            }
          }
          if (sigma > 0.0) v += sigma * rng.normal();
          train.values(i) = v;
        }
      });

  train.meta.spec = canonical_string(spec);
  train.meta.master_seed = master_seed;
  train.meta.pulse_count = pulses;
  train.meta.chunk_size = opts.chunk_size;
  train.meta.history.push_back("sample(" + describe(noise_free(spec)) + ")");
  if (sigma > 0.0) {
    train.meta.history.push_back("noise(sigma=" + number(sigma) + ")");
    train.meta.detected = true;
  }
  return train;
}

PulseTrain harmonic_transform(PulseTrain train, int n, double conversion) {
  require_consistent(train);
  require_undetected(train, "harmonic_transform");
  require(n >= 2, ErrorKind::validation, "harmonic order must be >= 2");
  require(conversion > 0.0 && std::isfinite(conversion), ErrorKind::validation,
          "conversion factor K must be positive");
  require((train.values >= 0.0).all(), ErrorKind::validation,
          "harmonic_transform needs nonnegative photon numbers");
  train.values = conversion * train.values.pow(n);
  require(train.values.isFinite().all(), ErrorKind::range,
          "harmonic_transform overflowed");
  train.meta.history.push_back("harmonic(n=" + std::to_string(n) +
                               ",K=" + number(conversion) + ")");
  return train;
}

PulseTrain fwm_transform(PulseTrain train, double kappa) {
  require_consistent(train);
  require_undetected(train, "fwm_transform");
  require(kappa > 0.0 && std::isfinite(kappa), ErrorKind::validation,
          "kappa must be positive");
  require((train.values >= 0.0).all(), ErrorKind::validation,
          "fwm_transform needs nonnegative pump photon numbers");
  const double max_gain = kappa * train.values.maxCoeff();
  require(max_gain <= kMaxGain, ErrorKind::range,
          "FWM gain kappa*N_p = " + number(max_gain) + " exceeds " +
              number(kMaxGain));
  train.values = (kappa * train.values).sinh().square();
  train.meta.history.push_back("fwm(kappa=" + number(kappa) + ")");
  return train;
}

PulseTrain apply_loss(PulseTrain train, double eta) {
  require_consistent(train);
  require_undetected(train, "apply_loss");
  require(eta > 0.0 && eta <= 1.0, ErrorKind::validation,
          "transmission eta must lie in (0, 1]");
  train.values *= eta;
  train.meta.history.push_back("loss(eta=" + number(eta) + ")");
  return train;
}

PulseTrain apply_detector(PulseTrain train, const DetectorModel& model,
                          std::uint64_t noise_seed,
                          const ParallelOptions& opts) {
  require_consistent(train);
  validate(model);
  if (model.noise_sigma > 0.0) {
    const std::int64_t chunk = std::max<std::int64_t>(opts.chunk_size, 1);
    for_each_chunk(train.size(), chunk, opts.threads,
                   [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                     Stream rng(substream_seed(noise_seed,
                                               static_cast<std::uint64_t>(c)));
                     for (std::int64_t i = begin; i < end; ++i)
                       train.values(i) += model.noise_sigma * rng.normal();
                   });
  }
  if (model.saturation) train.values = train.values.min(*model.saturation);
  std::ostringstream os;
  os << "detector(sigma=" << number(model.noise_sigma) << ",saturation="
     << (model.saturation ? number(*model.saturation) : "none")
     << ",seed=" << noise_seed << ")";
  train.meta.history.push_back(os.str());
  train.meta.detected = true;
  return train;
}

}  // namespace rogue
