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

#include "rogue/spec.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rogue/error.hpp"
#include "rogue/report.hpp"

namespace rogue {

using nlohmann::json;

bool is_fwm(const DistributionSpec& spec) {
  return std::holds_alternative<FwmThermal>(spec.source) ||
         std::holds_alternative<FwmSuperbunched>(spec.source);
}

bool is_harmonic(const DistributionSpec& spec) {
  return spec.harmonic_order >= 2;
}

double source_mean(const DistributionSpec& spec) {
  if (const auto* t = std::get_if<Thermal>(&spec.source)) return t->mean;
  if (const auto* s = std::get_if<Superbunched>(&spec.source)) return s->mean;
  fail(ErrorKind::validation, "FWM sources have no mean field; use kappa_np");
}

double mean_photons(const DistributionSpec& spec) {
  if (is_harmonic(spec)) return spec.harmonic_mean;
  if (!is_fwm(spec)) return source_mean(spec);
  // Gain G = kappa N_p is Gamma(shape, scale) distributed; the mean of
  // sinh^2 G follows from the Gamma moment generating function.
  const bool thermal_pump = std::holds_alternative<FwmThermal>(spec.source);
  const double kappa_np = thermal_pump
                              ? std::get<FwmThermal>(spec.source).kappa_np
                              : std::get<FwmSuperbunched>(spec.source).kappa_np;
  const double shape = thermal_pump ? spec.modes : 0.5 * spec.modes;
  const double scale = kappa_np / shape;
  if (2.0 * scale >= 1.0) return std::numeric_limits<double>::infinity();
  const double cosh_mean = 0.5 * (std::pow(1.0 - 2.0 * scale, -shape) +
                                  std::pow(1.0 + 2.0 * scale, -shape));
  return 0.5 * (cosh_mean - 1.0);
}

void validate(const DistributionSpec& spec) {
  auto positive = [](double v, const char* field) {
    require(std::isfinite(v) && v > 0.0, ErrorKind::validation,
            std::string(field) + " must be positive and finite");
  };
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, Thermal> ||
                      std::is_same_v<T, Superbunched>) {
          positive(src.mean, "mean");
        } else {
          positive(src.kappa_np, "kappa_np");
        }
      },
      spec.source);
  require(spec.harmonic_order >= 1, ErrorKind::validation,
          "harmonic_order must be >= 1");
  require(spec.modes >= 1, ErrorKind::validation, "modes must be >= 1");
  require(std::isfinite(spec.noise_sigma) && spec.noise_sigma >= 0.0,
          ErrorKind::validation, "noise_sigma must be >= 0");
  if (is_harmonic(spec)) {
    require(!is_fwm(spec), ErrorKind::validation,
            "harmonic_order applies only to thermal/superbunched sources");
    positive(spec.harmonic_mean, "harmonic_mean");
    require(spec.modes == 1, ErrorKind::unsupported,
            "harmonic of a multimode source has no closed form; use modes = 1");
  }
}

DistributionSpec noise_free(DistributionSpec spec) {
  spec.noise_sigma = 0.0;
  return spec;
}

DistributionSpec thermal(double mean, int modes) {
  DistributionSpec s;
  s.source = Thermal{mean};
  s.modes = modes;
  return s;
}

DistributionSpec superbunched(double mean, int modes) {
  DistributionSpec s;
  s.source = Superbunched{mean};
  s.modes = modes;
  return s;
}

DistributionSpec thermal_harmonic(int order, double harmonic_mean,
                                  double fundamental_mean) {
  DistributionSpec s = thermal(fundamental_mean);
  s.harmonic_order = order;
  s.harmonic_mean = harmonic_mean;
  return s;
}

DistributionSpec superbunched_harmonic(int order, double harmonic_mean,
                                       double fundamental_mean) {
  DistributionSpec s = superbunched(fundamental_mean);
  s.harmonic_order = order;
  s.harmonic_mean = harmonic_mean;
  return s;
}

DistributionSpec fwm_thermal(double kappa_np, int modes) {
  DistributionSpec s;
  s.source = FwmThermal{kappa_np};
  s.modes = modes;
  return s;
}

DistributionSpec fwm_superbunched(double kappa_np, int modes) {
  DistributionSpec s;
  s.source = FwmSuperbunched{kappa_np};
  s.modes = modes;
  return s;
}

json to_json(const DistributionSpec& spec) {
  json doc;
  doc["spec_version"] = kSpecVersion;
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, Thermal>) {
          doc["source"] = "thermal";
          doc["mean"] = src.mean;
        } else if constexpr (std::is_same_v<T, Superbunched>) {
          doc["source"] = "superbunched";
          doc["mean"] = src.mean;
        } else if constexpr (std::is_same_v<T, FwmThermal>) {
          doc["source"] = "fwm_thermal";
          doc["kappa_np"] = src.kappa_np;
        } else {
          doc["source"] = "fwm_superbunched";
          doc["kappa_np"] = src.kappa_np;
        }
      },
      spec.source);
  doc["harmonic_order"] = spec.harmonic_order;
  doc["harmonic_mean"] = spec.harmonic_mean;
  doc["modes"] = spec.modes;
  doc["noise_sigma"] = spec.noise_sigma;
  return doc;
}

namespace {

template <typename T>
T field(const json& doc, const char* key, T fallback, bool required) {
  if (!doc.contains(key)) {
    require(!required, ErrorKind::validation,
            std::string("spec: missing field '") + key + "'");
    return fallback;
  }
  const json& v = doc.at(key);
  if constexpr (std::is_integral_v<T>) {
    require(v.is_number_integer(), ErrorKind::validation,
            std::string("spec: field '") + key + "' must be an integer");
  } else {
    require(v.is_number(), ErrorKind::validation,
            std::string("spec: field '") + key + "' must be a number");
  }
  return v.get<T>();
}

}  // namespace

DistributionSpec spec_from_json(const json& doc) {
  require(doc.is_object(), ErrorKind::validation,
          "spec: document must be an object");
  const int version = field<int>(doc, "spec_version", 0, true);
  require(version == kSpecVersion, ErrorKind::validation,
          "spec: unsupported spec_version " + std::to_string(version));
  require(doc.contains("source") && doc.at("source").is_string(),
          ErrorKind::validation, "spec: missing string field 'source'");
  static const char* known[] = {"spec_version", "source",     "mean",
                                "kappa_np",     "harmonic_order",
                                "harmonic_mean", "modes",     "noise_sigma"};
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    require(ok, ErrorKind::validation, "spec: unknown field '" + key + "'");
  }

  DistributionSpec spec;
  const std::string source = doc.at("source").get<std::string>();
  if (source == "thermal") {
    spec.source = Thermal{field<double>(doc, "mean", 0.0, true)};
  } else if (source == "superbunched") {
    spec.source = Superbunched{field<double>(doc, "mean", 0.0, true)};
  } else if (source == "fwm_thermal") {
    spec.source = FwmThermal{field<double>(doc, "kappa_np", 0.0, true)};
  } else if (source == "fwm_superbunched") {
    spec.source = FwmSuperbunched{field<double>(doc, "kappa_np", 0.0, true)};
  } else {
    fail(ErrorKind::validation, "spec: unknown source '" + source + "'");
  }
  spec.harmonic_order = field<int>(doc, "harmonic_order", 1, false);
  spec.harmonic_mean = field<double>(doc, "harmonic_mean", 0.0, false);
  spec.modes = field<int>(doc, "modes", 1, false);
  spec.noise_sigma = field<double>(doc, "noise_sigma", 0.0, false);
  validate(spec);
  return spec;
}

std::string canonical_string(const DistributionSpec& spec) {
  return dump_json(to_json(spec));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t digest(const DistributionSpec& spec) {
  return fnv1a64(canonical_string(spec));
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  os << to_json(spec).at("source").get<std::string>();
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, Thermal> ||
                      std::is_same_v<T, Superbunched>) {
          os << "(mean=" << src.mean << ")";
        } else {
          os << "(kappa_np=" << src.kappa_np << ")";
        }
      },
      spec.source);
  if (is_harmonic(spec))
    os << " harmonic n=" << spec.harmonic_order << " <N>=" << spec.harmonic_mean;
  if (spec.modes > 1) os << " M=" << spec.modes;
  if (spec.noise_sigma > 0) os << " sigma=" << spec.noise_sigma;
  return os.str();
}

}  // namespace rogue
