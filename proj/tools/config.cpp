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

#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "rogue/error.hpp"

namespace rogue::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  fail(ErrorKind::validation, where + ": " + what);
}

double number(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key) || !doc.at(key).is_number())
    invalid(where, std::string("field '") + key + "' must be a number");
  return doc.at(key).get<double>();
}

std::int64_t integer(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer())
    invalid(where, std::string("field '") + key + "' must be an integer");
  return doc.at(key).get<std::int64_t>();
}

std::uint64_t seed_field(const json& doc, const char* key,
                         const std::string& where) {
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    invalid(where, std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

void only_keys(const json& doc, std::initializer_list<const char*> keys,
               const std::string& where) {
  for (const auto& [key, _] : doc.items()) {
    if (std::none_of(keys.begin(), keys.end(),
                     [&](const char* k) { return key == k; }))
      invalid(where, "unknown field '" + key + "'");
  }
}

std::optional<TailWindow> window_field(const json& doc, const std::string& where) {
  if (!doc.contains("window")) return std::nullopt;
  const json& w = doc.at("window");
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
    invalid(where, "'window' must be [lo, hi]");
  TailWindow t{w[0].get<double>(), w[1].get<double>()};
  if (!(t.lo > 0.0 && t.hi > t.lo))
    invalid(where, "'window' needs 0 < lo < hi");
  return t;
}

AnalysisRequest parse_analysis(const json& doc, const std::string& where) {
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string())
    invalid(where, "analysis needs a string 'type'");
  const std::string type = doc.at("type").get<std::string>();
  if (type == "histogram") {
    only_keys(doc, {"type", "binning", "width", "bins_per_decade", "range"}, where);
    HistogramRequest r;
    const std::string binning = doc.value("binning", "logarithmic");
    if (binning == "linear") {
      r.spec.binning = HistogramSpec::Binning::linear;
      r.spec.width = number(doc, "width", where);
    } else if (binning == "logarithmic" || binning == "log") {
      r.spec.binning = HistogramSpec::Binning::logarithmic;
      r.spec.bins_per_decade = doc.contains("bins_per_decade")
                                   ? number(doc, "bins_per_decade", where)
                                   : 10.0;
    } else {
      invalid(where, "binning must be 'linear' or 'logarithmic'");
    }
    const json& range = doc.contains("range") ? doc.at("range") : json();
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() ||
        !range[1].is_number())
      invalid(where, "'range' must be [lo, hi]");
    r.spec.lo = range[0].get<double>();
    r.spec.hi = range[1].get<double>();
    try {
      validate(r.spec);
    } catch (const Error& e) {
      invalid(where, e.what());
    }
    return r;
  }
  if (type == "ccdf") {
    only_keys(doc, {"type", "max_points"}, where);
    CcdfRequest r;
    if (doc.contains("max_points")) {
      r.max_points = static_cast<int>(integer(doc, "max_points", where));
      if (r.max_points < 2) invalid(where, "'max_points' must be >= 2");
    }
    return r;
  }
  if (type == "gm") {
    only_keys(doc, {"type", "orders", "resamples", "bootstrap_seed"}, where);
    GmRequest r;
    if (doc.contains("orders")) {
      const json& o = doc.at("orders");
      if (!o.is_array() || o.empty()) invalid(where, "'orders' must be a nonempty list");
      r.orders.clear();
      for (const json& m : o) {
        if (!m.is_number_integer() || m.get<int>() < 1)
          invalid(where, "correlation orders must be integers >= 1");
        r.orders.push_back(m.get<int>());
      }
    }
    if (doc.contains("resamples")) {
      r.bootstrap.resamples = static_cast<int>(integer(doc, "resamples", where));
      if (r.bootstrap.resamples < 200)
        invalid(where, "'resamples' must be >= 200");
    }
    if (doc.contains("bootstrap_seed"))
      r.bootstrap.seed = seed_field(doc, "bootstrap_seed", where);
    return r;
  }
  if (type == "tailfit") {
    only_keys(doc, {"type", "window", "method", "points_per_decade"}, where);
    TailFitRequest r;
    r.window = window_field(doc, where);
    const std::string method = doc.value("method", "ccdf-regression");
    if (method == "both") {
      r.methods = {TailFitMethod::ccdf_regression, TailFitMethod::hill};
    } else {
      try {
        r.methods = {tail_fit_method_from_string(method)};
      } catch (const Error& e) {
        invalid(where, e.what());
      }
    }
    if (doc.contains("points_per_decade")) {
      r.points_per_decade = static_cast<int>(integer(doc, "points_per_decade", where));
      if (r.points_per_decade < 1) invalid(where, "'points_per_decade' must be >= 1");
    }
    return r;
  }
  if (type == "hazard") {
    only_keys(doc, {"type", "points_per_decade"}, where);
    HazardRequest r;
    if (doc.contains("points_per_decade")) {
      r.points_per_decade = static_cast<int>(integer(doc, "points_per_decade", where));
      if (r.points_per_decade < 1) invalid(where, "'points_per_decade' must be >= 1");
    }
    return r;
  }
  if (type == "ks") {
    only_keys(doc, {"type", "against"}, where);
    KsRequest r;
    if (doc.contains("against")) {
      try {
        r.against = spec_from_json(doc.at("against"));
      } catch (const Error& e) {
        invalid(where + ".against", e.what());
      }
    }
    return r;
  }
  invalid(where, "unknown analysis type '" + type + "'");
}

Stage stage_from_string(const std::string& name) {
  static const std::map<std::string, Stage> names{
      {"source", Stage::source}, {"harmonic", Stage::harmonic},
      {"fwm", Stage::fwm},       {"loss", Stage::loss},
      {"detector", Stage::detector}};
  const auto it = names.find(name);
  if (it == names.end()) invalid("stages", "unknown stage '" + name + "'");
  return it->second;
}

}  // namespace

const char* analysis_type(const AnalysisRequest& request) {
  return std::visit(
      [](const auto& r) -> const char* {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, HistogramRequest>) return "histogram";
        if constexpr (std::is_same_v<T, CcdfRequest>) return "ccdf";
        if constexpr (std::is_same_v<T, GmRequest>) return "gm";
        if constexpr (std::is_same_v<T, TailFitRequest>) return "tailfit";
        if constexpr (std::is_same_v<T, HazardRequest>) return "hazard";
        return "ks";
      },
      request);
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) invalid("config", "document must be an object");
  only_keys(doc,
            {"config_version", "spec", "pulses", "seed", "chunk_size", "loss_eta",
             "detector", "stages", "analyses", "description"},
            "config");
  if (!doc.contains("config_version") ||
      integer(doc, "config_version", "config") != kConfigVersion)
    invalid("config", "'config_version' must be " + std::to_string(kConfigVersion));

  RunConfig cfg;
  if (!doc.contains("spec")) invalid("config", "missing 'spec'");
  try {
    cfg.spec = spec_from_json(doc.at("spec"));
  } catch (const Error& e) {
    invalid("config.spec", e.what());
  }
  cfg.pulses = integer(doc, "pulses", "config");
  if (cfg.pulses < 1) invalid("config.pulses", "must be >= 1");
  if (!doc.contains("seed")) invalid("config", "missing 'seed'");
  cfg.master_seed = seed_field(doc, "seed", "config");
  if (doc.contains("chunk_size")) {
    cfg.chunk_size = integer(doc, "chunk_size", "config");
    if (cfg.chunk_size < 1) invalid("config.chunk_size", "must be >= 1");
  }
  if (doc.contains("loss_eta")) {
    const double eta = number(doc, "loss_eta", "config");
    if (!(eta > 0.0 && eta <= 1.0))
      invalid("config.loss_eta", "must lie in (0, 1]");
    cfg.loss_eta = eta;
  }
  cfg.noise_seed = mix64(cfg.master_seed ^ 0xD37EC7ULL);
  if (doc.contains("detector")) {
    const json& d = doc.at("detector");
    if (!d.is_object()) invalid("config.detector", "must be an object");
    only_keys(d, {"noise_sigma", "saturation", "seed"}, "config.detector");
    DetectorModel model;
    model.noise_sigma =
        d.contains("noise_sigma") ? number(d, "noise_sigma", "config.detector") : 0.0;
    if (d.contains("saturation") && !d.at("saturation").is_null() &&
        !(d.at("saturation").is_string() && d.at("saturation") == "none"))
      model.saturation = number(d, "saturation", "config.detector");
    if (d.contains("seed")) cfg.noise_seed = seed_field(d, "seed", "config.detector");
    try {
      validate(model);
    } catch (const Error& e) {
      invalid("config.detector", e.what());
    }
    cfg.detector = model;
  }

  // Noise is a detection artifact and always the last stage.
  if (cfg.spec.noise_sigma > 0.0 && (cfg.loss_eta || cfg.detector))
    invalid("config",
            "spec.noise_sigma adds noise at the source; with loss or detector "
            "stages put the noise into 'detector' instead");

  std::vector<Stage> present{Stage::source};
  if (is_harmonic(cfg.spec)) present.push_back(Stage::harmonic);
  if (is_fwm(cfg.spec)) present.push_back(Stage::fwm);
  if (cfg.loss_eta) present.push_back(Stage::loss);
  if (cfg.detector) present.push_back(Stage::detector);
  if (doc.contains("stages")) {
    const json& s = doc.at("stages");
    if (!s.is_array()) invalid("config.stages", "must be a list");
    std::vector<Stage> listed;
    for (const json& name : s) {
      if (!name.is_string()) invalid("config.stages", "entries must be strings");
      listed.push_back(stage_from_string(name.get<std::string>()));
    }
    if (!std::is_sorted(listed.begin(), listed.end()) ||
        std::adjacent_find(listed.begin(), listed.end()) != listed.end())
      invalid("config.stages",
              "order must be source -> harmonic/fwm -> loss -> detector");
    if (listed != present)
      invalid("config.stages",
              "listed stages do not match the configured spec/loss/detector");
  }

  if (doc.contains("analyses")) {
    const json& a = doc.at("analyses");
    if (!a.is_array()) invalid("config.analyses", "must be a list");
    for (std::size_t i = 0; i < a.size(); ++i)
      cfg.analyses.push_back(
          parse_analysis(a[i], "config.analyses[" + std::to_string(i) + "]"));
  }
  return cfg;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json doc = json::parse(in, nullptr, false, true);
  if (doc.is_discarded())
    fail(ErrorKind::validation, "config " + path.string() + " is not valid JSON");
  return doc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(load_json_file(path));
}

}  // namespace rogue::cli
