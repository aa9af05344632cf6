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
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rogue/estimators.hpp"
#include "rogue/sampler.hpp"
#include "rogue/spec.hpp"

namespace rogue::cli {

inline constexpr int kConfigVersion = 1;

struct HistogramRequest {
  HistogramSpec spec;
};

struct CcdfRequest {
  int max_points = 400;
};

struct GmRequest {
  std::vector<int> orders{2};
  BootstrapOptions bootstrap;
};

struct TailFitRequest {
  std::optional<TailWindow> window;  // default_tail_window when empty
  std::vector<TailFitMethod> methods{TailFitMethod::ccdf_regression};
  int points_per_decade = 20;
};

struct HazardRequest {
  int points_per_decade = 10;
};

struct KsRequest {
  std::optional<DistributionSpec> against;  // run spec when empty
};

using AnalysisRequest = std::variant<HistogramRequest, CcdfRequest, GmRequest,
                                     TailFitRequest, HazardRequest, KsRequest>;

const char* analysis_type(const AnalysisRequest& request);

/// Pipeline stages in their only admissible order.
enum class Stage { source, harmonic, fwm, loss, detector };

struct RunConfig {
  DistributionSpec spec;
  std::int64_t pulses = 0;
  std::uint64_t master_seed = 0;
  std::int64_t chunk_size = kDefaultChunkSize;
  std::optional<double> loss_eta;
  std::optional<DetectorModel> detector;
  std::uint64_t noise_seed = 0;  // detector noise substreams
  std::vector<AnalysisRequest> analyses;
};

/// Parses and validates everything (spec, run fields, stage order, every
/// analysis) before any computation. Errors are Error(validation) with the
/// offending field in the message.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace rogue::cli
