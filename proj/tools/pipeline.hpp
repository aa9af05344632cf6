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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "rogue/error.hpp"
#include "rogue/sampler.hpp"

namespace rogue::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitFormat = 3,
  kExitRange = 4,
};

int exit_code(ErrorKind kind);

/// source -> harmonic/fwm -> loss -> detector.
PulseTrain run_pipeline(const RunConfig& config, const ParallelOptions& opts);

nlohmann::json summarize(const PulseTrain& train);

/// One analysis result: its NDJSON record and an optional plot-ready table.
struct AnalysisOutput {
  nlohmann::json record;
  std::vector<std::string> csv_header;
  std::vector<Eigen::ArrayXd> csv_columns;
};

/// Throws Error on estimator precondition failures.
AnalysisOutput run_analysis(const AnalysisRequest& request,
                            const PulseTrain& train, const RunConfig& config);

/// Law the train should follow after loss and detector noise, if it has a
/// closed form (saturation has none).
DistributionSpec expected_law(const RunConfig& config);

// Canned reproductions. Each row keeps the artifact value, the published
// value and the tolerance it was checked against.

struct Table1Row {
  std::string label;
  double mean = 0.0;
  double theory = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double published = 0.0;
  double published_error = 0.0;
  double tolerance = 0.0;  // absolute, around theory
  std::string note;
  bool pass = false;
};

struct Table2Row {
  std::string label;
  double k_theory = 0.0;
  double k_theory_published = 0.0;
  double k_fit = 0.0;
  double k_fit_stderr = 0.0;
  double k_hill = 0.0;
  double k_published = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double train_mean = 0.0;
  std::optional<double> loss_eta;
  std::optional<double> delta_k;  // against the reference row
  double delta_k_max = 0.0;
  bool theory_pass = false;
  bool pass = false;
};

struct Fig8Curve {
  std::string label;
  double mean = 0.0;
  HazardCurve empirical;
  Eigen::ArrayXd theory;  // analytic H(N)/N of the noise-free law
  std::string check;
  double check_value = 0.0;
  double check_target = 0.0;
  bool pass = false;
};

std::vector<Table1Row> reproduce_table1(const nlohmann::json& doc,
                                        const ParallelOptions& opts);
std::vector<Table2Row> reproduce_table2(const nlohmann::json& doc,
                                        const ParallelOptions& opts);
std::vector<Fig8Curve> reproduce_fig8(const nlohmann::json& doc,
                                      const ParallelOptions& opts);

std::filesystem::path default_config_dir();

// Subcommands. Return the process exit code; errors go to `err` as JSON lines.

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::optional<std::string> format;
};

struct AnalyzeArgs {
  std::filesystem::path train;
  std::filesystem::path config;
  std::filesystem::path out;
};

struct ReproduceArgs {
  std::string table;
  std::filesystem::path out_dir;
  std::filesystem::path config_dir;
  int threads = 0;
};

struct SpectralArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  int threads = 0;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_reproduce(const ReproduceArgs& args, std::ostream& out, std::ostream& err);
int cmd_spectral(const SpectralArgs& args, std::ostream& out, std::ostream& err);

void report_error(std::ostream& err, const std::string& kind,
                  const std::string& message);

}  // namespace rogue::cli
