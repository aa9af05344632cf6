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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pipeline.hpp"

int main(int argc, char** argv) {
  using namespace rogue::cli;

  CLI::App app{"rogue: heavy-tailed photon statistics toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  std::uint64_t seed = 0;
  std::string format;
  auto* simulate = app.add_subcommand("simulate", "Sample a pulse train from a run config");
  simulate->add_option("--config", sim.config, "Run config (JSON)")->required();
  simulate->add_option("--out", sim.out, "Train file (.ndjson, .bin or .csv)")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "Override the config seed");
  simulate->add_option("--threads", sim.threads, "Worker cap (0: all cores)");
  auto* format_opt = simulate->add_option("--format", format, "ndjson, binary or csv");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Run estimators on a stored train");
  analyze->add_option("--train", ana.train, "Train file")->required();
  analyze->add_option("--config", ana.config, "Run config with analyses")->required();
  analyze->add_option("--out", ana.out, "NDJSON report")->required();

  ReproduceArgs rep;
  rep.config_dir = default_config_dir();
  auto* reproduce = app.add_subcommand("reproduce", "Run a canned comparison");
  reproduce->add_option("table", rep.table, "table1, table2 or fig8")->required();
  reproduce->add_option("--out", rep.out_dir, "Output directory")->required();
  reproduce->add_option("--configs", rep.config_dir, "Config directory");
  reproduce->add_option("--threads", rep.threads, "Worker cap (0: all cores)");

  SpectralArgs spec;
  auto* spectral = app.add_subcommand("spectral", "Spectral g2 matrix of a synthetic ensemble");
  spectral->add_option("--config", spec.config, "Spectral config")->required();
  spectral->add_option("--out", spec.out, "NDJSON report")->required();
  spectral->add_option("--threads", spec.threads, "Worker cap (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error(std::cerr, "validation", e.what());
    return kExitValidation;
  }

  if (*simulate) {
    if (*seed_opt) sim.seed = seed;
    if (*format_opt) sim.format = format;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*analyze) return cmd_analyze(ana, std::cout, std::cerr);
  if (*reproduce) return cmd_reproduce(rep, std::cout, std::cerr);
  return cmd_spectral(spec, std::cout, std::cerr);
}
