// Copyright 2026 The Horacle Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// horacle: run the LTE/mmWave handover comparison over one or more seeds.
//
//   horacle --config run.conf --seed 1,2,3 --grid reduced --out results/

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "horacle/batch.hpp"
#include "horacle/config.hpp"
#include "horacle/numfmt.hpp"

int main(int argc, char** argv) {
  using horacle::cli::ConfigError;

  CLI::App app{"Compare baseline and learned LTE-to-mmWave handover over simulated cells"};
  app.set_version_flag("--version", "horacle 0.1.0");

  std::string config_path;
  std::optional<std::string> seeds;
  std::optional<int> t_sim_ms;
  std::optional<double> lambda;
  std::optional<double> epsilon;
  std::optional<std::string> grid;
  std::optional<std::string> calibrate;
  bool include_collection = false;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool list_keys = false;
  std::vector<std::string> sets;

  app.add_option("-c,--config", config_path, "Settings file of 'key = value' lines")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seeds, "Seed or comma-separated seed list (run.seeds)");
  app.add_option("--t-sim-ms", t_sim_ms, "Simulation length in ms (sim.t_sim_ms)");
  app.add_option("--lambda", lambda, "User intensity per m^2 (geometry.intensity)");
  app.add_option("--epsilon", epsilon, "Model acceptance AUC threshold (gate.epsilon)");
  app.add_option("--grid", grid, "Hyperparameter grid preset")
      ->check(CLI::IsMember({"paper", "reduced"}));
  app.add_option("--calibrate", calibrate, "Threshold/offset calibration mode")
      ->check(CLI::IsMember({"off", "manual", "percentile"}));
  app.add_flag("--include-collection-region", include_collection,
               "Count metrics during the data collection period too");
  app.add_option("-o,--out", out, "Output directory (run.out)");
  app.add_option("-j,--threads", threads, "Training workers, 0 = all cores (sim.threads)");
  app.add_option("--set", sets, "Extra key=value override, repeatable");
  app.add_flag("--list-keys", list_keys, "Print every settings key and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (list_keys) {
    for (const auto& k : horacle::cli::known_keys()) std::cout << k << '\n';
    return 0;
  }

  horacle::cli::RunManifest manifest;
  try {
    horacle::cli::Settings overrides;
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set", "expected key=value, got '" + s + "'");
      const auto parsed = horacle::cli::parse_settings(s);
      overrides.insert(parsed.begin(), parsed.end());
    }
    if (seeds) overrides["run.seeds"] = *seeds;
    if (t_sim_ms) overrides["sim.t_sim_ms"] = std::to_string(*t_sim_ms);
    if (lambda) overrides["geometry.intensity"] = horacle::format_double(*lambda);
    if (epsilon) overrides["gate.epsilon"] = horacle::format_double(*epsilon);
    if (grid) overrides["grid.preset"] = *grid;
    if (calibrate) overrides["calibration.mode"] = *calibrate;
    if (include_collection) overrides["sim.include_collection_region"] = "true";
    if (out) overrides["run.out"] = *out;
    if (threads) overrides["sim.threads"] = std::to_string(*threads);
    manifest = horacle::cli::parse_config(config_path, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  return horacle::cli::run_batch(manifest, std::cerr);
}
