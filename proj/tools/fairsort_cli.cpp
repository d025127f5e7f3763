// Copyright 2026 The FairSort Authors.
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

// fairsort run --config <path> [overrides...]
//
// Every flag mirrors a config key of the same name (dashes become
// underscores); flags win over the file.

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fairsort/catalog.hpp"
#include "fairsort/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"FairSort re-ranking experiments"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run an experiment");
  std::string config_path;
  run->add_option("--config", config_path, "flat key = value config file")
      ->required()
      ->check(CLI::ExistingFile);

  // flag name -> config key
  const std::map<std::string, std::string> overridable = {
      {"model", "model"},       {"scenario", "scenario"},
      {"k", "k"},               {"threshold", "threshold"},
      {"lambda-max", "lambda_max"}, {"gap", "gap"},
      {"ratio", "ratio"},       {"notion", "notion"},
      {"seed", "seed"},         {"out", "out"},
      {"rounds", "rounds"},     {"order", "order"},
  };
  std::map<std::string, std::string> values;
  for (const auto& [flag, key] : overridable) {
    run->add_option("--" + flag, values[key]);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    fairsort::ConfigMap config = fairsort::read_config(config_path);
    for (const auto& [flag, key] : overridable) {
      if (run->count("--" + flag) > 0) config[key] = values[key];
    }
    const fairsort::ExperimentSpec spec = fairsort::spec_from_config(config);
    const auto result = fairsort::run_experiment(spec);
    for (const auto& row : result.rows) {
      std::cout << fairsort::to_string(row.model) << " K=" << row.k
                << " avg_quality=" << row.metrics.avg_quality
                << " dcf=" << row.metrics.dcf
                << " dpf_uf=" << row.metrics.dpf_uf
                << " dpf_qf=" << row.metrics.dpf_qf
                << " uir=" << row.metrics.uir << '\n';
    }
    std::cout << "wrote " << (spec.out / "summary.csv").string() << '\n';
  } catch (const fairsort::ParseError& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
