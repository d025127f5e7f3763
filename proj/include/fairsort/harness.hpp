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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairsort/catalog.hpp"
#include "fairsort/metrics.hpp"
#include "fairsort/oracle.hpp"
#include "fairsort/reranker.hpp"

namespace fairsort {

enum class Model { kFairSort, kTopK, kMixedK, kAllRandom, kMinExposure };
enum class Scenario { kOffline, kOnline };
enum class ServiceOrder { kAscending, kShuffled };

std::string_view to_string(Model model);
std::string_view to_string(Scenario scenario);
Model parse_model(std::string_view text);
Scenario parse_scenario(std::string_view text);

struct ExperimentSpec {
  // Both set: read the dataset from files. Otherwise synthesize it.
  std::filesystem::path matrix_path;
  std::filesystem::path provider_map_path;
  SyntheticParams synthetic;

  std::vector<Model> models{Model::kFairSort};
  Scenario scenario = Scenario::kOffline;
  std::vector<std::size_t> ks{10};  // ascending
  RunConfig run;                     // run.k is replaced by each entry of ks
  std::uint64_t seed = 1;
  std::size_t rounds = 10;           // online requests per user
  ServiceOrder order = ServiceOrder::kAscending;  // offline only
  std::filesystem::path out = "results";

  void validate() const;
};

// Flat `key = value` document; '#' starts a comment line.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap read_config(const std::filesystem::path& path);
ExperimentSpec spec_from_config(const ConfigMap& config);

Dataset load_source(const ExperimentSpec& spec);

struct TimeSeriesRow {
  std::size_t step;  // 1-based
  UserId user;
  double ndcg;
  double running_dcf;
  double running_dpf;
  double running_avg_quality;
};

// One model at one K.
struct CellRun {
  Model model = Model::kTopK;
  std::size_t k = 0;
  std::vector<RankedList> lists;  // offline: by user id; online: trace order
  std::vector<double> ndcgs;      // aligned with lists
  std::vector<double> exposure;   // final provider exposure
  std::vector<double> fair;       // final fair targets
  std::vector<TimeSeriesRow> series;  // online only
  // Worst relative gap between allocated exposure and the budget, over every
  // offline run end or online step.
  double conservation_error = 0.0;
  MetricsReport metrics;          // uir left at 0

  oracle::RunRecord record(std::optional<double> threshold) const;
};

CellRun run_cell(const Dataset& data, const ExperimentSpec& spec, Model model,
                 std::size_t k);

struct SummaryRow {
  Model model;
  Scenario scenario;
  std::size_t k;
  FairnessNotion notion;
  double threshold;
  double lambda_max;
  double gap;
  double ratio;
  std::uint64_t seed;
  MetricsReport metrics;
  std::string calibration;  // "in-run" or "auto"
};

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  std::vector<CellRun> cells;  // aligned with rows
};

// Runs every requested model at every K, plus Top-K and minimum-exposure
// calibrator runs for UIR when they were not requested.
ExperimentResult run_offline(const ExperimentSpec& spec, const Dataset& data);
ExperimentResult run_online(const ExperimentSpec& spec, const Dataset& data);

// Writes the summary CSV.
void emit_report(const std::vector<SummaryRow>& rows,
                 const std::filesystem::path& path);

// Writes summary.csv plus per-cell NDCG, ledger and (online) time-series
// files under spec.out.
void write_outputs(const ExperimentSpec& spec, const ExperimentResult& result);

// Load, run the configured scenario, write everything.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace fairsort
