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

#include "fairsort/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fairsort/baselines.hpp"
#include "fairsort/random.hpp"

namespace fairsort {

namespace {

// Sub-stream ids for derive_seed.
constexpr std::uint64_t kOrderStream = 1;
constexpr std::uint64_t kTraceStream = 2;
constexpr std::uint64_t kListStream = 3;

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto part = trim(text.substr(start, comma - start));
    if (!part.empty()) parts.push_back(std::move(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" +
                                text + "'");
  }
  return value;
}

// Population variance accumulated one value at a time.
class RunningVariance {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  double variance() const { return n_ ? m2_ / static_cast<double>(n_) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double relative_gap(double allocated, double budget) {
  return std::abs(allocated - budget) / std::max(budget, 1e-300);
}

std::vector<UserId> service_order(const ExperimentSpec& spec, std::size_t m) {
  std::vector<UserId> order(m);
  std::iota(order.begin(), order.end(), UserId{0});
  if (spec.order == ServiceOrder::kShuffled) {
    Rng rng(derive_seed(spec.seed, kOrderStream));
    rng.shuffle(std::span<UserId>(order));
  }
  return order;
}

std::vector<UserId> request_trace(const ExperimentSpec& spec, std::size_t m) {
  std::vector<UserId> trace;
  trace.reserve(m * spec.rounds);
  for (std::size_t r = 0; r < spec.rounds; ++r) {
    for (UserId u = 0; u < m; ++u) trace.push_back(u);
  }
  Rng rng(derive_seed(spec.seed, kTraceStream));
  rng.shuffle(std::span<UserId>(trace));
  return trace;
}

// Picks the list a baseline serves as the `step`-th request (0-based).
class BaselinePolicy {
 public:
  BaselinePolicy(Model model, const PreferenceMatrix& scores,
                 std::uint64_t seed)
      : model_(model),
        scores_(scores),
        seed_(derive_seed(seed, kListStream)),
        tracker_(scores.items()) {}

  RankedList serve(UserId u, std::size_t k, std::size_t step) {
    switch (model_) {
      case Model::kTopK:
        return top_k(scores_, u, k);
      case Model::kMixedK:
        return mixed_k(scores_, u, k, derive_seed(seed_, step));
      case Model::kAllRandom:
        return all_random(scores_, u, k, derive_seed(seed_, step));
      case Model::kMinExposure:
        return min_exposure(tracker_, scores_, u, k);
      case Model::kFairSort:
        break;
    }
    throw std::logic_error("FairSort is not a baseline policy");
  }

 private:
  Model model_;
  const PreferenceMatrix& scores_;
  std::uint64_t seed_;
  ItemExposure tracker_;
};

CellRun run_offline_cell(const Dataset& data, const ExperimentSpec& spec,
                         Model model, std::size_t k) {
  const auto& scores = data.matrix;
  const std::size_t m = scores.users();
  RunConfig config = spec.run;
  config.k = k;
  config.validate(scores.items());
  const auto order = service_order(spec, m);

  CellRun cell;
  cell.model = model;
  cell.k = k;
  if (model == Model::kFairSort) {
    OfflineResult result = fairsort_offline(scores, data.catalog, config, order);
    cell.lists = std::move(result.lists);
    cell.ndcgs = std::move(result.report.per_user_ndcg);
    cell.exposure.assign(result.ledger.exposure().begin(),
                         result.ledger.exposure().end());
    cell.fair.assign(result.ledger.fair().begin(), result.ledger.fair().end());
    cell.conservation_error =
        relative_gap(result.ledger.allocated(), result.ledger.budget());
  } else {
    ExposureLedger ledger(data.catalog, config.notion);
    ledger.set_budget(total_exposure(m, k));
    BaselinePolicy policy(model, scores, spec.seed);
    cell.lists.resize(m);
    cell.ndcgs.resize(m);
    for (std::size_t step = 0; step < order.size(); ++step) {
      const UserId u = order[step];
      RankedList list = policy.serve(u, k, step);
      ledger.apply(list, k);
      cell.ndcgs[u] = ndcg(scores, u, list.items, k);
      cell.lists[u] = std::move(list);
    }
    cell.exposure.assign(ledger.exposure().begin(), ledger.exposure().end());
    cell.fair.assign(ledger.fair().begin(), ledger.fair().end());
    cell.conservation_error = relative_gap(ledger.allocated(), ledger.budget());
  }
  cell.metrics = evaluate(cell.ndcgs, cell.exposure, data.catalog);
  return cell;
}

CellRun run_online_cell(const Dataset& data, const ExperimentSpec& spec,
                        Model model, std::size_t k) {
  const auto& scores = data.matrix;
  RunConfig config = spec.run;
  config.k = k;
  config.validate(scores.items());
  const auto trace = request_trace(spec, scores.users());

  CellRun cell;
  cell.model = model;
  cell.k = k;
  OnlineState state(data.catalog, config.notion);
  BaselinePolicy policy(model == Model::kFairSort ? Model::kTopK : model,
                        scores, spec.seed);
  RunningVariance ndcg_variance;
  double total_quality = 0.0;

  for (std::size_t step = 0; step < trace.size(); ++step) {
    const UserId u = trace[step];
    RankedList list;
    double value = 0.0;
    if (model == Model::kFairSort) {
      OnlineStep served = fairsort_online_step(state, scores, data.catalog, u, config);
      list = std::move(served.list);
      value = served.ndcg;
    } else {
      state.ledger.set_budget(total_exposure(step + 1, k));
      list = policy.serve(u, k, step);
      state.ledger.apply(list, k);
      value = ndcg(scores, u, list.items, k);
      ++state.served;
      state.ndcg_log.emplace_back(u, value);
    }
    ndcg_variance.add(value);
    total_quality += value;
    cell.conservation_error =
        std::max(cell.conservation_error,
                 relative_gap(state.ledger.allocated(), state.ledger.budget()));
    cell.series.push_back({step + 1, u, value, ndcg_variance.variance(),
                           dpf(state.ledger, config.notion),
                           total_quality / static_cast<double>(step + 1)});
    cell.lists.push_back(std::move(list));
    cell.ndcgs.push_back(value);
  }
  cell.exposure.assign(state.ledger.exposure().begin(),
                       state.ledger.exposure().end());
  cell.fair.assign(state.ledger.fair().begin(), state.ledger.fair().end());
  cell.metrics = evaluate(cell.ndcgs, cell.exposure, data.catalog);
  return cell;
}

ExperimentResult run_scenario(const ExperimentSpec& spec, const Dataset& data,
                              Scenario scenario) {
  ExperimentSpec local = spec;
  local.scenario = scenario;
  local.validate();

  auto requested = [&](Model model) {
    return std::find(spec.models.begin(), spec.models.end(), model) !=
           spec.models.end();
  };
  const bool calibrators_requested =
      requested(Model::kTopK) && requested(Model::kMinExposure);

  ExperimentResult result;
  for (std::size_t k : spec.ks) {
    std::vector<CellRun> cells;
    for (Model model : spec.models) {
      cells.push_back(run_cell(data, local, model, k));
    }
    auto find_or_run = [&](Model model) {
      for (const auto& cell : cells) {
        if (cell.model == model) return cell.metrics;
      }
      return run_cell(data, local, model, k).metrics;
    };
    const MetricsReport top = find_or_run(Model::kTopK);
    const MetricsReport least = find_or_run(Model::kMinExposure);
    const UirCalibration calibration{least.dcf,
                                     top.dpf_for(spec.run.notion)};

    for (auto& cell : cells) {
      MetricsReport metrics = cell.metrics;
      try {
        metrics.uir = uir(metrics.dcf, metrics.dpf_for(spec.run.notion),
                          metrics.avg_quality, calibration);
      } catch (const std::invalid_argument&) {
        metrics.uir = std::numeric_limits<double>::quiet_NaN();
      }
      cell.metrics.uir = metrics.uir;
      result.rows.push_back({cell.model, scenario, k, spec.run.notion,
                             spec.run.threshold, spec.run.lambda_max,
                             spec.run.gap, spec.run.ratio, spec.seed, metrics,
                             calibrators_requested ? "in-run" : "auto"});
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::string file_stem(Model model, Scenario scenario, std::size_t k,
                      FairnessNotion notion) {
  std::ostringstream name;
  name << to_string(model) << '_' << to_string(scenario) << "_k" << k << '_'
       << to_string(notion);
  return name.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::kFairSort: return "fairsort";
    case Model::kTopK: return "top_k";
    case Model::kMixedK: return "mixed_k";
    case Model::kAllRandom: return "all_random";
    case Model::kMinExposure: return "min_exposure";
  }
  return "unknown";
}

std::string_view to_string(Scenario scenario) {
  return scenario == Scenario::kOffline ? "offline" : "online";
}

Model parse_model(std::string_view text) {
  for (Model m : {Model::kFairSort, Model::kTopK, Model::kMixedK,
                  Model::kAllRandom, Model::kMinExposure}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown model: " + std::string(text));
}

Scenario parse_scenario(std::string_view text) {
  if (text == "offline") return Scenario::kOffline;
  if (text == "online") return Scenario::kOnline;
  throw std::invalid_argument("unknown scenario: " + std::string(text));
}

void ExperimentSpec::validate() const {
  if (models.empty()) throw std::invalid_argument("no model selected");
  if (ks.empty()) throw std::invalid_argument("no K values");
  if (!std::is_sorted(ks.begin(), ks.end()) || ks.front() == 0) {
    throw std::invalid_argument("K values must be positive and ascending");
  }
  if (scenario == Scenario::kOnline && rounds == 0) {
    throw std::invalid_argument("online scenario needs rounds >= 1");
  }
  if (matrix_path.empty() != provider_map_path.empty()) {
    throw std::invalid_argument(
        "matrix and providers must be given together");
  }
  RunConfig probe = run;
  probe.k = ks.back();
  // Item count is only known after loading; check the item-free constraints.
  probe.validate(std::numeric_limits<std::size_t>::max() / 2);
}

ConfigMap read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  ConfigMap config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    // '#' starts a comment anywhere on the line.
    const std::string text = trim(std::string_view(line).substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(number) +
                                  ": expected key = value");
    }
    config[trim(std::string_view(text).substr(0, eq))] =
        trim(std::string_view(text).substr(eq + 1));
  }
  return config;
}

ExperimentSpec spec_from_config(const ConfigMap& config) {
  ExperimentSpec spec;
  for (const auto& [key, value] : config) {
    if (key == "matrix") {
      spec.matrix_path = value;
    } else if (key == "providers") {
      spec.provider_map_path = value;
    } else if (key == "synthetic_users") {
      spec.synthetic.users = parse_value<std::size_t>(key, value);
    } else if (key == "synthetic_items") {
      spec.synthetic.items = parse_value<std::size_t>(key, value);
    } else if (key == "synthetic_providers") {
      spec.synthetic.providers = parse_value<std::size_t>(key, value);
    } else if (key == "synthetic_skew") {
      spec.synthetic.skew = parse_value<double>(key, value);
    } else if (key == "synthetic_seed") {
      spec.synthetic.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "model") {
      spec.models.clear();
      for (const auto& name : split_list(value)) {
        spec.models.push_back(parse_model(name));
      }
    } else if (key == "scenario") {
      spec.scenario = parse_scenario(value);
    } else if (key == "k") {
      spec.ks.clear();
      for (const auto& entry : split_list(value)) {
        spec.ks.push_back(parse_value<std::size_t>(key, entry));
      }
      std::sort(spec.ks.begin(), spec.ks.end());
      spec.ks.erase(std::unique(spec.ks.begin(), spec.ks.end()), spec.ks.end());
    } else if (key == "threshold") {
      spec.run.threshold = parse_value<double>(key, value);
    } else if (key == "lambda_max") {
      spec.run.lambda_max = parse_value<double>(key, value);
    } else if (key == "gap") {
      spec.run.gap = parse_value<double>(key, value);
    } else if (key == "ratio") {
      spec.run.ratio = parse_value<double>(key, value);
    } else if (key == "notion") {
      spec.run.notion = parse_notion(value);
    } else if (key == "seed") {
      spec.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "rounds") {
      spec.rounds = parse_value<std::size_t>(key, value);
    } else if (key == "order") {
      if (value == "ascending") {
        spec.order = ServiceOrder::kAscending;
      } else if (value == "shuffled") {
        spec.order = ServiceOrder::kShuffled;
      } else {
        throw std::invalid_argument("order must be ascending or shuffled");
      }
    } else if (key == "provisional") {
      if (value == "replace") {
        spec.run.provisional = ProvisionalMode::kReplace;
      } else if (value == "accumulate") {
        spec.run.provisional = ProvisionalMode::kAccumulate;
      } else {
        throw std::invalid_argument("provisional must be replace or accumulate");
      }
    } else if (key == "out") {
      spec.out = value;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  spec.validate();
  return spec;
}

Dataset load_source(const ExperimentSpec& spec) {
  if (!spec.matrix_path.empty()) {
    return load_dataset(spec.matrix_path, spec.provider_map_path);
  }
  return generate_synthetic(spec.synthetic);
}

oracle::RunRecord CellRun::record(std::optional<double> threshold) const {
  oracle::RunRecord rec;
  rec.k = k;
  rec.lists = lists;
  rec.ndcgs = ndcgs;
  rec.exposure = exposure;
  rec.histogram = metrics.histogram;
  rec.threshold = threshold;
  return rec;
}

CellRun run_cell(const Dataset& data, const ExperimentSpec& spec, Model model,
                 std::size_t k) {
  return spec.scenario == Scenario::kOffline
             ? run_offline_cell(data, spec, model, k)
             : run_online_cell(data, spec, model, k);
}

ExperimentResult run_offline(const ExperimentSpec& spec, const Dataset& data) {
  return run_scenario(spec, data, Scenario::kOffline);
}

ExperimentResult run_online(const ExperimentSpec& spec, const Dataset& data) {
  return run_scenario(spec, data, Scenario::kOnline);
}

void emit_report(const std::vector<SummaryRow>& rows,
                 const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("no report rows");
  auto out = open_output(path);
  out << "model,scenario,K,notion,threshold,lambda_max,gap,ratio,seed,dcf,"
         "dpf_uf,dpf_qf,total_quality,avg_quality,uir";
  for (std::size_t b = 0; b < kHistogramBins; ++b) out << ",hist_" << b;
  out << ",uir_calibration\n";
  for (const auto& row : rows) {
    const auto& m = row.metrics;
    out << to_string(row.model) << ',' << to_string(row.scenario) << ','
        << row.k << ',' << to_string(row.notion) << ','
        << format_double(row.threshold) << ',' << format_double(row.lambda_max)
        << ',' << format_double(row.gap) << ',' << format_double(row.ratio)
        << ',' << row.seed << ',' << format_double(m.dcf) << ','
        << format_double(m.dpf_uf) << ',' << format_double(m.dpf_qf) << ','
        << format_double(m.total_quality) << ',' << format_double(m.avg_quality)
        << ',' << format_double(m.uir);
    for (std::size_t count : m.histogram) out << ',' << count;
    out << ',' << row.calibration << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_outputs(const ExperimentSpec& spec, const ExperimentResult& result) {
  std::filesystem::create_directories(spec.out);
  emit_report(result.rows, spec.out / "summary.csv");
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const CellRun& cell = result.cells[c];
    const SummaryRow& row = result.rows[c];
    const std::string stem =
        file_stem(cell.model, row.scenario, cell.k, row.notion);

    auto ndcg_file = open_output(spec.out / (stem + ".ndcg.tsv"));
    for (std::size_t i = 0; i < cell.lists.size(); ++i) {
      ndcg_file << cell.lists[i].user << '\t' << format_double(cell.ndcgs[i])
                << '\n';
    }

    auto ledger_file = open_output(spec.out / (stem + ".ledger.tsv"));
    for (ProviderId p = 0; p < cell.exposure.size(); ++p) {
      ledger_file << p << '\t' << format_double(cell.exposure[p]) << '\t'
                  << format_double(cell.fair[p]) << '\n';
    }

    if (row.scenario == Scenario::kOnline) {
      auto series = open_output(spec.out / (stem + ".timeseries.csv"));
      series << "step,user,ndcg,running_dcf,running_dpf,running_avg_quality\n";
      for (const auto& s : cell.series) {
        series << s.step << ',' << s.user << ',' << format_double(s.ndcg) << ','
               << format_double(s.running_dcf) << ','
               << format_double(s.running_dpf) << ','
               << format_double(s.running_avg_quality) << '\n';
      }
    }
  }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Dataset data = load_source(spec);
  ExperimentResult result = spec.scenario == Scenario::kOffline
                                ? run_offline(spec, data)
                                : run_online(spec, data);
  write_outputs(spec, result);
  return result;
}

}  // namespace fairsort
