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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <string>
#include <vector>

#include "fairsort/baselines.hpp"
#include "fairsort/catalog.hpp"
#include "fairsort/exposure.hpp"
#include "fairsort/harness.hpp"
#include "fairsort/metrics.hpp"
#include "fairsort/quality.hpp"
#include "fairsort/reranker.hpp"

namespace py = pybind11;
using namespace fairsort;

namespace {

using DatasetPtr = std::shared_ptr<Dataset>;

DatasetPtr from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> scores,
                       std::vector<ProviderId> assignment) {
  if (scores.ndim() != 2) throw std::invalid_argument("scores must be 2-D");
  const auto users = static_cast<std::size_t>(scores.shape(0));
  const auto items = static_cast<std::size_t>(scores.shape(1));
  std::vector<double> flat(scores.data(), scores.data() + users * items);
  PreferenceMatrix matrix(users, items, std::move(flat));
  Catalog catalog(matrix, std::move(assignment));
  return std::make_shared<Dataset>(Dataset{std::move(matrix), std::move(catalog)});
}

RunConfig make_config(std::size_t k, const std::string& notion, double threshold,
                      double lambda_max, double gap, double ratio) {
  RunConfig config;
  config.k = k;
  config.notion = parse_notion(notion);
  config.threshold = threshold;
  config.lambda_max = lambda_max;
  config.gap = gap;
  config.ratio = ratio;
  return config;
}

py::dict offline(const DatasetPtr& data, std::size_t k, const std::string& notion,
                 double threshold, double lambda_max, double gap, double ratio) {
  const RunConfig config = make_config(k, notion, threshold, lambda_max, gap, ratio);
  OfflineResult result = fairsort_offline(data->matrix, data->catalog, config);
  std::vector<std::vector<ItemId>> lists;
  for (auto& list : result.lists) lists.push_back(std::move(list.items));
  py::dict out;
  out["lists"] = lists;
  out["lambdas"] = result.lambdas;
  out["ndcg"] = result.report.per_user_ndcg;
  out["exposure"] = std::vector<double>(result.ledger.exposure().begin(),
                                        result.ledger.exposure().end());
  out["fair"] = std::vector<double>(result.ledger.fair().begin(),
                                    result.ledger.fair().end());
  return out;
}

// Keeps the dataset alive for as long as the ledger points into it.
class OnlineSession {
 public:
  OnlineSession(DatasetPtr data, const std::string& notion)
      : data_(std::move(data)), state_(data_->catalog, parse_notion(notion)) {}

  py::tuple step(UserId u, std::size_t k, double threshold, double lambda_max,
                 double gap, double ratio) {
    const RunConfig config = make_config(k, std::string(to_string(state_.ledger.notion())),
                                         threshold, lambda_max, gap, ratio);
    OnlineStep out = fairsort_online_step(state_, data_->matrix, data_->catalog, u, config);
    return py::make_tuple(out.list.items, out.lambda, out.ndcg);
  }

  std::size_t served() const { return state_.served; }
  std::vector<double> exposure() const {
    return {state_.ledger.exposure().begin(), state_.ledger.exposure().end()};
  }
  std::vector<double> fair() const {
    return {state_.ledger.fair().begin(), state_.ledger.fair().end()};
  }

 private:
  DatasetPtr data_;
  OnlineState state_;
};

py::list experiment(const std::map<std::string, std::string>& config) {
  const ExperimentSpec spec = spec_from_config(config);
  const ExperimentResult result = run_experiment(spec);
  py::list rows;
  for (const auto& row : result.rows) {
    py::dict d;
    d["model"] = std::string(to_string(row.model));
    d["scenario"] = std::string(to_string(row.scenario));
    d["K"] = row.k;
    d["notion"] = std::string(to_string(row.notion));
    d["dcf"] = row.metrics.dcf;
    d["dpf_uf"] = row.metrics.dpf_uf;
    d["dpf_qf"] = row.metrics.dpf_qf;
    d["total_quality"] = row.metrics.total_quality;
    d["avg_quality"] = row.metrics.avg_quality;
    d["uir"] = row.metrics.uir;
    d["histogram"] = std::vector<std::size_t>(row.metrics.histogram.begin(),
                                              row.metrics.histogram.end());
    d["uir_calibration"] = row.calibration;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_fairsort, m) {
  m.doc() = "FairSort exposure-fair re-ranking";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Dataset, DatasetPtr>(m, "Dataset")
      .def_static("from_arrays", &from_arrays, py::arg("scores"),
                  py::arg("assignment"))
      .def_static("load",
                  [](const std::filesystem::path& matrix,
                     const std::filesystem::path& providers) {
                    return std::make_shared<Dataset>(load_dataset(matrix, providers));
                  },
                  py::arg("matrix_path"), py::arg("provider_map_path"))
      .def_static("synthetic",
                  [](std::size_t users, std::size_t items, std::size_t providers,
                     double skew, std::uint64_t seed) {
                    return std::make_shared<Dataset>(
                        generate_synthetic({users, items, providers, skew, seed}));
                  },
                  py::arg("users") = 200, py::arg("items") = 500,
                  py::arg("providers") = 20, py::arg("skew") = 1.5,
                  py::arg("seed") = 1)
      .def_property_readonly("users", [](const Dataset& d) { return d.matrix.users(); })
      .def_property_readonly("items", [](const Dataset& d) { return d.matrix.items(); })
      .def_property_readonly("providers",
                             [](const Dataset& d) { return d.catalog.providers(); })
      .def_property_readonly("scores",
                             [](const Dataset& d) {
                               py::array_t<double> out({d.matrix.users(), d.matrix.items()});
                               std::copy(d.matrix.scores().begin(), d.matrix.scores().end(),
                                         out.mutable_data());
                               return out;
                             })
      .def_property_readonly("assignment",
                             [](const Dataset& d) {
                               return std::vector<ProviderId>(d.catalog.assignment().begin(),
                                                              d.catalog.assignment().end());
                             })
      .def_property_readonly("quality_mass", [](const Dataset& d) {
        return std::vector<double>(d.catalog.quality_masses().begin(),
                                   d.catalog.quality_masses().end());
      });

  m.def("position_weight", &position_weight, py::arg("rank"));
  m.def("total_exposure", &total_exposure, py::arg("lists"), py::arg("k"));
  m.def("original_ranking",
        [](const Dataset& d, UserId u) { return original_ranking(d.matrix, u).items; },
        py::arg("dataset"), py::arg("user"));
  m.def("ndcg",
        [](const Dataset& d, UserId u, const std::vector<ItemId>& items, std::size_t k) {
          return ndcg(d.matrix, u, items, k);
        },
        py::arg("dataset"), py::arg("user"), py::arg("items"), py::arg("k"));
  m.def("top_k", [](const Dataset& d, UserId u, std::size_t k) {
          return top_k(d.matrix, u, k).items;
        },
        py::arg("dataset"), py::arg("user"), py::arg("k"));

  m.def("fairsort_offline", &offline, py::arg("dataset"), py::arg("k") = 10,
        py::arg("notion") = "uf", py::arg("threshold") = 0.9,
        py::arg("lambda_max") = 16.0, py::arg("gap") = 1.0 / 128.0,
        py::arg("ratio") = 1.0);

  py::class_<OnlineSession>(m, "OnlineSession")
      .def(py::init<DatasetPtr, const std::string&>(), py::arg("dataset"),
           py::arg("notion") = "uf")
      .def("step", &OnlineSession::step, py::arg("user"), py::arg("k") = 10,
           py::arg("threshold") = 0.9, py::arg("lambda_max") = 16.0,
           py::arg("gap") = 1.0 / 128.0, py::arg("ratio") = 1.0)
      .def_property_readonly("served", &OnlineSession::served)
      .def_property_readonly("exposure", &OnlineSession::exposure)
      .def_property_readonly("fair", &OnlineSession::fair);

  m.def("dcf", [](const std::vector<double>& v) { return dcf(v); }, py::arg("ndcgs"));
  m.def("dpf",
        [](const std::vector<double>& exposure, const Dataset& d,
           const std::string& notion) {
          return dpf(exposure, d.catalog, parse_notion(notion));
        },
        py::arg("exposure"), py::arg("dataset"), py::arg("notion") = "uf");
  m.def("uir",
        [](double dcf_value, double dpf_value, double mu_dcf, double mu_dpf,
           double avg_utility) {
          return uir(dcf_value, dpf_value, avg_utility, UirCalibration{mu_dcf, mu_dpf});
        },
        py::arg("dcf"), py::arg("dpf"), py::arg("mu_dcf"), py::arg("mu_dpf"),
        py::arg("avg_utility"));
  m.def("ndcg_histogram", [](const std::vector<double>& v) {
          const Histogram h = ndcg_histogram(v);
          return std::vector<std::size_t>(h.begin(), h.end());
        },
        py::arg("ndcgs"));

  m.def("run_experiment", &experiment, py::arg("config"),
        "Runs an experiment given as config key/value strings and writes its files.");
}
