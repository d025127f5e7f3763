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

#include "fairsort/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fairsort {

double variance(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("variance of empty input");
  // Shifted by the first value; exact zero for constant input.
  const double n = static_cast<double>(values.size());
  const double shift = values.front();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    sum += v - shift;
    sum_sq += (v - shift) * (v - shift);
  }
  return std::max(0.0, (sum_sq - sum * sum / n) / n);
}

double dcf(std::span<const double> ndcgs) { return variance(ndcgs); }

double dpf(std::span<const double> exposure, const Catalog& catalog,
           FairnessNotion notion) {
  if (exposure.size() != catalog.providers()) {
    throw std::invalid_argument("exposure vector does not match providers");
  }
  std::vector<double> ratio;
  ratio.reserve(exposure.size());
  for (ProviderId p = 0; p < exposure.size(); ++p) {
    const double denom = notion == FairnessNotion::kUniform
                             ? static_cast<double>(catalog.item_count(p))
                             : catalog.quality_mass(p);
    if (denom > 0.0) ratio.push_back(exposure[p] / denom);
  }
  if (ratio.empty()) {
    throw std::invalid_argument("no provider has a positive entitlement");
  }
  return variance(ratio);
}

double uir(double dcf_value, double dpf_value, double avg_utility,
           const UirCalibration& c) {
  if (!(c.mu_dcf > 0.0) || !(c.mu_dpf > 0.0)) {
    throw std::invalid_argument("UIR calibrators must be positive");
  }
  if (!(avg_utility > 0.0)) {
    throw std::invalid_argument("UIR utility must be positive");
  }
  return (c.w_dcf * dcf_value / c.mu_dcf + c.w_dpf * dpf_value / c.mu_dpf) /
         avg_utility;
}

Histogram ndcg_histogram(std::span<const double> ndcgs) {
  Histogram counts{};
  for (double v : ndcgs) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("NDCG outside [0, 1]");
    }
    const auto it =
        std::upper_bound(kHistogramEdges.begin(), kHistogramEdges.end(), v);
    ++counts[static_cast<std::size_t>(it - kHistogramEdges.begin()) - 1];
  }
  return counts;
}

MetricsReport evaluate(std::span<const double> ndcgs,
                       std::span<const double> exposure,
                       const Catalog& catalog) {
  MetricsReport report;
  report.dcf = dcf(ndcgs);
  report.dpf_uf = dpf(exposure, catalog, FairnessNotion::kUniform);
  report.dpf_qf = dpf(exposure, catalog, FairnessNotion::kQualityWeighted);
  report.total_quality = std::accumulate(ndcgs.begin(), ndcgs.end(), 0.0);
  report.avg_quality =
      report.total_quality / static_cast<double>(ndcgs.size());
  report.histogram = ndcg_histogram(ndcgs);
  return report;
}

}  // namespace fairsort
