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

#include <array>
#include <cstddef>
#include <span>

#include "fairsort/catalog.hpp"
#include "fairsort/exposure.hpp"

namespace fairsort {

inline constexpr std::size_t kHistogramBins = 9;
// Lower edges; each bin is [edge[b], edge[b+1]) except the last, [0.95, 1].
inline constexpr std::array<double, kHistogramBins> kHistogramEdges = {
    0.0, 0.5, 0.6, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};

using Histogram = std::array<std::size_t, kHistogramBins>;

// Population variance.
double variance(std::span<const double> values);

// Deviation from user fairness: variance of the per-list NDCGs.
double dcf(std::span<const double> ndcgs);

// Deviation from provider fairness: variance over providers of exposure per
// unit of entitlement. Providers with zero quality mass are skipped under the
// quality weighted notion.
double dpf(std::span<const double> exposure, const Catalog& catalog,
           FairnessNotion notion);

inline double dpf(const ExposureLedger& ledger, FairnessNotion notion) {
  return dpf(ledger.exposure(), ledger.catalog(), notion);
}

struct UirCalibration {
  double mu_dcf = 0.0;  // DCF of the minimum-exposure run
  double mu_dpf = 0.0;  // DPF of the Top-K run
  double w_dcf = 1.0;
  double w_dpf = 1.0;
};

// (w1 * dcf / mu1 + w2 * dpf / mu2) / avg_utility.
double uir(double dcf_value, double dpf_value, double avg_utility,
           const UirCalibration& calibration);

Histogram ndcg_histogram(std::span<const double> ndcgs);

struct MetricsReport {
  double dcf = 0.0;
  double dpf_uf = 0.0;
  double dpf_qf = 0.0;
  double total_quality = 0.0;
  double avg_quality = 0.0;
  double uir = 0.0;
  Histogram histogram{};

  double dpf_for(FairnessNotion notion) const {
    return notion == FairnessNotion::kUniform ? dpf_uf : dpf_qf;
  }
};

// Everything but uir, which needs calibrator runs.
MetricsReport evaluate(std::span<const double> ndcgs,
                       std::span<const double> exposure,
                       const Catalog& catalog);

}  // namespace fairsort
