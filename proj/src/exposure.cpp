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

#include "fairsort/exposure.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

namespace fairsort {

namespace {

constexpr double kCorruptionTolerance = 1e-9;

}  // namespace

std::string_view to_string(FairnessNotion notion) {
  return notion == FairnessNotion::kUniform ? "uf" : "qf";
}

FairnessNotion parse_notion(std::string_view text) {
  if (text == "uf" || text == "uniform") return FairnessNotion::kUniform;
  if (text == "qf" || text == "quality") {
    return FairnessNotion::kQualityWeighted;
  }
  throw std::invalid_argument("unknown fairness notion: " + std::string(text));
}

double position_weight(std::size_t rank) {
  if (rank == 0) throw std::invalid_argument("rank is 1-based");
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double total_exposure(std::size_t list_count, std::size_t k) {
  if (list_count == 0 || k == 0) {
    throw std::invalid_argument("total_exposure needs list_count, k >= 1");
  }
  double per_list = 0.0;
  for (std::size_t rank = 1; rank <= k; ++rank) per_list += position_weight(rank);
  return static_cast<double>(list_count) * per_list;
}

std::vector<double> fair_targets(double total, const Catalog& catalog,
                                 FairnessNotion notion) {
  std::vector<double> share(catalog.providers());
  for (ProviderId p = 0; p < share.size(); ++p) {
    share[p] = notion == FairnessNotion::kUniform
                   ? static_cast<double>(catalog.item_count(p))
                   : catalog.quality_mass(p);
  }
  const double denom = std::accumulate(share.begin(), share.end(), 0.0);
  if (!(denom > 0.0)) {
    throw std::invalid_argument(
        "fair targets undefined: entitlement mass is zero");
  }
  for (double& s : share) s = total * s / denom;
  return share;
}

std::vector<double> list_contribution(const RankedList& list, std::size_t k,
                                      const Catalog& catalog) {
  if (list.size() < k) {
    throw std::invalid_argument("list shorter than k");
  }
  std::vector<double> contribution(catalog.providers(), 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    contribution[catalog.provider_of(list.items[r])] += position_weight(r + 1);
  }
  return contribution;
}

ExposureLedger::ExposureLedger(const Catalog& catalog, FairnessNotion notion)
    : catalog_(&catalog),
      notion_(notion),
      exposure_(catalog.providers(), 0.0),
      fair_(catalog.providers(), 0.0) {}

void ExposureLedger::set_budget(double total) {
  budget_ = total;
  fair_ = fair_targets(total, *catalog_, notion_);
}

void ExposureLedger::apply(const RankedList& list, std::size_t k) {
  if (list.size() < k) throw std::invalid_argument("list shorter than k");
  for (std::size_t r = 0; r < k; ++r) {
    exposure_[catalog_->provider_of(list.items[r])] += position_weight(r + 1);
  }
}

void ExposureLedger::retract(const RankedList& list, std::size_t k) {
  if (list.size() < k) throw std::invalid_argument("list shorter than k");
  for (std::size_t r = 0; r < k; ++r) {
    const ProviderId p = catalog_->provider_of(list.items[r]);
    exposure_[p] -= position_weight(r + 1);
    if (exposure_[p] < -kCorruptionTolerance) {
      throw LedgerCorruption("retracting a list that was never applied: "
                             "provider " +
                             std::to_string(p) + " would go negative");
    }
    if (exposure_[p] < 0.0) exposure_[p] = 0.0;
  }
}

double ExposureLedger::allocated() const {
  return std::accumulate(exposure_.begin(), exposure_.end(), 0.0);
}

void ExposureLedger::write_snapshot(std::ostream& out) const {
  for (ProviderId p = 0; p < exposure_.size(); ++p) {
    out << p << '\t' << format_double(exposure_[p]) << '\t'
        << format_double(fair_[p]) << '\n';
  }
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace fairsort
