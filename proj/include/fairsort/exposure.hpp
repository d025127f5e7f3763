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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairsort/catalog.hpp"

namespace fairsort {

enum class FairnessNotion {
  kUniform,          // entitlement proportional to item count
  kQualityWeighted,  // entitlement proportional to relevance mass
};

std::string_view to_string(FairnessNotion notion);  // "uf" / "qf"
FairnessNotion parse_notion(std::string_view text);

// Attention received at 1-based `rank`: 1 / log2(rank + 1).
double position_weight(std::size_t rank);

// Exposure budget of `list_count` lists of length k.
double total_exposure(std::size_t list_count, std::size_t k);

// Each provider's share of `total` under `notion`. Shares sum to `total`.
std::vector<double> fair_targets(double total, const Catalog& catalog,
                                 FairnessNotion notion);

// Per-provider exposure that the first k items of `list` generate.
std::vector<double> list_contribution(const RankedList& list, std::size_t k,
                                      const Catalog& catalog);

// Raised when a retraction would leave a provider with negative exposure.
class LedgerCorruption : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Accumulated provider exposure against fair targets for a running budget.
// Holds a pointer to the catalog, which must outlive the ledger.
class ExposureLedger {
 public:
  ExposureLedger(const Catalog& catalog, FairnessNotion notion);

  // Sets the budget and recomputes the fair targets.
  void set_budget(double total);

  void apply(const RankedList& list, std::size_t k);
  void retract(const RankedList& list, std::size_t k);

  std::span<const double> exposure() const { return exposure_; }
  std::span<const double> fair() const { return fair_; }
  double budget() const { return budget_; }
  double allocated() const;  // sum of exposure
  FairnessNotion notion() const { return notion_; }
  const Catalog& catalog() const { return *catalog_; }

  // Test hook: overwrite one provider's exposure.
  void set_exposure(ProviderId p, double value) { exposure_.at(p) = value; }

  // One `provider<TAB>e<TAB>e_fair` line per provider.
  void write_snapshot(std::ostream& out) const;

 private:
  const Catalog* catalog_;
  FairnessNotion notion_;
  double budget_ = 0.0;
  std::vector<double> exposure_;
  std::vector<double> fair_;
};

// Shortest round-trip decimal form; used by every text writer.
std::string format_double(double value);

}  // namespace fairsort
