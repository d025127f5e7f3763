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

#include <span>
#include <vector>

#include "fairsort/catalog.hpp"
#include "fairsort/exposure.hpp"

namespace fairsort {

// Per-provider lift velocity in [-1, 1]. Positive lifts sum to 1 and
// negative lifts to -1 whenever the respective group is nonempty.
struct LiftAssignment {
  std::vector<double> lift;

  bool all_zero() const;
};

// Signed shortfall of each provider against its fair target, scaled by the
// provider's entitlement (item count or quality mass). Positive means
// under-exposed. Providers with zero quality mass get 0 under the quality
// weighted notion.
std::vector<double> err_rates(const ExposureLedger& ledger);

// Divides each error by the absolute sum of the errors sharing its sign.
LiftAssignment normalize_lifts(std::span<const double> err);

inline LiftAssignment compute_lifts(const ExposureLedger& ledger) {
  return normalize_lifts(err_rates(ledger));
}

// Items inherit their provider's lift.
double get_fair(ItemId item, const LiftAssignment& lifts,
                const Catalog& catalog);

}  // namespace fairsort
