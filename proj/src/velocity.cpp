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

#include "fairsort/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsort {

bool LiftAssignment::all_zero() const {
  return std::all_of(lift.begin(), lift.end(),
                     [](double x) { return x == 0.0; });
}

std::vector<double> err_rates(const ExposureLedger& ledger) {
  const Catalog& catalog = ledger.catalog();
  const auto e = ledger.exposure();
  const auto fair = ledger.fair();
  std::vector<double> err(catalog.providers(), 0.0);
  for (ProviderId p = 0; p < err.size(); ++p) {
    const double denom =
        ledger.notion() == FairnessNotion::kUniform
            ? static_cast<double>(catalog.item_count(p))
            : catalog.quality_mass(p);
    if (denom > 0.0) err[p] = (fair[p] - e[p]) / denom;
  }
  return err;
}

LiftAssignment normalize_lifts(std::span<const double> err) {
  double positive = 0.0;
  double negative = 0.0;
  for (double x : err) {
    if (x > 0.0) positive += x;
    if (x < 0.0) negative -= x;
  }
  LiftAssignment out{std::vector<double>(err.size(), 0.0)};
  for (std::size_t p = 0; p < err.size(); ++p) {
    if (err[p] > 0.0) out.lift[p] = err[p] / positive;
    if (err[p] < 0.0) out.lift[p] = err[p] / negative;
  }
  return out;
}

double get_fair(ItemId item, const LiftAssignment& lifts,
                const Catalog& catalog) {
  if (item >= catalog.items()) throw std::out_of_range("unknown item");
  return lifts.lift.at(catalog.provider_of(item));
}

}  // namespace fairsort
