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

#include "fairsort/quality.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "fairsort/exposure.hpp"

namespace fairsort {

double dcg(const PreferenceMatrix& scores, UserId u,
           std::span<const ItemId> items, std::size_t k) {
  if (items.size() < k) throw std::invalid_argument("list shorter than k");
  const auto row = scores.row(u);
  double sum = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    sum += row[items[r]] * position_weight(r + 1);
  }
  return sum;
}

double ideal_dcg(const PreferenceMatrix& scores, UserId u, std::size_t k) {
  if (scores.items() < k) throw std::invalid_argument("fewer items than k");
  const auto row = scores.row(u);
  std::vector<double> best(row.begin(), row.end());
  std::partial_sort(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(k),
                    best.end(), std::greater<>());
  double sum = 0.0;
  for (std::size_t r = 0; r < k; ++r) sum += best[r] * position_weight(r + 1);
  return sum;
}

double ndcg_from(double list_dcg, double ideal) {
  if (ideal <= 0.0) return 1.0;
  return std::clamp(list_dcg / ideal, 0.0, 1.0);
}

double ndcg(const PreferenceMatrix& scores, UserId u,
            std::span<const ItemId> items, std::size_t k) {
  return ndcg_from(dcg(scores, u, items, k), ideal_dcg(scores, u, k));
}

}  // namespace fairsort
