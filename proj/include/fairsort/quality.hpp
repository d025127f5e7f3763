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
#include <span>
#include <vector>

#include "fairsort/catalog.hpp"

namespace fairsort {

// DCG@k of the first k entries of `items`, positions re-indexed from 1.
double dcg(const PreferenceMatrix& scores, UserId u,
           std::span<const ItemId> items, std::size_t k);

// DCG@k of the user's original ranking; the maximum over all k-lists.
double ideal_dcg(const PreferenceMatrix& scores, UserId u, std::size_t k);

// dcg / ideal, clamped to [0, 1]. A zero ideal means every list is optimal
// and yields 1.
double ndcg_from(double list_dcg, double ideal);

double ndcg(const PreferenceMatrix& scores, UserId u,
            std::span<const ItemId> items, std::size_t k);

struct QualityReport {
  std::vector<double> per_user_ndcg;
  double total_quality = 0.0;

  void add(double value) {
    per_user_ndcg.push_back(value);
    total_quality += value;
  }
};

}  // namespace fairsort
