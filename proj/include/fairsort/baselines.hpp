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

#include <cstdint>
#include <span>
#include <vector>

#include "fairsort/catalog.hpp"

namespace fairsort {

// First k items of the original ranking.
RankedList top_k(const PreferenceMatrix& scores, UserId u, std::size_t k);

// ceil(k/2) leading items of the original ranking, then the remaining slots
// drawn uniformly without replacement from the rest of it.
RankedList mixed_k(const PreferenceMatrix& scores, UserId u, std::size_t k,
                   std::uint64_t seed);

// k items drawn uniformly without replacement, in draw order.
RankedList all_random(const PreferenceMatrix& scores, UserId u, std::size_t k,
                      std::uint64_t seed);

// Item-level exposure tracked by the minimum-exposure baseline.
class ItemExposure {
 public:
  explicit ItemExposure(std::size_t items) : exposure_(items, 0.0) {}

  std::span<const double> values() const { return exposure_; }
  double spread() const;  // max - min

  // Adds position weights for the first k items of `list`.
  void record(const RankedList& list, std::size_t k);

 private:
  std::vector<double> exposure_;
};

// The k least-exposed items (ties by ascending id), ranked least exposed
// first; records the list in `tracker` before returning it. The choice
// ignores the user's preferences.
RankedList min_exposure(ItemExposure& tracker, const PreferenceMatrix& scores,
                        UserId u, std::size_t k);

}  // namespace fairsort
