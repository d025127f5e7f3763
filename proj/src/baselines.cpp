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

#include "fairsort/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairsort/exposure.hpp"
#include "fairsort/random.hpp"

namespace fairsort {

namespace {

void require_items(const PreferenceMatrix& scores, std::size_t k) {
  if (k == 0 || scores.items() < k) {
    throw std::invalid_argument("need 1 <= k <= item count");
  }
}

// Partial Fisher-Yates over items[from:]; returns the first `count` draws.
void draw_tail(std::vector<ItemId>& items, std::size_t from, std::size_t count,
               Rng& rng) {
  for (std::size_t slot = from; slot < from + count; ++slot) {
    const std::size_t pick = slot + rng.below(items.size() - slot);
    std::swap(items[slot], items[pick]);
  }
}

}  // namespace

RankedList top_k(const PreferenceMatrix& scores, UserId u, std::size_t k) {
  require_items(scores, k);
  RankedList list = original_ranking(scores, u);
  list.items.resize(k);
  return list;
}

RankedList mixed_k(const PreferenceMatrix& scores, UserId u, std::size_t k,
                   std::uint64_t seed) {
  require_items(scores, k);
  RankedList list = original_ranking(scores, u);
  const std::size_t head = (k + 1) / 2;
  Rng rng(seed);
  draw_tail(list.items, head, k - head, rng);
  list.items.resize(k);
  return list;
}

RankedList all_random(const PreferenceMatrix& scores, UserId u, std::size_t k,
                      std::uint64_t seed) {
  require_items(scores, k);
  RankedList list = original_ranking(scores, u);
  Rng rng(seed);
  draw_tail(list.items, 0, k, rng);
  list.items.resize(k);
  return list;
}

double ItemExposure::spread() const {
  const auto [lo, hi] = std::minmax_element(exposure_.begin(), exposure_.end());
  return *hi - *lo;
}

void ItemExposure::record(const RankedList& list, std::size_t k) {
  if (list.size() < k) throw std::invalid_argument("list shorter than k");
  for (std::size_t r = 0; r < k; ++r) {
    exposure_.at(list.items[r]) += position_weight(r + 1);
  }
}

RankedList min_exposure(ItemExposure& tracker, const PreferenceMatrix& scores,
                        UserId u, std::size_t k) {
  require_items(scores, k);
  if (u >= scores.users()) throw std::out_of_range("user id out of range");
  const auto exposure = tracker.values();
  if (exposure.size() != scores.items()) {
    throw std::invalid_argument("tracker does not match the item count");
  }
  std::vector<ItemId> items(exposure.size());
  std::iota(items.begin(), items.end(), ItemId{0});
  std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(k),
                    items.end(), [&](ItemId a, ItemId b) {
                      return exposure[a] < exposure[b] ||
                             (exposure[a] == exposure[b] && a < b);
                    });
  items.resize(k);
  RankedList list{u, std::move(items)};
  tracker.record(list, k);
  return list;
}

}  // namespace fairsort
