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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fairsort/oracle.hpp"
#include "fairsort/quality.hpp"
#include "test_util.hpp"

using namespace fairsort;

TEST_CASE("dcg") {
  const PreferenceMatrix v(1, 3, {0.9, 0.8, 0.0});
  const std::vector<ItemId> best{0, 1};
  const std::vector<ItemId> swapped{1, 0};
  CHECK(dcg(v, 0, best, 1) == 0.9);
  // 0.8 + 0.9 / log2(3)
  CHECK(std::abs(dcg(v, 0, swapped, 2) - 1.3678367782143117) < 1e-12);
  CHECK(dcg(v, 0, std::vector<ItemId>{2}, 1) == 0.0);
  CHECK_THROWS_AS(dcg(v, 0, best, 3), std::invalid_argument);
}

TEST_CASE("ideal_dcg") {
  const PreferenceMatrix v(2, 3, {0.8, 0.9, 0.0, 0.4, 0.0, 0.0});
  // 0.9 + 0.8 / log2(3)
  CHECK(std::abs(ideal_dcg(v, 0, 2) - 1.404743802857166) < 1e-12);
  CHECK(ideal_dcg(v, 1, 1) == 0.4);
  CHECK_THROWS_AS(ideal_dcg(v, 0, 4), std::invalid_argument);
}

TEST_CASE("ideal_dcg equals exhaustive enumeration") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const auto v = test::random_matrix(rng, 1, n, trial % 3 == 0);
    for (std::size_t k = 1; k <= n; ++k) {
      CHECK(std::abs(ideal_dcg(v, 0, k) - oracle::exhaustive_best_dcg(v, 0, k)) <
            1e-12);
    }
  }
}

TEST_CASE("ndcg") {
  const PreferenceMatrix v(2, 3, {0.9, 0.8, 0.0, 0.0, 0.0, 0.0});
  CHECK(ndcg(v, 0, std::vector<ItemId>{0, 1}, 2) == 1.0);
  // 1.3678367782143117 / 1.404743802857166
  CHECK(std::abs(ndcg(v, 0, std::vector<ItemId>{1, 0}, 2) -
                 0.9737268642383134) < 1e-12);
  CHECK(ndcg(v, 0, std::vector<ItemId>{2}, 1) == 0.0);
  // All-zero user: every list is optimal.
  CHECK(ndcg(v, 1, std::vector<ItemId>{2, 1}, 2) == 1.0);
}

TEST_CASE("ndcg properties on random lists") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    const std::size_t k = 1 + rng.below(n);
    const auto v = test::random_matrix(rng, 1, n, trial % 2 == 0);
    std::vector<ItemId> list(n);
    for (ItemId i = 0; i < n; ++i) list[i] = i;
    rng.shuffle(std::span<ItemId>(list));

    const double value = ndcg(v, 0, list, k);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);

    // Scaling the row leaves NDCG unchanged.
    std::vector<double> scaled(v.row(0).begin(), v.row(0).end());
    for (double& s : scaled) s *= 3.5;
    const PreferenceMatrix w(1, n, scaled);
    CHECK(std::abs(ndcg(w, 0, list, k) - value) < 1e-12);

    // Demoting a better item below a worse one never helps.
    const std::size_t i = rng.below(n);
    const std::size_t j = rng.below(n);
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    if (lo != hi && v.score(0, list[lo]) >= v.score(0, list[hi])) {
      auto exchanged = list;
      std::swap(exchanged[lo], exchanged[hi]);
      CHECK(ndcg(v, 0, exchanged, k) <= value + 1e-12);
    }
  }
}

TEST_CASE("dcg agrees with the naive oracle") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    const auto v = test::random_matrix(rng, 1, n, false);
    std::vector<ItemId> list(n);
    for (ItemId i = 0; i < n; ++i) list[i] = i;
    rng.shuffle(std::span<ItemId>(list));
    const std::size_t k = 1 + rng.below(n);
    CHECK(std::abs(dcg(v, 0, list, k) - oracle::naive_dcg(v, 0, list, k)) <
          1e-12);
  }
}
