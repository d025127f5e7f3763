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

#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fairsort/baselines.hpp"
#include "fairsort/exposure.hpp"
#include "fairsort/reranker.hpp"
#include "test_util.hpp"

using namespace fairsort;

namespace {

// Items 0..3; item 0 -> p0, items 1..3 -> p1.
Catalog one_three_catalog(const PreferenceMatrix& v) {
  return Catalog(v, {0, 1, 1, 1});
}

}  // namespace

TEST_CASE("position_weight") {
  CHECK(position_weight(1) == 1.0);
  CHECK(position_weight(3) == 0.5);
  CHECK(position_weight(7) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(position_weight(0), std::invalid_argument);
  for (std::size_t r = 1; r < 200; ++r) {
    CHECK(position_weight(r + 1) < position_weight(r));
  }
}

TEST_CASE("total_exposure") {
  CHECK(total_exposure(1, 1) == 1.0);
  // 2 * (1 + 1/log2(3) + 1/2)
  CHECK(std::abs(total_exposure(2, 3) - 4.2618595071429155) < 1e-12);
  CHECK_THROWS_AS(total_exposure(0, 3), std::invalid_argument);

  const auto data = generate_synthetic({10, 30, 4, 1.0, 5});
  double sum = 0.0;
  for (UserId u = 0; u < 10; ++u) {
    const auto c = list_contribution(top_k(data.matrix, u, 5), 5, data.catalog);
    sum += std::accumulate(c.begin(), c.end(), 0.0);
  }
  CHECK(std::abs(sum - total_exposure(10, 5)) < 1e-12);
}

TEST_CASE("fair_targets") {
  const PreferenceMatrix v(1, 4, {0.5, 0.5, 0.5, 0.5});
  const Catalog catalog = one_three_catalog(v);
  const auto uf = fair_targets(4.0, catalog, FairnessNotion::kUniform);
  CHECK(uf[0] == doctest::Approx(1.0));
  CHECK(uf[1] == doctest::Approx(3.0));

  SUBCASE("quality weighted") {
    // masses p0 = 2.0, p1 = 1.0
    const PreferenceMatrix w(2, 2, {1.0, 0.5, 1.0, 0.5});
    const Catalog c(w, {0, 1});
    const auto qf = fair_targets(6.0, c, FairnessNotion::kQualityWeighted);
    CHECK(qf[0] == doctest::Approx(4.0));
    CHECK(qf[1] == doctest::Approx(2.0));
  }
  SUBCASE("equal counts give equal targets") {
    const PreferenceMatrix w(1, 4, {0.1, 0.2, 0.3, 0.4});
    const auto t = fair_targets(3.0, Catalog(w, {0, 1, 0, 1}),
                                FairnessNotion::kUniform);
    CHECK(t[0] == t[1]);
  }
  SUBCASE("all-zero quality is an error") {
    const PreferenceMatrix w(1, 2, {0.0, 0.0});
    CHECK_THROWS_AS(
        fair_targets(1.0, Catalog(w, {0, 1}), FairnessNotion::kQualityWeighted),
        std::invalid_argument);
  }
  SUBCASE("zero-quality provider has zero target") {
    const PreferenceMatrix w(1, 2, {0.0, 0.4});
    const auto t = fair_targets(2.0, Catalog(w, {0, 1}),
                                FairnessNotion::kQualityWeighted);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 2.0);
  }
  SUBCASE("targets sum to the budget and scale linearly") {
    const auto data = generate_synthetic({20, 50, 7, 1.2, 9});
    for (auto notion :
         {FairnessNotion::kUniform, FairnessNotion::kQualityWeighted}) {
      const auto t = fair_targets(13.7, data.catalog, notion);
      const auto t2 = fair_targets(27.4, data.catalog, notion);
      CHECK(std::accumulate(t.begin(), t.end(), 0.0) ==
            doctest::Approx(13.7).epsilon(1e-12));
      for (std::size_t p = 0; p < t.size(); ++p) CHECK(t2[p] == 2.0 * t[p]);
    }
  }
}

TEST_CASE("list_contribution") {
  const PreferenceMatrix v(1, 4, {0.5, 0.5, 0.5, 0.5});
  const Catalog catalog(v, {0, 0, 1, 2});
  const RankedList same{0, {0, 1, 2}};
  auto c = list_contribution(same, 2, catalog);
  CHECK(c[0] == doctest::Approx(1.6309297535714575).epsilon(1e-14));
  CHECK(c[1] == 0.0);

  c = list_contribution(RankedList{0, {2, 0}}, 1, catalog);
  CHECK(c == std::vector<double>{0.0, 1.0, 0.0});

  c = list_contribution(RankedList{0, {0, 2, 3}}, 3, catalog);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(0.6309297535714575).epsilon(1e-14));
  CHECK(c[2] == 0.5);

  CHECK_THROWS_AS(list_contribution(RankedList{0, {0}}, 2, catalog),
                  std::invalid_argument);
}

TEST_CASE("ledger apply and retract") {
  Rng rng(3);
  const auto v = test::random_matrix(rng, 5, 12, false);
  const Catalog catalog(v, test::random_assignment(rng, 12, 4));
  ExposureLedger ledger(catalog, FairnessNotion::kUniform);
  ledger.set_budget(total_exposure(5, 4));
  const RankedList a = top_k(v, 0, 4);
  const RankedList b = top_k(v, 1, 4);
  ledger.apply(a, 4);
  const std::vector<double> before(ledger.exposure().begin(),
                                   ledger.exposure().end());

  ledger.apply(b, 4);
  const auto ca = list_contribution(a, 4, catalog);
  const auto cb = list_contribution(b, 4, catalog);
  for (ProviderId p = 0; p < 4; ++p) {
    CHECK(ledger.exposure()[p] == doctest::Approx(ca[p] + cb[p]));
  }
  ledger.retract(b, 4);
  for (ProviderId p = 0; p < 4; ++p) {
    CHECK(std::abs(ledger.exposure()[p] - before[p]) <= 1e-12);
  }

  ExposureLedger empty(catalog, FairnessNotion::kUniform);
  CHECK_THROWS_AS(empty.retract(a, 4), LedgerCorruption);
}

TEST_CASE("offline conservation under the replace semantics") {
  const auto data = generate_synthetic({60, 120, 8, 1.5, 4});
  RunConfig config;
  config.k = 7;
  for (auto notion :
       {FairnessNotion::kUniform, FairnessNotion::kQualityWeighted}) {
    config.notion = notion;
    const auto result = fairsort_offline(data.matrix, data.catalog, config);
    const double total = total_exposure(60, 7);
    CHECK(std::abs(result.ledger.allocated() - total) <= 1e-6 * total);
    const auto fair = result.ledger.fair();
    CHECK(std::accumulate(fair.begin(), fair.end(), 0.0) ==
          doctest::Approx(total).epsilon(1e-9));
    for (double e : result.ledger.exposure()) CHECK(e >= 0.0);
  }
}

TEST_CASE("accumulate mode keeps the provisional exposure") {
  const auto data = generate_synthetic({20, 60, 5, 1.5, 4});
  RunConfig config;
  config.k = 5;
  config.provisional = ProvisionalMode::kAccumulate;
  const auto result = fairsort_offline(data.matrix, data.catalog, config);
  CHECK(result.ledger.allocated() ==
        doctest::Approx(2.0 * total_exposure(20, 5)).epsilon(1e-9));
}

TEST_CASE("ledger snapshot format") {
  const PreferenceMatrix v(1, 3, {0.3, 0.2, 0.1});
  const Catalog catalog(v, {0, 1, 1});
  ExposureLedger ledger(catalog, FairnessNotion::kUniform);
  ledger.set_budget(3.0);
  ledger.apply(RankedList{0, {0, 1}}, 1);
  std::ostringstream out;
  ledger.write_snapshot(out);
  CHECK(out.str() == "0\t1\t1\n1\t0\t2\n");
}

TEST_CASE("notion names round-trip") {
  for (auto notion :
       {FairnessNotion::kUniform, FairnessNotion::kQualityWeighted}) {
    CHECK(parse_notion(to_string(notion)) == notion);
  }
  CHECK_THROWS_AS(parse_notion("xf"), std::invalid_argument);
}
