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
#include <filesystem>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "fairsort/baselines.hpp"
#include "fairsort/catalog.hpp"
#include "fairsort/exposure.hpp"
#include "fairsort/metrics.hpp"
#include "fairsort/oracle.hpp"
#include "fairsort/random.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace fairsort;

namespace {

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() /
           ("fairsort_catalog_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }

  fs::path path;
  static inline int counter = 0;
};

ParseErrorKind load_error(const std::string& matrix, const std::string& map,
                          std::size_t* line = nullptr) {
  TempDir dir;
  try {
    load_dataset(dir.write("v.tsv", matrix), dir.write("p.tsv", map));
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseErrorKind::kIo;
}

}  // namespace

TEST_CASE("load_dataset reads uniform triplets") {
  TempDir dir;
  const auto data = load_dataset(
      dir.write("v.tsv", "0\t0\t0.5\n0\t1\t0.5\n0\t2\t0.5\n"
                         "1\t0\t0.5\n1\t1\t0.5\n1\t2\t0.5\n"),
      dir.write("p.tsv", "0\t0\n1\t0\n2\t0\n"));
  CHECK(data.matrix.users() == 2);
  CHECK(data.matrix.items() == 3);
  CHECK(data.catalog.providers() == 1);
  CHECK(data.catalog.item_count(0) == 3);
  CHECK(data.catalog.quality_mass(0) == doctest::Approx(3.0));
}

TEST_CASE("load_dataset defaults missing pairs to zero and skips comments") {
  TempDir dir;
  const auto data = load_dataset(dir.write("v.tsv", "# header\n\n1\t2\t0.25\n"),
                                 dir.write("p.tsv", "0\t0\n1\t1\n2\t1\n"));
  CHECK(data.matrix.users() == 2);
  CHECK(data.matrix.score(0, 0) == 0.0);
  CHECK(data.matrix.score(1, 2) == 0.25);
  CHECK(data.catalog.quality_mass(0) == 0.0);
  CHECK(data.catalog.quality_mass(1) == 0.25);
}

TEST_CASE("load_dataset distinguishes its error kinds") {
  std::size_t line = 0;
  CHECK(load_error("0\t0\t-0.1\n", "0\t0\n", &line) ==
        ParseErrorKind::kNegativeScore);
  CHECK(line == 1);
  CHECK(load_error("0\t0\t0.1\n0\t1\n", "0\t0\n1\t0\n", &line) ==
        ParseErrorKind::kMalformedRow);
  CHECK(line == 2);
  CHECK(load_error("0\t0\tabc\n", "0\t0\n") == ParseErrorKind::kMalformedRow);
  CHECK(load_error("0\t1\t0.1\n", "0\t0\n") ==
        ParseErrorKind::kMissingProvider);
  CHECK(load_error("0\t0\t0.1\n", "0\t0\n0\t1\n", &line) ==
        ParseErrorKind::kDuplicateAssignment);
  CHECK(line == 2);
  CHECK(load_error("0\t0\t0.1\n0\t0\t0.2\n", "0\t0\n") ==
        ParseErrorKind::kDuplicateScore);
  CHECK(load_error("0\t0\t0.1\n", "0\t1\n") == ParseErrorKind::kEmptyProvider);
}

TEST_CASE("load_dataset reports unreadable files") {
  try {
    load_dataset("/nonexistent/v.tsv", "/nonexistent/p.tsv");
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kIo);
  }
}

TEST_CASE("PreferenceMatrix rejects invalid scores") {
  CHECK_THROWS_AS(PreferenceMatrix(1, 2, {0.1, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceMatrix(1, 1, {NAN}), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceMatrix(0, 1, {}), std::invalid_argument);
}

TEST_CASE("original_ranking sorts by score with id tie-break") {
  const PreferenceMatrix v(2, 3, {0.2, 0.9, 0.5, 0.5, 0.5, 0.1});
  CHECK(original_ranking(v, 0).items == std::vector<ItemId>{1, 2, 0});
  CHECK(original_ranking(v, 1).items == std::vector<ItemId>{0, 1, 2});
  CHECK_THROWS_AS(original_ranking(v, 2), std::out_of_range);
}

TEST_CASE("original_ranking matches a selection-sort oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = test::random_matrix(rng, 3, 20, /*quantize=*/trial % 2 == 0);
    for (UserId u = 0; u < v.users(); ++u) {
      const auto ranked = original_ranking(v, u);
      CHECK(ranked.items == oracle::naive_ranking(v, u));
      // Permutation of 0..n-1 with non-increasing scores.
      auto sorted = ranked.items;
      std::sort(sorted.begin(), sorted.end());
      for (ItemId i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
      for (std::size_t r = 1; r < ranked.size(); ++r) {
        CHECK(v.score(u, ranked.items[r - 1]) >= v.score(u, ranked.items[r]));
      }
    }
  }
}

TEST_CASE("quality mass matches recomputation") {
  const auto data = generate_synthetic({30, 40, 5, 1.0, 3});
  for (ProviderId p = 0; p < data.catalog.providers(); ++p) {
    double mass = 0.0;
    for (UserId u = 0; u < data.matrix.users(); ++u) {
      for (ItemId i = 0; i < data.matrix.items(); ++i) {
        if (data.catalog.provider_of(i) == p) mass += data.matrix.score(u, i);
      }
    }
    CHECK(std::abs(mass - data.catalog.quality_mass(p)) <= 1e-9 * mass);
  }
  const auto counts = data.catalog.item_counts();
  CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 40);
}

TEST_CASE("generate_synthetic is deterministic per seed") {
  const auto a = generate_synthetic({10, 20, 4, 1.0, 7});
  const auto b = generate_synthetic({10, 20, 4, 1.0, 7});
  const auto c = generate_synthetic({10, 20, 4, 1.0, 8});
  CHECK(std::equal(a.matrix.scores().begin(), a.matrix.scores().end(),
                   b.matrix.scores().begin()));
  CHECK(std::equal(a.catalog.assignment().begin(), a.catalog.assignment().end(),
                   b.catalog.assignment().begin()));
  CHECK_FALSE(std::equal(a.matrix.scores().begin(), a.matrix.scores().end(),
                         c.matrix.scores().begin()));
  for (double s : a.matrix.scores()) {
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("generate_synthetic provider sizes") {
  SUBCASE("no skew gives equal sizes within one") {
    const auto data = generate_synthetic({5, 23, 4, 0.0, 1});
    const auto counts = data.catalog.item_counts();
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
  }
  SUBCASE("skew makes sizes non-increasing") {
    const auto sizes = power_law_sizes(500, 20, 1.5);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == 500);
    for (std::size_t p = 1; p < sizes.size(); ++p) {
      CHECK(sizes[p] <= sizes[p - 1]);
      CHECK(sizes[p] >= 1);
    }
  }
  CHECK_THROWS_AS(generate_synthetic({5, 3, 4, 1.0, 1}), std::invalid_argument);
}

TEST_CASE("skewed synthetic data makes Top-K unfair") {
  const auto data = generate_synthetic({200, 500, 20, 1.5, 1});
  ExposureLedger ledger(data.catalog, FairnessNotion::kUniform);
  for (UserId u = 0; u < data.matrix.users(); ++u) {
    ledger.apply(top_k(data.matrix, u, 10), 10);
  }
  CHECK(dpf(ledger, FairnessNotion::kUniform) > 0.0);
  CHECK(dpf(ledger, FairnessNotion::kQualityWeighted) > 0.0);
}
