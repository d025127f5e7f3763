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
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairsort {

using UserId = std::size_t;
using ItemId = std::size_t;
using ProviderId = std::size_t;

// Dense user x item relevance scores. Every score is finite and >= 0.
class PreferenceMatrix {
 public:
  // `scores` is row-major, users() * items() entries.
  PreferenceMatrix(std::size_t users, std::size_t items,
                   std::vector<double> scores);

  std::size_t users() const { return users_; }
  std::size_t items() const { return items_; }

  double score(UserId u, ItemId i) const { return scores_[u * items_ + i]; }
  std::span<const double> row(UserId u) const {
    return {scores_.data() + u * items_, items_};
  }
  std::span<const double> scores() const { return scores_; }

 private:
  std::size_t users_;
  std::size_t items_;
  std::vector<double> scores_;
};

// Item -> provider assignment with per-provider item counts and quality mass
// (sum of every user's score over the provider's items).
class Catalog {
 public:
  // Throws std::invalid_argument if the assignment does not cover the
  // matrix's items or leaves a provider id without items.
  Catalog(const PreferenceMatrix& scores, std::vector<ProviderId> provider_of);

  std::size_t items() const { return provider_of_.size(); }
  std::size_t providers() const { return item_count_.size(); }

  ProviderId provider_of(ItemId i) const { return provider_of_.at(i); }
  std::size_t item_count(ProviderId p) const { return item_count_.at(p); }
  double quality_mass(ProviderId p) const { return quality_mass_.at(p); }

  std::span<const ProviderId> assignment() const { return provider_of_; }
  std::span<const std::size_t> item_counts() const { return item_count_; }
  std::span<const double> quality_masses() const { return quality_mass_; }

 private:
  std::vector<ProviderId> provider_of_;
  std::vector<std::size_t> item_count_;
  std::vector<double> quality_mass_;
};

// An ordered list of distinct items for one user; items[0] is rank 1.
struct RankedList {
  UserId user = 0;
  std::vector<ItemId> items;

  std::size_t size() const { return items.size(); }
  bool operator==(const RankedList&) const = default;
};

struct Dataset {
  PreferenceMatrix matrix;
  Catalog catalog;
};

enum class ParseErrorKind {
  kIo,
  kMalformedRow,
  kNegativeScore,
  kDuplicateScore,
  kMissingProvider,
  kDuplicateAssignment,
  kEmptyProvider,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::string file, std::size_t line,
             const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  const std::string& file() const { return file_; }
  // 1-based; 0 when the problem is not tied to a single line.
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::string file_;
  std::size_t line_;
};

// Reads a `user<TAB>item<TAB>score` triplet file and an `item<TAB>provider`
// map. Users and items absent from the triplets score 0. Blank lines and
// lines starting with '#' are skipped.
Dataset load_dataset(const std::filesystem::path& matrix_path,
                     const std::filesystem::path& provider_map_path);

// All items of user `u` by descending score, ties by ascending item id.
RankedList original_ranking(const PreferenceMatrix& scores, UserId u);

struct SyntheticParams {
  std::size_t users = 200;
  std::size_t items = 500;
  std::size_t providers = 20;
  double skew = 1.5;
  std::uint64_t seed = 1;
};

// Power-law marketplace: provider p owns a share of items proportional to
// (p+1)^-skew and its items carry a base appeal with the same decay, so
// Top-K lists concentrate exposure on the head providers. Scores lie in
// [0, 1]. Deterministic for a fixed seed.
Dataset generate_synthetic(const SyntheticParams& params);

// Provider sizes used by generate_synthetic; sums to `items`, every entry
// >= 1.
std::vector<std::size_t> power_law_sizes(std::size_t items,
                                         std::size_t providers, double skew);

}  // namespace fairsort
