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

#include "fairsort/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <string_view>
#include <unordered_set>

#include "fairsort/random.hpp"

namespace fairsort {

PreferenceMatrix::PreferenceMatrix(std::size_t users, std::size_t items,
                                   std::vector<double> scores)
    : users_(users), items_(items), scores_(std::move(scores)) {
  if (users_ == 0 || items_ == 0) {
    throw std::invalid_argument("preference matrix needs >= 1 user and item");
  }
  if (scores_.size() != users_ * items_) {
    throw std::invalid_argument("preference matrix size mismatch");
  }
  for (double s : scores_) {
    if (!std::isfinite(s) || s < 0.0) {
      throw std::invalid_argument(
          "preference scores must be finite and nonnegative");
    }
  }
}

Catalog::Catalog(const PreferenceMatrix& scores,
                 std::vector<ProviderId> provider_of)
    : provider_of_(std::move(provider_of)) {
  if (provider_of_.size() != scores.items()) {
    throw std::invalid_argument("provider map must cover every item");
  }
  const ProviderId max_provider =
      *std::max_element(provider_of_.begin(), provider_of_.end());
  item_count_.assign(max_provider + 1, 0);
  quality_mass_.assign(max_provider + 1, 0.0);
  for (ItemId i = 0; i < provider_of_.size(); ++i) {
    ++item_count_[provider_of_[i]];
  }
  for (ProviderId p = 0; p < item_count_.size(); ++p) {
    if (item_count_[p] == 0) {
      throw std::invalid_argument("provider " + std::to_string(p) +
                                  " has no items");
    }
  }
  for (UserId u = 0; u < scores.users(); ++u) {
    const auto row = scores.row(u);
    for (ItemId i = 0; i < row.size(); ++i) {
      quality_mass_[provider_of_[i]] += row[i];
    }
  }
}

ParseError::ParseError(ParseErrorKind kind, std::string file, std::size_t line,
                       const std::string& what)
    : std::runtime_error(file + (line ? ":" + std::to_string(line) : "") +
                         ": " + what),
      kind_(kind),
      file_(std::move(file)),
      line_(line) {}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

struct Triplet {
  UserId user;
  ItemId item;
  double score;
  std::size_t line;
};

// Calls `fn(fields, line_number)` for each non-blank, non-comment line.
template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(ParseErrorKind::kIo, path.string(), 0, "cannot open file");
  }
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    fn(split_tabs(line), number);
  }
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& matrix_path,
                     const std::filesystem::path& provider_map_path) {
  const std::string matrix_file = matrix_path.string();
  const std::string map_file = provider_map_path.string();

  std::vector<Triplet> triplets;
  std::size_t users = 0;
  std::size_t items = 0;
  for_each_record(matrix_path, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 3) {
      throw ParseError(ParseErrorKind::kMalformedRow, matrix_file, line,
                       "expected user<TAB>item<TAB>score");
    }
    const auto user = parse_number<std::size_t>(fields[0]);
    const auto item = parse_number<std::size_t>(fields[1]);
    const auto score = parse_number<double>(fields[2]);
    if (!user || !item || !score || !std::isfinite(*score)) {
      throw ParseError(ParseErrorKind::kMalformedRow, matrix_file, line,
                       "unparsable field");
    }
    if (*score < 0.0) {
      throw ParseError(ParseErrorKind::kNegativeScore, matrix_file, line,
                       "negative score");
    }
    users = std::max(users, *user + 1);
    items = std::max(items, *item + 1);
    triplets.push_back({*user, *item, *score, line});
  });

  std::vector<std::optional<ProviderId>> assigned;
  std::vector<std::size_t> assigned_line;
  for_each_record(provider_map_path, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 2) {
      throw ParseError(ParseErrorKind::kMalformedRow, map_file, line,
                       "expected item<TAB>provider");
    }
    const auto item = parse_number<std::size_t>(fields[0]);
    const auto provider = parse_number<std::size_t>(fields[1]);
    if (!item || !provider) {
      throw ParseError(ParseErrorKind::kMalformedRow, map_file, line,
                       "unparsable field");
    }
    if (*item >= assigned.size()) {
      assigned.resize(*item + 1);
      assigned_line.resize(*item + 1, 0);
    }
    if (assigned[*item]) {
      throw ParseError(ParseErrorKind::kDuplicateAssignment, map_file, line,
                       "item " + std::to_string(*item) +
                           " already assigned on line " +
                           std::to_string(assigned_line[*item]));
    }
    assigned[*item] = *provider;
    assigned_line[*item] = line;
  });

  items = std::max(items, assigned.size());
  if (users == 0 || items == 0) {
    throw ParseError(ParseErrorKind::kMalformedRow, matrix_file, 0,
                     "no users or items");
  }
  assigned.resize(items);

  std::vector<double> scores(users * items, 0.0);
  std::vector<bool> seen(users * items, false);
  for (const auto& t : triplets) {
    const std::size_t cell = t.user * items + t.item;
    if (seen[cell]) {
      throw ParseError(ParseErrorKind::kDuplicateScore, matrix_file, t.line,
                       "duplicate (user, item) pair");
    }
    seen[cell] = true;
    scores[cell] = t.score;
  }

  std::vector<ProviderId> provider_of(items);
  std::size_t providers = 0;
  for (ItemId i = 0; i < items; ++i) {
    if (!assigned[i]) {
      throw ParseError(ParseErrorKind::kMissingProvider, map_file, 0,
                       "item " + std::to_string(i) + " has no provider");
    }
    provider_of[i] = *assigned[i];
    providers = std::max(providers, provider_of[i] + 1);
  }
  std::vector<bool> used(providers, false);
  for (ProviderId p : provider_of) used[p] = true;
  for (ProviderId p = 0; p < providers; ++p) {
    if (!used[p]) {
      throw ParseError(ParseErrorKind::kEmptyProvider, map_file, 0,
                       "provider " + std::to_string(p) + " has no items");
    }
  }

  PreferenceMatrix matrix(users, items, std::move(scores));
  Catalog catalog(matrix, std::move(provider_of));
  return {std::move(matrix), std::move(catalog)};
}

RankedList original_ranking(const PreferenceMatrix& scores, UserId u) {
  if (u >= scores.users()) throw std::out_of_range("user id out of range");
  const auto row = scores.row(u);
  RankedList list{u, std::vector<ItemId>(row.size())};
  std::iota(list.items.begin(), list.items.end(), ItemId{0});
  std::sort(list.items.begin(), list.items.end(), [&](ItemId a, ItemId b) {
    return row[a] > row[b] || (row[a] == row[b] && a < b);
  });
  return list;
}

std::vector<std::size_t> power_law_sizes(std::size_t items,
                                         std::size_t providers, double skew) {
  if (providers == 0 || providers > items) {
    throw std::invalid_argument("need 1 <= providers <= items");
  }
  // One item per provider up front, the remainder split by largest
  // remainder over the power-law weights.
  std::vector<double> weight(providers);
  for (std::size_t p = 0; p < providers; ++p) {
    weight[p] = std::pow(static_cast<double>(p + 1), -skew);
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  const std::size_t spare = items - providers;
  std::vector<std::size_t> sizes(providers, 1);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t handed_out = 0;
  for (std::size_t p = 0; p < providers; ++p) {
    const double exact = static_cast<double>(spare) * weight[p] / total;
    const auto whole = static_cast<std::size_t>(std::floor(exact));
    sizes[p] += whole;
    handed_out += whole;
    remainders.emplace_back(exact - static_cast<double>(whole), p);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; handed_out < spare; ++r, ++handed_out) {
    ++sizes[remainders[r].second];
  }
  return sizes;
}

Dataset generate_synthetic(const SyntheticParams& params) {
  if (params.users == 0 || params.items == 0) {
    throw std::invalid_argument("synthetic dataset needs users and items");
  }
  if (params.providers == 0 || params.providers > params.items) {
    throw std::invalid_argument("synthetic dataset needs 1 <= l <= n");
  }
  if (!(params.skew >= 0.0)) {
    throw std::invalid_argument("skew must be nonnegative");
  }
  Rng rng(params.seed);

  const auto sizes =
      power_law_sizes(params.items, params.providers, params.skew);
  std::vector<ProviderId> provider_of;
  provider_of.reserve(params.items);
  for (ProviderId p = 0; p < sizes.size(); ++p) {
    provider_of.insert(provider_of.end(), sizes[p], p);
  }
  rng.shuffle(std::span<ProviderId>(provider_of));

  // Head providers get more items and a brand bonus on each of them.
  std::vector<double> appeal(params.providers);
  for (ProviderId p = 0; p < params.providers; ++p) {
    appeal[p] = std::pow(static_cast<double>(p + 1), -params.skew);
  }
  std::vector<double> item_quality(params.items);
  for (ItemId i = 0; i < params.items; ++i) {
    item_quality[i] = 0.7 * rng.uniform() + 0.3 * appeal[provider_of[i]];
  }

  std::vector<double> scores(params.users * params.items);
  for (UserId u = 0; u < params.users; ++u) {
    for (ItemId i = 0; i < params.items; ++i) {
      const double taste = rng.uniform();
      scores[u * params.items + i] = 0.6 * item_quality[i] + 0.4 * taste;
    }
  }
  PreferenceMatrix matrix(params.users, params.items, std::move(scores));
  Catalog catalog(matrix, std::move(provider_of));
  return {std::move(matrix), std::move(catalog)};
}

}  // namespace fairsort
