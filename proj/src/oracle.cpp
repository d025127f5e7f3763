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

#include "fairsort/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsort::oracle {

namespace {

constexpr double kNdcgTolerance = 1e-9;
constexpr double kExposureTolerance = 1e-6;

// ln 2 / ln(rank + 1), i.e. 1 / log2(rank + 1) by another route.
double discount(std::size_t rank) {
  return std::log(2.0) / std::log(static_cast<double>(rank) + 1.0);
}

double best_dcg(const PreferenceMatrix& scores, UserId u, std::size_t k) {
  return naive_dcg(scores, u, naive_ranking(scores, u), k);
}

void enumerate(const PreferenceMatrix& scores, UserId u, std::size_t k,
               std::vector<bool>& used, std::size_t depth, double sum,
               double& best) {
  if (depth == k) {
    best = std::max(best, sum);
    return;
  }
  for (ItemId i = 0; i < scores.items(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    enumerate(scores, u, k, used, depth + 1,
              sum + scores.score(u, i) * discount(depth + 1), best);
    used[i] = false;
  }
}

}  // namespace

std::vector<ItemId> naive_ranking(const PreferenceMatrix& scores, UserId u) {
  std::vector<ItemId> remaining;
  for (ItemId i = 0; i < scores.items(); ++i) remaining.push_back(i);
  std::vector<ItemId> out;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < remaining.size(); ++j) {
      const double a = scores.score(u, remaining[j]);
      const double b = scores.score(u, remaining[best]);
      if (a > b || (a == b && remaining[j] < remaining[best])) best = j;
    }
    out.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

double naive_dcg(const PreferenceMatrix& scores, UserId u,
                 const std::vector<ItemId>& items, std::size_t k) {
  double sum = 0.0;
  for (std::size_t r = 0; r < k && r < items.size(); ++r) {
    sum += scores.score(u, items[r]) * discount(r + 1);
  }
  return sum;
}

double exhaustive_best_dcg(const PreferenceMatrix& scores, UserId u,
                           std::size_t k) {
  if (scores.items() > 10) {
    throw std::invalid_argument("exhaustive search limited to 10 items");
  }
  if (k > scores.items()) throw std::invalid_argument("k exceeds item count");
  std::vector<bool> used(scores.items(), false);
  double best = 0.0;
  enumerate(scores, u, k, used, 0, 0.0, best);
  return best;
}

std::vector<ProfilePoint> grid_lambda_profile(const PreferenceMatrix& scores,
                                              const RankedList& pool,
                                              const LiftAssignment& lifts,
                                              const Catalog& catalog,
                                              double lambda_max,
                                              std::size_t points,
                                              std::size_t k) {
  if (points < 2) throw std::invalid_argument("profile needs >= 2 points");
  const UserId u = pool.user;
  const double ideal = best_dcg(scores, u, k);
  const auto owner = catalog.assignment();

  std::vector<ProfilePoint> profile;
  profile.reserve(points);
  for (std::size_t g = 0; g < points; ++g) {
    const double lambda =
        lambda_max * static_cast<double>(g) / static_cast<double>(points - 1);
    std::vector<double> adjusted;
    for (ItemId item : pool.items) {
      adjusted.push_back(scores.score(u, item) + lambda * lifts.lift[owner[item]]);
    }
    // Selection of the k best pool slots; earlier slots win ties.
    std::vector<bool> taken(pool.size(), false);
    std::vector<ItemId> chosen;
    for (std::size_t r = 0; r < k; ++r) {
      std::size_t best = pool.size();
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (taken[j]) continue;
        if (best == pool.size() || adjusted[j] > adjusted[best]) best = j;
      }
      taken[best] = true;
      chosen.push_back(pool.items[best]);
    }
    const double value =
        ideal > 0.0 ? naive_dcg(scores, u, chosen, k) / ideal : 1.0;
    profile.push_back({lambda, value});
  }
  return profile;
}

double last_feasible_lambda(const std::vector<ProfilePoint>& profile,
                            double threshold) {
  double last = 0.0;
  for (const auto& point : profile) {
    if (point.ndcg >= threshold) last = point.lambda;
  }
  return last;
}

bool Verdict::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

Verdict replay_check(const RunRecord& record, const PreferenceMatrix& scores,
                     const Catalog& catalog) {
  Verdict verdict;
  auto report = [&](ViolationKind kind, std::size_t index, double delta,
                    std::string detail) {
    verdict.violations.push_back({kind, index, delta, std::move(detail)});
  };

  const std::size_t k = record.k;
  std::vector<double> exposure(catalog.providers(), 0.0);
  double expected_total = 0.0;
  for (std::size_t idx = 0; idx < record.lists.size(); ++idx) {
    const RankedList& list = record.lists[idx];
    if (list.size() != k) {
      report(ViolationKind::kListLength, idx,
             static_cast<double>(list.size()) - static_cast<double>(k),
             "list has " + std::to_string(list.size()) + " items, expected " +
                 std::to_string(k));
    }
    bool usable = true;
    for (std::size_t a = 0; a < list.size(); ++a) {
      if (list.items[a] >= catalog.items()) {
        report(ViolationKind::kUnknownItem, idx, 0.0,
               "item " + std::to_string(list.items[a]) + " not in catalog");
        usable = false;
        continue;
      }
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (list.items[a] == list.items[b]) {
          report(ViolationKind::kDuplicateItem, idx, 0.0,
                 "item " + std::to_string(list.items[a]) + " repeated");
        }
      }
    }
    for (std::size_t r = 0; r < k; ++r) expected_total += discount(r + 1);
    if (!usable || list.user >= scores.users()) continue;

    for (std::size_t r = 0; r < list.size(); ++r) {
      exposure[catalog.assignment()[list.items[r]]] += discount(r + 1);
    }
    const std::size_t depth = std::min(k, list.size());
    const double ideal = best_dcg(scores, list.user, k);
    const double ndcg =
        ideal > 0.0 ? naive_dcg(scores, list.user, list.items, depth) / ideal
                    : 1.0;
    if (idx < record.ndcgs.size() &&
        std::abs(record.ndcgs[idx] - ndcg) > kNdcgTolerance) {
      report(ViolationKind::kNdcgMismatch, idx, record.ndcgs[idx] - ndcg,
             "reported NDCG differs from recomputation");
    }
    if (record.threshold && ndcg < *record.threshold - kNdcgTolerance) {
      report(ViolationKind::kBelowThreshold, idx, ndcg - *record.threshold,
             "NDCG below the guaranteed threshold");
    }
  }
  if (record.ndcgs.size() != record.lists.size()) {
    report(ViolationKind::kNdcgMismatch, 0,
           static_cast<double>(record.ndcgs.size()) -
               static_cast<double>(record.lists.size()),
           "NDCG count differs from list count");
  }

  if (record.exposure.size() != exposure.size()) {
    report(ViolationKind::kProviderExposure, 0, 0.0,
           "exposure vector does not match the provider count");
  } else {
    double reported_total = 0.0;
    for (ProviderId p = 0; p < exposure.size(); ++p) {
      reported_total += record.exposure[p];
      const double delta = record.exposure[p] - exposure[p];
      if (std::abs(delta) > kExposureTolerance * std::max(1.0, exposure[p])) {
        report(ViolationKind::kProviderExposure, p, delta,
               "provider exposure differs from the served lists");
      }
    }
    const double delta = reported_total - expected_total;
    if (std::abs(delta) > kExposureTolerance * std::max(1.0, expected_total)) {
      report(ViolationKind::kConservation, 0, delta,
             "total exposure differs from the list budget");
    }
  }

  Histogram counts{};
  for (double v : record.ndcgs) {
    std::size_t bin = 0;
    while (bin + 1 < kHistogramBins && v >= kHistogramEdges[bin + 1]) ++bin;
    ++counts[bin];
  }
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    if (counts[b] != record.histogram[b]) {
      report(ViolationKind::kHistogram, b,
             static_cast<double>(record.histogram[b]) -
                 static_cast<double>(counts[b]),
             "histogram bin disagrees with the NDCGs");
    }
  }
  return verdict;
}

}  // namespace fairsort::oracle
