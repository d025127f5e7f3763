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

#include "fairsort/reranker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fairsort {

void RunConfig::validate(std::size_t items) const {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1]");
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw std::invalid_argument("lambda_max must be positive");
  }
  if (!(gap > 0.0 && gap < lambda_max)) {
    throw std::invalid_argument("gap must lie in (0, lambda_max)");
  }
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("ratio must lie in (0, 1]");
  }
  if (pool_size(items, ratio) < k) {
    throw std::invalid_argument("candidate pool of " +
                                std::to_string(pool_size(items, ratio)) +
                                " items cannot fill k = " + std::to_string(k));
  }
}

std::size_t pool_size(std::size_t items, double ratio) {
  // The epsilon keeps products like 10 * 0.2 from rounding up past 2.
  const double exact = static_cast<double>(items) * ratio;
  const auto size = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(size, items);
}

RankedList candidate_pool(const RankedList& original, double ratio,
                          std::size_t k) {
  const std::size_t size = pool_size(original.size(), ratio);
  if (size < k) {
    throw std::invalid_argument("candidate pool smaller than k");
  }
  return {original.user,
          {original.items.begin(),
           original.items.begin() + static_cast<std::ptrdiff_t>(size)}};
}

RankedList rerank_with_lambda(const PreferenceMatrix& scores,
                              const RankedList& pool,
                              const LiftAssignment& lifts,
                              const Catalog& catalog, double lambda,
                              std::size_t k) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (pool.size() < k) throw std::invalid_argument("pool smaller than k");
  const auto row = scores.row(pool.user);
  std::vector<double> adjusted(pool.size());
  for (std::size_t j = 0; j < pool.size(); ++j) {
    const ItemId item = pool.items[j];
    adjusted[j] = row[item] + lambda * get_fair(item, lifts, catalog);
  }
  std::vector<std::size_t> slot(pool.size());
  std::iota(slot.begin(), slot.end(), std::size_t{0});
  std::partial_sort(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(k),
                    slot.end(), [&](std::size_t a, std::size_t b) {
                      return adjusted[a] > adjusted[b] ||
                             (adjusted[a] == adjusted[b] && a < b);
                    });
  RankedList out{pool.user, std::vector<ItemId>(k)};
  for (std::size_t r = 0; r < k; ++r) out.items[r] = pool.items[slot[r]];
  return out;
}

namespace {

bool uniform_lift(const RankedList& pool, const LiftAssignment& lifts,
                  const Catalog& catalog) {
  const double first = get_fair(pool.items.front(), lifts, catalog);
  return std::all_of(pool.items.begin(), pool.items.end(), [&](ItemId i) {
    return get_fair(i, lifts, catalog) == first;
  });
}

}  // namespace

LambdaSearch binary_search_lambda(const PreferenceMatrix& scores,
                                  const RankedList& pool,
                                  const LiftAssignment& lifts,
                                  const Catalog& catalog,
                                  const RunConfig& config) {
  const UserId u = pool.user;
  const std::size_t k = config.k;
  const double ideal = ideal_dcg(scores, u, k);

  LambdaSearch result;
  result.list = RankedList{
      u, {pool.items.begin(), pool.items.begin() + static_cast<std::ptrdiff_t>(k)}};
  result.ndcg = ndcg_from(dcg(scores, u, result.list.items, k), ideal);

  // Identical shifts never reorder the pool.
  if (pool.size() == 0 || uniform_lift(pool, lifts, catalog)) return result;

  auto probe = [&](double lambda) {
    ++result.evaluations;
    RankedList list = rerank_with_lambda(scores, pool, lifts, catalog, lambda, k);
    const double value = ndcg_from(dcg(scores, u, list.items, k), ideal);
    return std::pair{std::move(list), value};
  };

  auto [max_list, max_ndcg] = probe(config.lambda_max);
  if (max_ndcg >= config.threshold) {
    result.lambda = config.lambda_max;
    result.list = std::move(max_list);
    result.ndcg = max_ndcg;
    return result;
  }

  // Invariant: NDCG(lo) >= threshold > NDCG(hi).
  double lo = 0.0;
  double hi = config.lambda_max;
  while (hi - lo > config.gap) {
    const double mid = lo + (hi - lo) / 2.0;
    ++result.rounds;
    auto [list, value] = probe(mid);
    if (value >= config.threshold) {
      lo = mid;
      result.list = std::move(list);
      result.ndcg = value;
    } else {
      hi = mid;
    }
  }
  result.lambda = lo;
  return result;
}

OfflineResult fairsort_offline(const PreferenceMatrix& scores,
                               const Catalog& catalog, const RunConfig& config,
                               std::span<const UserId> order) {
  config.validate(scores.items());
  const std::size_t m = scores.users();
  const std::size_t k = config.k;

  std::vector<UserId> service(order.begin(), order.end());
  if (service.empty()) {
    service.resize(m);
    std::iota(service.begin(), service.end(), UserId{0});
  }
  {
    std::vector<bool> seen(m, false);
    for (UserId u : service) {
      if (u >= m || seen[u]) {
        throw std::invalid_argument("service order must permute the users");
      }
      seen[u] = true;
    }
    if (service.size() != m) {
      throw std::invalid_argument("service order must permute the users");
    }
  }

  OfflineResult out{std::vector<RankedList>(m), std::vector<double>(m, 0.0),
                    service, ExposureLedger(catalog, config.notion),
                    QualityReport{std::vector<double>(m, 0.0), 0.0}};
  ExposureLedger& ledger = out.ledger;
  ledger.set_budget(total_exposure(m, k));

  std::vector<RankedList> provisional(m);
  for (UserId u = 0; u < m; ++u) {
    RankedList original = original_ranking(scores, u);
    original.items.resize(k);
    provisional[u] = std::move(original);
    ledger.apply(provisional[u], k);
  }

  for (UserId u : service) {
    const LiftAssignment lifts = compute_lifts(ledger);
    const RankedList pool =
        candidate_pool(original_ranking(scores, u), config.ratio, k);
    LambdaSearch found = binary_search_lambda(scores, pool, lifts, catalog, config);
    if (config.provisional == ProvisionalMode::kReplace) {
      ledger.retract(provisional[u], k);
    }
    ledger.apply(found.list, k);
    out.lambdas[u] = found.lambda;
    out.report.per_user_ndcg[u] = found.ndcg;
    out.lists[u] = std::move(found.list);
  }
  out.report.total_quality = std::accumulate(
      out.report.per_user_ndcg.begin(), out.report.per_user_ndcg.end(), 0.0);
  return out;
}

OnlineStep fairsort_online_step(OnlineState& state,
                                const PreferenceMatrix& scores,
                                const Catalog& catalog, UserId u,
                                const RunConfig& config) {
  config.validate(scores.items());
  if (u >= scores.users()) throw std::out_of_range("user id out of range");
  const std::size_t k = config.k;
  ExposureLedger& ledger = state.ledger;
  ledger.set_budget(total_exposure(state.served + 1, k));

  const RankedList original = original_ranking(scores, u);
  const RankedList provisional{
      u, {original.items.begin(), original.items.begin() + static_cast<std::ptrdiff_t>(k)}};
  ledger.apply(provisional, k);

  const LiftAssignment lifts = compute_lifts(ledger);
  const RankedList pool = candidate_pool(original, config.ratio, k);
  LambdaSearch found = binary_search_lambda(scores, pool, lifts, catalog, config);

  if (config.provisional == ProvisionalMode::kReplace) {
    ledger.retract(provisional, k);
  }
  ledger.apply(found.list, k);
  ++state.served;
  state.ndcg_log.emplace_back(u, found.ndcg);
  return {std::move(found.list), found.lambda, found.ndcg};
}

}  // namespace fairsort
