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
#include <utility>
#include <vector>

#include "fairsort/catalog.hpp"
#include "fairsort/exposure.hpp"
#include "fairsort/quality.hpp"
#include "fairsort/velocity.hpp"

namespace fairsort {

// How a user's provisional Top-K exposure is treated once the user has been
// re-ranked.
enum class ProvisionalMode {
  kReplace,     // swapped out for the re-ranked contribution
  kAccumulate,  // kept alongside it (sensitivity variant; breaks the budget)
};

struct RunConfig {
  std::size_t k = 10;
  FairnessNotion notion = FairnessNotion::kUniform;
  double threshold = 0.9;   // minimum NDCG of every emitted list, in (0, 1]
  double lambda_max = 16.0;
  double gap = 1.0 / 128.0; // bisection stops once the bracket is this narrow
  double ratio = 1.0;       // fraction of the original ranking re-ranked
  ProvisionalMode provisional = ProvisionalMode::kReplace;

  // Throws std::invalid_argument on any violated constraint for a catalog
  // of `items` items.
  void validate(std::size_t items) const;
};

// Number of leading original-ranking items eligible for re-ranking.
std::size_t pool_size(std::size_t items, double ratio);

// First pool_size() items of `original`, order preserved. Throws if the pool
// cannot fill a list of length k.
RankedList candidate_pool(const RankedList& original, double ratio,
                          std::size_t k);

// Pool re-sorted by score + lambda * lift, truncated to k. Ties keep pool
// order, so items of one provider never swap.
RankedList rerank_with_lambda(const PreferenceMatrix& scores,
                              const RankedList& pool,
                              const LiftAssignment& lifts,
                              const Catalog& catalog, double lambda,
                              std::size_t k);

struct LambdaSearch {
  double lambda = 0.0;
  RankedList list;
  double ndcg = 1.0;
  std::size_t evaluations = 0;  // NDCG evaluations, including the lambda_max probe
  std::size_t rounds = 0;       // bisection halvings
};

// Largest lambda in [0, lambda_max], to within `gap`, whose re-ranked list
// keeps NDCG >= threshold. NDCG is measured against the full original
// ranking's ideal DCG.
LambdaSearch binary_search_lambda(const PreferenceMatrix& scores,
                                  const RankedList& pool,
                                  const LiftAssignment& lifts,
                                  const Catalog& catalog,
                                  const RunConfig& config);

struct OfflineResult {
  std::vector<RankedList> lists;  // indexed by user id
  std::vector<double> lambdas;    // indexed by user id
  std::vector<UserId> order;      // service order
  ExposureLedger ledger;
  QualityReport report;           // per_user_ndcg indexed by user id
};

// One-shot re-ranking of every user. `order` defaults to ascending user id.
OfflineResult fairsort_offline(const PreferenceMatrix& scores,
                               const Catalog& catalog, const RunConfig& config,
                               std::span<const UserId> order = {});

struct OnlineState {
  explicit OnlineState(const Catalog& catalog, FairnessNotion notion)
      : ledger(catalog, notion) {}

  ExposureLedger ledger;
  std::size_t served = 0;
  std::vector<std::pair<UserId, double>> ndcg_log;
};

struct OnlineStep {
  RankedList list;
  double lambda = 0.0;
  double ndcg = 1.0;
};

// Serves one request against the persistent ledger in `state`.
OnlineStep fairsort_online_step(OnlineState& state,
                                const PreferenceMatrix& scores,
                                const Catalog& catalog, UserId u,
                                const RunConfig& config);

}  // namespace fairsort
