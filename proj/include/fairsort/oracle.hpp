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

// Brute-force reference implementations. Nothing here calls into the
// exposure, quality, velocity or reranker code it is used to check.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairsort/catalog.hpp"
#include "fairsort/metrics.hpp"
#include "fairsort/velocity.hpp"

namespace fairsort::oracle {

// Selection sort of the user's items by descending score, ties by id.
std::vector<ItemId> naive_ranking(const PreferenceMatrix& scores, UserId u);

double naive_dcg(const PreferenceMatrix& scores, UserId u,
                 const std::vector<ItemId>& items, std::size_t k);

// Max DCG@k over every ordered k-subset of the user's items. n <= 10.
double exhaustive_best_dcg(const PreferenceMatrix& scores, UserId u,
                           std::size_t k);

struct ProfilePoint {
  double lambda;
  double ndcg;
};

// NDCG of the naive re-sort at `points` evenly spaced lambdas on
// [0, lambda_max]. Lifts are read straight from the provider table.
std::vector<ProfilePoint> grid_lambda_profile(const PreferenceMatrix& scores,
                                              const RankedList& pool,
                                              const LiftAssignment& lifts,
                                              const Catalog& catalog,
                                              double lambda_max,
                                              std::size_t points,
                                              std::size_t k);

// Largest profile lambda whose NDCG is >= threshold (0 if none).
double last_feasible_lambda(const std::vector<ProfilePoint>& profile,
                            double threshold);

// A finished run as written out by an experiment.
struct RunRecord {
  std::size_t k = 0;
  std::vector<RankedList> lists;  // service order
  std::vector<double> ndcgs;      // reported, aligned with lists
  std::vector<double> exposure;   // reported final provider exposure
  Histogram histogram{};          // reported
  // Set when every list must satisfy the minimum utility guarantee.
  std::optional<double> threshold;
};

enum class ViolationKind {
  kListLength,
  kDuplicateItem,
  kUnknownItem,
  kNdcgMismatch,
  kBelowThreshold,
  kConservation,       // total exposure differs from lists * budget per list
  kProviderExposure,   // a provider's exposure differs from the lists
  kHistogram,
};

struct Violation {
  ViolationKind kind;
  std::size_t index;  // list index or provider id; 0 when global
  double delta;       // reported - recomputed, where meaningful
  std::string detail;
};

struct Verdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

Verdict replay_check(const RunRecord& record, const PreferenceMatrix& scores,
                     const Catalog& catalog);

}  // namespace fairsort::oracle
