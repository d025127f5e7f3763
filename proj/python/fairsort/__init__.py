# Copyright 2026 The FairSort Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exposure-fair re-ranking with a per-list NDCG floor."""

from ._fairsort import (
    Dataset,
    OnlineSession,
    ParseError,
    dcf,
    dpf,
    fairsort_offline,
    ndcg,
    ndcg_histogram,
    original_ranking,
    position_weight,
    top_k,
    total_exposure,
    uir,
)
from ._fairsort import run_experiment as _run_experiment


def run_experiment(config=None, **overrides):
    """Runs an experiment; values may be any type, they are passed as text."""
    merged = dict(config or {})
    merged.update(overrides)
    return _run_experiment({k: _text(v) for k, v in merged.items()})


def _text(value):
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


__all__ = [
    "Dataset",
    "OnlineSession",
    "ParseError",
    "dcf",
    "dpf",
    "fairsort_offline",
    "ndcg",
    "ndcg_histogram",
    "original_ranking",
    "position_weight",
    "run_experiment",
    "top_k",
    "total_exposure",
    "uir",
]
