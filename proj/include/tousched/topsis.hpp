// Copyright 2026 The tou-sched Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tousched/objectives.hpp"

namespace tousched {

struct TopsisWeights {
    double power_cost = 0.4;
    double penalty = 0.6;
};

struct TopsisEntry {
    std::size_t index = 0;  ///< position in the input front
    double closeness = 0.0;
    double power_cost = 0.0;
    double penalty = 0.0;
};

struct TopsisRanking {
    std::vector<TopsisEntry> entries;  ///< closeness descending, ties by index
    TopsisWeights weights;

    const TopsisEntry& recommended() const { return entries.front(); }
};

/// Ranks a front of cost-type objectives by relative closeness to the ideal
/// point:
///   1. shift each column by its minimum,
///   2. divide each column by its Euclidean norm,
///   3. multiply by the column weight,
///   4. ideal = column minima, nadir = column maxima,
///   5. closeness = d_nadir / (d_nadir + d_ideal).
/// Throws Error(degenerate_front) for fewer than two points, identical
/// points, or a constant column.
TopsisRanking topsis_rank(std::span<const ObjectiveVector> front, TopsisWeights weights = {});

}  // namespace tousched
