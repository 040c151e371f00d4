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

#include "tousched/topsis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tousched/error.hpp"

namespace tousched {

TopsisRanking topsis_rank(std::span<const ObjectiveVector> front, TopsisWeights weights) {
    if (!(weights.power_cost > 0.0) || !(weights.penalty > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "topsis: weights must be positive");
    }
    const std::size_t rows = front.size();
    if (rows < 2) throw Error(ErrorCode::degenerate_front, "topsis: need at least two solutions to rank");

    const std::array<const char*, 2> names{"power cost", "penalty"};
    const std::array<double, 2> w{weights.power_cost, weights.penalty};
    auto column = [&](std::size_t i, std::size_t j) { return j == 0 ? front[i].power_cost : front[i].penalty; };

    std::array<double, 2> lo{};
    std::array<double, 2> norm{};
    for (std::size_t j = 0; j < 2; ++j) {
        lo[j] = column(0, j);
        for (std::size_t i = 1; i < rows; ++i) lo[j] = std::min(lo[j], column(i, j));
        double sq = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const double shifted = column(i, j) - lo[j];
            sq += shifted * shifted;
        }
        norm[j] = std::sqrt(sq);
    }
    if (norm[0] == 0.0 && norm[1] == 0.0) throw Error(ErrorCode::degenerate_front, "topsis: nothing to rank");
    for (std::size_t j = 0; j < 2; ++j) {
        if (norm[j] == 0.0) {
            throw Error(ErrorCode::degenerate_front,
                        std::string("topsis: degenerate front, column '") + names[j] + "' is constant");
        }
    }

    std::vector<std::array<double, 2>> weighted(rows);
    std::array<double, 2> ideal{};
    std::array<double, 2> nadir{};
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < rows; ++i) weighted[i][j] = w[j] * (column(i, j) - lo[j]) / norm[j];
        ideal[j] = weighted[0][j];
        nadir[j] = weighted[0][j];
        for (std::size_t i = 1; i < rows; ++i) {
            ideal[j] = std::min(ideal[j], weighted[i][j]);
            nadir[j] = std::max(nadir[j], weighted[i][j]);
        }
    }

    TopsisRanking ranking;
    ranking.weights = weights;
    ranking.entries.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double d_ideal = std::hypot(weighted[i][0] - ideal[0], weighted[i][1] - ideal[1]);
        const double d_nadir = std::hypot(weighted[i][0] - nadir[0], weighted[i][1] - nadir[1]);
        const double closeness = d_nadir / (d_nadir + d_ideal);
        ranking.entries.push_back({i, closeness, front[i].power_cost, front[i].penalty});
    }
    std::ranges::stable_sort(ranking.entries,
                             [](const TopsisEntry& a, const TopsisEntry& b) { return a.closeness > b.closeness; });
    return ranking;
}

}  // namespace tousched
