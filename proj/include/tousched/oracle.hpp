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

#include <string>
#include <vector>

#include "tousched/objectives.hpp"

namespace tousched {

inline constexpr int kOracleMaxSlabs = 8;
inline constexpr int kOracleMaxUnits = 2;

struct ExactPoint {
    ObjectiveVector objectives;
    BatchSchedule batch;
    std::vector<double> idle;
};

struct ExactFront {
    std::vector<ExactPoint> points;  ///< sorted by power cost, then penalty
    std::string instance_digest;
};

/// Exhaustive Pareto front for tiny instances: every ordered split of the
/// slabs into the m units that satisfies the assignment, width-run and length
/// constraints, each combined with its cheapest idle vector on a grid of
/// `idle_grid_h` (proportional cost). Throws Error(size_guard) beyond
/// kOracleMaxSlabs slabs or kOracleMaxUnits units.
ExactFront exact_front(const ProblemInstance& instance, double idle_grid_h = 0.25);

/// Snaps an idle vector onto the grid by flooring the cumulative idle, so
/// no unit moves later and the total never grows.
std::vector<double> snap_idle_to_grid(const std::vector<double>& idle, double grid_h);

}  // namespace tousched
