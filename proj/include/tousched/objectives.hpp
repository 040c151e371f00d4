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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tousched/encoding.hpp"

namespace tousched {

/// Objective value carried by schedules that fail to decode.
inline constexpr double kInfeasibleObjective = 1e12;

struct ObjectiveVector {
    double power_cost = 0.0;  ///< CNY
    double penalty = 0.0;     ///< jump penalty score
    bool feasible = true;

    static ObjectiveVector infeasible() { return {kInfeasibleObjective, kInfeasibleObjective, false}; }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// True when `a` is no worse than `b` in both objectives and strictly better
/// in at least one (both minimised).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

double eval_power_cost(const TimedSchedule& timed, const ProblemInstance& instance,
                       CostMode mode = CostMode::proportional);
double eval_penalty(const BatchSchedule& batch, const ProblemInstance& instance);

enum class ConstraintKind {
    unit_sequence,    ///< a slab appears twice or an index is out of range
    slab_assignment,  ///< a slab is not scheduled exactly once
    same_width_run,   ///< a run of equal-width slabs is longer than allowed
    unit_length,      ///< unit length outside [min, max]
    idle_budget,      ///< idle entries negative, mis-sized or over the slack
};

std::string_view to_string(ConstraintKind kind);

struct Violation {
    ConstraintKind kind = ConstraintKind::unit_length;
    int unit = -1;    ///< zero-based, -1 when not unit-specific
    int slab = -1;    ///< zero-based slab index, -1 when not slab-specific
    double margin = 0.0;  ///< amount by which the bound is exceeded
    std::string message;
};

/// Independent validator: walks the batch and idle vector and reports every
/// violated model constraint. Never repairs anything.
std::vector<Violation> check_constraints(const BatchSchedule& batch, std::span<const double> idle,
                                         const ProblemInstance& instance);

/// Decoded and evaluated chromosome.
struct Evaluation {
    BatchSchedule batch;
    ObjectiveVector objectives;
};

/// decode + timing + both objectives. Infeasible decodes, and idle vectors
/// that push production past the horizon, get the sentinel objectives.
Evaluation evaluate(const Chromosome& chromosome, const ProblemInstance& instance,
                    CostMode mode = CostMode::proportional);

}  // namespace tousched
