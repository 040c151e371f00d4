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

#include "tousched/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tousched/error.hpp"

namespace tousched {

namespace {

constexpr double kLengthEpsilon = 1e-9;

std::string describe(const char* what, double value, const char* cmp, double bound) {
    std::ostringstream out;
    out << what << " " << value << " " << cmp << " " << bound;
    return out.str();
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.power_cost <= b.power_cost && a.penalty <= b.penalty &&
           (a.power_cost < b.power_cost || a.penalty < b.penalty);
}

double eval_power_cost(const TimedSchedule& timed, const ProblemInstance& in, CostMode mode) {
    double total = 0.0;
    for (std::size_t s = 0; s < in.slabs.size(); ++s) {
        if (std::isnan(timed.slab_start_h[s])) continue;
        total += in.tariff.interval_cost(timed.slab_start_h[s], timed.slab_end_h[s], in.slabs[s].energy_mwh, mode);
    }
    return total;
}

double eval_penalty(const BatchSchedule& batch, const ProblemInstance& in) {
    double total = 0.0;
    for (const auto& unit : batch.units) {
        for (std::size_t i = 1; i < unit.size(); ++i) {
            total += penalty_between(in.penalties, in.slabs[unit[i - 1]], in.slabs[unit[i]]);
        }
    }
    return total;
}

std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::unit_sequence: return "unit-sequence";
        case ConstraintKind::slab_assignment: return "slab-assignment";
        case ConstraintKind::same_width_run: return "same-width-run";
        case ConstraintKind::unit_length: return "unit-length";
        case ConstraintKind::idle_budget: return "idle-budget";
    }
    return "unknown";
}

std::vector<Violation> check_constraints(const BatchSchedule& batch, std::span<const double> idle,
                                         const ProblemInstance& in) {
    std::vector<Violation> out;
    const int n = in.slab_count();
    std::vector<int> count(n, 0);
    double scheduled_processing = 0.0;

    if (static_cast<int>(batch.units.size()) != in.unit_count) {
        out.push_back({ConstraintKind::unit_sequence, -1, -1,
                       std::abs(static_cast<double>(batch.units.size()) - in.unit_count),
                       describe("unit count", static_cast<double>(batch.units.size()), "!=", in.unit_count)});
    }

    for (std::size_t k = 0; k < batch.units.size(); ++k) {
        const int unit = static_cast<int>(k);
        double length = 0.0;
        double run = 0.0;
        for (std::size_t pos = 0; pos < batch.units[k].size(); ++pos) {
            const int s = batch.units[k][pos];
            if (s < 0 || s >= n) {
                out.push_back({ConstraintKind::unit_sequence, unit, s, 0.0, "slab index out of range"});
                continue;
            }
            if (++count[s] == 2) {
                out.push_back({ConstraintKind::unit_sequence, unit, s, 1.0, "slab rolled more than once"});
            }
            const Slab& slab = in.slabs[s];
            length += slab.length_km;
            scheduled_processing += slab.processing_h;
            const bool continues = pos > 0 && batch.units[k][pos - 1] >= 0 && batch.units[k][pos - 1] < n &&
                                   in.slabs[batch.units[k][pos - 1]].width_mm == slab.width_mm;
            run = (continues ? run : 0.0) + slab.length_km;
            if (run > in.max_same_width_run_km + kLengthEpsilon) {
                out.push_back({ConstraintKind::same_width_run, unit, s, run - in.max_same_width_run_km,
                               describe("same-width run", run, ">", in.max_same_width_run_km)});
            }
        }
        if (length > in.max_unit_length_km + kLengthEpsilon) {
            out.push_back({ConstraintKind::unit_length, unit, -1, length - in.max_unit_length_km,
                           describe("unit length", length, ">", in.max_unit_length_km)});
        } else if (length < in.min_unit_length_km - kLengthEpsilon) {
            out.push_back({ConstraintKind::unit_length, unit, -1, in.min_unit_length_km - length,
                           describe("unit length", length, "<", in.min_unit_length_km)});
        }
    }

    for (int s = 0; s < n; ++s) {
        if (count[s] == 0) {
            out.push_back({ConstraintKind::slab_assignment, -1, s, 1.0,
                           "slab id " + std::to_string(in.slabs[s].id) + " is not scheduled"});
        } else if (count[s] > 1) {
            out.push_back({ConstraintKind::slab_assignment, -1, s, count[s] - 1.0,
                           "slab id " + std::to_string(in.slabs[s].id) + " is scheduled " +
                               std::to_string(count[s]) + " times"});
        }
    }

    if (static_cast<int>(idle.size()) != in.unit_count) {
        out.push_back({ConstraintKind::idle_budget, -1, -1, 0.0,
                       describe("idle entries", static_cast<double>(idle.size()), "!=", in.unit_count)});
    }
    double idle_total = 0.0;
    for (std::size_t k = 0; k < idle.size(); ++k) {
        if (idle[k] < 0.0) {
            out.push_back({ConstraintKind::idle_budget, static_cast<int>(k), -1, -idle[k],
                           describe("idle", idle[k], "<", 0.0)});
        }
        idle_total += idle[k];
    }
    const double slack = in.horizon_h - scheduled_processing;
    if (idle_total > slack + kTimeEpsilon) {
        out.push_back({ConstraintKind::idle_budget, -1, -1, idle_total - slack,
                       describe("total idle", idle_total, ">", slack)});
    }
    return out;
}

Evaluation evaluate(const Chromosome& chromosome, const ProblemInstance& in, CostMode mode) {
    Evaluation ev;
    ev.batch = decode(chromosome.perm, in);
    const bool negative_idle =
        std::ranges::any_of(chromosome.idle, [](double v) { return !(v >= 0.0); });
    if (!ev.batch.feasible || negative_idle) {
        ev.objectives = ObjectiveVector::infeasible();
        return ev;
    }
    try {
        const TimedSchedule timed = timing(ev.batch, chromosome.idle, in);
        ev.objectives = {eval_power_cost(timed, in, mode), eval_penalty(ev.batch, in), true};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::horizon_overflow && e.code() != ErrorCode::invalid_idle) throw;
        ev.objectives = ObjectiveVector::infeasible();
    }
    return ev;
}

}  // namespace tousched
