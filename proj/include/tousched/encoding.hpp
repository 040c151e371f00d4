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

#include <random>
#include <span>
#include <vector>

#include "tousched/instance.hpp"

namespace tousched {

/// Hybrid chromosome: `perm` is a permutation of the codes 1..m*n, each code
/// standing for one (slab, unit) pair; `idle` holds the idle hours inserted
/// before each of the m rolling units.
struct Chromosome {
    std::vector<int> perm;
    std::vector<double> idle;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// (slab index, unit index), both zero-based.
struct CodeTarget {
    int slab = 0;
    int unit = 0;
};

/// code c in 1..m*n maps to slab (c-1) mod n and unit floor((c-1)/n).
CodeTarget code_target(int code, int slab_count);
int code_for(CodeTarget target, int slab_count);

bool is_permutation_of_codes(std::span<const int> perm, int code_count);

enum class RejectReason { already_placed, unit_length, same_width_run };

/// One code the decoder looked at but could not honour.
struct Rejection {
    int code = 0;
    int slab = 0;
    int unit = 0;
    RejectReason reason = RejectReason::already_placed;
    double attempted_km = 0.0;  ///< unit length or width-run length the placement would have produced
};

/// Slabs grouped into rolling units. Units hold zero-based slab indices in
/// rolling order.
struct BatchSchedule {
    std::vector<std::vector<int>> units;
    std::vector<double> unit_length_km;
    std::vector<double> max_width_run_km;
    std::vector<int> unplaced;       ///< slabs never placed (zero-based)
    std::vector<int> short_units;    ///< units below the minimum length
    std::vector<Rejection> rejections;  ///< filled only when tracing
    bool feasible = false;

    double unit_processing_h(const ProblemInstance& in, std::size_t unit) const;
    double scheduled_processing_h(const ProblemInstance& in) const;
};

/// Code-mapping decoder. Scans `perm` left to right and appends each code's
/// slab to its unit when the slab is still free, the unit stays within the
/// maximum length and the same-width run stays within its bound. Pure.
BatchSchedule decode(std::span<const int> perm, const ProblemInstance& instance, bool trace = false);

struct UnitTiming {
    double idle_before_h = 0.0;
    double start_h = 0.0;
    double end_h = 0.0;
};

struct TimedSchedule {
    std::vector<UnitTiming> units;
    std::vector<double> slab_start_h;  ///< per slab index; NaN when unscheduled
    std::vector<double> slab_end_h;
};

/// Processing start/end of every unit and slab: unit k starts after all
/// earlier units' processing plus idle v_1..v_k. Throws
/// Error(horizon_overflow) when the last unit ends after the horizon.
TimedSchedule timing(const BatchSchedule& batch, std::span<const double> idle, const ProblemInstance& instance);

/// Reallocates idle time between neighbouring units so that units avoid
/// starting or finishing inside expensive periods. Periods are visited from
/// most to least expensive; for each unit i:
///   - if it starts in the period, finishes somewhere cheaper and v[i+1] > 0,
///     v[i+1] is moved in front of it (the unit is pushed later);
///   - if it finishes in the period, started somewhere cheaper and v[i] > 0,
///     v[i] is moved behind it (the unit is pulled earlier).
/// The total is preserved. Throws Error(invalid_idle) if `initial` has the
/// wrong size, a negative entry, or exceeds the schedule's slack.
std::vector<double> allocate_idle(const BatchSchedule& batch, const ProblemInstance& instance,
                                  std::span<const double> initial);

/// Uniform draw from {v >= 0 : sum(v) <= slack} over `units` entries.
std::vector<double> draw_idle(int units, double slack_h, std::mt19937_64& rng);

/// Random permutation plus an idle draw sized to the decoded batch's slack
/// (zero when the decode is infeasible).
Chromosome random_chromosome(const ProblemInstance& instance, std::mt19937_64& rng);

}  // namespace tousched
