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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tousched/tariff.hpp"

namespace tousched {

struct Slab {
    int id = 0;
    double width_mm = 0.0;
    double gauge_mm = 0.0;
    int hardness_grade = 0;
    double length_km = 0.0;
    double processing_h = 0.0;
    double energy_mwh = 0.0;

    double average_power_mw() const { return energy_mwh / processing_h; }

    friend bool operator==(const Slab&, const Slab&) = default;
};

/// Step function on an absolute jump: the penalty of the first step whose
/// bound is >= the jump, or `overflow_penalty` past the last bound.
struct PenaltyTable {
    struct Step {
        double jump_upper_bound = 0.0;
        double penalty = 0.0;
        friend bool operator==(const Step&, const Step&) = default;
    };

    std::vector<Step> steps;
    double overflow_penalty = 0.0;

    double lookup(double jump) const;

    friend bool operator==(const PenaltyTable&, const PenaltyTable&) = default;
};

struct PenaltyModel {
    PenaltyTable width;
    PenaltyTable gauge;
    PenaltyTable hardness;

    /// Step tables used by the instance generator.
    static PenaltyModel standard();

    friend bool operator==(const PenaltyModel&, const PenaltyModel&) = default;
};

/// Jump penalty for rolling `b` immediately after `a` (or vice versa; the
/// tables act on absolute differences).
double penalty_between(const PenaltyModel& model, const Slab& a, const Slab& b);

struct ProblemInstance {
    std::string name;
    std::vector<Slab> slabs;
    int unit_count = 1;
    double min_unit_length_km = 0.0;
    double max_unit_length_km = 0.0;
    double max_same_width_run_km = 0.0;
    double horizon_h = 24.0;
    TouTariff tariff = TouTariff::reference();
    PenaltyModel penalties;

    int slab_count() const { return static_cast<int>(slabs.size()); }
    double total_processing_h() const;
    double total_energy_mwh() const;
    double max_slab_power_mw() const;
    /// TS minus the processing time of every slab.
    double slack_h() const { return horizon_h - total_processing_h(); }

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Checks every invariant; throws Error(parse) naming the offending field,
/// or Error(infeasible_instance) when total processing exceeds the horizon.
void validate(const ProblemInstance& instance);

/// Reads the JSON instance document described in the README.
ProblemInstance parse_instance(std::string_view document);
ProblemInstance load_instance(const std::string& path);

std::string serialize_instance(const ProblemInstance& instance);

/// FNV-1a 64 over the serialized form, as 16 hex digits.
std::string instance_digest(const ProblemInstance& instance);

}  // namespace tousched
