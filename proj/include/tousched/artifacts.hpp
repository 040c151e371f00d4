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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tousched/moea.hpp"
#include "tousched/topsis.hpp"

namespace tousched {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

// pareto.csv: f1_cny,f2_penalty,perm,idle  (perm and idle space-separated)
struct ParetoRow {
    ObjectiveVector objectives;
    std::optional<Chromosome> chromosome;
};

std::string pareto_csv(std::span<const Individual> front);
/// Accepts any CSV with f1_cny and f2_penalty columns; perm/idle are
/// optional. Throws Error(parse) on malformed input.
std::vector<ParetoRow> parse_pareto_csv(std::string_view text);

// ranking.csv: rank,closeness,f1_cny,f2_penalty,solution_index (1-based pareto.csv row)
std::string ranking_csv(const TopsisRanking& ranking);

struct UnitRow {
    int unit = 0;  ///< 1-based
    std::size_t slab_quantity = 0;
    double rolling_length_km = 0.0;
    double processing_time_h = 0.0;
    double power_demand_mwh = 0.0;
    double average_load_mw = 0.0;
    double start_h = 0.0;
    double end_h = 0.0;
    double idle_h = 0.0;
    std::vector<int> slab_ids;
};

std::vector<UnitRow> unit_rows(const BatchSchedule& batch, const TimedSchedule& timed, const ProblemInstance& instance);
// schedule_report.csv: unit,slab_quantity,rolling_length_km,processing_time_h,
//   power_demand_mwh,average_load_mw,start_h,end_h,idle_h,slab_ids
std::string schedule_report_csv(std::span<const UnitRow> rows);

struct PeriodLoad {
    std::size_t period = 0;
    PeriodLabel label = PeriodLabel::flat_peak;
    double start_h = 0.0;
    double end_h = 0.0;
    double price_cny_per_kwh = 0.0;
    double energy_mwh = 0.0;
    double average_load_mw = 0.0;
    double cost_cny = 0.0;
};

/// Energy per tariff period, each slab spread uniformly over its interval.
std::vector<PeriodLoad> load_histogram(const TimedSchedule& timed, const ProblemInstance& instance);
/// Average power (MW) over all on-peak periods together.
double on_peak_average_load(std::span<const PeriodLoad> histogram);
// load_histogram.csv: period,label,start_h,end_h,price_cny_per_kwh,energy_mwh,average_load_mw,cost_cny
std::string load_histogram_csv(std::span<const PeriodLoad> histogram);

/// Rolling units as horizontal bars over the tariff's price step line.
std::string gantt_svg(std::span<const UnitRow> rows, const ProblemInstance& instance);

std::string serialize_solution(const Chromosome& chromosome, const ObjectiveVector& objectives,
                               const ProblemInstance& instance);
/// Reads {"perm": [...], "idle_h": [...]}; throws Error(parse).
Chromosome parse_solution(std::string_view text);

/// "HH:MM" for a time in hours (24:00 stays 24:00).
std::string clock_time(double hours);

}  // namespace tousched
