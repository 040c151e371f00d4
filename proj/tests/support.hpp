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

// Small instance builders shared by the unit tests.

#pragma once

#include <vector>

#include "tousched/instance.hpp"

namespace tousched::testing {

inline Slab slab(int id, double width, double length_km, double processing_h, double energy_mwh,
                 double gauge = 2.0, int hardness = 1) {
    Slab s;
    s.id = id;
    s.width_mm = width;
    s.gauge_mm = gauge;
    s.hardness_grade = hardness;
    s.length_km = length_km;
    s.processing_h = processing_h;
    s.energy_mwh = energy_mwh;
    return s;
}

/// n slabs of distinct widths, 1 km and 1 h each, 20 MWh; m units with
/// bounds [min_km, max_km] and no binding width-run limit.
inline ProblemInstance loose_instance(int n, int m, double min_km = 1.0, double max_km = 100.0) {
    ProblemInstance in;
    in.name = "loose";
    for (int i = 0; i < n; ++i) in.slabs.push_back(slab(i + 1, 1000.0 + 10.0 * i, 1.0, 1.0, 20.0));
    in.unit_count = m;
    in.min_unit_length_km = min_km;
    in.max_unit_length_km = max_km;
    in.max_same_width_run_km = 100.0;
    in.penalties = PenaltyModel::standard();
    return in;
}

/// Eight rolling units with the processing times and energies of a
/// reference one-day schedule (one slab per unit).
inline ProblemInstance eight_unit_day() {
    const double p[] = {2.67, 2.67, 2.84, 3.01, 3.11, 2.89, 3.15, 2.99};
    const double w[] = {59.71, 57.89, 60.96, 60.57, 65.64, 58.37, 63.88, 64.72};
    const double len[] = {9.12, 8.60, 9.97, 9.48, 9.97, 8.71, 9.98, 9.99};
    ProblemInstance in;
    in.name = "eight-unit day";
    for (int i = 0; i < 8; ++i) in.slabs.push_back(slab(i + 1, 1000.0 + 50.0 * i, len[i], p[i], w[i]));
    in.unit_count = 8;
    in.min_unit_length_km = 5.0;
    in.max_unit_length_km = 10.0;
    in.max_same_width_run_km = 10.0;
    in.penalties = PenaltyModel::standard();
    return in;
}

}  // namespace tousched::testing
