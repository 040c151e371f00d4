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

#include "tousched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tousched/error.hpp"

namespace tousched {

namespace {

struct Candidate {
    ObjectiveVector objectives;
    std::vector<std::vector<int>> units;
    std::vector<double> idle;
};

/// Cheapest idle vector on the grid for a fixed batch. Unit k starts at
/// (processing of units before k) + cumulative idle, and the cumulative idle
/// is a non-decreasing sequence of grid multiples bounded by the slack.
std::pair<double, std::vector<double>> cheapest_idle(const std::vector<std::vector<int>>& units,
                                                     const ProblemInstance& in, double grid) {
    const std::size_t m = units.size();
    double total_processing = 0.0;
    for (const auto& u : units) {
        for (int s : u) total_processing += in.slabs[s].processing_h;
    }
    const double slack = in.horizon_h - total_processing;
    const int steps = slack < 0.0 ? -1 : static_cast<int>(std::floor(slack / grid + 1e-9));
    if (steps < 0) return {std::numeric_limits<double>::infinity(), {}};

    const std::size_t width = static_cast<std::size_t>(steps) + 1;
    // best[k][s]: cheapest cost of units 0..k with cumulative idle s*grid before unit k.
    std::vector<std::vector<double>> best(m, std::vector<double>(width));
    std::vector<std::vector<int>> from(m, std::vector<int>(width, 0));
    double before = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        double running_min = std::numeric_limits<double>::infinity();
        int running_arg = 0;
        for (std::size_t s = 0; s < width; ++s) {
            double t = before + static_cast<double>(s) * grid;
            double cost = 0.0;
            for (int slab : units[k]) {
                const double end = t + in.slabs[slab].processing_h;
                cost += in.tariff.interval_cost(t, end, in.slabs[slab].energy_mwh, CostMode::proportional);
                t = end;
            }
            if (k == 0) {
                best[k][s] = cost;
            } else {
                if (best[k - 1][s] < running_min) {
                    running_min = best[k - 1][s];
                    running_arg = static_cast<int>(s);
                }
                best[k][s] = cost + running_min;
                from[k][s] = running_arg;
            }
        }
        for (int slab : units[k]) before += in.slabs[slab].processing_h;
    }

    std::size_t arg = 0;
    for (std::size_t s = 1; s < width; ++s) {
        if (best[m - 1][s] < best[m - 1][arg]) arg = s;
    }
    const double cost = best[m - 1][arg];
    std::vector<int> cumulative(m);
    int s = static_cast<int>(arg);
    for (std::size_t k = m; k-- > 0;) {
        cumulative[k] = s;
        s = from[k][static_cast<std::size_t>(s)];
    }
    std::vector<double> idle(m);
    for (std::size_t k = 0; k < m; ++k) {
        idle[k] = static_cast<double>(cumulative[k] - (k == 0 ? 0 : cumulative[k - 1])) * grid;
    }
    return {cost, idle};
}

// Costs are summed slab by slab in permutation order, so equal schedules can
// differ in the last bits; treat those as ties.
int compare_cost(double a, double b) {
    if (std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b))) return 0;
    return a < b ? -1 : 1;
}

bool covers(const ObjectiveVector& a, const ObjectiveVector& b) {
    return compare_cost(a.power_cost, b.power_cost) <= 0 && a.penalty <= b.penalty;
}

void offer(std::vector<Candidate>& front, Candidate c) {
    for (const auto& f : front) {
        if (covers(f.objectives, c.objectives)) return;
    }
    std::erase_if(front, [&](const Candidate& f) { return covers(c.objectives, f.objectives); });
    front.push_back(std::move(c));
}

}  // namespace

ExactFront exact_front(const ProblemInstance& in, double grid) {
    const int n = in.slab_count();
    const int m = in.unit_count;
    if (n > kOracleMaxSlabs || m > kOracleMaxUnits) {
        std::ostringstream msg;
        msg << "exact_front: instance has n=" << n << ", m=" << m << "; enumeration is limited to n <= "
            << kOracleMaxSlabs << " and m <= " << kOracleMaxUnits;
        throw Error(ErrorCode::size_guard, msg.str());
    }
    if (!(grid > 0.0)) throw Error(ErrorCode::invalid_argument, "exact_front: idle grid must be positive");

    std::vector<Candidate> front;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const std::vector<double> zero_idle(static_cast<std::size_t>(m), 0.0);

    do {
        const int splits = m == 1 ? 1 : n + 1;
        for (int split = 0; split < splits; ++split) {
            BatchSchedule batch;
            if (m == 1) {
                batch.units = {order};
            } else {
                batch.units = {std::vector<int>(order.begin(), order.begin() + split),
                               std::vector<int>(order.begin() + split, order.end())};
            }
            if (!check_constraints(batch, zero_idle, in).empty()) continue;
            auto [cost, idle] = cheapest_idle(batch.units, in, grid);
            if (!std::isfinite(cost)) continue;
            offer(front, {{cost, eval_penalty(batch, in), true}, std::move(batch.units), std::move(idle)});
        }
    } while (std::next_permutation(order.begin(), order.end()));

    ExactFront out;
    out.instance_digest = instance_digest(in);
    std::ranges::sort(front, [](const Candidate& a, const Candidate& b) {
        if (a.objectives.power_cost != b.objectives.power_cost) {
            return a.objectives.power_cost < b.objectives.power_cost;
        }
        return a.objectives.penalty < b.objectives.penalty;
    });
    for (auto& c : front) {
        ExactPoint p;
        p.objectives = c.objectives;
        p.batch.units = std::move(c.units);
        for (const auto& u : p.batch.units) {
            double len = 0.0;
            for (int s : u) len += in.slabs[s].length_km;
            p.batch.unit_length_km.push_back(len);
        }
        p.batch.feasible = true;
        p.idle = std::move(c.idle);
        out.points.push_back(std::move(p));
    }
    return out;
}

std::vector<double> snap_idle_to_grid(const std::vector<double>& idle, double grid) {
    std::vector<double> out(idle.size());
    double cumulative = 0.0;
    double snapped_before = 0.0;
    for (std::size_t k = 0; k < idle.size(); ++k) {
        cumulative += idle[k];
        const double snapped = std::floor(cumulative / grid + 1e-9) * grid;
        out[k] = std::max(0.0, snapped - snapped_before);
        snapped_before = std::max(snapped_before, snapped);
    }
    return out;
}

}  // namespace tousched
