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

#include "tousched/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tousched/error.hpp"

namespace tousched {

namespace {

constexpr double kLengthEpsilon = 1e-9;

std::vector<double> unit_processing(const BatchSchedule& batch, const ProblemInstance& in) {
    std::vector<double> out(batch.units.size(), 0.0);
    for (std::size_t k = 0; k < batch.units.size(); ++k) out[k] = batch.unit_processing_h(in, k);
    return out;
}

}  // namespace

CodeTarget code_target(int code, int slab_count) {
    return {(code - 1) % slab_count, (code - 1) / slab_count};
}

int code_for(CodeTarget target, int slab_count) { return target.unit * slab_count + target.slab + 1; }

bool is_permutation_of_codes(std::span<const int> perm, int code_count) {
    if (static_cast<int>(perm.size()) != code_count) return false;
    std::vector<char> seen(static_cast<std::size_t>(code_count), 0);
    for (int c : perm) {
        if (c < 1 || c > code_count || seen[c - 1]) return false;
        seen[c - 1] = 1;
    }
    return true;
}

double BatchSchedule::unit_processing_h(const ProblemInstance& in, std::size_t unit) const {
    double total = 0.0;
    for (int s : units[unit]) total += in.slabs[s].processing_h;
    return total;
}

double BatchSchedule::scheduled_processing_h(const ProblemInstance& in) const {
    double total = 0.0;
    for (std::size_t k = 0; k < units.size(); ++k) total += unit_processing_h(in, k);
    return total;
}

BatchSchedule decode(std::span<const int> perm, const ProblemInstance& in, bool trace) {
    const int n = in.slab_count();
    const int m = in.unit_count;
    if (!is_permutation_of_codes(perm, n * m)) {
        throw Error(ErrorCode::invalid_argument, "decode: perm is not a permutation of 1..m*n");
    }

    BatchSchedule b;
    b.units.resize(m);
    b.unit_length_km.assign(m, 0.0);
    b.max_width_run_km.assign(m, 0.0);
    std::vector<double> run(m, 0.0);
    std::vector<char> placed(n, 0);

    for (int code : perm) {
        const CodeTarget t = code_target(code, n);
        if (placed[t.slab]) {
            if (trace) b.rejections.push_back({code, t.slab, t.unit, RejectReason::already_placed, 0.0});
            continue;
        }
        const Slab& slab = in.slabs[t.slab];
        auto& unit = b.units[t.unit];
        // The run counter restarts when the width changes; it is only
        // committed once the slab is actually placed.
        const bool same_width = !unit.empty() && in.slabs[unit.back()].width_mm == slab.width_mm;
        const double new_run = (same_width ? run[t.unit] : 0.0) + slab.length_km;
        const double new_length = b.unit_length_km[t.unit] + slab.length_km;

        if (new_length > in.max_unit_length_km + kLengthEpsilon) {
            if (trace) b.rejections.push_back({code, t.slab, t.unit, RejectReason::unit_length, new_length});
            continue;
        }
        if (new_run > in.max_same_width_run_km + kLengthEpsilon) {
            if (trace) b.rejections.push_back({code, t.slab, t.unit, RejectReason::same_width_run, new_run});
            continue;
        }
        unit.push_back(t.slab);
        b.unit_length_km[t.unit] = new_length;
        run[t.unit] = new_run;
        b.max_width_run_km[t.unit] = std::max(b.max_width_run_km[t.unit], new_run);
        placed[t.slab] = 1;
    }

    for (int s = 0; s < n; ++s) {
        if (!placed[s]) b.unplaced.push_back(s);
    }
    for (int k = 0; k < m; ++k) {
        if (b.unit_length_km[k] < in.min_unit_length_km - kLengthEpsilon) b.short_units.push_back(k);
    }
    b.feasible = b.unplaced.empty() && b.short_units.empty();
    return b;
}

TimedSchedule timing(const BatchSchedule& batch, std::span<const double> idle, const ProblemInstance& in) {
    if (idle.size() != batch.units.size()) {
        throw Error(ErrorCode::invalid_idle, "timing: idle vector size does not match unit count");
    }
    TimedSchedule out;
    out.units.resize(batch.units.size());
    out.slab_start_h.assign(in.slabs.size(), std::numeric_limits<double>::quiet_NaN());
    out.slab_end_h.assign(in.slabs.size(), std::numeric_limits<double>::quiet_NaN());

    double t = 0.0;
    for (std::size_t k = 0; k < batch.units.size(); ++k) {
        t += idle[k];
        out.units[k].idle_before_h = idle[k];
        out.units[k].start_h = t;
        for (int s : batch.units[k]) {
            out.slab_start_h[s] = t;
            t += in.slabs[s].processing_h;
            out.slab_end_h[s] = t;
        }
        out.units[k].end_h = t;
    }
    if (t > in.horizon_h + kTimeEpsilon) {
        std::ostringstream msg;
        msg << "schedule ends at " << t << " h, after the horizon " << in.horizon_h << " h";
        throw Error(ErrorCode::horizon_overflow, msg.str());
    }
    return out;
}

std::vector<double> allocate_idle(const BatchSchedule& batch, const ProblemInstance& in,
                                  std::span<const double> initial) {
    const std::size_t m = batch.units.size();
    if (!batch.feasible) throw Error(ErrorCode::invalid_idle, "allocate_idle: batch is infeasible");
    if (initial.size() != m) throw Error(ErrorCode::invalid_idle, "allocate_idle: idle vector size mismatch");
    double sum = 0.0;
    for (double v : initial) {
        if (!(v >= 0.0)) throw Error(ErrorCode::invalid_idle, "allocate_idle: negative idle entry");
        sum += v;
    }
    const double slack = in.horizon_h - batch.scheduled_processing_h(in);
    if (sum > slack + kTimeEpsilon) {
        std::ostringstream msg;
        msg << "allocate_idle: total idle " << sum << " h exceeds slack " << slack << " h";
        throw Error(ErrorCode::invalid_idle, msg.str());
    }

    std::vector<double> v(initial.begin(), initial.end());
    const auto processing = unit_processing(batch, in);
    const auto& periods = in.tariff.periods();
    const double last_instant = std::nextafter(in.horizon_h, 0.0);

    std::vector<std::size_t> order(periods.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
        return periods[a].price_cny_per_kwh > periods[b].price_cny_per_kwh;
    });

    for (std::size_t j : order) {
        const double price = periods[j].price_cny_per_kwh;
        for (std::size_t i = 0; i < m; ++i) {
            auto bounds = [&] {
                double start = 0.0;
                for (std::size_t k = 0; k < i; ++k) start += v[k] + processing[k];
                start += v[i];
                return std::pair{start, start + processing[i]};
            };
            auto [start, end] = bounds();
            std::size_t start_period = in.tariff.period_index_at(std::clamp(start + kTimeEpsilon, 0.0, last_instant));
            std::size_t end_period = in.tariff.period_index_ending_at(end);

            if (start_period == j && periods[end_period].price_cny_per_kwh < price && i + 1 < m &&
                v[i + 1] > 0.0) {
                const double moved = v[i + 1];
                v[i + 1] = 0.0;
                v[i] += moved;
                std::tie(start, end) = bounds();
                start_period = in.tariff.period_index_at(std::clamp(start + kTimeEpsilon, 0.0, last_instant));
                end_period = in.tariff.period_index_ending_at(end);
            }
            if (end_period == j && periods[start_period].price_cny_per_kwh < price && i + 1 < m && v[i] > 0.0) {
                const double moved = v[i];
                v[i] = 0.0;
                v[i + 1] += moved;
            }
        }
    }
    return v;
}

std::vector<double> draw_idle(int units, double slack_h, std::mt19937_64& rng) {
    std::vector<double> v(static_cast<std::size_t>(units), 0.0);
    if (!(slack_h > 0.0) || units < 1) return v;
    // Normalised exponential spacings over units + 1 coordinates (the last
    // one is trailing slack) are uniform on the solid simplex.
    std::exponential_distribution<double> exp1(1.0);
    double total = 0.0;
    for (auto& x : v) {
        x = exp1(rng);
        total += x;
    }
    total += exp1(rng);
    double sum = 0.0;
    for (auto& x : v) {
        x = slack_h * x / total;
        sum += x;
    }
    if (sum > slack_h) {
        for (auto& x : v) x *= slack_h / sum * (1.0 - 1e-15);
    }
    return v;
}

Chromosome random_chromosome(const ProblemInstance& in, std::mt19937_64& rng) {
    const int codes = in.slab_count() * in.unit_count;
    Chromosome c;
    c.perm.resize(static_cast<std::size_t>(codes));
    std::iota(c.perm.begin(), c.perm.end(), 1);
    std::shuffle(c.perm.begin(), c.perm.end(), rng);
    const BatchSchedule batch = decode(c.perm, in);
    const double slack = batch.feasible ? in.horizon_h - batch.scheduled_processing_h(in) : 0.0;
    c.idle = draw_idle(in.unit_count, slack, rng);
    return c;
}

}  // namespace tousched
