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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tousched {

/// Absolute slack used when comparing accumulated times against period
/// boundaries and the horizon. Times are in hours.
inline constexpr double kTimeEpsilon = 1e-9;

enum class PeriodLabel { on_peak, mid_peak, flat_peak, off_peak };

std::string_view to_string(PeriodLabel label);
std::optional<PeriodLabel> parse_period_label(std::string_view text);

/// How a slab's energy is charged over its processing interval.
///  - proportional: energy spread uniformly over [start, end], each slice
///    charged at the price of the period it falls in.
///  - start_period: all energy charged at the price in force at `start`.
enum class CostMode { proportional, start_period };

std::string_view to_string(CostMode mode);
std::optional<CostMode> parse_cost_mode(std::string_view text);

struct TouPeriod {
    double start_h = 0.0;
    double duration_h = 0.0;
    double price_cny_per_kwh = 0.0;
    PeriodLabel label = PeriodLabel::flat_peak;

    double end_h() const { return start_h + duration_h; }

    friend bool operator==(const TouPeriod&, const TouPeriod&) = default;
};

/// Time-of-use tariff over [0, horizon). Periods are half-open
/// [start, start + duration), contiguous and cover the horizon exactly.
/// Immutable once constructed.
class TouTariff {
 public:
    /// Validates and builds a tariff; throws Error(parse) on gaps, overlaps,
    /// non-positive durations/prices or a mismatched horizon.
    TouTariff(std::vector<TouPeriod> periods, double horizon_h);

    /// Repeats a 24 h daily pattern until `horizon_h`, cutting the last
    /// period short if the horizon is not a whole number of days.
    static TouTariff tiled(std::span<const TouPeriod> daily, double horizon_h);

    /// The eight-period industrial tariff used throughout the test-suite
    /// (on-peak 0.878, mid-peak 0.778, flat-peak 0.628, off-peak 0.428 CNY/kWh).
    static std::vector<TouPeriod> reference_daily_periods();
    static TouTariff reference(double horizon_h = 24.0);

    /// A single flat period covering the horizon.
    static TouTariff flat(double price_cny_per_kwh, double horizon_h = 24.0);

    const std::vector<TouPeriod>& periods() const { return periods_; }
    double horizon() const { return horizon_; }

    std::size_t period_index_at(double t) const;
    /// Index of the period in which processing that ends at `t` last takes
    /// place, i.e. the period containing t - 0.
    std::size_t period_index_ending_at(double t) const;

    double price_at(double t) const;

    /// Cost in CNY of consuming `energy_mwh` over [start, end].
    double interval_cost(double start_h, double end_h, double energy_mwh,
                         CostMode mode = CostMode::proportional) const;

    /// Energy (MWh) that falls into each period when `energy_mwh` is spread
    /// uniformly over [start, end]. Adds into `per_period`.
    void spread_energy(double start_h, double end_h, double energy_mwh,
                       std::span<double> per_period) const;

    double min_price() const;
    double max_price() const;

    friend bool operator==(const TouTariff&, const TouTariff&) = default;

 private:
    void check_interval(double start_h, double end_h) const;

    std::vector<TouPeriod> periods_;
    double horizon_ = 0.0;
};

}  // namespace tousched
