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

#include "tousched/tariff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tousched/error.hpp"

namespace tousched {

std::string_view to_string(PeriodLabel label) {
    switch (label) {
        case PeriodLabel::on_peak: return "on-peak";
        case PeriodLabel::mid_peak: return "mid-peak";
        case PeriodLabel::flat_peak: return "flat-peak";
        case PeriodLabel::off_peak: return "off-peak";
    }
    return "flat-peak";
}

std::optional<PeriodLabel> parse_period_label(std::string_view text) {
    if (text == "on-peak") return PeriodLabel::on_peak;
    if (text == "mid-peak") return PeriodLabel::mid_peak;
    if (text == "flat-peak") return PeriodLabel::flat_peak;
    if (text == "off-peak") return PeriodLabel::off_peak;
    return std::nullopt;
}

std::string_view to_string(CostMode mode) {
    return mode == CostMode::proportional ? "proportional" : "start-period";
}

std::optional<CostMode> parse_cost_mode(std::string_view text) {
    if (text == "proportional") return CostMode::proportional;
    if (text == "start-period") return CostMode::start_period;
    return std::nullopt;
}

TouTariff::TouTariff(std::vector<TouPeriod> periods, double horizon_h)
    : periods_(std::move(periods)), horizon_(horizon_h) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::parse, "tariff: " + msg); };
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) fail("horizon must be positive");
    if (periods_.empty()) fail("no periods");

    double expected_start = 0.0;
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        const auto& p = periods_[i];
        std::ostringstream where;
        where << "period " << i << ": ";
        if (!(p.duration_h > 0.0)) fail(where.str() + "duration must be positive");
        if (!(p.price_cny_per_kwh > 0.0)) fail(where.str() + "price must be positive");
        if (std::abs(p.start_h - expected_start) > kTimeEpsilon) {
            where << "starts at " << p.start_h << " but previous period ends at " << expected_start;
            fail(where.str());
        }
        expected_start = p.end_h();
    }
    if (std::abs(expected_start - horizon_) > kTimeEpsilon) {
        std::ostringstream msg;
        msg << "periods end at " << expected_start << " but horizon is " << horizon_;
        fail(msg.str());
    }
}

std::vector<TouPeriod> TouTariff::reference_daily_periods() {
    using L = PeriodLabel;
    return {
        {0.0, 7.0, 0.428, L::off_peak},   {7.0, 1.0, 0.628, L::flat_peak},
        {8.0, 3.0, 0.778, L::mid_peak},   {11.0, 4.0, 0.628, L::flat_peak},
        {15.0, 3.0, 0.778, L::mid_peak},  {18.0, 3.0, 0.878, L::on_peak},
        {21.0, 1.0, 0.628, L::flat_peak}, {22.0, 2.0, 0.428, L::off_peak},
    };
}

TouTariff TouTariff::tiled(std::span<const TouPeriod> daily, double horizon_h) {
    if (daily.empty()) throw Error(ErrorCode::parse, "tariff: no daily periods");
    const double day = daily.back().end_h();
    std::vector<TouPeriod> out;
    for (double offset = 0.0; offset < horizon_h - kTimeEpsilon; offset += day) {
        for (const auto& p : daily) {
            const double start = offset + p.start_h;
            if (start >= horizon_h - kTimeEpsilon) break;
            TouPeriod q = p;
            q.start_h = start;
            q.duration_h = std::min(p.duration_h, horizon_h - start);
            out.push_back(q);
        }
    }
    return TouTariff(std::move(out), horizon_h);
}

TouTariff TouTariff::reference(double horizon_h) {
    const auto daily = reference_daily_periods();
    return tiled(daily, horizon_h);
}

TouTariff TouTariff::flat(double price_cny_per_kwh, double horizon_h) {
    return TouTariff({{0.0, horizon_h, price_cny_per_kwh, PeriodLabel::flat_peak}}, horizon_h);
}

std::size_t TouTariff::period_index_at(double t) const {
    if (!(t >= 0.0) || !(t < horizon_)) {
        std::ostringstream msg;
        msg << "time " << t << " h outside tariff horizon [0, " << horizon_ << ")";
        throw Error(ErrorCode::out_of_range, msg.str());
    }
    auto it = std::upper_bound(periods_.begin(), periods_.end(), t,
                               [](double v, const TouPeriod& p) { return v < p.start_h; });
    return static_cast<std::size_t>(std::distance(periods_.begin(), it)) - 1;
}

std::size_t TouTariff::period_index_ending_at(double t) const {
    const double probe = std::clamp(t - kTimeEpsilon, 0.0, std::nextafter(horizon_, 0.0));
    return period_index_at(probe);
}

double TouTariff::price_at(double t) const { return periods_[period_index_at(t)].price_cny_per_kwh; }

void TouTariff::check_interval(double start_h, double end_h) const {
    if (end_h < start_h) {
        std::ostringstream msg;
        msg << "invalid interval [" << start_h << ", " << end_h << "]: end before start";
        throw Error(ErrorCode::invalid_interval, msg.str());
    }
    if (start_h < -kTimeEpsilon || end_h > horizon_ + kTimeEpsilon) {
        std::ostringstream msg;
        msg << "interval [" << start_h << ", " << end_h << "] outside horizon [0, " << horizon_ << "]";
        throw Error(ErrorCode::out_of_range, msg.str());
    }
}

double TouTariff::interval_cost(double start_h, double end_h, double energy_mwh, CostMode mode) const {
    check_interval(start_h, end_h);
    if (energy_mwh < 0.0) throw Error(ErrorCode::invalid_argument, "energy must be non-negative");
    const double start = std::clamp(start_h, 0.0, horizon_);
    const double end = std::clamp(end_h, 0.0, horizon_);
    const double kwh = energy_mwh * 1000.0;

    if (mode == CostMode::start_period) {
        const double probe = std::min(start, std::nextafter(horizon_, 0.0));
        return kwh * price_at(probe);
    }

    const double length = end - start;
    if (length <= 0.0) return 0.0;
    double weighted = 0.0;  // sum of overlap_h * price
    for (std::size_t i = period_index_at(std::min(start, std::nextafter(horizon_, 0.0)));
         i < periods_.size() && periods_[i].start_h < end; ++i) {
        const auto& p = periods_[i];
        const double overlap = std::min(end, p.end_h()) - std::max(start, p.start_h);
        if (overlap > 0.0) weighted += overlap * p.price_cny_per_kwh;
    }
    return weighted / length * kwh;
}

void TouTariff::spread_energy(double start_h, double end_h, double energy_mwh,
                              std::span<double> per_period) const {
    check_interval(start_h, end_h);
    const double start = std::clamp(start_h, 0.0, horizon_);
    const double end = std::clamp(end_h, 0.0, horizon_);
    const double length = end - start;
    if (length <= 0.0) {
        per_period[period_index_at(std::min(start, std::nextafter(horizon_, 0.0)))] += energy_mwh;
        return;
    }
    for (std::size_t i = period_index_at(std::min(start, std::nextafter(horizon_, 0.0)));
         i < periods_.size() && periods_[i].start_h < end; ++i) {
        const auto& p = periods_[i];
        const double overlap = std::min(end, p.end_h()) - std::max(start, p.start_h);
        if (overlap > 0.0) per_period[i] += energy_mwh * overlap / length;
    }
}

double TouTariff::min_price() const {
    return std::ranges::min(periods_, {}, &TouPeriod::price_cny_per_kwh).price_cny_per_kwh;
}

double TouTariff::max_price() const {
    return std::ranges::max(periods_, {}, &TouPeriod::price_cny_per_kwh).price_cny_per_kwh;
}

}  // namespace tousched
