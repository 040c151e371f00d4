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

#include "tousched/generator.hpp"

#include <cmath>
#include <random>

#include "tousched/error.hpp"

namespace tousched {

namespace {

/// Nearest multiple of 1/per_unit.
double round_to(double value, double per_unit) { return std::round(value * per_unit) / per_unit; }

}  // namespace

GeneratorProfile parse_profile(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw Error(ErrorCode::invalid_argument, "profile must look like 'many-varieties,full-load'");
    }
    const auto variety = text.substr(0, comma);
    const auto load = text.substr(comma + 1);
    GeneratorProfile p;
    if (variety == "many-varieties") {
        p.variety = Variety::many;
    } else if (variety == "few-varieties") {
        p.variety = Variety::few;
    } else {
        throw Error(ErrorCode::invalid_argument, "unknown variety level '" + std::string(variety) + "'");
    }
    if (load == "full-load") {
        p.load = Load::full;
    } else if (load == "not-full-load") {
        p.load = Load::not_full;
    } else {
        throw Error(ErrorCode::invalid_argument, "unknown load level '" + std::string(load) + "'");
    }
    return p;
}

std::string to_string(GeneratorProfile p) {
    return std::string(p.variety == Variety::many ? "many-varieties" : "few-varieties") + "," +
           (p.load == Load::full ? "full-load" : "not-full-load");
}

ProblemInstance generate_instance(int n, int m, std::uint64_t seed, GeneratorProfile profile) {
    if (n < 1 || m < 1) throw Error(ErrorCode::invalid_argument, "generator needs n >= 1 and m >= 1");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m)};
    std::mt19937_64 rng(seq);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    ProblemInstance in;
    in.unit_count = m;
    in.horizon_h = 24.0;
    in.tariff = TouTariff::reference(in.horizon_h);
    in.penalties = PenaltyModel::standard();
    in.min_unit_length_km = 5.0;
    in.max_unit_length_km = 10.0;
    in.max_same_width_run_km = 1.0;

    const double fill = uniform(0.88, 0.94);
    double mean_length = fill * m * in.max_unit_length_km / n;
    if (mean_length > 0.35 * in.max_same_width_run_km) {
        mean_length = 0.35 * in.max_same_width_run_km;
        in.max_unit_length_km = round_to(mean_length * n / (fill * m), 1e3);
        in.min_unit_length_km = round_to(in.max_unit_length_km / 2.0, 1e3);
    }

    const bool many = profile.variety == Variety::many;
    const double load = profile.load == Load::full ? uniform(0.955, 0.985) : uniform(0.82, 0.88);

    std::vector<double> raw_time(static_cast<std::size_t>(n));
    double raw_total = 0.0;
    for (int i = 0; i < n; ++i) {
        Slab s;
        s.id = i + 1;
        s.width_mm = many ? 800.0 + 50.0 * pick(0, 16) : 1200.0 + 50.0 * pick(0, 3);
        s.gauge_mm = many ? round_to(uniform(1.5, 12.0), 10.0) : round_to(uniform(2.0, 4.0), 10.0);
        s.hardness_grade = many ? pick(1, 8) : pick(1, 3);
        s.length_km = round_to(mean_length * uniform(0.6, 1.4), 1e3);
        raw_time[i] = s.length_km * uniform(0.85, 1.15);
        raw_total += raw_time[i];
        in.slabs.push_back(s);
    }

    const double scale = load * in.horizon_h / raw_total;
    for (int i = 0; i < n; ++i) {
        Slab& s = in.slabs[i];
        s.processing_h = std::max(1e-4, std::floor(raw_time[i] * scale * 1e4) / 1e4);
        const double power_mw = 19.0 + 0.4 * s.hardness_grade + uniform(-1.0, 1.0);
        s.energy_mwh = std::max(1e-4, round_to(s.processing_h * power_mw, 1e4));
    }

    in.name = "synthetic " + to_string(profile) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
              " seed=" + std::to_string(seed);
    validate(in);
    return in;
}

}  // namespace tousched
