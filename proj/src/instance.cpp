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

#include "tousched/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tousched/error.hpp"

namespace tousched {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormatTag = "tou-sched-instance/1";

[[noreturn]] void parse_fail(const std::string& field, const std::string& msg) {
    throw Error(ErrorCode::parse, field + ": " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    const std::string field = path.empty() ? key : path + "." + key;
    if (!v.is_number()) parse_fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) parse_fail(field, "must be finite");
    return d;
}

int integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    const std::string field = path.empty() ? key : path + "." + key;
    if (!v.is_number_integer()) parse_fail(field, "expected an integer");
    return v.get<int>();
}

const json& array(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array()) parse_fail(path.empty() ? key : path + "." + key, "expected an array");
    return v;
}

PenaltyTable parse_table(const json& doc, const std::string& path) {
    PenaltyTable table;
    const json& steps = array(doc, "steps", path);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string p = path + ".steps[" + std::to_string(i) + "]";
        table.steps.push_back({number(steps[i], "jump_upper_bound", p), number(steps[i], "penalty", p)});
    }
    table.overflow_penalty = number(doc, "overflow_penalty", path);
    return table;
}

json table_to_json(const PenaltyTable& table) {
    json steps = json::array();
    for (const auto& s : table.steps) {
        steps.push_back({{"jump_upper_bound", s.jump_upper_bound}, {"penalty", s.penalty}});
    }
    return {{"steps", steps}, {"overflow_penalty", table.overflow_penalty}};
}

void validate_table(const PenaltyTable& table, const std::string& path) {
    for (std::size_t i = 0; i < table.steps.size(); ++i) {
        const auto& s = table.steps[i];
        const std::string p = path + ".steps[" + std::to_string(i) + "]";
        if (s.jump_upper_bound < 0.0) parse_fail(p + ".jump_upper_bound", "must be non-negative");
        if (s.penalty < 0.0) parse_fail(p + ".penalty", "must be non-negative");
        if (i > 0 && !(s.jump_upper_bound > table.steps[i - 1].jump_upper_bound)) {
            parse_fail(p + ".jump_upper_bound", "bounds must be strictly increasing");
        }
    }
    if (table.overflow_penalty < 0.0) parse_fail(path + ".overflow_penalty", "must be non-negative");
    if (table.lookup(0.0) != 0.0) parse_fail(path, "penalty of a zero jump must be 0");
}

}  // namespace

double PenaltyTable::lookup(double jump) const {
    for (const auto& s : steps) {
        if (s.jump_upper_bound >= jump) return s.penalty;
    }
    return overflow_penalty;
}

PenaltyModel PenaltyModel::standard() {
    PenaltyModel m;
    m.width = {{{0, 0}, {25, 1}, {50, 3}, {100, 8}, {200, 15}, {300, 25}}, 40};
    m.gauge = {{{0, 0}, {0.5, 1}, {1.0, 3}, {2.0, 6}, {4.0, 10}}, 20};
    m.hardness = {{{0, 0}, {1, 2}, {2, 5}, {3, 10}}, 20};
    return m;
}

double penalty_between(const PenaltyModel& model, const Slab& a, const Slab& b) {
    return model.width.lookup(std::abs(a.width_mm - b.width_mm)) +
           model.gauge.lookup(std::abs(a.gauge_mm - b.gauge_mm)) +
           model.hardness.lookup(std::abs(a.hardness_grade - b.hardness_grade));
}

double ProblemInstance::total_processing_h() const {
    return std::accumulate(slabs.begin(), slabs.end(), 0.0,
                           [](double acc, const Slab& s) { return acc + s.processing_h; });
}

double ProblemInstance::total_energy_mwh() const {
    return std::accumulate(slabs.begin(), slabs.end(), 0.0,
                           [](double acc, const Slab& s) { return acc + s.energy_mwh; });
}

double ProblemInstance::max_slab_power_mw() const {
    double best = 0.0;
    for (const auto& s : slabs) best = std::max(best, s.average_power_mw());
    return best;
}

void validate(const ProblemInstance& in) {
    if (in.slabs.empty()) parse_fail("slabs", "at least one slab is required");
    if (in.unit_count < 1) parse_fail("unit_count", "must be >= 1");
    if (!(in.min_unit_length_km > 0.0)) parse_fail("min_unit_length_km", "must be positive");
    if (!(in.max_unit_length_km >= in.min_unit_length_km)) {
        parse_fail("max_unit_length_km", "must be >= min_unit_length_km");
    }
    if (!(in.max_same_width_run_km > 0.0)) parse_fail("max_same_width_run_length_km", "must be positive");
    if (!(in.horizon_h > 0.0)) parse_fail("horizon_time_h", "must be positive");
    if (std::abs(in.tariff.horizon() - in.horizon_h) > kTimeEpsilon) {
        parse_fail("tariff", "periods must cover exactly [0, horizon_time_h]");
    }

    std::set<int> ids;
    for (std::size_t i = 0; i < in.slabs.size(); ++i) {
        const Slab& s = in.slabs[i];
        const std::string p = "slabs[" + std::to_string(i) + "]";
        if (s.id < 1) parse_fail(p + ".id", "must be a positive integer");
        if (!ids.insert(s.id).second) parse_fail(p + ".id", "duplicate slab id " + std::to_string(s.id));
        if (!(s.width_mm > 0.0)) parse_fail(p + ".width_mm", "must be positive");
        if (!(s.gauge_mm > 0.0)) parse_fail(p + ".gauge_mm", "must be positive");
        if (s.hardness_grade < 1) parse_fail(p + ".hardness_grade", "must be a positive integer");
        if (!(s.length_km > 0.0)) parse_fail(p + ".length_km", "must be positive");
        if (!(s.processing_h > 0.0)) parse_fail(p + ".processing_time_h", "must be positive");
        if (!(s.energy_mwh > 0.0)) parse_fail(p + ".energy_mwh", "must be positive");
    }
    validate_table(in.penalties.width, "penalties.width");
    validate_table(in.penalties.gauge, "penalties.gauge");
    validate_table(in.penalties.hardness, "penalties.hardness");

    const double total = in.total_processing_h();
    if (total > in.horizon_h + kTimeEpsilon) {
        std::ostringstream msg;
        msg << "processing exceeds horizon: total processing " << total << " h > horizon " << in.horizon_h
            << " h";
        throw Error(ErrorCode::infeasible_instance, msg.str());
    }
}

ProblemInstance parse_instance(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("document: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("document", "expected a JSON object");
    if (auto it = doc.find("format"); it != doc.end() && *it != kFormatTag) {
        parse_fail("format", "unsupported format tag");
    }

    ProblemInstance in;
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) in.name = it->get<std::string>();
    in.unit_count = integer(doc, "unit_count", "");
    in.min_unit_length_km = number(doc, "min_unit_length_km", "");
    in.max_unit_length_km = number(doc, "max_unit_length_km", "");
    in.max_same_width_run_km = number(doc, "max_same_width_run_length_km", "");
    in.horizon_h = number(doc, "horizon_time_h", "");

    const json& tariff = array(doc, "tariff", "");
    std::vector<TouPeriod> periods;
    for (std::size_t i = 0; i < tariff.size(); ++i) {
        const std::string p = "tariff[" + std::to_string(i) + "]";
        TouPeriod period;
        period.start_h = number(tariff[i], "start_time_h", p);
        period.duration_h = number(tariff[i], "duration_time_h", p);
        period.price_cny_per_kwh = number(tariff[i], "price_cny_per_kwh", p);
        const json& label = require(tariff[i], "label", p);
        auto parsed = label.is_string() ? parse_period_label(label.get<std::string>()) : std::nullopt;
        if (!parsed) parse_fail(p + ".label", "expected one of on-peak, mid-peak, flat-peak, off-peak");
        period.label = *parsed;
        periods.push_back(period);
    }
    if (!(in.horizon_h > 0.0)) parse_fail("horizon_time_h", "must be positive");
    in.tariff = TouTariff(std::move(periods), in.horizon_h);

    const json& pen = require(doc, "penalties", "");
    in.penalties.width = parse_table(require(pen, "width", "penalties"), "penalties.width");
    in.penalties.gauge = parse_table(require(pen, "gauge", "penalties"), "penalties.gauge");
    in.penalties.hardness = parse_table(require(pen, "hardness", "penalties"), "penalties.hardness");

    const json& slabs = array(doc, "slabs", "");
    for (std::size_t i = 0; i < slabs.size(); ++i) {
        const std::string p = "slabs[" + std::to_string(i) + "]";
        Slab s;
        s.id = integer(slabs[i], "id", p);
        s.width_mm = number(slabs[i], "width_mm", p);
        s.gauge_mm = number(slabs[i], "gauge_mm", p);
        s.hardness_grade = integer(slabs[i], "hardness_grade", p);
        s.length_km = number(slabs[i], "length_km", p);
        s.processing_h = number(slabs[i], "processing_time_h", p);
        s.energy_mwh = number(slabs[i], "energy_mwh", p);
        in.slabs.push_back(s);
    }

    validate(in);
    return in;
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::parse, path + ": cannot open instance file");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_instance(buffer.str());
}

std::string serialize_instance(const ProblemInstance& in) {
    json doc;
    doc["format"] = kFormatTag;
    doc["name"] = in.name;
    doc["unit_count"] = in.unit_count;
    doc["min_unit_length_km"] = in.min_unit_length_km;
    doc["max_unit_length_km"] = in.max_unit_length_km;
    doc["max_same_width_run_length_km"] = in.max_same_width_run_km;
    doc["horizon_time_h"] = in.horizon_h;

    json tariff = json::array();
    for (const auto& p : in.tariff.periods()) {
        tariff.push_back({{"start_time_h", p.start_h},
                          {"duration_time_h", p.duration_h},
                          {"price_cny_per_kwh", p.price_cny_per_kwh},
                          {"label", std::string(to_string(p.label))}});
    }
    doc["tariff"] = tariff;
    doc["penalties"] = {{"width", table_to_json(in.penalties.width)},
                        {"gauge", table_to_json(in.penalties.gauge)},
                        {"hardness", table_to_json(in.penalties.hardness)}};

    json slabs = json::array();
    for (const auto& s : in.slabs) {
        slabs.push_back({{"id", s.id},
                         {"width_mm", s.width_mm},
                         {"gauge_mm", s.gauge_mm},
                         {"hardness_grade", s.hardness_grade},
                         {"length_km", s.length_km},
                         {"processing_time_h", s.processing_h},
                         {"energy_mwh", s.energy_mwh}});
    }
    doc["slabs"] = slabs;
    return doc.dump(2) + "\n";
}

std::string instance_digest(const ProblemInstance& instance) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_instance(instance)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace tousched
