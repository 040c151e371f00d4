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

#include "tousched/artifacts.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "tousched/error.hpp"

namespace tousched {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        out.push_back(text.substr(pos, next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_value(std::string_view text, const std::string& where) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::parse, where + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const std::string& where) {
    std::vector<T> out;
    for (auto token : split(trim(text), ' ')) {
        if (token.empty()) continue;
        out.push_back(parse_value<T>(token, where));
    }
    return out;
}

std::string join_ints(std::span<const int> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_numbers(std::span<const double> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_number(values[i]);
    }
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string pareto_csv(std::span<const Individual> front) {
    std::string out = "f1_cny,f2_penalty,perm,idle\n";
    for (const auto& ind : front) {
        out += format_number(ind.objectives.power_cost) + ',' + format_number(ind.objectives.penalty) + ',' +
               join_ints(ind.chromosome.perm) + ',' + join_numbers(ind.chromosome.idle) + '\n';
    }
    return out;
}

std::vector<ParetoRow> parse_pareto_csv(std::string_view text) {
    std::vector<ParetoRow> rows;
    auto lines = split(text, '\n');
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw Error(ErrorCode::parse, "front csv: empty file");

    const auto header = split(trim(lines.front()), ',');
    int f1 = -1, f2 = -1, perm = -1, idle = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto h = trim(header[i]);
        if (h == "f1_cny") f1 = static_cast<int>(i);
        if (h == "f2_penalty") f2 = static_cast<int>(i);
        if (h == "perm") perm = static_cast<int>(i);
        if (h == "idle") idle = static_cast<int>(i);
    }
    if (f1 < 0 || f2 < 0) throw Error(ErrorCode::parse, "front csv: header needs f1_cny and f2_penalty columns");

    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        const std::string where = "front csv line " + std::to_string(li + 1);
        const auto cells = split(lines[li], ',');
        if (cells.size() != header.size()) throw Error(ErrorCode::parse, where + ": wrong number of columns");
        ParetoRow row;
        row.objectives = {parse_value<double>(cells[f1], where), parse_value<double>(cells[f2], where), true};
        if (perm >= 0 && idle >= 0) {
            row.chromosome = Chromosome{parse_list<int>(cells[perm], where), parse_list<double>(cells[idle], where)};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ranking_csv(const TopsisRanking& ranking) {
    std::string out = "rank,closeness,f1_cny,f2_penalty,solution_index\n";
    for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
        const auto& e = ranking.entries[r];
        out += std::to_string(r + 1) + ',' + format_number(e.closeness) + ',' + format_number(e.power_cost) + ',' +
               format_number(e.penalty) + ',' + std::to_string(e.index + 1) + '\n';
    }
    return out;
}

std::vector<UnitRow> unit_rows(const BatchSchedule& batch, const TimedSchedule& timed, const ProblemInstance& in) {
    std::vector<UnitRow> rows;
    for (std::size_t k = 0; k < batch.units.size(); ++k) {
        UnitRow r;
        r.unit = static_cast<int>(k) + 1;
        r.slab_quantity = batch.units[k].size();
        for (int s : batch.units[k]) {
            r.rolling_length_km += in.slabs[s].length_km;
            r.processing_time_h += in.slabs[s].processing_h;
            r.power_demand_mwh += in.slabs[s].energy_mwh;
            r.slab_ids.push_back(in.slabs[s].id);
        }
        r.average_load_mw = r.processing_time_h > 0.0 ? r.power_demand_mwh / r.processing_time_h : 0.0;
        r.start_h = timed.units[k].start_h;
        r.end_h = timed.units[k].end_h;
        r.idle_h = timed.units[k].idle_before_h;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string schedule_report_csv(std::span<const UnitRow> rows) {
    std::string out =
        "unit,slab_quantity,rolling_length_km,processing_time_h,power_demand_mwh,average_load_mw,start_h,end_h,"
        "idle_h,slab_ids\n";
    for (const auto& r : rows) {
        out += std::to_string(r.unit) + ',' + std::to_string(r.slab_quantity) + ',' +
               format_number(r.rolling_length_km) + ',' + format_number(r.processing_time_h) + ',' +
               format_number(r.power_demand_mwh) + ',' + format_number(r.average_load_mw) + ',' +
               format_number(r.start_h) + ',' + format_number(r.end_h) + ',' + format_number(r.idle_h) + ',' +
               join_ints(r.slab_ids) + '\n';
    }
    return out;
}

std::vector<PeriodLoad> load_histogram(const TimedSchedule& timed, const ProblemInstance& in) {
    const auto& periods = in.tariff.periods();
    std::vector<double> energy(periods.size(), 0.0);
    for (std::size_t s = 0; s < in.slabs.size(); ++s) {
        if (std::isnan(timed.slab_start_h[s])) continue;
        in.tariff.spread_energy(timed.slab_start_h[s], timed.slab_end_h[s], in.slabs[s].energy_mwh, energy);
    }
    std::vector<PeriodLoad> out;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const auto& p = periods[i];
        out.push_back({i, p.label, p.start_h, p.end_h(), p.price_cny_per_kwh, energy[i], energy[i] / p.duration_h,
                       energy[i] * 1000.0 * p.price_cny_per_kwh});
    }
    return out;
}

double on_peak_average_load(std::span<const PeriodLoad> histogram) {
    double energy = 0.0;
    double hours = 0.0;
    for (const auto& p : histogram) {
        if (p.label != PeriodLabel::on_peak) continue;
        energy += p.energy_mwh;
        hours += p.end_h - p.start_h;
    }
    return hours > 0.0 ? energy / hours : 0.0;
}

std::string load_histogram_csv(std::span<const PeriodLoad> histogram) {
    std::string out = "period,label,start_h,end_h,price_cny_per_kwh,energy_mwh,average_load_mw,cost_cny\n";
    for (const auto& p : histogram) {
        out += std::to_string(p.period + 1) + ',' + std::string(to_string(p.label)) + ',' + format_number(p.start_h) +
               ',' + format_number(p.end_h) + ',' + format_number(p.price_cny_per_kwh) + ',' +
               format_number(p.energy_mwh) + ',' + format_number(p.average_load_mw) + ',' +
               format_number(p.cost_cny) + '\n';
    }
    return out;
}

std::string gantt_svg(std::span<const UnitRow> rows, const ProblemInstance& in) {
    const double width = 960.0, height = 420.0, left = 60.0, right = 60.0, top = 30.0, bottom = 40.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    double max_load = 1.0;
    for (const auto& r : rows) max_load = std::max(max_load, r.average_load_mw);
    const double max_price = in.tariff.max_price();
    auto x = [&](double h) { return left + plot_w * h / in.horizon_h; };
    auto y_load = [&](double mw) { return top + plot_h * (1.0 - mw / (max_load * 1.15)); };
    auto y_price = [&](double p) { return top + plot_h * (1.0 - p / (max_price * 1.15)); };

    std::ostringstream svg;
    char buf[256];
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<title>" << xml_escape(in.name.empty() ? "schedule" : in.name) << "</title>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"#999\"/>\n";

    // price step line
    std::string path;
    for (const auto& p : in.tariff.periods()) {
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f L%.2f,%.2f ", path.empty() ? "M" : "L", x(p.start_h),
                      y_price(p.price_cny_per_kwh), x(p.end_h()), y_price(p.price_cny_per_kwh));
        path += buf;
    }
    svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";

    // rolling units: bars at their average load
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#1f77b4\" stroke-width=\"4\"/>\n"
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"#1f77b4\"/>"
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"#1f77b4\"/>\n",
                      x(r.start_h), y_load(r.average_load_mw), x(r.end_h), y_load(r.average_load_mw), x(r.start_h),
                      y_load(r.average_load_mw), x(r.end_h), y_load(r.average_load_mw));
        svg << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">U%d</text>\n",
                      (x(r.start_h) + x(r.end_h)) / 2.0, y_load(r.average_load_mw) - 6.0, r.unit);
        svg << buf;
    }

    for (double h = 0.0; h <= in.horizon_h + kTimeEpsilon; h += in.horizon_h > 48.0 ? 12.0 : 3.0) {
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n", x(h),
                      height - bottom + 16.0, clock_time(h).c_str());
        svg << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"12\" y=\"%.2f\" transform=\"rotate(-90 12 %.2f)\">load / MW</text>\n"
                  "<text x=\"%.2f\" y=\"%.2f\" transform=\"rotate(90 %.2f %.2f)\">price / CNY per kWh</text>\n",
                  top + plot_h / 2.0, top + plot_h / 2.0, width - 12.0, top + plot_h / 2.0, width - 12.0,
                  top + plot_h / 2.0);
    svg << buf << "</svg>\n";
    return svg.str();
}

std::string serialize_solution(const Chromosome& c, const ObjectiveVector& o, const ProblemInstance& in) {
    nlohmann::ordered_json doc;
    doc["format"] = "tou-sched-solution/1";
    doc["instance_digest"] = instance_digest(in);
    doc["f1_cny"] = o.power_cost;
    doc["f2_penalty"] = o.penalty;
    doc["feasible"] = o.feasible;
    doc["perm"] = c.perm;
    doc["idle_h"] = c.idle;
    return doc.dump(2) + "\n";
}

Chromosome parse_solution(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("solution: malformed JSON: ") + e.what());
    }
    Chromosome c;
    try {
        c.perm = doc.at("perm").get<std::vector<int>>();
        c.idle = doc.at("idle_h").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, std::string("solution: needs integer list 'perm' and number list 'idle_h': ") +
                                          e.what());
    }
    return c;
}

std::string clock_time(double hours) {
    const long minutes = std::lround(hours * 60.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02ld:%02ld", minutes / 60, minutes % 60);
    return buf;
}

}  // namespace tousched
