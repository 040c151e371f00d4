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

#include "tousched/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tousched/generator.hpp"

namespace tousched {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_argument, path.string() + ": cannot write file");
    out << text;
}

/// Unit table in the shape of the per-unit production report.
std::string unit_table(std::span<const UnitRow> rows) {
    std::ostringstream s;
    s << std::fixed;
    s << "unit  slabs  length_km  proc_h  energy_mwh  load_mw  start  end    idle_h\n";
    for (const auto& r : rows) {
        s << std::setw(4) << r.unit << std::setw(7) << r.slab_quantity << std::setprecision(3) << std::setw(11)
          << r.rolling_length_km << std::setprecision(2) << std::setw(8) << r.processing_time_h << std::setw(12)
          << r.power_demand_mwh << std::setw(9) << r.average_load_mw << "  " << clock_time(r.start_h) << "  "
          << clock_time(r.end_h) << std::setw(8) << r.idle_h << '\n';
    }
    return s.str();
}

std::string manifest(const ProblemInstance& in, const SolveOptions& o, const EvolveResult& r, double wall_s) {
    const auto& p = o.params;
    nlohmann::ordered_json doc;
    doc["format"] = "tou-sched-run/1";
    doc["instance_path"] = o.instance_path;
    doc["instance_digest"] = instance_digest(in);
    doc["multi_day"] = in.horizon_h > 24.0 + kTimeEpsilon;
    doc["params"] = {
        {"seed", p.rng_seed},
        {"generations", p.generations},
        {"population", p.population_size},
        {"pc", p.crossover_prob},
        {"pm", p.mutation_prob},
        {"scramble_max_len", p.effective_scramble_len(in)},
        {"cost_mode", std::string(to_string(p.cost_mode))},
        {"weights", {o.weights.power_cost, o.weights.penalty}},
        {"hv_reference", {r.hv_reference.first, r.hv_reference.second}},
        {"threads", p.threads},
    };
    doc["archive_size"] = r.archive.size();
    doc["final_hypervolume"] = r.history.empty() ? 0.0 : r.history.back().hypervolume;
    doc["wall_time_s"] = wall_s;
    return doc.dump(2) + "\n";
}

std::vector<double> parse_weights(const std::string& text) {
    std::vector<double> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error(ErrorCode::invalid_argument, "--weights: bad number '" + item + "'");
        w.push_back(v);
    }
    if (w.size() != 2) throw Error(ErrorCode::invalid_argument, "--weights expects two values, e.g. 0.4,0.6");
    return w;
}

CostMode cost_mode_from(const std::string& text) {
    auto mode = parse_cost_mode(text);
    if (!mode) throw Error(ErrorCode::invalid_argument, "--cost-mode must be proportional or start-period");
    return *mode;
}

struct EvaluateInput {
    Chromosome chromosome;
    std::optional<ObjectiveVector> recorded;
};

EvaluateInput read_solution(const std::string& path, int row) {
    const std::string text = read_file(path);
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    if (!csv) {
        EvaluateInput input{parse_solution(text), std::nullopt};
        const auto doc = nlohmann::json::parse(text);
        const auto f1 = doc.find("f1_cny");
        const auto f2 = doc.find("f2_penalty");
        if (f1 != doc.end() && f2 != doc.end() && f1->is_number() && f2->is_number()) {
            input.recorded = ObjectiveVector{f1->get<double>(), f2->get<double>(), true};
        }
        return input;
    }
    auto rows = parse_pareto_csv(text);
    if (row < 1 || row > static_cast<int>(rows.size())) {
        throw Error(ErrorCode::invalid_argument,
                    path + ": --row " + std::to_string(row) + " outside 1.." + std::to_string(rows.size()));
    }
    auto& r = rows[static_cast<std::size_t>(row - 1)];
    if (!r.chromosome) throw Error(ErrorCode::parse, path + ": no perm/idle columns");
    return {*r.chromosome, r.objectives};
}

int cmd_evaluate(const std::string& instance_path, const std::string& solution_path, int row, CostMode mode,
                 std::ostream& out) {
    const auto in = load_instance(instance_path);
    const auto input = read_solution(solution_path, row);
    const auto& c = input.chromosome;
    const std::size_t codes = static_cast<std::size_t>(in.slab_count()) * static_cast<std::size_t>(in.unit_count);
    if (c.perm.size() != codes || c.idle.size() != static_cast<std::size_t>(in.unit_count)) {
        throw Error(ErrorCode::invalid_argument,
                    "chromosome length mismatch: perm has " + std::to_string(c.perm.size()) + " codes (expected " +
                        std::to_string(codes) + "), idle has " + std::to_string(c.idle.size()) + " entries (expected " +
                        std::to_string(in.unit_count) + ")");
    }
    if (!is_permutation_of_codes(c.perm, static_cast<int>(codes))) {
        throw Error(ErrorCode::invalid_argument, "perm is not a permutation of 1.." + std::to_string(codes));
    }

    const auto eval = evaluate(c, in, mode);
    out << "f1_cny " << format_number(eval.objectives.power_cost) << '\n';
    out << "f2_penalty " << format_number(eval.objectives.penalty) << '\n';
    out << "feasible " << (eval.objectives.feasible ? "yes" : "no") << '\n';
    if (input.recorded) {
        const bool same = input.recorded->power_cost == eval.objectives.power_cost &&
                          input.recorded->penalty == eval.objectives.penalty;
        out << "matches recorded objectives " << (same ? "yes" : "no") << '\n';
    }

    const auto violations = check_constraints(eval.batch, c.idle, in);
    out << "violations " << violations.size() << '\n';
    for (const auto& v : violations) out << "  " << to_string(v.kind) << ": " << v.message << '\n';
    if (!eval.batch.feasible) {
        for (const auto& rej : decode(c.perm, in, true).rejections) {
            if (rej.reason == RejectReason::already_placed) continue;
            out << "  rejected code " << rej.code << " (slab " << in.slabs[rej.slab].id << " -> unit "
                << rej.unit + 1 << "): "
                << (rej.reason == RejectReason::unit_length ? "unit length " : "same-width run ")
                << format_number(rej.attempted_km) << " km\n";
        }
        return exit_ok;
    }
    try {
        const auto timed = timing(eval.batch, c.idle, in);
        out << unit_table(unit_rows(eval.batch, timed, in));
    } catch (const Error& e) {
        out << "  " << e.what() << '\n';
    }
    return exit_ok;
}

int cmd_rank(const std::string& front_path, const std::vector<double>& w, const std::string& out_path,
             std::ostream& out) {
    const auto rows = parse_pareto_csv(read_file(front_path));
    std::vector<ObjectiveVector> front;
    for (const auto& r : rows) front.push_back(r.objectives);
    const auto ranking = topsis_rank(front, {w[0], w[1]});
    const auto csv = ranking_csv(ranking);
    if (out_path.empty()) {
        out << csv;
    } else {
        write_file(out_path, csv);
        const auto& best = ranking.recommended();
        out << "recommended row " << best.index + 1 << " closeness " << format_number(best.closeness) << '\n';
    }
    return exit_ok;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::infeasible_instance: return exit_infeasible;
        case ErrorCode::degenerate_front: return exit_degenerate_ranking;
        default: return exit_input_error;
    }
}

int default_thread_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("TOU_SCHED_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
    }
    return n;
}

RunArtifacts solve(const ProblemInstance& in, const SolveOptions& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = evolve(in, o.params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (result.archive.empty()) {
        throw Error(ErrorCode::infeasible_instance, "no feasible schedule found; try more generations");
    }

    RunArtifacts a;
    a.pareto_csv = pareto_csv(result.archive);

    std::vector<ObjectiveVector> front;
    for (const auto& ind : result.archive) front.push_back(ind.objectives);
    TopsisRanking ranking;
    if (front.size() == 1) {
        // nothing to trade off
        ranking.weights = o.weights;
        ranking.entries.push_back({0, 1.0, front[0].power_cost, front[0].penalty});
    } else {
        ranking = topsis_rank(front, o.weights);
    }
    a.ranking_csv = ranking_csv(ranking);

    const auto& best = result.archive[ranking.recommended().index];
    const auto eval = evaluate(best.chromosome, in, o.params.cost_mode);
    const auto timed = timing(eval.batch, best.chromosome.idle, in);
    const auto rows = unit_rows(eval.batch, timed, in);
    const auto hist = load_histogram(timed, in);
    a.schedule_report_csv = schedule_report_csv(rows);
    a.load_histogram_csv = load_histogram_csv(hist);
    a.recommended_solution = serialize_solution(best.chromosome, best.objectives, in);
    if (o.svg) a.gantt_svg = gantt_svg(rows, in);
    a.run_manifest = manifest(in, o, result, wall);

    std::ostringstream s;
    s << "pareto front: " << result.archive.size() << " solutions\n";
    s << "recommended: solution " << ranking.recommended().index + 1 << ", closeness "
      << format_number(ranking.recommended().closeness) << '\n';
    s << "  power cost " << std::fixed << std::setprecision(2) << best.objectives.power_cost << " CNY, penalty "
      << best.objectives.penalty << '\n';
    s << "  on-peak average load " << on_peak_average_load(hist) << " MW\n";
    s << unit_table(rows);
    a.summary = s.str();
    return a;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Electricity-cost-aware batch scheduling under time-of-use tariffs"};
    app.require_subcommand(1);

    SolveOptions solve_opts;
    solve_opts.params.threads = default_thread_count();
    std::string instance_path, out_dir = "tou-sched-out", weights = "0.4,0.6", cost_mode = "proportional";
    auto* solve_cmd = app.add_subcommand("solve", "Optimise a schedule and write the result files");
    solve_cmd->add_option("instance", instance_path, "Instance JSON file")->required();
    solve_cmd->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
    solve_cmd->add_option("--seed", solve_opts.params.rng_seed, "Random seed")->capture_default_str();
    solve_cmd->add_option("--generations", solve_opts.params.generations)->capture_default_str();
    solve_cmd->add_option("--population", solve_opts.params.population_size)->capture_default_str();
    solve_cmd->add_option("--pc", solve_opts.params.crossover_prob, "Crossover probability")->capture_default_str();
    solve_cmd->add_option("--pm", solve_opts.params.mutation_prob, "Mutation probability")->capture_default_str();
    solve_cmd->add_option("--weights", weights, "TOPSIS weights for power cost,penalty")->capture_default_str();
    solve_cmd->add_option("--cost-mode", cost_mode, "proportional or start-period")->capture_default_str();
    solve_cmd->add_flag("--verbose", solve_opts.params.verbose, "Per-generation progress on stderr");
    solve_cmd->add_flag("--svg", solve_opts.svg, "Also write gantt.svg");

    std::string eval_instance, solution_path, eval_mode = "proportional";
    int row = 1;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a solution file or a pareto.csv row");
    eval_cmd->add_option("instance", eval_instance, "Instance JSON file")->required();
    eval_cmd->add_option("solution", solution_path, "Solution JSON or pareto.csv")->required();
    eval_cmd->add_option("--row", row, "1-based row when reading pareto.csv")->capture_default_str();
    eval_cmd->add_option("--cost-mode", eval_mode, "proportional or start-period")->capture_default_str();

    int gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = 1;
    std::string profile = "many-varieties,full-load", gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance");
    gen_cmd->add_option("-n,--slabs", gen_n, "Number of slabs")->required();
    gen_cmd->add_option("-m,--units", gen_m, "Number of rolling units")->required();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--profile", profile, "{many,few}-varieties,{full,not-full}-load")->capture_default_str();
    gen_cmd->add_option("-o,--out", gen_out, "Output file (stdout when omitted)");

    std::string front_path, rank_weights = "0.4,0.6", rank_out;
    auto* rank_cmd = app.add_subcommand("rank", "TOPSIS ranking of a front CSV");
    rank_cmd->add_option("front", front_path, "CSV with f1_cny and f2_penalty columns")->required();
    rank_cmd->add_option("--weights", rank_weights)->capture_default_str();
    rank_cmd->add_option("-o,--out", rank_out, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "tou-sched: " << e.what() << '\n';
        return exit_input_error;
    }

    try {
        if (*solve_cmd) {
            const auto w = parse_weights(weights);
            solve_opts.weights = {w[0], w[1]};
            solve_opts.params.cost_mode = cost_mode_from(cost_mode);
            solve_opts.instance_path = instance_path;
            solve_opts.params.validate();
            const auto in = load_instance(instance_path);
            const auto a = solve(in, solve_opts);
            fs::create_directories(out_dir);
            const fs::path dir(out_dir);
            write_file(dir / "pareto.csv", a.pareto_csv);
            write_file(dir / "ranking.csv", a.ranking_csv);
            write_file(dir / "schedule_report.csv", a.schedule_report_csv);
            write_file(dir / "load_histogram.csv", a.load_histogram_csv);
            write_file(dir / "recommended_solution.json", a.recommended_solution);
            write_file(dir / "manifest.json", a.run_manifest);
            if (a.gantt_svg) write_file(dir / "gantt.svg", *a.gantt_svg);
            out << a.summary << "results written to " << out_dir << '\n';
            return exit_ok;
        }
        if (*eval_cmd) return cmd_evaluate(eval_instance, solution_path, row, cost_mode_from(eval_mode), out);
        if (*gen_cmd) {
            const auto text = serialize_instance(generate_instance(gen_n, gen_m, gen_seed, parse_profile(profile)));
            if (gen_out.empty()) {
                out << text;
            } else {
                write_file(gen_out, text);
            }
            return exit_ok;
        }
        if (*rank_cmd) return cmd_rank(front_path, parse_weights(rank_weights), rank_out, out);
    } catch (const Error& e) {
        err << "tou-sched: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        err << "tou-sched: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}

}  // namespace tousched
