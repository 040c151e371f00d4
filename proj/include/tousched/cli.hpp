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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tousched/artifacts.hpp"
#include "tousched/error.hpp"
#include "tousched/moea.hpp"
#include "tousched/topsis.hpp"

namespace tousched {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 2,
    exit_infeasible = 3,
    exit_degenerate_ranking = 4,
};

/// Exit status the command line reports for an error of this kind.
int exit_code_for(ErrorCode code);

/// Everything `solve` writes, as file contents.
struct RunArtifacts {
    std::string pareto_csv;
    std::string ranking_csv;
    std::string schedule_report_csv;
    std::string load_histogram_csv;
    std::string recommended_solution;
    std::optional<std::string> gantt_svg;
    std::string run_manifest;
    std::string summary;  ///< human-readable recommendation
};

struct SolveOptions {
    SolverParams params;
    TopsisWeights weights;
    bool svg = false;
    std::string instance_path;  ///< recorded in the manifest only
};

/// evolve + TOPSIS on an already loaded instance. Throws
/// Error(infeasible_instance) when the run finds no feasible schedule.
RunArtifacts solve(const ProblemInstance& instance, const SolveOptions& options);

/// Thread count for evaluation: hardware concurrency, capped by the
/// TOU_SCHED_THREADS environment variable when it holds a positive integer.
int default_thread_count();

/// Entry point of the `tou-sched` executable. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tousched
