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

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "tousched/objectives.hpp"

namespace tousched {

struct Individual {
    Chromosome chromosome;
    ObjectiveVector objectives;
    int rank = 1;
    double crowding = 0.0;
};

struct SolverParams {
    int population_size = 50;
    int generations = 2000;
    double crossover_prob = 0.4;
    double mutation_prob = 0.6;
    int scramble_max_len = 0;  ///< 0 selects max(2, n / 10)
    std::uint64_t rng_seed = 1;
    CostMode cost_mode = CostMode::proportional;
    int threads = 1;
    /// Select on the penalty alone (power cost is still evaluated and
    /// reported). Used for the conventional, cost-blind baseline.
    bool penalty_only = false;
    bool verbose = false;
    /// Hypervolume reference point (f1, f2). Derived from the first feasible
    /// archive when unset, then kept fixed for the whole run.
    std::optional<std::pair<double, double>> hv_reference;

    /// Throws Error(invalid_argument) on an odd or too small population,
    /// probabilities outside [0, 1], negative generations or threads < 1.
    void validate() const;
    int effective_scramble_len(const ProblemInstance& instance) const;
};

struct GenerationStats {
    int generation = 0;
    std::size_t front_size = 0;    ///< first front of the population
    std::size_t archive_size = 0;  ///< non-dominated archive
    double best_power_cost = 0.0;
    double best_penalty = 0.0;
    double hypervolume = 0.0;
};

struct EvolveResult {
    /// Non-dominated feasible individuals found during the run, sorted by
    /// power cost then penalty.
    std::vector<Individual> archive;
    std::vector<Individual> final_population;
    std::vector<GenerationStats> history;
    std::pair<double, double> hv_reference{0.0, 0.0};
};

/// Fast non-dominated sort (both objectives minimised). Fronts list indices
/// in ascending order; front 0 is the non-dominated set.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> objs);

/// Crowding distance within one front. Boundary points get +infinity;
/// identical objective vectors share the distance of their common point.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// 2-D hypervolume dominated by `points` and bounded by `reference`.
double hypervolume_2d(std::span<const ObjectiveVector> points, std::pair<double, double> reference);

/// Partially mapped crossover with the segment [first, last] (zero-based,
/// inclusive). child1 takes parent2's segment, child2 takes parent1's.
std::pair<std::vector<int>, std::vector<int>> pmx_crossover(std::span<const int> parent1,
                                                            std::span<const int> parent2, std::size_t first,
                                                            std::size_t last);
std::pair<std::vector<int>, std::vector<int>> pmx_crossover(std::span<const int> parent1,
                                                            std::span<const int> parent2, std::mt19937_64& rng);

/// Scramble sub-list mutation: shuffles a random window [p1, p2] with
/// p2 - p1 < max_len. Requires 2 <= max_len <= size.
std::vector<int> scramble_mutation(std::span<const int> perm, int max_len, std::mt19937_64& rng);

/// Random generator for generation `generation` of a run seeded with `seed`:
/// mt19937_64 seeded through std::seed_seq{seed lo, seed hi, gen lo, gen hi}.
std::mt19937_64 generation_rng(std::uint64_t seed, std::uint64_t generation);

/// Fresh idle vector for `chromosome`'s permutation: a uniform draw within
/// the decoded slack followed by allocate_idle (left at zero when the
/// decode is infeasible).
void refresh_idle(Chromosome& chromosome, const ProblemInstance& instance, std::mt19937_64& rng);

/// NSGA-II with PMX crossover, scramble mutation and idle reallocation after
/// every variation. Deterministic for a given seed, whatever `threads` is.
EvolveResult evolve(const ProblemInstance& instance, const SolverParams& params);

}  // namespace tousched
