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

#include "tousched/moea.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "tousched/error.hpp"

namespace tousched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Objectives the selection operates on; power cost is masked out for the
/// penalty-only baseline.
ObjectiveVector selection_view(const ObjectiveVector& o, bool penalty_only) {
    if (!o.feasible || !penalty_only) return o;
    return {0.0, o.penalty, true};
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

void evaluate_all(std::vector<Individual>& pop, const ProblemInstance& in, const SolverParams& p) {
    parallel_for(pop.size(), p.threads,
                 [&](std::size_t i) { pop[i].objectives = evaluate(pop[i].chromosome, in, p.cost_mode).objectives; });
}

bool better(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

std::size_t tournament(const std::vector<Individual>& pop, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    return better(pop[b], pop[a]) ? b : a;
}

/// Unbounded archive of mutually non-dominated feasible individuals;
/// exact objective duplicates keep the earliest entry.
class ParetoArchive {
 public:
    explicit ParetoArchive(bool penalty_only) : penalty_only_(penalty_only) {}

    void insert(const Individual& ind) {
        if (!ind.objectives.feasible) return;
        const ObjectiveVector v = selection_view(ind.objectives, penalty_only_);
        for (const auto& m : members_) {
            const ObjectiveVector w = selection_view(m.objectives, penalty_only_);
            if (dominates(w, v) || (w.power_cost == v.power_cost && w.penalty == v.penalty)) return;
        }
        std::erase_if(members_, [&](const Individual& m) {
            return dominates(v, selection_view(m.objectives, penalty_only_));
        });
        members_.push_back(ind);
    }

    std::vector<ObjectiveVector> views() const {
        std::vector<ObjectiveVector> out;
        out.reserve(members_.size());
        for (const auto& m : members_) out.push_back(selection_view(m.objectives, penalty_only_));
        return out;
    }

    std::vector<Individual> sorted() const {
        auto out = members_;
        std::ranges::stable_sort(out, [](const Individual& a, const Individual& b) {
            if (a.objectives.power_cost != b.objectives.power_cost) {
                return a.objectives.power_cost < b.objectives.power_cost;
            }
            return a.objectives.penalty < b.objectives.penalty;
        });
        return out;
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

 private:
    bool penalty_only_;
    std::vector<Individual> members_;
};

/// Ranks `pool` and keeps the best `target` individuals (NSGA-II
/// environmental selection). Crowding ties keep index order.
std::vector<Individual> environmental_selection(std::vector<Individual> pool, std::size_t target,
                                                bool penalty_only) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pool.size());
    for (const auto& ind : pool) objs.push_back(selection_view(ind.objectives, penalty_only));
    // Repeats of an objective vector already in the pool only fill leftover
    // places, after every distinct vector.
    std::vector<std::size_t> distinct, repeats;
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](std::size_t j) {
            return objs[j].power_cost == objs[i].power_cost && objs[j].penalty == objs[i].penalty;
        });
        (seen ? repeats : distinct).push_back(i);
    }
    std::vector<ObjectiveVector> distinct_objs;
    for (std::size_t i : distinct) distinct_objs.push_back(objs[i]);
    auto fronts = non_dominated_sort(distinct_objs);
    for (auto& front : fronts) {
        for (auto& idx : front) idx = distinct[idx];
    }
    if (!repeats.empty()) fronts.push_back(repeats);

    std::vector<Individual> next;
    next.reserve(target);
    for (std::size_t f = 0; f < fronts.size() && next.size() < target; ++f) {
        const auto& front = fronts[f];
        std::vector<ObjectiveVector> fobjs;
        fobjs.reserve(front.size());
        for (std::size_t idx : front) fobjs.push_back(objs[idx]);
        const auto dist = crowding_distance(fobjs);

        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        if (next.size() + front.size() > target) {
            std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
            order.resize(target - next.size());
        }
        for (std::size_t o : order) {
            Individual ind = std::move(pool[front[o]]);
            ind.rank = static_cast<int>(f) + 1;
            ind.crowding = dist[o];
            next.push_back(std::move(ind));
        }
    }
    return next;
}

}  // namespace

void SolverParams::validate() const {
    auto fail = [](const char* msg) { throw Error(ErrorCode::invalid_argument, msg); };
    if (population_size < 4 || population_size % 2 != 0) fail("population size must be even and >= 4");
    if (generations < 0) fail("generations must be non-negative");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) fail("crossover probability must be in [0, 1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) fail("mutation probability must be in [0, 1]");
    if (scramble_max_len < 0 || scramble_max_len == 1) fail("scramble length must be 0 (auto) or >= 2");
    if (threads < 1) fail("threads must be >= 1");
}

int SolverParams::effective_scramble_len(const ProblemInstance& in) const {
    const int len = in.slab_count() * in.unit_count;
    const int wanted = scramble_max_len > 0 ? scramble_max_len : std::max(2, in.slab_count() / 10);
    return std::min(wanted, len);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> objs) {
    const std::size_t n = objs.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objs[i], objs[j])) {
                dominated_by_me[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(objs[j], objs[i])) {
                dominated_by_me[j].push_back(i);
                ++domination_count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by_me[i]) {
                if (--domination_count[j] == 0) next.push_back(j);
            }
        }
        std::ranges::sort(next);
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    // Collapse identical vectors so duplicates share one distance.
    std::vector<std::size_t> unique;  // index into front of each distinct vector
    std::vector<std::size_t> owner(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::ranges::find_if(unique, [&](std::size_t u) {
            return front[u].power_cost == front[i].power_cost && front[u].penalty == front[i].penalty;
        });
        if (it == unique.end()) {
            owner[i] = unique.size();
            unique.push_back(i);
        } else {
            owner[i] = static_cast<std::size_t>(it - unique.begin());
        }
    }

    const std::size_t u = unique.size();
    std::vector<double> dist(u, 0.0);
    if (u <= 2) {
        std::ranges::fill(dist, kInf);
    } else {
        for (int objective = 0; objective < 2; ++objective) {
            auto value = [&](std::size_t k) {
                const auto& o = front[unique[k]];
                return objective == 0 ? o.power_cost : o.penalty;
            };
            std::vector<std::size_t> order(u);
            std::iota(order.begin(), order.end(), 0);
            std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
            dist[order.front()] = kInf;
            dist[order.back()] = kInf;
            const double range = value(order.back()) - value(order.front());
            if (range <= 0.0) continue;
            for (std::size_t k = 1; k + 1 < u; ++k) {
                dist[order[k]] += (value(order[k + 1]) - value(order[k - 1])) / range;
            }
        }
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = dist[owner[i]];
    return out;
}

double hypervolume_2d(std::span<const ObjectiveVector> points, std::pair<double, double> reference) {
    std::vector<ObjectiveVector> pts;
    for (const auto& p : points) {
        if (p.feasible && p.power_cost < reference.first && p.penalty < reference.second) pts.push_back(p);
    }
    std::ranges::sort(pts, [](const ObjectiveVector& a, const ObjectiveVector& b) {
        return a.power_cost != b.power_cost ? a.power_cost < b.power_cost : a.penalty < b.penalty;
    });
    double volume = 0.0;
    double ceiling = reference.second;
    for (const auto& p : pts) {
        if (p.penalty >= ceiling) continue;
        volume += (reference.first - p.power_cost) * (ceiling - p.penalty);
        ceiling = p.penalty;
    }
    return volume;
}

std::pair<std::vector<int>, std::vector<int>> pmx_crossover(std::span<const int> parent1,
                                                            std::span<const int> parent2, std::size_t first,
                                                            std::size_t last) {
    const std::size_t len = parent1.size();
    if (parent2.size() != len) throw Error(ErrorCode::invalid_argument, "pmx: parents differ in length");
    if (first > last || last >= len) throw Error(ErrorCode::invalid_argument, "pmx: bad crossover segment");

    const int max_value = len == 0 ? 0 : std::max(*std::ranges::max_element(parent1), 1);
    auto make_child = [&](std::span<const int> base, std::span<const int> donor) {
        // donor value in the segment -> base value it displaced
        std::vector<int> mapping(static_cast<std::size_t>(max_value) + 1, 0);
        std::vector<char> in_segment(static_cast<std::size_t>(max_value) + 1, 0);
        for (std::size_t i = first; i <= last; ++i) {
            mapping[donor[i]] = base[i];
            in_segment[donor[i]] = 1;
        }
        std::vector<int> child(base.begin(), base.end());
        for (std::size_t i = 0; i < len; ++i) {
            if (i >= first && i <= last) {
                child[i] = donor[i];
                continue;
            }
            int gene = base[i];
            while (in_segment[gene]) gene = mapping[gene];
            child[i] = gene;
        }
        return child;
    };
    return {make_child(parent1, parent2), make_child(parent2, parent1)};
}

std::pair<std::vector<int>, std::vector<int>> pmx_crossover(std::span<const int> parent1,
                                                            std::span<const int> parent2, std::mt19937_64& rng) {
    if (parent1.empty()) return {{}, {}};
    std::uniform_int_distribution<std::size_t> cut(0, parent1.size() - 1);
    std::size_t a = cut(rng);
    std::size_t b = cut(rng);
    if (a > b) std::swap(a, b);
    return pmx_crossover(parent1, parent2, a, b);
}

std::vector<int> scramble_mutation(std::span<const int> perm, int max_len, std::mt19937_64& rng) {
    const std::size_t len = perm.size();
    if (max_len < 2 || static_cast<std::size_t>(max_len) > len) {
        throw Error(ErrorCode::invalid_argument, "scramble: window length must be in [2, size]");
    }
    std::vector<int> out(perm.begin(), perm.end());
    std::uniform_int_distribution<std::size_t> start(0, len - 1);
    const std::size_t p1 = start(rng);
    const std::size_t hi = std::min(len - 1, p1 + static_cast<std::size_t>(max_len) - 1);
    std::uniform_int_distribution<std::size_t> stop(p1, hi);
    const std::size_t p2 = stop(rng);
    std::shuffle(out.begin() + static_cast<std::ptrdiff_t>(p1), out.begin() + static_cast<std::ptrdiff_t>(p2) + 1,
                 rng);
    return out;
}

std::mt19937_64 generation_rng(std::uint64_t seed, std::uint64_t generation) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(generation), static_cast<std::uint32_t>(generation >> 32)};
    return std::mt19937_64(seq);
}

void refresh_idle(Chromosome& c, const ProblemInstance& in, std::mt19937_64& rng) {
    const BatchSchedule batch = decode(c.perm, in);
    const double slack = batch.feasible ? in.horizon_h - batch.scheduled_processing_h(in) : 0.0;
    c.idle = draw_idle(in.unit_count, slack, rng);
    if (batch.feasible) c.idle = allocate_idle(batch, in, c.idle);
}

EvolveResult evolve(const ProblemInstance& in, const SolverParams& p) {
    p.validate();
    const std::size_t pop_size = static_cast<std::size_t>(p.population_size);
    const int code_count = in.slab_count() * in.unit_count;
    const int scramble_len = p.effective_scramble_len(in);

    EvolveResult result;
    ParetoArchive archive(p.penalty_only);
    std::optional<std::pair<double, double>> reference = p.hv_reference;

    auto record = [&](int generation, const std::vector<Individual>& pop) {
        if (!reference && !archive.empty()) {
            double worst_cost = 0.0;
            double worst_penalty = 0.0;
            for (const auto& v : archive.views()) {
                worst_cost = std::max(worst_cost, v.power_cost);
                worst_penalty = std::max(worst_penalty, v.penalty);
            }
            reference = std::pair{worst_cost * 1.01 + 1.0, worst_penalty * 1.1 + 1.0};
        }
        GenerationStats s;
        s.generation = generation;
        s.front_size = static_cast<std::size_t>(
            std::ranges::count_if(pop, [](const Individual& ind) { return ind.rank == 1 && ind.objectives.feasible; }));
        s.archive_size = archive.size();
        s.best_power_cost = kInfeasibleObjective;
        s.best_penalty = kInfeasibleObjective;
        for (const auto& v : archive.views()) {
            s.best_power_cost = std::min(s.best_power_cost, v.power_cost);
            s.best_penalty = std::min(s.best_penalty, v.penalty);
        }
        s.hypervolume = reference ? hypervolume_2d(archive.views(), *reference) : 0.0;
        if (p.verbose) {
            std::fprintf(stderr, "gen %d front %zu archive %zu best_f1 %.2f best_f2 %.2f hv %.6g\n", generation,
                         s.front_size, s.archive_size, s.best_power_cost, s.best_penalty, s.hypervolume);
        }
        result.history.push_back(s);
    };

    std::vector<Individual> pop(pop_size);
    {
        auto rng = generation_rng(p.rng_seed, 0);
        for (auto& ind : pop) {
            ind.chromosome = random_chromosome(in, rng);
            const BatchSchedule batch = decode(ind.chromosome.perm, in);
            if (batch.feasible) ind.chromosome.idle = allocate_idle(batch, in, ind.chromosome.idle);
        }
    }
    evaluate_all(pop, in, p);
    pop = environmental_selection(std::move(pop), pop_size, p.penalty_only);
    for (const auto& ind : pop) archive.insert(ind);
    record(0, pop);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int g = 1; g <= p.generations; ++g) {
        auto rng = generation_rng(p.rng_seed, static_cast<std::uint64_t>(g));
        std::vector<Individual> offspring;
        offspring.reserve(pop_size);
        while (offspring.size() < pop_size) {
            Chromosome c1 = pop[tournament(pop, rng)].chromosome;
            Chromosome c2 = pop[tournament(pop, rng)].chromosome;
            bool varied1 = false;
            bool varied2 = false;
            if (unit(rng) < p.crossover_prob) {
                std::tie(c1.perm, c2.perm) = pmx_crossover(c1.perm, c2.perm, rng);
                varied1 = varied2 = true;
            }
            if (code_count >= 2 && unit(rng) < p.mutation_prob) {
                c1.perm = scramble_mutation(c1.perm, scramble_len, rng);
                varied1 = true;
            }
            if (code_count >= 2 && unit(rng) < p.mutation_prob) {
                c2.perm = scramble_mutation(c2.perm, scramble_len, rng);
                varied2 = true;
            }
            if (varied1) refresh_idle(c1, in, rng);
            if (varied2) refresh_idle(c2, in, rng);
            offspring.push_back({std::move(c1), {}, 1, 0.0});
            offspring.push_back({std::move(c2), {}, 1, 0.0});
        }
        evaluate_all(offspring, in, p);
        for (const auto& ind : offspring) archive.insert(ind);

        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        pop = environmental_selection(std::move(combined), pop_size, p.penalty_only);
        record(g, pop);
    }

    result.archive = archive.sorted();
    result.final_population = std::move(pop);
    result.hv_reference = reference.value_or(std::pair{0.0, 0.0});
    return result;
}

}  // namespace tousched
