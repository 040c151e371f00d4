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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tousched/error.hpp"
#include "tousched/generator.hpp"
#include "tousched/moea.hpp"

using namespace tousched;

namespace {

std::vector<ObjectiveVector> points(std::initializer_list<std::pair<double, double>> xs) {
    std::vector<ObjectiveVector> out;
    for (auto [a, b] : xs) out.push_back({a, b, true});
    return out;
}

/// Front index of each point by repeatedly peeling the pairwise non-dominated set.
std::vector<int> peel_fronts(const std::vector<ObjectiveVector>& objs) {
    std::vector<int> rank(objs.size(), -1);
    int level = 0;
    std::size_t assigned = 0;
    while (assigned < objs.size()) {
        std::vector<std::size_t> now;
        for (std::size_t i = 0; i < objs.size(); ++i) {
            if (rank[i] >= 0) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < objs.size() && !dominated; ++j) {
                dominated = rank[j] < 0 && dominates(objs[j], objs[i]);
            }
            if (!dominated) now.push_back(i);
        }
        for (auto i : now) rank[i] = level;
        assigned += now.size();
        ++level;
    }
    return rank;
}

bool is_permutation_of(const std::vector<int>& a, std::vector<int> b) {
    auto sa = a;
    std::ranges::sort(sa);
    std::ranges::sort(b);
    return sa == b;
}

}  // namespace

TEST_CASE("non-dominated sort") {
    SUBCASE("strict dominance") {
        const auto f = non_dominated_sort(points({{1, 1}, {2, 2}}));
        CHECK(f == std::vector<std::vector<std::size_t>>{{0}, {1}});
    }
    SUBCASE("mutual non-dominance") {
        const auto f = non_dominated_sort(points({{1, 2}, {2, 1}}));
        CHECK(f == std::vector<std::vector<std::size_t>>{{0, 1}});
    }
    SUBCASE("random points match the pairwise oracle") {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<int> u(0, 12);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<ObjectiveVector> objs;
            for (int i = 0; i < 50; ++i) objs.push_back({double(u(rng)), double(u(rng)), true});
            const auto fronts = non_dominated_sort(objs);
            const auto expected = peel_fronts(objs);
            std::size_t total = 0;
            for (std::size_t f = 0; f < fronts.size(); ++f) {
                total += fronts[f].size();
                CHECK(std::ranges::is_sorted(fronts[f]));
                for (auto i : fronts[f]) CHECK(expected[i] == static_cast<int>(f));
            }
            CHECK(total == objs.size());
        }
    }
}

TEST_CASE("crowding distance") {
    const double inf = std::numeric_limits<double>::infinity();
    SUBCASE("two points are both boundary") {
        CHECK(crowding_distance(points({{1, 2}, {2, 1}})) == std::vector<double>{inf, inf});
        CHECK(crowding_distance(points({{1, 2}})) == std::vector<double>{inf});
    }
    SUBCASE("three collinear points") {
        const auto d = crowding_distance(points({{0, 2}, {1, 1}, {2, 0}}));
        CHECK(d[0] == inf);
        CHECK(d[1] == doctest::Approx(2.0));
        CHECK(d[2] == inf);
    }
    SUBCASE("duplicates share the distance of their point") {
        const auto d = crowding_distance(points({{0, 4}, {1, 3}, {1, 3}, {2, 2}, {4, 0}}));
        CHECK(d[1] == doctest::Approx(0.5 + 0.5));
        CHECK(d[2] == d[1]);
        CHECK(d[3] == doctest::Approx(3.0 / 4.0 + 3.0 / 4.0));
        CHECK(d[0] == inf);
        CHECK(d[4] == inf);
    }
    SUBCASE("all points identical") {
        const auto d = crowding_distance(points({{3, 3}, {3, 3}, {3, 3}}));
        for (double x : d) CHECK(x == inf);
    }
}

TEST_CASE("hypervolume") {
    CHECK(hypervolume_2d(points({{1, 1}}), {3, 3}) == 4.0);
    CHECK(hypervolume_2d(points({{1, 2}, {2, 1}}), {3, 3}) == 3.0);
    CHECK(hypervolume_2d(points({{1, 2}, {2, 1}, {2, 2}}), {3, 3}) == 3.0);
    CHECK(hypervolume_2d(points({{4, 1}}), {3, 3}) == 0.0);
    CHECK(hypervolume_2d({}, {3, 3}) == 0.0);
}

TEST_CASE("PMX worked example") {
    const std::vector<int> p1{1, 2, 3, 4, 5};
    const std::vector<int> p2{5, 4, 3, 2, 1};
    const auto [c1, c2] = pmx_crossover(p1, p2, 1, 3);
    CHECK(c1 == std::vector<int>{1, 4, 3, 2, 5});
    CHECK(c2 == std::vector<int>{5, 2, 3, 4, 1});
}

TEST_CASE("PMX over the whole chromosome swaps the parents") {
    const std::vector<int> p1{3, 1, 4, 2, 5};
    const std::vector<int> p2{2, 5, 1, 3, 4};
    const auto [c1, c2] = pmx_crossover(p1, p2, 0, 4);
    CHECK(c1 == p2);
    CHECK(c2 == p1);
    CHECK_THROWS_AS(pmx_crossover(p1, p2, 3, 1), Error);
    CHECK_THROWS_AS(pmx_crossover(p1, std::vector<int>{1, 2}, 0, 1), Error);
}

TEST_CASE("PMX keeps the segment and preserves permutations") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int len = 2 + trial % 40;
        std::vector<int> p1(len), p2(len);
        std::iota(p1.begin(), p1.end(), 1);
        p2 = p1;
        std::shuffle(p1.begin(), p1.end(), rng);
        std::shuffle(p2.begin(), p2.end(), rng);
        std::uniform_int_distribution<int> cut(0, len - 1);
        int a = cut(rng), b = cut(rng);
        if (a > b) std::swap(a, b);
        const auto [c1, c2] = pmx_crossover(p1, p2, a, b);
        CHECK(is_permutation_of(c1, p1));
        CHECK(is_permutation_of(c2, p1));
        for (int i = a; i <= b; ++i) {
            CHECK(c1[i] == p2[i]);
            CHECK(c2[i] == p1[i]);
        }
    }
}

TEST_CASE("scramble mutation") {
    std::vector<int> perm(30);
    std::iota(perm.begin(), perm.end(), 1);
    SUBCASE("seeded output repeats") {
        std::mt19937_64 a(4), b(4);
        CHECK(scramble_mutation(perm, 6, a) == scramble_mutation(perm, 6, b));
    }
    SUBCASE("changes stay inside one window") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto out = scramble_mutation(perm, 5, rng);
            CHECK(is_permutation_of(out, perm));
            int first = -1, last = -1;
            for (int i = 0; i < 30; ++i) {
                if (out[i] != perm[i]) {
                    if (first < 0) first = i;
                    last = i;
                }
            }
            if (first >= 0) CHECK(last - first < 5);
        }
    }
    SUBCASE("window bounds") {
        std::mt19937_64 rng(1);
        CHECK_THROWS_AS(scramble_mutation(perm, 1, rng), Error);
        CHECK_THROWS_AS(scramble_mutation(perm, 31, rng), Error);
        CHECK_NOTHROW(scramble_mutation(perm, 30, rng));
    }
}

TEST_CASE("generation streams are independent and repeatable") {
    auto a = generation_rng(5, 3);
    auto b = generation_rng(5, 3);
    auto c = generation_rng(5, 4);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}

TEST_CASE("solver parameter validation") {
    SolverParams p;
    CHECK_NOTHROW(p.validate());
    p.population_size = 7;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.crossover_prob = 1.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.threads = 0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    const auto in = generate_instance(442, 8, 1, {});
    CHECK(p.effective_scramble_len(in) == 44);
}

TEST_CASE("evolve") {
    const auto in = generate_instance(30, 3, 2, {Variety::many, Load::not_full});
    SolverParams p;
    p.population_size = 20;
    p.generations = 30;
    p.rng_seed = 3;

    SUBCASE("zero generations keep the initial non-dominated set") {
        p.generations = 0;
        const auto r = evolve(in, p);
        REQUIRE(r.history.size() == 1);
        std::vector<ObjectiveVector> init;
        for (const auto& ind : r.final_population) {
            if (ind.objectives.feasible) init.push_back(ind.objectives);
        }
        std::set<std::pair<double, double>> expected;
        if (!init.empty()) {
            const auto fronts = non_dominated_sort(init);
            for (auto i : fronts[0]) expected.insert({init[i].power_cost, init[i].penalty});
        }
        std::set<std::pair<double, double>> got;
        for (const auto& ind : r.archive) got.insert({ind.objectives.power_cost, ind.objectives.penalty});
        CHECK(got == expected);
    }
    SUBCASE("same seed, same archive; thread count does not matter") {
        const auto a = evolve(in, p);
        p.threads = 3;
        const auto b = evolve(in, p);
        REQUIRE(a.archive.size() == b.archive.size());
        for (std::size_t i = 0; i < a.archive.size(); ++i) {
            CHECK(a.archive[i].chromosome == b.archive[i].chromosome);
            CHECK(a.archive[i].objectives == b.archive[i].objectives);
        }
    }
    SUBCASE("archive is feasible, mutually non-dominated and sorted") {
        const auto r = evolve(in, p);
        REQUIRE_FALSE(r.archive.empty());
        for (std::size_t i = 0; i < r.archive.size(); ++i) {
            CHECK(r.archive[i].objectives.feasible);
            CHECK(check_constraints(decode(r.archive[i].chromosome.perm, in), r.archive[i].chromosome.idle, in).empty());
            if (i > 0) CHECK(r.archive[i - 1].objectives.power_cost < r.archive[i].objectives.power_cost);
            for (std::size_t j = 0; j < r.archive.size(); ++j) {
                CHECK_FALSE(dominates(r.archive[j].objectives, r.archive[i].objectives));
            }
        }
        for (std::size_t g = 1; g < r.history.size(); ++g) {
            CHECK(r.history[g].hypervolume >= r.history[g - 1].hypervolume);
        }
    }
    SUBCASE("penalty-only selection keeps one best-penalty point") {
        p.penalty_only = true;
        const auto r = evolve(in, p);
        REQUIRE(r.archive.size() == 1);
        for (const auto& ind : r.final_population) {
            if (ind.objectives.feasible) CHECK(ind.objectives.penalty >= r.archive[0].objectives.penalty);
        }
    }
}
