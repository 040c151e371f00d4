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

#include <cmath>
#include <random>

#include "doctest.h"
#include "tousched/error.hpp"
#include "tousched/topsis.hpp"

using namespace tousched;

namespace {

// Eight trade-off solutions from a production study and their reference
// closeness values.
const std::vector<ObjectiveVector> kStudyFront{
    {300600.61, 7097, true},  {300414.79, 7424, true},  {300079.79, 8081, true},  {300296.46, 7949, true},
    {301898.17, 6654, true},  {299376.89, 9916, true},  {299368.24, 10899, true}, {298841.41, 13330, true},
};
const double kStudyCloseness[] = {0.7772, 0.7758, 0.7458, 0.7418, 0.6845, 0.5627, 0.4514, 0.3155};

/// Textbook TOPSIS written out longhand, for cross-checking.
std::vector<double> longhand(const std::vector<ObjectiveVector>& f, double w1, double w2) {
    const std::size_t n = f.size();
    double lo1 = f[0].power_cost, lo2 = f[0].penalty;
    for (const auto& x : f) lo1 = std::min(lo1, x.power_cost), lo2 = std::min(lo2, x.penalty);
    double s1 = 0, s2 = 0;
    for (const auto& x : f) s1 += (x.power_cost - lo1) * (x.power_cost - lo1), s2 += (x.penalty - lo2) * (x.penalty - lo2);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = w1 * (f[i].power_cost - lo1) / std::sqrt(s1);
        b[i] = w2 * (f[i].penalty - lo2) / std::sqrt(s2);
    }
    const double a_best = *std::min_element(a.begin(), a.end()), a_worst = *std::max_element(a.begin(), a.end());
    const double b_best = *std::min_element(b.begin(), b.end()), b_worst = *std::max_element(b.begin(), b.end());
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double plus = std::sqrt((a[i] - a_best) * (a[i] - a_best) + (b[i] - b_best) * (b[i] - b_best));
        const double minus = std::sqrt((a[i] - a_worst) * (a[i] - a_worst) + (b[i] - b_worst) * (b[i] - b_worst));
        c[i] = minus / (plus + minus);
    }
    return c;
}

}  // namespace

TEST_CASE("two-point hand computation") {
    const std::vector<ObjectiveVector> f{{10, 20, true}, {30, 5, true}};
    const auto r = topsis_rank(f, {0.4, 0.6});
    REQUIRE(r.entries.size() == 2);
    CHECK(r.recommended().index == 1);
    CHECK(r.entries[0].closeness == doctest::Approx(0.6));
    CHECK(r.entries[1].closeness == doctest::Approx(0.4));
    CHECK(r.entries[1].power_cost == 10);
}

TEST_CASE("a dominating point ranks above the point it dominates") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ObjectiveVector> f;
        for (int i = 0; i < 6; ++i) f.push_back({u(rng), u(rng), true});
        f.push_back({f[0].power_cost + 1.0 + u(rng), f[0].penalty + 1.0 + u(rng), true});
        const auto r = topsis_rank(f, {0.4, 0.6});
        std::vector<double> c(f.size());
        for (const auto& e : r.entries) c[e.index] = e.closeness;
        CHECK(c[0] > c[6]);
    }
}

TEST_CASE("closeness matches the longhand computation") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ObjectiveVector> f;
        for (int i = 0; i < 10; ++i) f.push_back({u(rng), u(rng), true});
        const auto expected = longhand(f, 0.4, 0.6);
        const auto r = topsis_rank(f, {0.4, 0.6});
        for (const auto& e : r.entries) CHECK(e.closeness == doctest::Approx(expected[e.index]).epsilon(1e-12));
        for (std::size_t k = 1; k < r.entries.size(); ++k) CHECK(r.entries[k - 1].closeness >= r.entries[k].closeness);
    }
}

TEST_CASE("reference closeness values come out under a 1:2 weighting") {
    const auto r = topsis_rank(kStudyFront, {0.333, 0.667});
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
        CHECK(r.entries[k].index == k);
        CHECK(std::abs(r.entries[k].closeness - kStudyCloseness[k]) < 6e-5);
    }
    const auto third = topsis_rank(kStudyFront, {1.0 / 3.0, 2.0 / 3.0});
    for (std::size_t k = 0; k < third.entries.size(); ++k) {
        CHECK(third.entries[k].index == k);
        CHECK(std::abs(third.entries[k].closeness - kStudyCloseness[k]) < 3e-4);
    }
}

TEST_CASE("study front under 0.4/0.6") {
    const auto r = topsis_rank(kStudyFront, {0.4, 0.6});
    // the first two swap places under this weighting; the rest keep their order
    CHECK(r.entries[0].index == 1);
    CHECK(r.entries[1].index == 0);
    for (std::size_t k = 2; k < r.entries.size(); ++k) CHECK(r.entries[k].index == k);
}

TEST_CASE("positive rescaling of a column keeps the ranking") {
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(1.0, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ObjectiveVector> f, g;
        for (int i = 0; i < 8; ++i) f.push_back({u(rng), u(rng), true});
        const double scale = 0.01 + u(rng);
        for (const auto& x : f) g.push_back({x.power_cost * scale, x.penalty, true});
        const auto a = topsis_rank(f), b = topsis_rank(g);
        for (std::size_t k = 0; k < a.entries.size(); ++k) {
            CHECK(a.entries[k].index == b.entries[k].index);
            CHECK(a.entries[k].closeness == doctest::Approx(b.entries[k].closeness));
        }
    }
}

TEST_CASE("weights can change the top row") {
    const std::vector<ObjectiveVector> f{{0, 10, true}, {4, 4, true}, {10, 0, true}, {6, 1, true}};
    const auto cost_heavy = topsis_rank(f, {0.6, 0.4});
    const auto penalty_heavy = topsis_rank(f, {0.4, 0.6});
    for (const auto* r : {&cost_heavy, &penalty_heavy}) {
        const auto expected = longhand(f, r->weights.power_cost, r->weights.penalty);
        for (const auto& e : r->entries) CHECK(e.closeness == doctest::Approx(expected[e.index]));
    }
    CHECK(cost_heavy.recommended().index != penalty_heavy.recommended().index);
}

TEST_CASE("degenerate fronts") {
    auto code_of = [](const std::vector<ObjectiveVector>& f) {
        try {
            topsis_rank(f);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::parse;
    };
    CHECK(code_of({{1, 1, true}}) == ErrorCode::degenerate_front);
    CHECK(code_of({{1, 1, true}, {1, 1, true}}) == ErrorCode::degenerate_front);
    CHECK(code_of({{1, 1, true}, {2, 1, true}}) == ErrorCode::degenerate_front);
    CHECK_THROWS_AS(topsis_rank(std::vector<ObjectiveVector>{{1, 2, true}, {2, 1, true}}, {0.0, 1.0}), Error);
}

TEST_CASE("equal closeness keeps input order") {
    const std::vector<ObjectiveVector> f{{0, 1, true}, {1, 0, true}};
    const auto r = topsis_rank(f, {0.5, 0.5});
    CHECK(r.entries[0].index == 0);
    CHECK(r.entries[1].index == 1);
}
