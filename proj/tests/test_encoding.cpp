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
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tousched/encoding.hpp"
#include "tousched/error.hpp"
#include "tousched/generator.hpp"

using namespace tousched;
using tousched::testing::slab;

namespace {

/// Slab i in unit i, followed by every other code.
std::vector<int> diagonal_perm(int n) {
    std::vector<int> perm;
    for (int i = 0; i < n; ++i) perm.push_back(code_for({i, i}, n));
    for (int c = 1; c <= n * n; ++c) {
        if (std::find(perm.begin(), perm.end(), c) == perm.end()) perm.push_back(c);
    }
    return perm;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("code mapping") {
    CHECK(code_target(1, 4).slab == 0);
    CHECK(code_target(1, 4).unit == 0);
    CHECK(code_target(6, 4).slab == 1);
    CHECK(code_target(6, 4).unit == 1);
    CHECK(code_target(8, 4).slab == 3);
    CHECK(code_target(8, 4).unit == 1);
    for (int c = 1; c <= 12; ++c) CHECK(code_for(code_target(c, 4), 4) == c);
    CHECK(is_permutation_of_codes(std::vector<int>{2, 1, 3}, 3));
    CHECK_FALSE(is_permutation_of_codes(std::vector<int>{2, 2, 3}, 3));
    CHECK_FALSE(is_permutation_of_codes(std::vector<int>{0, 1, 2}, 3));
}

TEST_CASE("decode a four-slab, two-unit permutation") {
    const auto in = testing::loose_instance(4, 2);
    const auto b = decode(std::vector<int>{1, 6, 3, 8, 2, 4, 5, 7}, in);
    REQUIRE(b.feasible);
    CHECK(b.units == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
    CHECK(b.unit_length_km == std::vector<double>{2.0, 2.0});
    CHECK(b.unplaced.empty());
}

TEST_CASE("single slab") {
    auto in = testing::loose_instance(1, 1);
    const auto b = decode(std::vector<int>{1}, in);
    CHECK(b.feasible);
    CHECK(b.units == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("decode is pure") {
    const auto in = generate_instance(20, 2, 3, {});
    std::mt19937_64 rng(1);
    const auto c = random_chromosome(in, rng);
    const auto a = decode(c.perm, in);
    const auto b = decode(c.perm, in);
    CHECK(a.units == b.units);
    CHECK(a.feasible == b.feasible);
}

TEST_CASE("a slab that fits nowhere makes the decode infeasible") {
    auto in = testing::loose_instance(3, 1, 1.0, 2.0);
    const auto b = decode(std::vector<int>{1, 2, 3}, in, true);
    CHECK_FALSE(b.feasible);
    CHECK(b.unplaced == std::vector<int>{2});
    REQUIRE(b.rejections.size() == 1);
    CHECK(b.rejections[0].reason == RejectReason::unit_length);
    CHECK(b.rejections[0].attempted_km == doctest::Approx(3.0));
}

TEST_CASE("units shorter than the minimum make the decode infeasible") {
    auto in = testing::loose_instance(3, 2, 2.0, 10.0);
    // slabs 1, 2 and 3 all in unit 1, unit 2 empty
    const auto b = decode(std::vector<int>{1, 2, 3, 4, 5, 6}, in);
    CHECK_FALSE(b.feasible);
    CHECK(b.short_units == std::vector<int>{1});
}

TEST_CASE("same-width run limit") {
    ProblemInstance in = testing::loose_instance(3, 1, 0.5, 10.0);
    for (auto& s : in.slabs) s.width_mm = 1200.0;
    in.max_same_width_run_km = 2.0;
    const auto b = decode(std::vector<int>{1, 2, 3}, in, true);
    CHECK_FALSE(b.feasible);
    REQUIRE(b.rejections.size() == 1);
    CHECK(b.rejections[0].reason == RejectReason::same_width_run);
    in.slabs[1].width_mm = 1100.0;
    CHECK(decode(std::vector<int>{1, 2, 3}, in).feasible);
}

TEST_CASE("a rejected slab does not reset the width run") {
    ProblemInstance in = testing::loose_instance(4, 1, 0.5, 10.0);
    in.slabs[0].width_mm = in.slabs[1].width_mm = in.slabs[3].width_mm = 1200.0;
    in.slabs[2].width_mm = 900.0;
    in.slabs[2].length_km = 20.0;  // too long for any unit
    in.max_same_width_run_km = 2.0;
    const auto b = decode(std::vector<int>{1, 2, 3, 4}, in, true);
    // slab 3 is rejected, so slab 4 would extend the run of slabs 1 and 2
    CHECK(b.units == std::vector<std::vector<int>>{{0, 1}});
    CHECK(b.rejections.size() == 2);
}

TEST_CASE("bad permutations are refused") {
    const auto in = testing::loose_instance(2, 2);
    CHECK_THROWS_AS(decode(std::vector<int>{1, 2, 3}, in), Error);
    CHECK_THROWS_AS(decode(std::vector<int>{1, 1, 2, 3}, in), Error);
}

TEST_CASE("timing") {
    const auto in = testing::eight_unit_day();
    const auto b = decode(diagonal_perm(8), in);
    REQUIRE(b.feasible);
    SUBCASE("zero idle gives prefix sums") {
        const auto t = timing(b, std::vector<double>(8, 0.0), in);
        double at = 0.0;
        for (int k = 0; k < 8; ++k) {
            CHECK(t.units[k].start_h == doctest::Approx(at));
            at += in.slabs[k].processing_h;
            CHECK(t.units[k].end_h == doctest::Approx(at));
        }
        CHECK(t.units[0].end_h == doctest::Approx(2.67));
    }
    SUBCASE("idle before the first unit shifts everything") {
        const auto base = timing(b, std::vector<double>(8, 0.0), in);
        std::vector<double> v(8, 0.0);
        v[0] = 0.5;
        const auto shifted = timing(b, v, in);
        for (int k = 0; k < 8; ++k) CHECK(shifted.units[k].start_h == doctest::Approx(base.units[k].start_h + 0.5));
        for (int s = 0; s < 8; ++s) CHECK(shifted.slab_start_h[s] == doctest::Approx(base.slab_start_h[s] + 0.5));
    }
    SUBCASE("too much idle overflows the horizon") {
        std::vector<double> v(8, 0.0);
        v[3] = 1.0;
        try {
            timing(b, v, in);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::horizon_overflow);
        }
    }
    SUBCASE("size mismatch") { CHECK_THROWS_AS(timing(b, std::vector<double>(7, 0.0), in), Error); }
}

TEST_CASE("idle before a unit straddling on-peak moves behind it") {
    const auto in = testing::eight_unit_day();
    const auto b = decode(diagonal_perm(8), in);
    REQUIRE(b.feasible);
    CHECK(in.slack_h() == doctest::Approx(0.67));

    // unit 7 ends at 21:00 sharp, inside on-peak, after starting in mid-peak
    std::vector<double> v(8, 0.0);
    v[6] = 0.66;
    const auto out = allocate_idle(b, in, v);
    std::vector<double> expected(8, 0.0);
    expected[7] = 0.66;
    CHECK(out == expected);
    const auto t = timing(b, out, in);
    CHECK(t.units[6].start_h == doctest::Approx(17.19));
    CHECK(t.units[6].end_h == doctest::Approx(20.34));
    CHECK(t.units[7].start_h == doctest::Approx(21.0));
    CHECK(t.units[7].end_h == doctest::Approx(23.99));
}

TEST_CASE("idle after a unit starting on-peak moves in front of it") {
    auto in = testing::loose_instance(3, 3, 1.0, 10.0);
    in.slabs[0].processing_h = 18.0;
    in.slabs[1].processing_h = 4.0;
    in.slabs[2].processing_h = 1.0;
    const auto b = decode(diagonal_perm(3), in);
    REQUIRE(b.feasible);
    // unit 2 starts at 18:00 and ends at 22:00, so the idle before unit 3 is pulled ahead of it
    CHECK(allocate_idle(b, in, std::vector<double>{0.0, 0.0, 1.0}) == std::vector<double>{0.0, 1.0, 0.0});
    // the last unit has no successor to borrow from
    auto two = testing::loose_instance(2, 2, 1.0, 10.0);
    two.slabs[0].processing_h = 19.0;
    two.slabs[1].processing_h = 2.0;
    const auto b2 = decode(diagonal_perm(2), two);
    CHECK(allocate_idle(b2, two, std::vector<double>{0.0, 2.5}) == std::vector<double>{0.0, 2.5});
}

TEST_CASE("allocate_idle edge cases") {
    const auto in = testing::eight_unit_day();
    const auto b = decode(diagonal_perm(8), in);
    SUBCASE("flat prices leave the vector alone") {
        auto flat = in;
        flat.tariff = TouTariff::flat(0.6);
        std::vector<double> v{0.1, 0.0, 0.2, 0.0, 0.1, 0.1, 0.05, 0.1};
        CHECK(allocate_idle(b, flat, v) == v);
    }
    SUBCASE("zero idle stays zero") {
        CHECK(allocate_idle(b, in, std::vector<double>(8, 0.0)) == std::vector<double>(8, 0.0));
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(allocate_idle(b, in, std::vector<double>(7, 0.0)), Error);
        CHECK_THROWS_AS(allocate_idle(b, in, std::vector<double>{-0.1, 0, 0, 0, 0, 0, 0, 0.2}), Error);
        CHECK_THROWS_AS(allocate_idle(b, in, std::vector<double>{0.5, 0.5, 0, 0, 0, 0, 0, 0}), Error);
    }
}

TEST_CASE("allocate_idle preserves the total and stays within the horizon") {
    const auto in = generate_instance(60, 4, 12, {Variety::many, Load::not_full});
    std::mt19937_64 rng(4);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 100; ++trial) {
        const auto c = random_chromosome(in, rng);
        const auto b = decode(c.perm, in);
        if (!b.feasible) continue;
        ++checked;
        const auto v = draw_idle(in.unit_count, in.horizon_h - b.scheduled_processing_h(in), rng);
        const auto out = allocate_idle(b, in, v);
        CHECK(sum(out) == doctest::Approx(sum(v)).epsilon(1e-12));
        for (double x : out) CHECK(x >= 0.0);
        CHECK_NOTHROW(timing(b, out, in));
    }
    CHECK(checked > 0);
}

TEST_CASE("idle draws lie in the simplex and are uniform") {
    std::mt19937_64 rng(99);
    const int m = 3;
    const double slack = 2.0;
    std::vector<double> mean(m, 0.0);
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const auto v = draw_idle(m, slack, rng);
        REQUIRE(v.size() == m);
        for (int k = 0; k < m; ++k) {
            CHECK(v[k] >= 0.0);
            mean[k] += v[k] / draws;
        }
        CHECK(sum(v) <= slack + 1e-12);
    }
    // uniform on {v >= 0, sum v <= S}: E[v_k] = S / (m + 1)
    for (double x : mean) CHECK(x == doctest::Approx(slack / (m + 1)).epsilon(0.02));
    CHECK(draw_idle(4, 0.0, rng) == std::vector<double>(4, 0.0));
}

TEST_CASE("random chromosomes") {
    const auto in = generate_instance(40, 3, 2, {Variety::few, Load::not_full});
    SUBCASE("seeded rng repeats") {
        std::mt19937_64 a(17), b(17);
        CHECK(random_chromosome(in, a) == random_chromosome(in, b));
    }
    SUBCASE("invariants hold over many draws") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 1000; ++i) {
            const auto c = random_chromosome(in, rng);
            CHECK(is_permutation_of_codes(c.perm, 120));
            REQUIRE(c.idle.size() == 3);
            const auto b = decode(c.perm, in);
            const double slack = b.feasible ? in.horizon_h - b.scheduled_processing_h(in) : 0.0;
            for (double v : c.idle) CHECK(v >= 0.0);
            CHECK(sum(c.idle) <= slack + 1e-9);
        }
    }
    SUBCASE("zero slack forces zero idle") {
        auto tight = testing::loose_instance(4, 2);
        for (auto& s : tight.slabs) s.processing_h = 6.0;
        std::mt19937_64 rng(2);
        for (int i = 0; i < 20; ++i) CHECK(random_chromosome(tight, rng).idle == std::vector<double>(2, 0.0));
    }
}
