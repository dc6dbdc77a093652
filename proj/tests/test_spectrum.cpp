#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sbvsim/errors.hpp"
#include "sbvsim/spectrum.hpp"

using namespace sbvsim;

TEST_CASE("17a band plan: six intervals tiling the legacy region") {
    const BandPlan plan = build_17a_bandplan();
    REQUIRE(plan.intervals.size() == 6);
    CHECK(plan.intervals.front().f_lo_hz == 0.025e6);
    CHECK(plan.intervals.back().f_hi_hz == kLegacyEdgeHz);
    for (std::size_t i = 1; i < plan.intervals.size(); ++i) {
        CHECK(plan.intervals[i].f_lo_hz == plan.intervals[i - 1].f_hi_hz);
    }
    CHECK(plan.ds_width_below_edge_hz() == doctest::Approx(12.576e6));
}

TEST_CASE("17a band plan: everything above the edge reports DS") {
    const BandPlan plan = build_17a_bandplan();
    CHECK(plan.is_ds(17.664e6));
    CHECK(plan.is_ds(30e6));
    CHECK(plan.is_ds(105e6));
    CHECK(!plan.is_ds(0.05e6));   // US0
    CHECK(!plan.is_ds(4.0e6));    // US1
    CHECK(plan.is_ds(2.0e6));     // DS1
    CHECK(plan.is_ds(15.0e6));    // DS3
}

TEST_CASE("allocation: single operator owns everything") {
    const auto a = allocate_subbands(1, 35.2e6, 5e6, AllocationOrder::LINEAR);
    REQUIRE(a.blocks.size() == 4);
    CHECK(a.blocks[0].f_lo_hz == doctest::Approx(17.664e6));
    CHECK(a.blocks[0].f_hi_hz == doctest::Approx(22.664e6));
    CHECK(a.blocks[3].f_lo_hz == doctest::Approx(32.664e6));
    CHECK(a.blocks[3].f_hi_hz == doctest::Approx(35.2e6));
    for (const auto& b : a.blocks)
        CHECK(b.owner == 0);
}

TEST_CASE("allocation: two operators, linear order") {
    const auto a = allocate_subbands(2, 35.2e6, 5e6, AllocationOrder::LINEAR);
    REQUIRE(a.blocks.size() == 4);
    CHECK(a.blocks[0].owner == 0);
    CHECK(a.blocks[1].owner == 1);
    CHECK(a.blocks[2].owner == 0);
    CHECK(a.blocks[3].owner == 1);
    CHECK(a.operator_bandwidth_hz(0) == doctest::Approx(10e6));
    CHECK(a.operator_bandwidth_hz(1) == doctest::Approx(7.536e6));
}

TEST_CASE("allocation: two operators, snake order") {
    const auto a = allocate_subbands(2, 35.2e6, 5e6, AllocationOrder::SNAKE);
    REQUIRE(a.blocks.size() == 4);
    CHECK(a.blocks[0].owner == 0);
    CHECK(a.blocks[1].owner == 1);
    CHECK(a.blocks[2].owner == 1);
    CHECK(a.blocks[3].owner == 0);
}

TEST_CASE("allocation: nothing to allocate is an explicit error") {
    CHECK_THROWS_AS(allocate_subbands(2, 17.664e6, 5e6, AllocationOrder::SNAKE),
                    domain_error);
    CHECK_THROWS_AS(allocate_subbands(2, 10e6, 5e6, AllocationOrder::SNAKE),
                    domain_error);
    CHECK_THROWS_AS(allocate_subbands(0, 35.2e6, 5e6, AllocationOrder::SNAKE),
                    domain_error);
    CHECK_THROWS_AS(allocate_subbands(2, 35.2e6, 0.0, AllocationOrder::SNAKE),
                    domain_error);
}

TEST_CASE("allocation invariants over random inputs") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> nu(1, 5);
    std::uniform_real_distribution<double> fmaxu(18e6, 200e6);
    std::uniform_real_distribution<double> wu(1e6, 10e6);
    for (int trial = 0; trial < 300; ++trial) {
        const int n_op = nu(rng);
        const double f_max = fmaxu(rng);
        const double width = wu(rng);
        const auto order =
            trial % 2 ? AllocationOrder::SNAKE : AllocationOrder::LINEAR;
        const auto a = allocate_subbands(n_op, f_max, width, order);

        // exact tiling of [edge, f_max]
        REQUIRE(!a.blocks.empty());
        CHECK(a.blocks.front().f_lo_hz == kLegacyEdgeHz);
        CHECK(a.blocks.back().f_hi_hz == doctest::Approx(f_max));
        double covered = 0.0;
        for (std::size_t k = 0; k < a.blocks.size(); ++k) {
            CHECK(a.blocks[k].f_hi_hz > a.blocks[k].f_lo_hz);
            if (k)
                CHECK(a.blocks[k].f_lo_hz == doctest::Approx(a.blocks[k - 1].f_hi_hz));
            CHECK(a.blocks[k].owner >= 0);
            CHECK(a.blocks[k].owner < n_op);
            covered += a.blocks[k].f_hi_hz - a.blocks[k].f_lo_hz;
        }
        CHECK(covered == doctest::Approx(f_max - kLegacyEdgeHz).epsilon(1e-12));

        // per-operator bandwidth sums to the extension width, spread <= width
        double total = 0.0, bw_min = 1e18, bw_max = 0.0;
        for (int op = 0; op < n_op; ++op) {
            const double bw = a.operator_bandwidth_hz(op);
            total += bw;
            bw_min = std::min(bw_min, bw);
            bw_max = std::max(bw_max, bw);
        }
        CHECK(total == doctest::Approx(f_max - kLegacyEdgeHz).epsilon(1e-12));
        CHECK(bw_max - bw_min <= width * (1.0 + 1e-12));

        // determinism
        const auto b = allocate_subbands(n_op, f_max, width, order);
        REQUIRE(b.blocks.size() == a.blocks.size());
        for (std::size_t k = 0; k < a.blocks.size(); ++k) {
            CHECK(b.blocks[k].f_lo_hz == a.blocks[k].f_lo_hz);
            CHECK(b.blocks[k].owner == a.blocks[k].owner);
        }
    }
}

TEST_CASE("snake mirror symmetry for two operators and even block count") {
    const auto a = allocate_subbands(2, 17.664e6 + 8 * 5e6, 5e6,
                                     AllocationOrder::SNAKE);
    REQUIRE(a.blocks.size() == 8);
    const std::size_t n = a.blocks.size();
    for (std::size_t k = 0; k < n; ++k) {
        // operator 0's positions mirror operator 1's about the center
        CHECK(a.blocks[k].owner == a.blocks[n - 1 - k].owner);
    }
    CHECK(a.operator_bandwidth_hz(0) == doctest::Approx(a.operator_bandwidth_hz(1)));
}

TEST_CASE("tone grid: counts and index range") {
    ToneGrid g;
    g.f_max_hz = 35.2e6;
    g.validate();
    CHECK(g.tone_count() == 8156);
    // centers start at or above f_start and stay below f_max
    CHECK(g.tone_center_hz(g.first_tone_index()) >= g.f_start_hz);
    CHECK(g.tone_center_hz(g.first_tone_index() - 1) < g.f_start_hz);
    CHECK(g.tone_center_hz(g.end_tone_index() - 1) < g.f_max_hz);
    CHECK(g.end_tone_index() - g.first_tone_index() == 8156);
}

TEST_CASE("tone grid: f_max landing exactly on a tone center is excluded") {
    ToneGrid g;
    g.delta_f_hz = 1e6;
    g.f_start_hz = 0.25e6;
    g.f_max_hz = 7.5e6;  // center of tone 7
    g.validate();
    CHECK(g.first_tone_index() == 0);
    CHECK(g.end_tone_index() == 7);
    CHECK(g.tone_count() == 7);
    CHECK(g.tone_center_hz(g.end_tone_index() - 1) == 6.5e6);
}

TEST_CASE("tones_for_operator: single operator extension count") {
    ToneGrid g;
    g.f_max_hz = 35.2e6;
    const auto a = allocate_subbands(1, 35.2e6, 5e6, AllocationOrder::SNAKE);
    const auto t = tones_for_operator(g, build_17a_bandplan(), a, 0);
    CHECK(t.extension_owned.size() == 4066);
    CHECK(t.legacy_ds_shared.size() == 2916);
}

TEST_CASE("tones_for_operator: disjoint ownership, shared legacy") {
    ToneGrid g;
    g.f_max_hz = 35.2e6;
    const auto a = allocate_subbands(2, 35.2e6, 5e6, AllocationOrder::SNAKE);
    const auto plan = build_17a_bandplan();
    const auto t0 = tones_for_operator(g, plan, a, 0);
    const auto t1 = tones_for_operator(g, plan, a, 1);
    CHECK(t0.legacy_ds_shared == t1.legacy_ds_shared);
    std::set<int> s0(t0.extension_owned.begin(), t0.extension_owned.end());
    for (int i : t1.extension_owned)
        CHECK(!s0.count(i));
    CHECK(t0.extension_owned.size() + t1.extension_owned.size() == 4066);
    CHECK_THROWS_AS(tones_for_operator(g, plan, a, 2), domain_error);
}
