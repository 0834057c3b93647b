#include <catch2/catch_amalgamated.hpp>

#include "ctspd/exact.hpp"
#include "support/oracles.hpp"
#include "support/window_dp.hpp"

using namespace ctspd;

TEST_CASE("a hand-checked three-customer case") {
    // depot 0, customers 1..3 with priorities 1, 2, 1 and d = 0: customer 2
    // must wait for both priority-1 customers, leaving two candidate orders.
    Instance inst;
    inst.name = "hand";
    inst.n = 4;
    inst.g = 2;
    inst.d = 0;
    auto at = [&](int i, int j) -> int& { return inst.cost[i * 4 + j]; };
    inst.cost.assign(16, 0);
    at(0, 1) = at(1, 0) = 10;
    at(0, 2) = at(2, 0) = 12;
    at(0, 3) = at(3, 0) = 20;
    at(1, 2) = at(2, 1) = 4;
    at(1, 3) = at(3, 1) = 7;
    at(2, 3) = at(3, 2) = 5;
    inst.time = inst.cost;
    inst.priority = {0, 1, 2, 1};
    inst.check_valid();

    // 0-1-3-2-0 costs 10+7+5+12 = 34; 0-3-1-2-0 costs 20+7+4+12 = 43.
    ExactResult bf = brute_force(inst);
    ExactResult dp = dp_exact(inst);
    CHECK(bf.cost == 34);
    CHECK(dp.cost == 34);
    CHECK(bf.route.order == std::vector<int>{0, 1, 3, 2});
    CHECK(dp.route.order == std::vector<int>{0, 1, 3, 2});

    inst.d = 1;  // now any order works; 0-1-2-3-0 costs 10+4+5+20 = 39, keep 34
    CHECK(dp_exact(inst).cost == 34);
}

TEST_CASE("enumeration and the bitmask program agree everywhere") {
    Rng rng(1001);
    int checked = 0;
    for (int g : {1, 3, 5})
        for (int d : {0, 1, 3})
            for (int rep = 0; rep < 23; ++rep) {
                int n = 4 + (int)rng.below(6);
                Instance inst = oracle::random_instance(rng, n, g, d);
                ExactResult bf = brute_force(inst);
                ExactResult dp = dp_exact(inst);
                CHECK(bf.cost == dp.cost);
                CHECK(dp.route.is_permutation(inst));
                CHECK(is_feasible(dp.route, inst));
                CHECK(dp.route.cost == Route::tour_cost(inst, dp.route.order));
                CHECK(dp.route.cost == dp.cost);
                CHECK(is_feasible(bf.route, inst));
                ++checked;
            }
    CHECK(checked == 207);
}

TEST_CASE("relaxing the rule never makes the optimum worse") {
    Rng rng(1002);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + (int)rng.below(6);
        int g = 2 + (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, g, 0);

        Instance plain = inst;
        plain.g = 1;
        plain.d = 0;
        for (int v = 1; v < n; ++v) plain.priority[v] = 1;
        long long tsp = dp_exact(plain).cost;

        long long prev = LLONG_MAX;
        for (int d = 0; d <= g - 1; ++d) {
            inst.d = d;
            long long cur = dp_exact(inst).cost;
            CHECK(cur <= prev);
            CHECK(cur >= tsp);
            prev = cur;
        }
        CHECK(prev == tsp);
    }
}

TEST_CASE("the layered oracle matches the bitmask program") {
    Rng rng(1003);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 5 + (int)rng.below(10);
        int g = 1 + (int)rng.below(5);
        int d = (int)rng.below(3);
        Instance inst = oracle::random_instance(rng, n, g, d);
        auto layered = oracle::window_dp_optimum(inst);
        REQUIRE(layered.has_value());
        ExactResult dp = dp_exact(inst);
        if (*layered != dp.cost) {
            CAPTURE(n, g, d);
            REQUIRE(*layered == dp.cost);
        }
    }
}

TEST_CASE("oversized inputs are refused, oversized windows are declined") {
    Rng rng(1004);
    Instance big = oracle::random_instance(rng, 12, 2, 1);
    CHECK_THROWS_AS(brute_force(big), std::invalid_argument);

    Instance bigger = oracle::random_instance(rng, 22, 2, 1);
    CHECK_THROWS_AS(dp_exact(bigger), std::invalid_argument);

    Instance wide = oracle::random_instance(rng, 31, 1, 0);
    CHECK_FALSE(oracle::window_dp_optimum(wide).has_value());
}
