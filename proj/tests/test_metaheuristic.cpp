#include <catch2/catch_amalgamated.hpp>

#include "ctspd/exact.hpp"
#include "ctspd/metaheuristic.hpp"
#include "support/oracles.hpp"

using namespace ctspd;

TEST_CASE("perturbation preserves feasibility across many random kicks") {
    Rng rng(900);
    SearchParams params;
    int trials = 0;
    while (trials < 10000) {
        int n = 3 + (int)rng.below(18);
        int g = 1 + (int)rng.below(5);
        int d = (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, g, d);
        Route route = oracle::random_feasible_route(inst, rng);
        for (int burst = 0; burst < 10; ++burst, ++trials) {
            route = perturb(std::move(route), inst, rng, params);
            if (!is_feasible(route, inst) || !route.is_permutation(inst)) {
                CAPTURE(n, g, d, route.order);
                REQUIRE(false);
            }
            REQUIRE(route.cost == Route::tour_cost(inst, route.order));
        }
    }
    SUCCEED();
}

TEST_CASE("perturbation is reproducible and usually moves the route") {
    Rng instance_rng(901);
    Instance inst = oracle::random_instance(instance_rng, 15, 1, 0);
    Route route = oracle::random_feasible_route(inst, instance_rng);
    SearchParams params;

    Rng a(5), b(5);
    Route ra = perturb(route, inst, a, params);
    Route rb = perturb(route, inst, b, params);
    CHECK(ra.order == rb.order);

    int changed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng r(seed);
        if (perturb(route, inst, r, params).order != route.order) ++changed;
    }
    CHECK(changed > 90);
}

TEST_CASE("perturbation strength follows instance size") {
    CHECK(default_ip_range(10) == std::pair<int, int>{4, 6});
    CHECK(default_ip_range(59) == std::pair<int, int>{4, 6});
    CHECK(default_ip_range(60) == std::pair<int, int>{6, 8});
    CHECK(default_ip_range(100) == std::pair<int, int>{6, 8});
    CHECK(default_ip_range(101) == std::pair<int, int>{8, 10});

    SearchParams custom;
    custom.ip_lo = 2;
    custom.ip_hi = 3;
    CHECK(ip_range_of(custom, 200) == std::pair<int, int>{2, 3});
    CHECK(ip_range_of(SearchParams{}, 200) == std::pair<int, int>{8, 10});
}

TEST_CASE("presets differ only in patience") {
    CHECK(fast_params().i_max == 5);
    CHECK(fast_params().i_ils == 500);
    CHECK(large_params().i_max == 5);
    CHECK(large_params().i_ils == 1000);
}

TEST_CASE("parameter validation rejects nonsense") {
    SearchParams p;
    p.i_max = 0;
    CHECK_THROWS_AS(p.check_valid(), std::invalid_argument);
    p = SearchParams{};
    p.p_swap = 1.5;
    CHECK_THROWS_AS(p.check_valid(), std::invalid_argument);
    p = SearchParams{};
    p.ip_lo = 5;
    p.ip_hi = 4;
    CHECK_THROWS_AS(p.check_valid(), std::invalid_argument);
    CHECK_NOTHROW(SearchParams{}.check_valid());
}

TEST_CASE("the solver is deterministic in its seed") {
    Rng instance_rng(902);
    Instance inst = oracle::random_instance(instance_rng, 25, 3, 1);
    SearchParams params;
    params.i_max = 2;
    params.i_ils = 40;
    params.seed = 42;

    SolveResult a = solve(inst, params);
    SolveResult b = solve(inst, params);
    CHECK(a.best.order == b.best.order);
    CHECK(a.best.cost == b.best.cost);
    CHECK(a.seconds >= 0.0);

    params.seed = 43;
    SolveResult c = solve(inst, params);
    CHECK(is_feasible(c.best, inst));
}

TEST_CASE("the solver finds exact optima on small instances") {
    Rng rng(903);
    SearchParams params;
    params.i_max = 3;
    params.i_ils = 60;
    for (int trial = 0; trial < 30; ++trial) {
        int n = 5 + (int)rng.below(5);
        int g = 1 + (int)rng.below(4);
        int d = (int)rng.below(3);
        Instance inst = oracle::random_instance(rng, n, g, d);
        params.seed = rng.next();
        SolveResult got = solve(inst, params);
        ExactResult want = dp_exact(inst);
        CHECK(got.best.cost >= want.cost);
        if (got.best.cost != want.cost) {
            CAPTURE(n, g, d, got.best.order, want.route.order);
            CHECK(got.best.cost == want.cost);
        }
        CHECK(is_feasible(got.best, inst));
    }
}

TEST_CASE("a fully relaxed rule reduces the problem to plain routing") {
    Rng rng(904);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 6 + (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, 4, 3);
        REQUIRE(inst.rule_vacuous());

        Instance plain = inst;
        plain.g = 1;
        plain.d = 0;
        for (int v = 1; v < n; ++v) plain.priority[v] = 1;

        CHECK(dp_exact(inst).cost == dp_exact(plain).cost);

        SearchParams params;
        params.i_max = 2;
        params.i_ils = 50;
        params.seed = trial;
        CHECK(solve(inst, params).best.cost == dp_exact(plain).cost);
    }
}
