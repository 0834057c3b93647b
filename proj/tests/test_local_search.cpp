#include <catch2/catch_amalgamated.hpp>

#include "ctspd/exact.hpp"
#include "ctspd/local_search.hpp"
#include "support/oracles.hpp"

using namespace ctspd;

namespace {

struct Shape {
    MoveKind kind;
    int i, j;
};

// Every structurally valid, non-degenerate (kind, i, j) for an n-position
// route. Degenerate target positions that leave the route unchanged are
// excluded; the scans never propose them and the delta formulas assume
// they are absent.
std::vector<Shape> all_shapes(int n) {
    std::vector<Shape> shapes;
    for (int i = 1; i <= n - 2; ++i)
        for (int j = i + 1; j <= n - 1; ++j) shapes.push_back({MoveKind::swap11, i, j});
    for (int i = 1; i + 1 <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j)
            if (j < i || j > i + 1) shapes.push_back({MoveKind::swap21, i, j});
    for (int i = 1; i + 1 <= n - 1; ++i)
        for (int j = i + 2; j + 1 <= n - 1; ++j) shapes.push_back({MoveKind::swap22, i, j});
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n; ++j)
            if (j < i || j > i + 1) shapes.push_back({MoveKind::relocate1, i, j});
    for (int i = 1; i + 1 <= n - 1; ++i)
        for (int j = 1; j <= n; ++j)
            if (j < i || j > i + 2) shapes.push_back({MoveKind::relocate2, i, j});
    return shapes;
}

// Best improving feasible move of one kind, found the brute-force way:
// apply every candidate, recheck feasibility from scratch, recompute cost.
std::optional<long long> oracle_best_delta(const Instance& inst, const Route& route,
                                           MoveKind kind) {
    std::optional<long long> best;
    for (const Shape& s : all_shapes(route.size())) {
        if (s.kind != kind) continue;
        Route mutated = oracle::reference_apply(inst, route, s.kind, s.i, s.j);
        if (!oracle::sim_is_feasible(inst, mutated)) continue;
        long long delta = mutated.cost - route.cost;
        if (delta < 0 && (!best || delta < *best)) best = delta;
    }
    return best;
}

}  // namespace

TEST_CASE("apply_move agrees with scratch reconstruction on every shape") {
    Rng rng(8101);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 5 + (int)rng.below(9);
        Instance inst = oracle::random_instance(rng, n, 1 + (int)rng.below(5), (int)rng.below(4));
        Route route = oracle::random_feasible_route(inst, rng);
        for (const Shape& s : all_shapes(n)) {
            Route expect = oracle::reference_apply(inst, route, s.kind, s.i, s.j);
            Route got = route;
            Move mv{s.kind, s.i, s.j, move_delta(route, inst, s.kind, s.i, s.j)};
            apply_move(got, mv);
            if (got.order != expect.order) {
                CAPTURE(move_kind_name(s.kind), s.i, s.j, route.order);
                REQUIRE(got.order == expect.order);
            }
            if (got.cost != expect.cost) {
                CAPTURE(move_kind_name(s.kind), s.i, s.j, route.order);
                REQUIRE(got.cost == expect.cost);
            }
        }
    }
}

TEST_CASE("move deltas equal the recomputed cost difference") {
    Rng rng(8202);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + (int)rng.below(8);
        Instance inst = oracle::random_instance(rng, n, 1 + (int)rng.below(3), (int)rng.below(3));
        Route route = oracle::random_feasible_route(inst, rng);
        for (const Shape& s : all_shapes(n)) {
            long long fast = move_delta(route, inst, s.kind, s.i, s.j);
            Route mutated = oracle::reference_apply(inst, route, s.kind, s.i, s.j);
            long long slow = mutated.cost - route.cost;
            if (fast != slow) {
                CAPTURE(move_kind_name(s.kind), s.i, s.j, route.order);
                REQUIRE(fast == slow);
            }
        }
    }
}

TEST_CASE("each neighborhood scan finds the brute-force best improving move") {
    Rng rng(8303);
    const MoveKind kinds[] = {MoveKind::relocate1, MoveKind::relocate2, MoveKind::swap11,
                              MoveKind::swap21, MoveKind::swap22};
    for (int trial = 0; trial < 150; ++trial) {
        int n = 5 + (int)rng.below(8);
        int g = 1 + (int)rng.below(5);
        int d = (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, g, d);
        Route route = oracle::random_feasible_route(inst, rng);
        for (MoveKind kind : kinds) {
            auto mv = scan_neighborhood(route, inst, kind);
            auto want = oracle_best_delta(inst, route, kind);
            if (mv.has_value() != want.has_value()) {
                CAPTURE(move_kind_name(kind), route.order, inst.d);
                REQUIRE(mv.has_value() == want.has_value());
            }
            if (mv) {
                CHECK(mv->delta == *want);
                Route next = route;
                apply_move(next, *mv);
                CHECK(oracle::sim_is_feasible(inst, next));
                CHECK(next.cost == Route::tour_cost(inst, next.order));
            }
        }
    }
}

TEST_CASE("descent output is feasible and locally optimal in all neighborhoods") {
    Rng rng(8404);
    for (int trial = 0; trial < 80; ++trial) {
        int n = 5 + (int)rng.below(16);
        Instance inst = oracle::random_instance(rng, n, 1 + (int)rng.below(5), (int)rng.below(4));
        Route start = oracle::random_feasible_route(inst, rng);
        Route done = rvnd(start, inst, rng);

        CHECK(done.is_permutation(inst));
        CHECK(is_feasible(done, inst));
        CHECK(done.cost == Route::tour_cost(inst, done.order));
        CHECK(done.cost <= start.cost);
        for (MoveKind kind : {MoveKind::relocate1, MoveKind::relocate2, MoveKind::swap11,
                              MoveKind::swap21, MoveKind::swap22})
            CHECK_FALSE(scan_neighborhood(done, inst, kind).has_value());
    }
}

TEST_CASE("descent never beats the exact optimum") {
    Rng rng(8505);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + (int)rng.below(6);
        Instance inst = oracle::random_instance(rng, n, 1 + (int)rng.below(3), (int)rng.below(2));
        Route start = oracle::random_feasible_route(inst, rng);
        Route done = rvnd(start, inst, rng);
        ExactResult opt = dp_exact(inst);
        CHECK(done.cost >= opt.cost);
    }
}

TEST_CASE("degenerate routes fall straight through the descent") {
    Rng rng(8606);
    Instance two = oracle::random_instance(rng, 2, 1, 0);
    Route r2 = oracle::identity_route(two);
    CHECK(rvnd(r2, two, rng).order == r2.order);

    Instance three = oracle::random_instance(rng, 3, 2, 1);
    Route r3 = rvnd(oracle::random_feasible_route(three, rng), three, rng);
    CHECK(is_feasible(r3, three));
}
