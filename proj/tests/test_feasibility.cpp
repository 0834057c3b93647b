#include <catch2/catch_amalgamated.hpp>

#include "ctspd/feasibility.hpp"
#include "support/oracles.hpp"

using namespace ctspd;

namespace {

// Independent statement of the visiting rule as a pairwise precedence
// condition: whenever one customer's priority exceeds another's by more
// than d, the more urgent one must come first.
bool pairwise_feasible(const Instance& inst, const Route& route) {
    for (int s = 1; s < route.size(); ++s)
        for (int t = s + 1; t < route.size(); ++t)
            if (inst.priority[route.order[s]] > inst.priority[route.order[t]] + inst.d)
                return false;
    return true;
}

Route shuffled_route(const Instance& inst, Rng& rng) {
    Route route;
    for (int v = 0; v < inst.n; ++v) route.order.push_back(v);
    for (int t = inst.n - 1; t >= 2; --t) {
        int s = 1 + (int)rng.below((std::uint64_t)t);
        std::swap(route.order[t], route.order[s]);
    }
    route.recompute_cost(inst);
    return route;
}

}  // namespace

TEST_CASE("a route that defers an urgent group too long is caught") {
    std::vector<int> prios = {1, 2, 1, 3, 2, 4, 7, 3, 5, 6};
    Instance inst = oracle::instance_from_priorities(prios, 7, 2);
    Route route = oracle::identity_route(inst);

    CHECK_FALSE(is_feasible(route, inst));
    CHECK_FALSE(oracle::sim_is_feasible(inst, route));

    inst.d = 3;
    CHECK_FALSE(is_feasible(route, inst));
    inst.d = 4;
    CHECK(is_feasible(route, inst));
    inst.d = 6;
    CHECK(is_feasible(route, inst));
}

TEST_CASE("feasibility agrees with simulation and the pairwise condition") {
    Rng rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 3 + (int)rng.below(12);
        int g = 1 + (int)rng.below(5);
        int d = (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, g, d);
        Route route = rng.chance(1, 2) ? shuffled_route(inst, rng)
                                       : oracle::random_feasible_route(inst, rng);
        bool lib = is_feasible(route, inst);
        CHECK(lib == oracle::sim_is_feasible(inst, route));
        CHECK(lib == pairwise_feasible(inst, route));
    }
}

TEST_CASE("rule-obeying construction always passes the check") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst = oracle::random_instance(rng, 4 + (int)rng.below(10),
                                                1 + (int)rng.below(5), (int)rng.below(3));
        CHECK(is_feasible(oracle::random_feasible_route(inst, rng), inst));
    }
}

TEST_CASE("segment index answers extrema queries exactly") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + (int)rng.below(19);
        Instance inst = oracle::random_instance(rng, n, 1 + (int)rng.below(7), 0);
        Route route = shuffled_route(inst, rng);
        SegmentPriorityIndex idx(route, inst);

        for (int t = 0; t < n; ++t) CHECK(idx.p(t) == inst.priority[route.order[t]]);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                int lo = std::numeric_limits<int>::max();
                int hi = std::numeric_limits<int>::min();
                for (int t = i; t <= j; ++t) {
                    lo = std::min(lo, inst.priority[route.order[t]]);
                    hi = std::max(hi, inst.priority[route.order[t]]);
                }
                CHECK(idx.pmin(i, j) == lo);
                CHECK(idx.pmax(i, j) == hi);
            }
    }
}

TEST_CASE("empty segment queries return absorbing sentinels") {
    Rng rng(5);
    Instance inst = oracle::random_instance(rng, 6, 3, 1);
    SegmentPriorityIndex idx(oracle::identity_route(inst), inst);
    CHECK(idx.pmin(3, 2) == SegmentPriorityIndex::kEmptyMin);
    CHECK(idx.pmax(3, 2) == SegmentPriorityIndex::kEmptyMax);
    CHECK(idx.pmin(5, 1) == SegmentPriorityIndex::kEmptyMin);
    CHECK(SegmentPriorityIndex::kEmptyMin > 1000000);
    CHECK(SegmentPriorityIndex::kEmptyMax < -1000000);
}

namespace {

struct Shape {
    MoveKind kind;
    int i, j;
};

// Draws a structurally valid (kind, i, j) triple for an n-position route;
// positions 1..n-1 hold customers and relocation may target j == n.
Shape draw_shape(Rng& rng, int n) {
    for (;;) {
        MoveKind kind = (MoveKind)rng.below(kNumNeighborhoods);
        int i, j;
        switch (kind) {
            case MoveKind::swap11:
                if (n < 4) continue;
                i = 1 + (int)rng.below((std::uint64_t)(n - 2));
                j = i + 1 + (int)rng.below((std::uint64_t)(n - 1 - i));
                return {kind, i, j};
            case MoveKind::swap21:
                if (n < 4) continue;
                i = 1 + (int)rng.below((std::uint64_t)(n - 2));
                j = 1 + (int)rng.below((std::uint64_t)(n - 1));
                if (j >= i && j <= i + 1) continue;
                return {kind, i, j};
            case MoveKind::swap22:
                if (n < 6) continue;
                i = 1 + (int)rng.below((std::uint64_t)(n - 2));
                j = 1 + (int)rng.below((std::uint64_t)(n - 2));
                if (i + 1 >= j || j + 1 > n - 1) continue;
                return {kind, i, j};
            case MoveKind::relocate1:
                i = 1 + (int)rng.below((std::uint64_t)(n - 1));
                j = 1 + (int)rng.below((std::uint64_t)n);
                return {kind, i, j};
            case MoveKind::relocate2:
                if (n < 4) continue;
                i = 1 + (int)rng.below((std::uint64_t)(n - 2));
                j = 1 + (int)rng.below((std::uint64_t)n);
                return {kind, i, j};
        }
    }
}

bool predicate(const SegmentPriorityIndex& idx, const Shape& s, int d) {
    switch (s.kind) {
        case MoveKind::swap11: return can_swap11(idx, s.i, s.j, d);
        case MoveKind::swap21: return can_swap21(idx, s.i, s.j, d);
        case MoveKind::swap22: return can_swap22(idx, s.i, s.j, d);
        case MoveKind::relocate1: return can_relocate1(idx, s.i, s.j, d);
        case MoveKind::relocate2: return can_relocate2(idx, s.i, s.j, d);
    }
    return false;
}

}  // namespace

TEST_CASE("move predicates match mutate-and-recheck over random trials") {
    Rng rng(31337);
    int trials = 0;
    while (trials < 100000) {
        int n = 4 + (int)rng.below(13);
        int g = 1 + (int)rng.below(5);
        int d = (int)rng.below(4);
        Instance inst = oracle::random_instance(rng, n, g, d);
        Route route = oracle::random_feasible_route(inst, rng);
        SegmentPriorityIndex idx(route, inst);
        for (int burst = 0; burst < 40; ++burst, ++trials) {
            Shape s = draw_shape(rng, n);
            bool fast = predicate(idx, s, inst.d);
            Route mutated = oracle::reference_apply(inst, route, s.kind, s.i, s.j);
            bool slow = oracle::sim_is_feasible(inst, mutated);
            if (fast != slow) {
                CAPTURE((int)s.kind, s.i, s.j, inst.d, route.order);
                REQUIRE(fast == slow);
            }
        }
    }
    SUCCEED();
}

TEST_CASE("with the rule fully relaxed every structurally valid move passes") {
    Rng rng(404);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 4 + (int)rng.below(10);
        int g = 1 + (int)rng.below(5);
        Instance inst = oracle::random_instance(rng, n, g, g - 1);
        Route route = oracle::random_feasible_route(inst, rng);
        SegmentPriorityIndex idx(route, inst);
        Shape s = draw_shape(rng, n);
        CHECK(predicate(idx, s, inst.d));
    }
}
