#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "ctspd/construction.hpp"
#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/local_search.hpp"
#include "ctspd/rng.hpp"

namespace ctspd {

// Outer-loop parameters. ip_lo/ip_hi bound the number of perturbation moves
// per kick; zeros mean "derive from instance size".
struct SearchParams {
    int i_max = 5;       // independent restarts
    int i_ils = 500;     // consecutive non-improving iterations before a restart ends
    int k = 5;           // restricted candidate list size for construction
    double p_swap = 0.75;  // probability a perturbation move is a swap
    int ip_lo = 0;
    int ip_hi = 0;
    std::uint64_t seed = 0;

    void check_valid() const {
        if (i_max < 1 || i_ils < 1) throw std::invalid_argument("iteration counts must be >= 1");
        if (k < 1) throw std::invalid_argument("candidate list size must be >= 1");
        if (p_swap < 0.0 || p_swap > 1.0) throw std::invalid_argument("p_swap must be in [0, 1]");
        if (ip_lo > ip_hi) throw std::invalid_argument("perturbation range is empty");
    }
};

inline SearchParams fast_params() { return SearchParams{.i_max = 5, .i_ils = 500}; }
inline SearchParams large_params() { return SearchParams{.i_max = 5, .i_ils = 1000}; }

// Perturbation strength grows with instance size.
inline std::pair<int, int> default_ip_range(int n) {
    if (n < 60) return {4, 6};
    if (n <= 100) return {6, 8};
    return {8, 10};
}

inline std::pair<int, int> ip_range_of(const SearchParams& params, int n) {
    if (params.ip_lo == 0 && params.ip_hi == 0) return default_ip_range(n);
    return {params.ip_lo, params.ip_hi};
}

// Random kick between local-search descents: a seeded number of random swap
// or relocate moves, each drawn uniformly over positions and kept only when
// its feasibility predicate passes. A move whose draws keep failing is
// dropped after a bounded number of retries, so the kick always terminates
// and the output is always feasible.
inline Route perturb(Route route, const Instance& inst, Rng& rng, const SearchParams& params) {
    const int n = route.size();
    if (n <= 2) return route;
    constexpr int kMaxRetries = 50;
    const std::uint64_t swap_threshold =
        (std::uint64_t)(params.p_swap * (double)(1ULL << 32));

    auto [ip_lo, ip_hi] = ip_range_of(params, n);
    int moves = rng.range(ip_lo, ip_hi);

    SegmentPriorityIndex idx(route, inst);
    for (int m = 0; m < moves; ++m) {
        bool do_swap = rng.below(1ULL << 32) < swap_threshold;
        for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
            if (do_swap) {
                int i = rng.range(1, n - 1);
                int j = rng.range(1, n - 1);
                if (i == j) continue;
                if (i > j) std::swap(i, j);
                if (!can_swap11(idx, i, j, inst.d)) continue;
                Move mv{MoveKind::swap11, i, j, move_delta(route, inst, MoveKind::swap11, i, j)};
                apply_move(route, mv);
            } else {
                int i = rng.range(1, n - 1);
                int j = rng.range(1, n);
                if (j == i || j == i + 1) continue;
                if (!can_relocate1(idx, i, j, inst.d)) continue;
                Move mv{MoveKind::relocate1, i, j,
                        move_delta(route, inst, MoveKind::relocate1, i, j)};
                apply_move(route, mv);
            }
            idx.rebuild(route, inst);
            break;
        }
    }
    return route;
}

struct SolveResult {
    Route best;
    double seconds = 0.0;
};

// Multistart iterated local search: each restart builds a greedy randomized
// route, then alternates full RVND descents with perturbations of the
// restart's incumbent until i_ils consecutive iterations fail to improve it.
// The perturbation always starts from the incumbent, including right after
// an improvement. Restart r draws from seed + r, so runs are reproducible
// and restarts independent.
inline SolveResult solve(const Instance& inst, const SearchParams& params) {
    params.check_valid();
    auto t0 = std::chrono::steady_clock::now();

    SolveResult out;
    bool have_best = false;
    for (int restart = 0; restart < params.i_max; ++restart) {
        Rng rng(params.seed + (std::uint64_t)restart);
        Route s = initialize(inst, params.k, rng);
        Route incumbent = s;
        int j = 0;
        while (j < params.i_ils) {
            s = rvnd(std::move(s), inst, rng);
            if (s.cost < incumbent.cost) {
                incumbent = s;
                j = 0;
            }
            s = perturb(incumbent, inst, rng, params);
            ++j;
        }
        if (!have_best || incumbent.cost < out.best.cost) {
            out.best = incumbent;
            have_best = true;
        }
    }

    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace ctspd
