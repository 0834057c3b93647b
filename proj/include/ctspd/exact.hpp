#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"

namespace ctspd {

struct ExactResult {
    long long cost = 0;
    Route route;
};

// Enumerates every customer permutation, keeps the cheapest one that obeys
// the visiting rule. Reference solver for tiny instances only.
inline ExactResult brute_force(const Instance& inst) {
    if (inst.n > 10) throw std::invalid_argument("brute force is limited to 10 nodes");

    std::vector<int> perm;
    for (int v = 1; v < inst.n; ++v) perm.push_back(v);

    Route probe;
    ExactResult best;
    bool found = false;
    do {
        probe.order.assign(1, Instance::depot);
        probe.order.insert(probe.order.end(), perm.begin(), perm.end());
        if (!is_feasible(probe, inst)) continue;
        probe.recompute_cost(inst);
        if (!found || probe.cost < best.cost) {
            best.cost = probe.cost;
            best.route = probe;
            found = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!found) throw std::logic_error("no feasible permutation exists");
    return best;
}

// Priority-aware bitmask dynamic program in the Held-Karp style. State
// (S, i): cheapest rule-obeying path from the depot through exactly the
// customers in S, ending at i. Visiting j next from (S, i) is allowed iff
// j's priority is within d of the most urgent customer outside S; those
// minima are precomputed for every S by peeling one absent customer at a
// time in descending set order.
inline ExactResult dp_exact(const Instance& inst) {
    if (inst.n > 20) throw std::invalid_argument("exact DP is limited to 20 nodes");

    const int m = inst.num_customers();
    const std::uint32_t full = ((std::uint32_t)1 << m) - 1;
    auto prio = [&](int cust) { return inst.priority[cust + 1]; };

    std::vector<int> minp_out(full + 1);
    minp_out[full] = INT_MAX;
    for (std::uint32_t s = full; s-- > 0;) {
        int v = __builtin_ctz(~s);
        minp_out[s] = std::min(prio(v), minp_out[s | ((std::uint32_t)1 << v)]);
    }

    constexpr int kInf = INT_MAX / 4;
    std::vector<int> dist((size_t)(full + 1) * m, kInf);
    std::vector<std::int8_t> parent((size_t)(full + 1) * m, -1);
    for (int j = 0; j < m; ++j)
        if (prio(j) <= minp_out[0] + inst.d)
            dist[((size_t)1 << j) * m + j] = inst.c(Instance::depot, j + 1);

    for (std::uint32_t s = 1; s <= full; ++s) {
        for (int i = 0; i < m; ++i) {
            if (!(s & ((std::uint32_t)1 << i))) continue;
            int di = dist[(size_t)s * m + i];
            if (di >= kInf) continue;
            int cap = minp_out[s] == INT_MAX ? INT_MAX : minp_out[s] + inst.d;
            for (int j = 0; j < m; ++j) {
                if (s & ((std::uint32_t)1 << j)) continue;
                if (prio(j) > cap) continue;
                std::uint32_t ns = s | ((std::uint32_t)1 << j);
                int nd = di + inst.c(i + 1, j + 1);
                if (nd < dist[(size_t)ns * m + j]) {
                    dist[(size_t)ns * m + j] = nd;
                    parent[(size_t)ns * m + j] = (std::int8_t)i;
                }
            }
        }
    }

    int best_end = -1;
    long long best_cost = LLONG_MAX;
    for (int i = 0; i < m; ++i) {
        int di = dist[(size_t)full * m + i];
        if (di >= kInf) continue;
        long long total = (long long)di + inst.c(i + 1, Instance::depot);
        if (total < best_cost) {
            best_cost = total;
            best_end = i;
        }
    }
    if (best_end < 0) throw std::logic_error("no feasible route exists");

    ExactResult out;
    out.cost = best_cost;
    std::vector<int> rev;
    std::uint32_t s = full;
    int i = best_end;
    while (i >= 0) {
        rev.push_back(i + 1);
        int pi = parent[(size_t)s * m + i];
        s &= ~((std::uint32_t)1 << i);
        i = pi;
    }
    out.route.order.assign(1, Instance::depot);
    out.route.order.insert(out.route.order.end(), rev.rbegin(), rev.rend());
    out.route.recompute_cost(inst);
    return out;
}

}  // namespace ctspd
