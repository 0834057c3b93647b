#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/rng.hpp"

namespace ctspd {

// Greedy randomized construction. Starting at the depot, each step draws the
// next node uniformly from the k nearest unvisited nodes (ties broken by node
// id) among those the visiting rule currently allows: priority at most the
// minimum unvisited priority plus d. The candidate holding that minimum
// always qualifies, so the restricted list is never empty and the loop always
// completes with a feasible route.
inline Route initialize(const Instance& inst, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("candidate list size must be >= 1");

    std::vector<int> unvisited;
    unvisited.reserve(inst.num_customers());
    for (int v = 1; v < inst.n; ++v) unvisited.push_back(v);

    Route route;
    route.order.reserve(inst.n);
    route.order.push_back(Instance::depot);
    int ref = Instance::depot;

    std::vector<int> rcl;
    rcl.reserve(k);
    while (!unvisited.empty()) {
        int minp = inst.g + 1;
        for (int v : unvisited) minp = std::min(minp, inst.priority[v]);

        rcl.clear();
        for (int v : unvisited)
            if (inst.priority[v] <= minp + inst.d) rcl.push_back(v);
        std::sort(rcl.begin(), rcl.end(), [&](int a, int b) {
            int ca = inst.c(ref, a), cb = inst.c(ref, b);
            if (ca != cb) return ca < cb;
            return a < b;
        });
        if ((int)rcl.size() > k) rcl.resize(k);

        int chosen = rcl[(size_t)rng.below(rcl.size())];
        route.order.push_back(chosen);
        ref = chosen;
        unvisited.erase(std::find(unvisited.begin(), unvisited.end(), chosen));
    }

    route.recompute_cost(inst);
    return route;
}

}  // namespace ctspd
