#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "ctspd/instance.hpp"

namespace ctspd {

// A closed tour stored as a visiting order: order[0] is the depot, positions
// 1..n-1 hold each customer exactly once, and the tour implicitly returns to
// the depot after the last position. cost caches the closing-tour total and
// is kept in sync by everything that edits order.
struct Route {
    std::vector<int> order;
    long long cost = 0;

    int size() const { return (int)order.size(); }

    static long long tour_cost(const Instance& inst, const std::vector<int>& order) {
        long long total = 0;
        int n = (int)order.size();
        for (int t = 0; t + 1 < n; ++t) total += inst.c(order[t], order[t + 1]);
        total += inst.c(order[n - 1], order[0]);
        return total;
    }

    void recompute_cost(const Instance& inst) { cost = tour_cost(inst, order); }

    bool is_permutation(const Instance& inst) const {
        if ((int)order.size() != inst.n) return false;
        if (order[0] != Instance::depot) return false;
        std::vector<bool> seen(inst.n, false);
        for (int v : order) {
            if (v < 0 || v >= inst.n || seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }
};

// A route satisfies the relaxed visiting rule iff every customer's priority
// exceeds the most urgent customer still unvisited at that point by at most
// d. One backward pass with a running suffix minimum checks all positions.
inline bool is_feasible(const Route& route, const Instance& inst) {
    int suffix_min = std::numeric_limits<int>::max();
    for (int t = route.size() - 1; t >= 1; --t) {
        int p = inst.priority[route.order[t]];
        suffix_min = std::min(suffix_min, p);
        if (p > suffix_min + inst.d) return false;
    }
    return true;
}

// Priority extrema over contiguous runs of route positions, answering
// pmin/pmax(i, j) over positions i..j in O(1). Built as sparse tables in
// O(n log n). Empty queries (i > j) return sentinel values that make the
// move predicates' comparisons vacuously true, so boundary moves need no
// special-case branches.
class SegmentPriorityIndex {
  public:
    static constexpr int kEmptyMin = std::numeric_limits<int>::max();
    static constexpr int kEmptyMax = std::numeric_limits<int>::min();

    SegmentPriorityIndex() = default;

    SegmentPriorityIndex(const Route& route, const Instance& inst) { rebuild(route, inst); }

    void rebuild(const Route& route, const Instance& inst) {
        n_ = route.size();
        int levels = 1;
        while ((1 << levels) <= n_) ++levels;
        log2_.assign(n_ + 1, 0);
        for (int i = 2; i <= n_; ++i) log2_[i] = log2_[i / 2] + 1;
        min_.assign(levels, std::vector<int>(n_));
        max_.assign(levels, std::vector<int>(n_));
        for (int t = 0; t < n_; ++t)
            min_[0][t] = max_[0][t] = inst.priority[route.order[t]];
        for (int k = 1; k < levels; ++k) {
            int span = 1 << k;
            for (int t = 0; t + span <= n_; ++t) {
                min_[k][t] = std::min(min_[k - 1][t], min_[k - 1][t + span / 2]);
                max_[k][t] = std::max(max_[k - 1][t], max_[k - 1][t + span / 2]);
            }
        }
    }

    // Priority of the node at route position t.
    int p(int t) const { return min_[0][t]; }

    int pmin(int i, int j) const {
        if (i > j) return kEmptyMin;
        int k = log2_[j - i + 1];
        return std::min(min_[k][i], min_[k][j - (1 << k) + 1]);
    }

    int pmax(int i, int j) const {
        if (i > j) return kEmptyMax;
        int k = log2_[j - i + 1];
        return std::max(max_[k][i], max_[k][j - (1 << k) + 1]);
    }

  private:
    int n_ = 0;
    std::vector<int> log2_;
    std::vector<std::vector<int>> min_;
    std::vector<std::vector<int>> max_;
};

inline SegmentPriorityIndex build_index(const Route& route, const Instance& inst) {
    return SegmentPriorityIndex(route, inst);
}

// Constant-time feasibility predicates for the five neighborhood moves.
// Each one assumes the current route is feasible and decides whether the
// modified route stays feasible, reading priorities through the index
// (idx.p(t) is the priority at position t). i and j are route positions,
// customers occupying 1..n-1.

// Swap the customers at positions i < j.
inline bool can_swap11(const SegmentPriorityIndex& idx, int i, int j, int d) {
    return idx.pmin(i, j - 1) >= idx.p(j) - d && idx.pmax(i + 1, j) <= idx.p(i) + d;
}

// Swap the pair at positions (i, i+1), kept in order, with the single
// customer at position j.
inline bool can_swap21(const SegmentPriorityIndex& idx, int i, int j, int d) {
    int lo = std::min(idx.p(i), idx.p(i + 1));
    int hi = std::max(idx.p(i), idx.p(i + 1));
    if (j > i + 1)
        return idx.pmin(i, j - 1) >= idx.p(j) - d && idx.pmax(i + 2, j) <= lo + d;
    if (j < i)
        return idx.pmin(j, i - 1) >= hi - d && idx.pmax(j + 1, i + 1) <= idx.p(j) + d;
    return false;
}

// Swap the pair at (i, i+1) with the pair at (j, j+1), i+1 < j; both pairs
// keep their internal order.
inline bool can_swap22(const SegmentPriorityIndex& idx, int i, int j, int d) {
    int lo = std::min(idx.p(i), idx.p(i + 1));
    int hi = std::max(idx.p(j), idx.p(j + 1));
    return idx.pmin(i, j - 1) >= hi - d && idx.pmax(i + 2, j + 1) <= lo + d;
}

// Remove the customer at position i and reinsert it directly before the node
// at position j (j may equal n, meaning before the closing depot arc).
// j in {i, i+1} leaves the route unchanged and is trivially feasible.
inline bool can_relocate1(const SegmentPriorityIndex& idx, int i, int j, int d) {
    if (j < i) return idx.pmin(j, i - 1) >= idx.p(i) - d;
    if (j > i + 1) return idx.pmax(i + 1, j - 1) <= idx.p(i) + d;
    return true;
}

// Remove the pair at positions (i, i+1) and reinsert it, order kept,
// directly before the node at position j (j may equal n).
inline bool can_relocate2(const SegmentPriorityIndex& idx, int i, int j, int d) {
    int lo = std::min(idx.p(i), idx.p(i + 1));
    int hi = std::max(idx.p(i), idx.p(i + 1));
    if (j < i) return idx.pmin(j, i - 1) >= hi - d;
    if (j > i + 2) return idx.pmax(i + 2, j - 1) <= lo + d;
    return true;
}

}  // namespace ctspd
