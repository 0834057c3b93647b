#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/rng.hpp"

namespace ctspd {

enum class MoveKind { relocate1, relocate2, swap11, swap21, swap22 };

constexpr int kNumNeighborhoods = 5;

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::relocate1: return "Relocate(1)";
        case MoveKind::relocate2: return "Relocate(2)";
        case MoveKind::swap11: return "Swap(1,1)";
        case MoveKind::swap21: return "Swap(2,1)";
        case MoveKind::swap22: return "Swap(2,2)";
    }
    return "?";
}

// A candidate route modification. i and j are positions in the current
// route; delta is the exact cost change applying it will cause.
struct Move {
    MoveKind kind;
    int i = 0;
    int j = 0;
    long long delta = 0;
};

// Applies a move to the route and updates the cached cost by the move's
// delta. Positions in the move refer to the route as it was before the call.
inline void apply_move(Route& r, const Move& m) {
    auto& o = r.order;
    switch (m.kind) {
        case MoveKind::swap11:
            std::swap(o[m.i], o[m.j]);
            break;
        case MoveKind::swap21: {
            int a = o[m.i], b = o[m.i + 1];
            if (m.j > m.i + 1) {
                int s = o[m.j];
                o.erase(o.begin() + m.j);
                o.erase(o.begin() + m.i, o.begin() + m.i + 2);
                o.insert(o.begin() + m.i, s);
                o.insert(o.begin() + (m.j - 1), {a, b});
            } else {
                int s = o[m.j];
                o.erase(o.begin() + m.i, o.begin() + m.i + 2);
                o.erase(o.begin() + m.j);
                o.insert(o.begin() + m.j, {a, b});
                o.insert(o.begin() + (m.i + 1), s);
            }
            break;
        }
        case MoveKind::swap22: {
            int a = o[m.i], b = o[m.i + 1];
            int c = o[m.j], e = o[m.j + 1];
            o[m.i] = c;
            o[m.i + 1] = e;
            o[m.j] = a;
            o[m.j + 1] = b;
            break;
        }
        case MoveKind::relocate1: {
            int v = o[m.i];
            o.erase(o.begin() + m.i);
            o.insert(o.begin() + (m.j < m.i ? m.j : m.j - 1), v);
            break;
        }
        case MoveKind::relocate2: {
            int a = o[m.i], b = o[m.i + 1];
            o.erase(o.begin() + m.i, o.begin() + m.i + 2);
            int at = m.j < m.i ? m.j : m.j - 2;
            o.insert(o.begin() + at, {a, b});
            break;
        }
    }
    r.cost += m.delta;
}

namespace detail {

// Shared scratch for the scan loops: nd(t) is the node at position t with
// the closing depot wrap, pr(t) its priority.
struct ScanView {
    const Instance& inst;
    const Route& r;
    int n;

    ScanView(const Instance& inst_, const Route& r_) : inst(inst_), r(r_), n(r_.size()) {}

    int nd(int t) const { return r.order[t == n ? 0 : t]; }
    int pr(int t) const { return inst.priority[r.order[t]]; }
    int c(int a, int b) const { return inst.c(a, b); }
};

inline void consider(std::optional<Move>& best, MoveKind kind, int i, int j, long long delta) {
    if (delta >= 0) return;
    if (!best || delta < best->delta) best = Move{kind, i, j, delta};
}

// Each scan enumerates its whole neighborhood, keeps the feasible move with
// the most negative delta, and checks feasibility with running segment
// extrema carried along the inner loop. Where an extremum can only worsen a
// bound further, the inner loop breaks early.

inline std::optional<Move> scan_swap11(const ScanView& v, int d) {
    std::optional<Move> best;
    for (int i = 1; i + 1 <= v.n - 1; ++i) {
        int vi = v.nd(i), a = v.nd(i - 1);
        int pi = v.pr(i);
        int minv = pi;           // pmin(i, j-1)
        int maxv = v.pr(i + 1);  // pmax(i+1, j)
        for (int j = i + 1; j <= v.n - 1; ++j) {
            if (j > i + 1) {
                minv = std::min(minv, v.pr(j - 1));
                maxv = std::max(maxv, v.pr(j));
            }
            if (maxv > pi + d) break;
            if (minv >= v.pr(j) - d) {
                int vj = v.nd(j), f = v.nd(j + 1);
                long long delta;
                if (j == i + 1) {
                    delta = (long long)v.c(a, vj) + v.c(vi, f) - v.c(a, vi) - v.c(vj, f);
                } else {
                    int b = v.nd(i + 1), e = v.nd(j - 1);
                    delta = (long long)v.c(a, vj) + v.c(vj, b) + v.c(e, vi) + v.c(vi, f) -
                            v.c(a, vi) - v.c(vi, b) - v.c(e, vj) - v.c(vj, f);
                }
                consider(best, MoveKind::swap11, i, j, delta);
            }
        }
    }
    return best;
}

inline std::optional<Move> scan_swap21(const ScanView& v, int d) {
    std::optional<Move> best;
    for (int i = 1; i + 1 <= v.n - 1; ++i) {
        int va = v.nd(i), vb = v.nd(i + 1), a = v.nd(i - 1);
        int pa = v.pr(i), pb = v.pr(i + 1);
        int lo = std::min(pa, pb), hi = std::max(pa, pb);

        // Single ahead of the pair: j runs i+2 .. n-1.
        if (i + 2 <= v.n - 1) {
            int minv = lo;           // pmin(i, j-1)
            int maxv = v.pr(i + 2);  // pmax(i+2, j)
            for (int j = i + 2; j <= v.n - 1; ++j) {
                if (j > i + 2) {
                    minv = std::min(minv, v.pr(j - 1));
                    maxv = std::max(maxv, v.pr(j));
                }
                if (maxv > lo + d) break;
                if (minv >= v.pr(j) - d) {
                    int s = v.nd(j), f = v.nd(j + 1);
                    long long delta;
                    if (j == i + 2) {
                        delta = (long long)v.c(a, s) + v.c(s, va) + v.c(vb, f) - v.c(a, va) -
                                v.c(vb, s) - v.c(s, f);
                    } else {
                        int c = v.nd(i + 2), e = v.nd(j - 1);
                        delta = (long long)v.c(a, s) + v.c(s, c) + v.c(e, va) + v.c(vb, f) -
                                v.c(a, va) - v.c(vb, c) - v.c(e, s) - v.c(s, f);
                    }
                    consider(best, MoveKind::swap21, i, j, delta);
                }
            }
        }

        // Single behind the pair: j runs i-1 .. 1.
        {
            int minv = SegmentPriorityIndex::kEmptyMin;  // pmin(j, i-1)
            int maxv = hi;                               // pmax(j+1, i+1)
            for (int j = i - 1; j >= 1; --j) {
                minv = std::min(minv, v.pr(j));
                if (j < i - 1) maxv = std::max(maxv, v.pr(j + 1));
                if (minv < hi - d) break;
                if (maxv <= v.pr(j) + d) {
                    int s = v.nd(j), u = v.nd(j - 1), f = v.nd(i + 2);
                    long long delta;
                    if (j == i - 1) {
                        delta = (long long)v.c(u, va) + v.c(vb, s) + v.c(s, f) - v.c(u, s) -
                                v.c(s, va) - v.c(vb, f);
                    } else {
                        int c = v.nd(j + 1), e = v.nd(i - 1);
                        delta = (long long)v.c(u, va) + v.c(vb, c) + v.c(e, s) + v.c(s, f) -
                                v.c(u, s) - v.c(s, c) - v.c(e, va) - v.c(vb, f);
                    }
                    consider(best, MoveKind::swap21, i, j, delta);
                }
            }
        }
    }
    return best;
}

inline std::optional<Move> scan_swap22(const ScanView& v, int d) {
    std::optional<Move> best;
    for (int i = 1; i + 3 <= v.n - 1; ++i) {
        int va = v.nd(i), vb = v.nd(i + 1), a = v.nd(i - 1);
        int lo = std::min(v.pr(i), v.pr(i + 1));
        int minv = lo;                                      // pmin(i, j-1)
        int maxv = std::max(v.pr(i + 2), v.pr(i + 3));      // pmax(i+2, j+1)
        for (int j = i + 2; j + 1 <= v.n - 1; ++j) {
            if (j > i + 2) {
                minv = std::min(minv, v.pr(j - 1));
                maxv = std::max(maxv, v.pr(j + 1));
            }
            if (maxv > lo + d) break;
            if (minv >= std::max(v.pr(j), v.pr(j + 1)) - d) {
                int vc = v.nd(j), vd = v.nd(j + 1), f = v.nd(j + 2);
                long long delta;
                if (j == i + 2) {
                    delta = (long long)v.c(a, vc) + v.c(vd, va) + v.c(vb, f) - v.c(a, va) -
                            v.c(vb, vc) - v.c(vd, f);
                } else {
                    int c = v.nd(i + 2), e = v.nd(j - 1);
                    delta = (long long)v.c(a, vc) + v.c(vd, c) + v.c(e, va) + v.c(vb, f) -
                            v.c(a, va) - v.c(vb, c) - v.c(e, vc) - v.c(vd, f);
                }
                consider(best, MoveKind::swap22, i, j, delta);
            }
        }
    }
    return best;
}

inline std::optional<Move> scan_relocate1(const ScanView& v, int d) {
    std::optional<Move> best;
    for (int i = 1; i <= v.n - 1; ++i) {
        int vi = v.nd(i), a = v.nd(i - 1), b = v.nd(i + 1);
        int pi = v.pr(i);
        long long removal = (long long)v.c(a, b) - v.c(a, vi) - v.c(vi, b);

        // Insert ahead: j runs i+2 .. n.
        {
            int maxv = SegmentPriorityIndex::kEmptyMax;  // pmax(i+1, j-1)
            for (int j = i + 2; j <= v.n; ++j) {
                maxv = std::max(maxv, v.pr(j - 1));
                if (maxv > pi + d) break;
                int u = v.nd(j - 1), w = v.nd(j);
                long long delta = removal + v.c(u, vi) + v.c(vi, w) - v.c(u, w);
                consider(best, MoveKind::relocate1, i, j, delta);
            }
        }

        // Insert behind: j runs i-1 .. 1.
        {
            int minv = SegmentPriorityIndex::kEmptyMin;  // pmin(j, i-1)
            for (int j = i - 1; j >= 1; --j) {
                minv = std::min(minv, v.pr(j));
                if (minv < pi - d) break;
                int u = v.nd(j - 1), w = v.nd(j);
                long long delta = removal + v.c(u, vi) + v.c(vi, w) - v.c(u, w);
                consider(best, MoveKind::relocate1, i, j, delta);
            }
        }
    }
    return best;
}

inline std::optional<Move> scan_relocate2(const ScanView& v, int d) {
    std::optional<Move> best;
    for (int i = 1; i + 1 <= v.n - 1; ++i) {
        int va = v.nd(i), vb = v.nd(i + 1), a = v.nd(i - 1), c = v.nd(i + 2);
        int lo = std::min(v.pr(i), v.pr(i + 1));
        int hi = std::max(v.pr(i), v.pr(i + 1));
        long long removal = (long long)v.c(a, c) - v.c(a, va) - v.c(vb, c);

        // Insert ahead: j runs i+3 .. n.
        {
            int maxv = SegmentPriorityIndex::kEmptyMax;  // pmax(i+2, j-1)
            for (int j = i + 3; j <= v.n; ++j) {
                maxv = std::max(maxv, v.pr(j - 1));
                if (maxv > lo + d) break;
                int u = v.nd(j - 1), w = v.nd(j);
                long long delta = removal + v.c(u, va) + v.c(vb, w) - v.c(u, w);
                consider(best, MoveKind::relocate2, i, j, delta);
            }
        }

        // Insert behind: j runs i-1 .. 1.
        {
            int minv = SegmentPriorityIndex::kEmptyMin;  // pmin(j, i-1)
            for (int j = i - 1; j >= 1; --j) {
                minv = std::min(minv, v.pr(j));
                if (minv < hi - d) break;
                int u = v.nd(j - 1), w = v.nd(j);
                long long delta = removal + v.c(u, va) + v.c(vb, w) - v.c(u, w);
                consider(best, MoveKind::relocate2, i, j, delta);
            }
        }
    }
    return best;
}

}  // namespace detail

// Exact cost change of applying (kind, i, j) to the route, from the affected
// arcs only. Shared endpoints between removed and added arcs cancel, so the
// formulas hold for adjacent positions too.
inline long long move_delta(const Route& r, const Instance& inst, MoveKind kind, int i, int j) {
    detail::ScanView v(inst, r);
    switch (kind) {
        case MoveKind::swap11: {
            int vi = v.nd(i), vj = v.nd(j), a = v.nd(i - 1), f = v.nd(j + 1);
            if (j == i + 1)
                return (long long)v.c(a, vj) + v.c(vi, f) - v.c(a, vi) - v.c(vj, f);
            int b = v.nd(i + 1), e = v.nd(j - 1);
            return (long long)v.c(a, vj) + v.c(vj, b) + v.c(e, vi) + v.c(vi, f) - v.c(a, vi) -
                   v.c(vi, b) - v.c(e, vj) - v.c(vj, f);
        }
        case MoveKind::swap21: {
            int va = v.nd(i), vb = v.nd(i + 1), s = v.nd(j);
            if (j > i + 1) {
                int a = v.nd(i - 1), f = v.nd(j + 1);
                if (j == i + 2)
                    return (long long)v.c(a, s) + v.c(s, va) + v.c(vb, f) - v.c(a, va) -
                           v.c(vb, s) - v.c(s, f);
                int c = v.nd(i + 2), e = v.nd(j - 1);
                return (long long)v.c(a, s) + v.c(s, c) + v.c(e, va) + v.c(vb, f) - v.c(a, va) -
                       v.c(vb, c) - v.c(e, s) - v.c(s, f);
            }
            int u = v.nd(j - 1), f = v.nd(i + 2);
            if (j == i - 1)
                return (long long)v.c(u, va) + v.c(vb, s) + v.c(s, f) - v.c(u, s) - v.c(s, va) -
                       v.c(vb, f);
            int c = v.nd(j + 1), e = v.nd(i - 1);
            return (long long)v.c(u, va) + v.c(vb, c) + v.c(e, s) + v.c(s, f) - v.c(u, s) -
                   v.c(s, c) - v.c(e, va) - v.c(vb, f);
        }
        case MoveKind::swap22: {
            int va = v.nd(i), vb = v.nd(i + 1), vc = v.nd(j), vd = v.nd(j + 1);
            int a = v.nd(i - 1), f = v.nd(j + 2);
            if (j == i + 2)
                return (long long)v.c(a, vc) + v.c(vd, va) + v.c(vb, f) - v.c(a, va) -
                       v.c(vb, vc) - v.c(vd, f);
            int c = v.nd(i + 2), e = v.nd(j - 1);
            return (long long)v.c(a, vc) + v.c(vd, c) + v.c(e, va) + v.c(vb, f) - v.c(a, va) -
                   v.c(vb, c) - v.c(e, vc) - v.c(vd, f);
        }
        case MoveKind::relocate1: {
            int vi = v.nd(i), a = v.nd(i - 1), b = v.nd(i + 1);
            int u = v.nd(j - 1), w = v.nd(j);
            return (long long)v.c(a, b) - v.c(a, vi) - v.c(vi, b) + v.c(u, vi) + v.c(vi, w) -
                   v.c(u, w);
        }
        case MoveKind::relocate2: {
            int va = v.nd(i), vb = v.nd(i + 1), a = v.nd(i - 1), c = v.nd(i + 2);
            int u = v.nd(j - 1), w = v.nd(j);
            return (long long)v.c(a, c) - v.c(a, va) - v.c(vb, c) + v.c(u, va) + v.c(vb, w) -
                   v.c(u, w);
        }
    }
    return 0;
}

// Exhaustive best-improvement scan of one neighborhood. Returns the feasible
// move with the most negative delta, or nothing if the route is already
// optimal for this neighborhood. The route must be feasible on entry.
inline std::optional<Move> scan_neighborhood(const Route& route, const Instance& inst,
                                             MoveKind kind) {
    detail::ScanView v(inst, route);
    int d = inst.d;
    switch (kind) {
        case MoveKind::relocate1: return detail::scan_relocate1(v, d);
        case MoveKind::relocate2: return detail::scan_relocate2(v, d);
        case MoveKind::swap11: return detail::scan_swap11(v, d);
        case MoveKind::swap21: return detail::scan_swap21(v, d);
        case MoveKind::swap22: return detail::scan_swap22(v, d);
    }
    return std::nullopt;
}

// Randomized variable neighborhood descent over the five neighborhoods.
// Neighborhoods are tried in random order; a neighborhood that yields no
// improving move is set aside, any improvement resets the full list. The
// result is locally optimal for all five neighborhoods at once.
inline Route rvnd(Route route, const Instance& inst, Rng& rng) {
    std::vector<MoveKind> pool = {MoveKind::relocate1, MoveKind::relocate2, MoveKind::swap11,
                                  MoveKind::swap21, MoveKind::swap22};
    std::vector<MoveKind> nl = pool;
    while (!nl.empty()) {
        size_t pick = (size_t)rng.below(nl.size());
        auto mv = scan_neighborhood(route, inst, nl[pick]);
        if (mv) {
            apply_move(route, *mv);
            nl = pool;
        } else {
            nl.erase(nl.begin() + pick);
        }
    }
    return route;
}

}  // namespace ctspd
