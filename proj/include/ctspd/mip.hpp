#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctspd/construction.hpp"
#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/rng.hpp"

namespace ctspd {

// The two base formulations order nodes by arrival time (F1) or by visit
// position (F2); the s-suffixed variants add the class-level strengthening
// rows. Models use 1-based node ids with the depot duplicated as node n+1
// for the closing arc, so a solution is a path 1 -> ... -> n+1.
enum class MipVariant { F1, F1s, F2, F2s };

inline const char* variant_name(MipVariant v) {
    switch (v) {
        case MipVariant::F1: return "F1";
        case MipVariant::F1s: return "F1s";
        case MipVariant::F2: return "F2";
        case MipVariant::F2s: return "F2s";
    }
    return "?";
}

inline MipVariant variant_from_name(const std::string& s) {
    if (s == "F1" || s == "f1") return MipVariant::F1;
    if (s == "F1s" || s == "f1s") return MipVariant::F1s;
    if (s == "F2" || s == "f2") return MipVariant::F2;
    if (s == "F2s" || s == "f2s") return MipVariant::F2s;
    throw std::invalid_argument("unknown formulation: " + s);
}

// all_pairs emits one precedence row for every customer pair whose priorities
// differ by more than d, the correct linearization of the visiting rule.
// single_step only pairs classes exactly d+1 apart; it is kept to demonstrate
// that this weaker pattern accepts rule-violating routes.
enum class PrecedencePattern { all_pairs, single_step };

struct MipOptions {
    PrecedencePattern pattern = PrecedencePattern::all_pairs;
    double eps = 0.0;    // 0: minimum positive travel time
    double big_m = 0.0;  // 0: F1 greedy-tour cost, F2 node count
};

enum class RowSense { le, ge, eq };

struct MipTerm {
    double coef;
    int var;
};

struct MipRow {
    std::string name;
    std::vector<MipTerm> terms;
    RowSense sense;
    double rhs;
};

struct MipVarInfo {
    std::string name;
    bool binary = false;
    bool integer = false;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct MipArc {
    int i, j;  // model node ids
    int var;
    double cost, time;
};

struct MipModel {
    MipVariant variant = MipVariant::F1;
    int n = 0;  // original node count; model ids run 1..n+1
    std::vector<MipVarInfo> vars;
    std::vector<double> obj;  // aligned with vars
    std::vector<MipRow> rows;
    std::vector<MipArc> arcs;
    double big_m = 0.0;
    double eps = 0.0;

    bool uses_time() const { return variant == MipVariant::F1 || variant == MipVariant::F1s; }
    bool strengthened() const { return variant == MipVariant::F1s || variant == MipVariant::F2s; }

    int arc_var(int i, int j) const {
        int w = n + 2;
        return arc_lookup_[(size_t)i * w + j];
    }

    int order_var(int i) const { return order_var_base_ + i - 1; }

    size_t count_rows(const std::string& prefix) const {
        size_t c = 0;
        for (const auto& r : rows)
            if (r.name.rfind(prefix, 0) == 0) ++c;
        return c;
    }

    // filled by emit_mip
    std::vector<int> arc_lookup_;
    int order_var_base_ = 0;
};

// Builds one of the four models for the instance. Node ids: 1 is the depot,
// 2..n the customers (original node v becomes v+1), n+1 the depot copy that
// ends the path. Arcs leave 1 and the customers and enter the customers and
// n+1; the useless arc 1 -> n+1 is omitted.
inline MipModel emit_mip(const Instance& inst, MipVariant variant, MipOptions opt = {}) {
    inst.check_valid();
    MipModel model;
    model.variant = variant;
    model.n = inst.n;
    const int n = inst.n;
    const int ret = n + 1;

    auto orig = [&](int id) { return id == ret ? Instance::depot : id - 1; };
    auto prio = [&](int id) { return inst.priority[id - 1]; };  // customer ids only

    model.arc_lookup_.assign((size_t)(n + 2) * (n + 2), -1);
    for (int i = 1; i <= n; ++i) {
        for (int j = 2; j <= ret; ++j) {
            if (j == i || (i == 1 && j == ret)) continue;
            int var = (int)model.vars.size();
            model.vars.push_back(
                {"x_" + std::to_string(i) + "_" + std::to_string(j), true, true, 0.0, 1.0});
            model.obj.push_back(inst.c(orig(i), orig(j)));
            model.arcs.push_back({i, j, var, (double)inst.c(orig(i), orig(j)),
                                  (double)inst.t(orig(i), orig(j))});
            model.arc_lookup_[(size_t)i * (n + 2) + j] = var;
        }
    }

    const bool time_model = model.uses_time();
    model.order_var_base_ = (int)model.vars.size();
    for (int i = 1; i <= ret; ++i) {
        std::string name = (time_model ? "s_" : "u_") + std::to_string(i);
        double hi = time_model ? std::numeric_limits<double>::infinity() : (double)n;
        model.vars.push_back({name, false, !time_model, 0.0, hi});
        model.obj.push_back(0.0);
    }

    if (opt.eps == 0.0) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && inst.t(i, j) > 0) best = std::min(best, (double)inst.t(i, j));
        opt.eps = std::isfinite(best) ? best : 1.0;
    }
    if (opt.big_m == 0.0) {
        if (time_model) {
            Rng rng(0);
            opt.big_m = (double)initialize(inst, 1, rng).cost;
        } else {
            opt.big_m = (double)n;
        }
    }
    model.big_m = opt.big_m;
    model.eps = opt.eps;
    const double m_val = opt.big_m;

    auto add_row = [&](std::string name, std::vector<MipTerm> terms, RowSense sense, double rhs) {
        model.rows.push_back({std::move(name), std::move(terms), sense, rhs});
    };

    for (int i = 1; i <= n; ++i) {
        std::vector<MipTerm> terms;
        for (int j = 2; j <= ret; ++j)
            if (model.arc_var(i, j) >= 0) terms.push_back({1.0, model.arc_var(i, j)});
        add_row("out_" + std::to_string(i), std::move(terms), RowSense::eq, 1.0);
    }
    for (int j = 2; j <= ret; ++j) {
        std::vector<MipTerm> terms;
        for (int i = 1; i <= n; ++i)
            if (model.arc_var(i, j) >= 0) terms.push_back({1.0, model.arc_var(i, j)});
        add_row("in_" + std::to_string(j), std::move(terms), RowSense::eq, 1.0);
    }

    add_row("depot_start", {{1.0, model.order_var(1)}}, RowSense::eq, 0.0);

    // Ordering rows link arc use to the order variables: taking arc (i, j)
    // forces j's value at least i's plus the travel time (F1) or plus one
    // position (F2). These rows also rule out subtours.
    for (const auto& arc : model.arcs) {
        double step = time_model ? arc.time : 1.0;
        add_row("link_" + std::to_string(arc.i) + "_" + std::to_string(arc.j),
                {{1.0, model.order_var(arc.i)},
                 {-1.0, model.order_var(arc.j)},
                 {m_val, arc.var}},
                RowSense::le, m_val - step);
    }

    // Precedence rows pin the rule: a customer more than d classes less
    // urgent than another must come later.
    for (int i = 2; i <= n; ++i) {
        for (int j = 2; j <= n; ++j) {
            if (i == j) continue;
            bool eligible = opt.pattern == PrecedencePattern::all_pairs
                                ? prio(j) > prio(i) + inst.d
                                : prio(j) == prio(i) + inst.d + 1;
            if (!eligible) continue;
            double gap = time_model ? opt.eps : 1.0;
            add_row("prec_" + std::to_string(i) + "_" + std::to_string(j),
                    {{1.0, model.order_var(i)}, {-1.0, model.order_var(j)}}, RowSense::le, -gap);
        }
    }

    if (model.strengthened()) {
        int minp = inst.min_priority_present();
        int maxp = inst.max_priority_present();
        std::vector<std::vector<int>> klass(inst.g + 1);
        for (int id = 2; id <= n; ++id) klass[prio(id)].push_back(id);

        // A direct arc from a much less urgent customer to a more urgent one
        // can never be used.
        for (int i = 2; i <= n; ++i)
            for (int j = 2; j <= n; ++j)
                if (i != j && prio(i) > prio(j) + inst.d)
                    add_row("noarc_" + std::to_string(i) + "_" + std::to_string(j),
                            {{1.0, model.arc_var(i, j)}}, RowSense::eq, 0.0);

        // The path cannot start at a class out of reach of the most urgent
        // one present, nor end at a class every remaining node would outrank.
        for (int p = 1; p <= inst.g; ++p) {
            if (klass[p].empty()) continue;
            if (p > minp + inst.d) {
                std::vector<MipTerm> terms;
                for (int j : klass[p]) terms.push_back({1.0, model.arc_var(1, j)});
                add_row("start_" + std::to_string(p), std::move(terms), RowSense::eq, 0.0);
            }
            if (p < maxp - inst.d) {
                std::vector<MipTerm> terms;
                for (int i : klass[p]) terms.push_back({1.0, model.arc_var(i, ret)});
                add_row("finish_" + std::to_string(p), std::move(terms), RowSense::eq, 0.0);
            }
        }

        // Crossing from class p up to a class beyond p + d implies p is
        // exhausted, so such a crossing can happen at most once.
        for (int p = 1; p <= inst.g; ++p) {
            for (int q = p + inst.d + 1; q <= inst.g; ++q) {
                if (klass[p].empty() || klass[q].empty()) continue;
                std::vector<MipTerm> terms;
                for (int i : klass[p])
                    for (int j : klass[q]) terms.push_back({1.0, model.arc_var(i, j)});
                add_row("classarc_" + std::to_string(p) + "_" + std::to_string(q),
                        std::move(terms), RowSense::le, 1.0);
            }
        }
    }

    return model;
}

namespace detail {

inline std::string lp_num(double v) {
    if (v == (long long)v && std::abs(v) < 1e15) return std::to_string((long long)v);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline void lp_terms(std::ostringstream& out, const MipModel& model,
                     const std::vector<MipTerm>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        double c = t.coef;
        if (first) {
            if (c < 0) out << "- ";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        double a = std::abs(c);
        if (a != 1.0) out << lp_num(a) << ' ';
        out << model.vars[t.var].name;
    }
    if (first) out << "0 " << model.vars[0].name;
}

}  // namespace detail

// Serializes the model in the LP file format understood by the common MILP
// solvers. Variable and row order follow the model exactly, so output is
// deterministic.
inline std::string write_lp(const MipModel& model) {
    std::ostringstream out;
    out << "\\ " << variant_name(model.variant) << " model, " << model.n
        << " nodes, big M = " << detail::lp_num(model.big_m);
    if (model.uses_time()) out << ", eps = " << detail::lp_num(model.eps);
    out << "\n";
    out << "Minimize\n obj: ";
    {
        std::vector<MipTerm> terms;
        for (int v = 0; v < (int)model.vars.size(); ++v)
            if (model.obj[v] != 0.0) terms.push_back({model.obj[v], v});
        detail::lp_terms(out, model, terms);
    }
    out << "\nSubject To\n";
    for (const auto& row : model.rows) {
        out << ' ' << row.name << ": ";
        detail::lp_terms(out, model, row.terms);
        switch (row.sense) {
            case RowSense::le: out << " <= "; break;
            case RowSense::ge: out << " >= "; break;
            case RowSense::eq: out << " = "; break;
        }
        out << detail::lp_num(row.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : model.vars) {
        if (v.binary) continue;
        if (std::isfinite(v.hi))
            out << ' ' << detail::lp_num(v.lo) << " <= " << v.name << " <= "
                << detail::lp_num(v.hi) << "\n";
        else
            out << ' ' << v.name << " >= " << detail::lp_num(v.lo) << "\n";
    }
    bool any_bin = false, any_gen = false;
    for (const auto& v : model.vars) {
        if (v.binary) any_bin = true;
        else if (v.integer) any_gen = true;
    }
    if (any_bin) {
        out << "Binaries\n";
        for (const auto& v : model.vars)
            if (v.binary) out << ' ' << v.name << "\n";
    }
    if (any_gen) {
        out << "Generals\n";
        for (const auto& v : model.vars)
            if (!v.binary && v.integer) out << ' ' << v.name << "\n";
    }
    out << "End\n";
    return out.str();
}

// Evaluates the natural assignment a route induces (arc variables from its
// consecutive arcs, order variables from positions or cumulative travel
// times) against every row of the model. Returns the names of the rows the
// assignment violates; an empty result means the model accepts the route.
inline std::vector<std::string> validate_assignment(const MipModel& model, const Route& route) {
    const int n = model.n;
    if (route.size() != n) throw std::invalid_argument("route size does not match model");

    std::vector<double> val(model.vars.size(), 0.0);

    std::vector<int> ids(n + 1);
    for (int t = 0; t < n; ++t) ids[t] = route.order[t] + 1;
    ids[n] = n + 1;
    if (ids[0] != 1) throw std::invalid_argument("route must start at the depot");

    double clock = 0.0;
    val[model.order_var(1)] = 0.0;
    for (int t = 0; t < n; ++t) {
        int var = model.arc_var(ids[t], ids[t + 1]);
        if (var < 0) throw std::logic_error("route uses an arc absent from the model");
        val[var] = 1.0;
        if (model.uses_time()) {
            clock += model.arcs[var].time;
            val[model.order_var(ids[t + 1])] = clock;
        } else {
            val[model.order_var(ids[t + 1])] = t + 1;
        }
    }

    constexpr double kTol = 1e-6;
    std::vector<std::string> violated;
    for (const auto& row : model.rows) {
        double lhs = 0.0;
        for (const auto& term : row.terms) lhs += term.coef * val[term.var];
        bool bad = false;
        switch (row.sense) {
            case RowSense::le: bad = lhs > row.rhs + kTol; break;
            case RowSense::ge: bad = lhs < row.rhs - kTol; break;
            case RowSense::eq: bad = std::abs(lhs - row.rhs) > kTol; break;
        }
        if (bad) violated.push_back(row.name);
    }
    return violated;
}

}  // namespace ctspd
