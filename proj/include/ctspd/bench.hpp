#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/metaheuristic.hpp"
#include "ctspd/rng.hpp"

namespace ctspd {

// Canonical optimal tour costs for the unconstrained base instances, used
// for the GapTSP column. Unknown bases simply leave the column empty.
inline std::optional<long long> canonical_tsp_optimum(const std::string& base) {
    struct Entry {
        const char* name;
        long long opt;
    };
    static constexpr Entry table[] = {
        {"swiss42", 1273},  {"berlin52", 7542},  {"kroA100", 21282},
        {"kroB100", 22141}, {"kroC100", 20749},  {"kroD100", 21294},
        {"kroE100", 22068}, {"kroA200", 29368},  {"kroB200", 29437},
    };
    for (const auto& e : table)
        if (base == e.name) return e.opt;
    return std::nullopt;
}

struct RunSample {
    long long cost = 0;
    double seconds = 0.0;
};

// Aggregated repetitions of the solver on one instance. BKS is the best cost
// over these runs; AvgGap measures the spread of the runs around it, and
// GapTSP how far the rule pushes the best run above the unconstrained
// optimum (both percentages with BKS in the denominator).
struct RunReport {
    std::string label;
    std::vector<RunSample> runs;
    std::optional<long long> tsp_opt;

    long long bks() const {
        long long best = runs.front().cost;
        for (const auto& r : runs) best = std::min(best, r.cost);
        return best;
    }
    double avg_sol() const {
        double s = 0;
        for (const auto& r : runs) s += (double)r.cost;
        return s / (double)runs.size();
    }
    double avg_time() const {
        double s = 0;
        for (const auto& r : runs) s += r.seconds;
        return s / (double)runs.size();
    }
    double avg_gap() const {
        double b = (double)bks(), s = 0;
        for (const auto& r : runs) s += 100.0 * ((double)r.cost - b) / b;
        return s / (double)runs.size();
    }
    std::optional<double> gap_tsp() const {
        if (!tsp_opt) return std::nullopt;
        double b = (double)bks();
        return 100.0 * (b - (double)*tsp_opt) / b;
    }
};

inline double gap_tsp_value(long long bks, long long tsp_opt) {
    return 100.0 * ((double)bks - (double)tsp_opt) / (double)bks;
}

namespace detail {

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

// Repeats the solver on one instance with per-run seeds derived from the
// label, collecting one sample per run.
inline RunReport run_benchmark_instance(const Instance& inst, const std::string& label,
                                        const SearchParams& params, int runs,
                                        std::uint64_t base_seed) {
    if (runs < 1) throw std::invalid_argument("run count must be >= 1");
    RunReport report;
    report.label = label;
    std::string base = label;
    try {
        base = InstanceLabel::parse(label).base;
    } catch (const std::exception&) {
        // plain base names (no grouping suffix) look themselves up
    }
    report.tsp_opt = canonical_tsp_optimum(base);
    std::uint64_t label_seed = seed_for_label(base_seed, label);
    for (int r = 0; r < runs; ++r) {
        SearchParams p = params;
        p.seed = label_seed + 1000003ULL * (std::uint64_t)r;
        SolveResult res = solve(inst, p);
        if (!is_feasible(res.best, inst))
            throw std::logic_error("solver returned an infeasible route for " + label);
        report.runs.push_back({res.best.cost, res.seconds});
    }
    return report;
}

// Aggregate CSV, one row per instance. stable_times writes the time column
// empty so reruns with the same seeds are byte-identical.
inline std::string reports_to_csv(const std::vector<RunReport>& reports, bool stable_times) {
    std::ostringstream out;
    out << "Instance,AvgSol,AvgTime,AvgGap,BKS,GapTSP\n";
    for (const auto& rep : reports) {
        out << rep.label << ',' << detail::fixed2(rep.avg_sol()) << ',';
        if (!stable_times) out << detail::fixed2(rep.avg_time());
        out << ',' << detail::fixed2(rep.avg_gap()) << ',' << rep.bks() << ',';
        if (auto g = rep.gap_tsp()) out << detail::fixed2(*g);
        out << "\n";
    }
    return out.str();
}

// Per-run detail CSV backing the aggregate, one row per (instance, run).
inline std::string runs_to_csv(const std::vector<RunReport>& reports, bool stable_times) {
    std::ostringstream out;
    out << "Instance,Run,Cost,Seconds\n";
    for (const auto& rep : reports)
        for (size_t r = 0; r < rep.runs.size(); ++r) {
            out << rep.label << ',' << r + 1 << ',' << rep.runs[r].cost << ',';
            if (!stable_times) out << detail::fixed2(rep.runs[r].seconds);
            out << "\n";
        }
    return out.str();
}

inline std::string reports_to_markdown(const std::vector<RunReport>& reports,
                                       bool stable_times) {
    std::ostringstream out;
    out << "| Instance | AvgSol | AvgTime | AvgGap | BKS | GapTSP |\n";
    out << "| --- | ---: | ---: | ---: | ---: | ---: |\n";
    for (const auto& rep : reports) {
        out << "| " << rep.label << " | " << detail::fixed2(rep.avg_sol()) << " | "
            << (stable_times ? std::string("-") : detail::fixed2(rep.avg_time())) << " | "
            << detail::fixed2(rep.avg_gap()) << " | " << rep.bks() << " | ";
        if (auto g = rep.gap_tsp()) out << detail::fixed2(*g);
        else out << '-';
        out << " |\n";
    }
    return out.str();
}

// Solution file: the tour in TSPLIB tour format plus the cost. Timing is
// deliberately omitted so identical seeds give identical bytes.
inline std::string solution_to_text(const std::string& label, const Instance& inst,
                                    const Route& route) {
    std::ostringstream out;
    out << "NAME : " << label << "\n";
    out << "TYPE : TOUR\n";
    out << "DIMENSION : " << inst.n << "\n";
    out << "COST : " << route.cost << "\n";
    out << "TOUR_SECTION\n";
    for (int v : route.order) out << v + 1 << "\n";
    out << "-1\nEOF\n";
    return out.str();
}

// One entry of the generated benchmark set.
struct SuiteInstance {
    InstanceLabel label;
    bool fused = false;  // small bases fuse the grouping letter onto the name
    Instance instance;

    std::string name() const { return label.render(fused); }
};

// Expands one base instance into the benchmark grid: both groupings, group
// counts 1/3/5, the relaxation values that keep the rule binding (plus the
// strict d = 0), and for small bases three replicates per grouped setting.
// The grouping seed ignores d, so entries differing only in the relaxation
// share one priority assignment and stay comparable across d; regeneration
// is byte-stable and replicates differ only by seed.
inline std::vector<SuiteInstance> generate_suite(const Instance& base,
                                                 const std::string& base_name,
                                                 std::uint64_t base_seed) {
    bool small = base.n < 60;
    std::vector<SuiteInstance> out;
    for (Grouping mode : {Grouping::random, Grouping::clustered}) {
        for (int g : {1, 3, 5}) {
            std::vector<int> ds = g == 1 ? std::vector<int>{0}
                                  : g == 3 ? std::vector<int>{0, 1}
                                           : std::vector<int>{0, 1, 3};
            std::vector<std::optional<char>> reps;
            if (small && g > 1)
                reps = {'a', 'b', 'c'};
            else if (small && g == 1 && mode == Grouping::random)
                reps = {'a'};
            else
                reps = {std::nullopt};
            for (auto rep : reps) {
                std::string group_key = base_name;
                group_key += grouping_letter(mode);
                group_key += '-' + std::to_string(g);
                if (rep) group_key += std::string("-") + *rep;
                Instance grouped =
                    assign_groups(base, g, mode, seed_for_label(base_seed, group_key));
                for (int d : ds) {
                    SuiteInstance item;
                    item.label = {base_name, mode, g, d, rep};
                    item.fused = small;
                    item.instance = grouped;
                    item.instance.d = d;
                    item.instance.name = item.name();
                    out.push_back(std::move(item));
                }
            }
        }
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << content;
}

}  // namespace ctspd
