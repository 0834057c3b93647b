#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctspd/rng.hpp"

namespace ctspd {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// A symmetric CTSP-d instance. Node 0 is the depot, customers are 1..n-1.
// Customers carry a priority in [1, g]; smaller means more urgent. The depot
// carries none (stored as 0). d is the relaxation parameter of the visiting
// rule; d >= g-1 makes the rule vacuous and the instance a plain TSP.
struct Instance {
    std::string name;
    int n = 0;
    std::vector<Point> coords;   // empty for EXPLICIT-matrix instances
    std::vector<int> cost;       // n*n, symmetric, zero diagonal
    std::vector<int> time;       // n*n, equal to cost unless set otherwise
    std::vector<int> priority;   // per node; priority[0] == 0
    int g = 1;
    int d = 0;

    static constexpr int depot = 0;

    int c(int i, int j) const { return cost[i * n + j]; }
    int t(int i, int j) const { return time[i * n + j]; }
    int num_customers() const { return n - 1; }
    bool has_coords() const { return !coords.empty(); }
    bool rule_vacuous() const { return d >= g - 1; }

    // Smallest priority class that actually has members.
    int min_priority_present() const {
        int p = g + 1;
        for (int v = 1; v < n; ++v) p = std::min(p, priority[v]);
        return p;
    }
    int max_priority_present() const {
        int p = 0;
        for (int v = 1; v < n; ++v) p = std::max(p, priority[v]);
        return p;
    }

    void check_valid() const {
        if (n < 2) throw std::invalid_argument("instance needs at least 2 nodes");
        if ((int)cost.size() != n * n) throw std::invalid_argument("cost matrix size mismatch");
        if (g < 1) throw std::invalid_argument("group count must be >= 1");
        if (d < 0) throw std::invalid_argument("relaxation parameter must be >= 0");
        for (int i = 0; i < n; ++i) {
            if (c(i, i) != 0) throw std::invalid_argument("cost diagonal must be zero");
            for (int j = i + 1; j < n; ++j) {
                if (c(i, j) != c(j, i)) throw std::invalid_argument("cost matrix must be symmetric");
                if (c(i, j) < 0) throw std::invalid_argument("cost entries must be nonnegative");
            }
        }
        if ((int)priority.size() != n) throw std::invalid_argument("priority vector size mismatch");
        if (priority[depot] != 0) throw std::invalid_argument("depot must not carry a priority");
        for (int v = 1; v < n; ++v)
            if (priority[v] < 1 || priority[v] > g)
                throw std::invalid_argument("customer priority out of [1, g]");
    }
};

enum class Grouping { random, clustered };

inline char grouping_letter(Grouping m) { return m == Grouping::random ? 'R' : 'C'; }

inline Grouping grouping_from_letter(char c) {
    if (c == 'R' || c == 'r') return Grouping::random;
    if (c == 'C' || c == 'c') return Grouping::clustered;
    throw std::invalid_argument(std::string("unknown grouping letter: ") + c);
}

// Benchmark instance label, rendered as X-Y-g-d(-a|b|c). The small 42/52-node
// families fuse the grouping letter onto the base name (swiss42R-3-1-a), the
// large families keep the dash (kroA100-R-3-0); parse accepts both.
struct InstanceLabel {
    std::string base;
    Grouping grouping = Grouping::random;
    int g = 1;
    int d = 0;
    std::optional<char> replicate;

    std::string render(bool fused_grouping = false) const {
        std::string s = base;
        if (!fused_grouping) s += '-';
        s += grouping_letter(grouping);
        s += '-' + std::to_string(g) + '-' + std::to_string(d);
        if (replicate) s += std::string("-") + *replicate;
        return s;
    }

    static InstanceLabel parse(const std::string& text) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : text) {
            if (ch == '-') { parts.push_back(cur); cur.clear(); }
            else cur += ch;
        }
        parts.push_back(cur);
        InstanceLabel lab;
        size_t end = parts.size();
        if (end >= 2 && parts[end - 1].size() == 1 && parts[end - 1][0] >= 'a' && parts[end - 1][0] <= 'z') {
            lab.replicate = parts[end - 1][0];
            --end;
        }
        if (end < 3) throw std::invalid_argument("unparsable instance label: " + text);
        lab.d = std::stoi(parts[end - 1]);
        lab.g = std::stoi(parts[end - 2]);
        std::string head = parts[end - 3];
        if (end >= 4 && head.size() == 1 && (head[0] == 'R' || head[0] == 'C')) {
            lab.grouping = grouping_from_letter(head[0]);
            lab.base = parts[0];
            for (size_t i = 1; i + 3 < end; ++i) lab.base += '-' + parts[i];
        } else if (head.size() >= 2) {
            lab.grouping = grouping_from_letter(head.back());
            lab.base = head.substr(0, head.size() - 1);
            if (end >= 4) {
                std::string prefix = parts[0];
                for (size_t i = 1; i + 3 < end; ++i) prefix += '-' + parts[i];
                lab.base = prefix + '-' + lab.base;
            }
        } else {
            throw std::invalid_argument("unparsable instance label: " + text);
        }
        return lab;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// TSPLIB nearest-integer rounding for EUC_2D.
inline int euc2d(const Point& a, const Point& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return (int)std::lround(std::sqrt(dx * dx + dy * dy));
}

struct KeyedLine {
    std::string key;
    std::string value;  // empty for section markers
};

inline KeyedLine split_key(const std::string& line) {
    size_t colon = line.find(':');
    if (colon == std::string::npos) return {trim(line), ""};
    return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

}  // namespace detail

// Parses the TSPLIB95 text format plus the GROUPS / DRELAX / PRIORITY_SECTION
// extensions. EUC_2D coordinates give nearest-integer Euclidean costs;
// EXPLICIT matrices (FULL_MATRIX and the ROW triangle variants) load verbatim.
// The time matrix starts out equal to cost.
inline Instance read_instance(const std::string& text) {
    Instance inst;
    inst.n = -1;
    std::string edge_weight_type, edge_weight_format = "FULL_MATRIX";
    std::vector<double> weights;
    std::vector<std::pair<int, int>> prio_pairs;
    bool saw_coords = false, saw_weights = false, saw_priorities = false;

    std::istringstream in(text);
    std::string raw;
    enum class Section { header, coords, weights, priorities, skip } sec = Section::header;
    int skip_remaining = 0;

    while (std::getline(in, raw)) {
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line == "EOF") break;

        auto is_section = [&](const char* name) { return line == name; };
        if (is_section("NODE_COORD_SECTION")) {
            if (inst.n < 0) throw std::invalid_argument("NODE_COORD_SECTION before DIMENSION");
            inst.coords.assign(inst.n, Point{});
            sec = Section::coords;
            saw_coords = true;
            continue;
        }
        if (is_section("EDGE_WEIGHT_SECTION")) {
            if (inst.n < 0) throw std::invalid_argument("EDGE_WEIGHT_SECTION before DIMENSION");
            sec = Section::weights;
            saw_weights = true;
            continue;
        }
        if (is_section("PRIORITY_SECTION")) {
            if (inst.n < 0) throw std::invalid_argument("PRIORITY_SECTION before DIMENSION");
            sec = Section::priorities;
            saw_priorities = true;
            continue;
        }
        if (is_section("DISPLAY_DATA_SECTION")) {
            sec = Section::skip;
            skip_remaining = inst.n;
            continue;
        }

        switch (sec) {
            case Section::header: {
                auto [key, value] = detail::split_key(line);
                if (key == "NAME") inst.name = value;
                else if (key == "DIMENSION") inst.n = std::stoi(value);
                else if (key == "EDGE_WEIGHT_TYPE") edge_weight_type = value;
                else if (key == "EDGE_WEIGHT_FORMAT") edge_weight_format = value;
                else if (key == "GROUPS") inst.g = std::stoi(value);
                else if (key == "DRELAX") inst.d = std::stoi(value);
                // TYPE, COMMENT, DISPLAY_DATA_TYPE etc. are ignored.
                break;
            }
            case Section::coords: {
                std::istringstream ls(line);
                int id;
                double x, y;
                if (!(ls >> id >> x >> y)) throw std::invalid_argument("malformed coordinate line: " + line);
                if (id < 1 || id > inst.n) throw std::invalid_argument("coordinate node id out of range");
                inst.coords[id - 1] = Point{x, y};
                break;
            }
            case Section::weights: {
                std::istringstream ls(line);
                double w;
                while (ls >> w) weights.push_back(w);
                break;
            }
            case Section::priorities: {
                std::istringstream ls(line);
                int id, p;
                if (!(ls >> id >> p)) throw std::invalid_argument("malformed priority line: " + line);
                prio_pairs.emplace_back(id, p);
                break;
            }
            case Section::skip: {
                if (--skip_remaining <= 0) sec = Section::header;
                break;
            }
        }
    }

    if (inst.n < 0) throw std::invalid_argument("missing DIMENSION");
    if (inst.n < 2) throw std::invalid_argument("instance needs at least 2 nodes");

    const int n = inst.n;
    inst.cost.assign((size_t)n * n, 0);

    if (edge_weight_type == "EUC_2D") {
        if (!saw_coords) throw std::invalid_argument("EUC_2D instance lacks NODE_COORD_SECTION");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int w = detail::euc2d(inst.coords[i], inst.coords[j]);
                inst.cost[i * n + j] = inst.cost[j * n + i] = w;
            }
    } else if (edge_weight_type == "EXPLICIT") {
        if (!saw_weights) throw std::invalid_argument("EXPLICIT instance lacks EDGE_WEIGHT_SECTION");
        auto need = [&](size_t want) {
            if (weights.size() != want)
                throw std::invalid_argument("EDGE_WEIGHT_SECTION entry count mismatch");
        };
        size_t k = 0;
        if (edge_weight_format == "FULL_MATRIX") {
            need((size_t)n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) inst.cost[i * n + j] = (int)std::llround(weights[k++]);
            for (int i = 0; i < n; ++i) {
                if (inst.cost[i * n + i] != 0)
                    throw std::invalid_argument("explicit matrix has nonzero diagonal");
                for (int j = i + 1; j < n; ++j)
                    if (inst.cost[i * n + j] != inst.cost[j * n + i])
                        throw std::invalid_argument("explicit full matrix is not symmetric");
            }
        } else if (edge_weight_format == "UPPER_ROW" || edge_weight_format == "UPPER_DIAG_ROW" ||
                   edge_weight_format == "LOWER_ROW" || edge_weight_format == "LOWER_DIAG_ROW") {
            bool upper = edge_weight_format[0] == 'U';
            bool diag = edge_weight_format.find("DIAG") != std::string::npos;
            size_t want = (size_t)n * (n - 1) / 2 + (diag ? n : 0);
            need(want);
            for (int i = 0; i < n; ++i) {
                int jb = upper ? (diag ? i : i + 1) : 0;
                int je = upper ? n : (diag ? i + 1 : i);
                for (int j = jb; j < je; ++j) {
                    int w = (int)std::llround(weights[k++]);
                    if (i == j) {
                        if (w != 0) throw std::invalid_argument("explicit matrix has nonzero diagonal");
                        continue;
                    }
                    inst.cost[i * n + j] = inst.cost[j * n + i] = w;
                }
            }
        } else {
            throw std::invalid_argument("unsupported EDGE_WEIGHT_FORMAT: " + edge_weight_format);
        }
    } else {
        throw std::invalid_argument("unsupported EDGE_WEIGHT_TYPE: " +
                                    (edge_weight_type.empty() ? "<missing>" : edge_weight_type));
    }

    inst.time = inst.cost;

    inst.priority.assign(n, 0);
    if (saw_priorities) {
        std::vector<bool> seen(n, false);
        for (auto [id, p] : prio_pairs) {
            if (id < 2 || id > n) throw std::invalid_argument("priority node id out of range");
            if (p < 1 || p > inst.g) throw std::invalid_argument("priority out of [1, g]");
            if (seen[id - 1]) throw std::invalid_argument("duplicate priority entry");
            seen[id - 1] = true;
            inst.priority[id - 1] = p;
        }
        for (int v = 1; v < n; ++v)
            if (!seen[v]) throw std::invalid_argument("customer missing from PRIORITY_SECTION");
    } else if (inst.g == 1) {
        for (int v = 1; v < n; ++v) inst.priority[v] = 1;
    } else {
        throw std::invalid_argument("GROUPS > 1 requires a PRIORITY_SECTION");
    }

    inst.check_valid();
    return inst;
}

// Plain TSPLIB entry point: same parser, the file just carries no priority
// extensions (customers default to the single group 1).
inline Instance parse_tsplib(const std::string& text) { return read_instance(text); }

inline Instance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    Instance inst = read_instance(buf.str());
    if (inst.name.empty()) inst.name = path;
    return inst;
}

namespace detail {

inline std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

// Serializes an instance in the extended TSPLIB format; read_instance inverts
// it exactly, including priorities, g and d.
inline std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << inst.n << "\n";
    out << "GROUPS : " << inst.g << "\n";
    out << "DRELAX : " << inst.d << "\n";
    if (inst.has_coords()) {
        out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
        out << "NODE_COORD_SECTION\n";
        for (int i = 0; i < inst.n; ++i)
            out << i + 1 << ' ' << detail::format_coord(inst.coords[i].x) << ' '
                << detail::format_coord(inst.coords[i].y) << "\n";
    } else {
        out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 0; i < inst.n; ++i) {
            for (int j = 0; j < inst.n; ++j) out << (j ? " " : "") << inst.c(i, j);
            out << "\n";
        }
    }
    out << "PRIORITY_SECTION\n";
    for (int v = 1; v < inst.n; ++v) out << v + 1 << ' ' << inst.priority[v] << "\n";
    out << "EOF\n";
    return out.str();
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write instance file: " + path);
    f << write_instance(inst);
}

// Attaches a priority grouping to an instance. R distributes customers to
// groups uniformly at random; C sweeps customers by angle around their
// centroid from a seeded start and cuts the sweep into g near-equal arcs,
// arc k getting priority k+1. Either way the result is a pure function of
// (instance, g, mode, seed).
inline Instance assign_groups(const Instance& base, int g, Grouping mode, std::uint64_t seed) {
    if (g < 1) throw std::invalid_argument("group count must be >= 1");
    const int m = base.num_customers();
    if (g > m) throw std::invalid_argument("more groups than customers");
    if (mode == Grouping::clustered && !base.has_coords())
        throw std::invalid_argument("clustered grouping needs coordinates");

    Instance inst = base;
    inst.g = g;
    inst.priority.assign(inst.n, 0);
    SplitMix rng(seed);

    if (mode == Grouping::random) {
        for (int v = 1; v < inst.n; ++v) inst.priority[v] = 1 + (int)rng.below((std::uint64_t)g);
        return inst;
    }

    double cx = 0, cy = 0;
    for (int v = 1; v < inst.n; ++v) {
        cx += inst.coords[v].x;
        cy += inst.coords[v].y;
    }
    cx /= m;
    cy /= m;

    std::vector<int> order(m);
    for (int v = 1; v < inst.n; ++v) order[v - 1] = v;
    std::vector<double> angle(inst.n, 0.0);
    for (int v = 1; v < inst.n; ++v)
        angle[v] = std::atan2(inst.coords[v].y - cy, inst.coords[v].x - cx);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (angle[a] != angle[b]) return angle[a] < angle[b];
        return a < b;
    });

    // Replicates differ by rotating the sweep start.
    int start = (int)rng.below((std::uint64_t)m);
    int pos = 0;
    for (int k = 0; k < g; ++k) {
        int size = m / g + (k < m % g ? 1 : 0);
        for (int s = 0; s < size; ++s) {
            int v = order[(start + pos) % m];
            inst.priority[v] = k + 1;
            ++pos;
        }
    }
    return inst;
}

}  // namespace ctspd
