#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctspd/ctspd.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

ctspd::Instance load_labeled(const std::string& path) {
    ctspd::Instance inst = ctspd::load_instance(path);
    if (inst.name.empty() || inst.name == path) inst.name = stem_of(path);
    return inst;
}

ctspd::SearchParams preset_params(const std::string& preset) {
    if (preset == "fast") return ctspd::fast_params();
    if (preset == "large") return ctspd::large_params();
    throw CLI::ValidationError("--preset", "unknown preset: " + preset);
}

// Reads a tour file written by solution_to_text (TSPLIB tour format).
ctspd::Route read_tour(const std::string& path, const ctspd::Instance& inst) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open tour file: " + path);
    ctspd::Route route;
    std::string line;
    bool in_tour = false;
    while (std::getline(f, line)) {
        auto trimmed = line.substr(0, line.find_last_not_of(" \t\r\n") + 1);
        if (trimmed == "TOUR_SECTION") {
            in_tour = true;
            continue;
        }
        if (!in_tour) continue;
        std::istringstream ls(trimmed);
        int id;
        while (ls >> id) {
            if (id == -1) {
                in_tour = false;
                break;
            }
            route.order.push_back(id - 1);
        }
    }
    if (route.order.empty()) throw std::runtime_error("tour file has no TOUR_SECTION: " + path);
    route.recompute_cost(inst);
    return route;
}

int cmd_generate(const std::vector<std::string>& bases, const std::string& out_dir,
                 std::uint64_t seed, int g, int d, const std::string& grouping,
                 const std::string& replicate) {
    fs::create_directories(out_dir);
    for (const auto& path : bases) {
        ctspd::Instance base = load_labeled(path);
        std::string base_name = stem_of(path);
        if (g > 0) {
            ctspd::InstanceLabel label;
            label.base = base_name;
            label.grouping = ctspd::grouping_from_letter(grouping.at(0));
            label.g = g;
            label.d = d;
            if (!replicate.empty()) label.replicate = replicate.at(0);
            bool fused = base.n < 60;
            std::string name = label.render(fused);
            ctspd::Instance inst =
                ctspd::assign_groups(base, g, label.grouping, ctspd::seed_for_label(seed, name));
            inst.d = d;
            inst.name = name;
            std::string file = out_dir + "/" + name + ".tsp";
            ctspd::save_instance(inst, file);
            std::cout << file << "\n";
        } else {
            for (const auto& item : ctspd::generate_suite(base, base_name, seed)) {
                std::string file = out_dir + "/" + item.name() + ".tsp";
                ctspd::save_instance(item.instance, file);
                std::cout << file << "\n";
            }
        }
    }
    return 0;
}

int cmd_solve(const std::string& path, const std::string& mode, const std::string& preset,
              std::uint64_t seed, int k, const std::string& out_dir, const std::string& variant,
              const std::string& pattern) {
    ctspd::Instance inst = load_labeled(path);
    fs::create_directories(out_dir);

    if (mode == "emit-mip") {
        ctspd::MipOptions opt;
        opt.pattern = pattern == "single" ? ctspd::PrecedencePattern::single_step
                                          : ctspd::PrecedencePattern::all_pairs;
        ctspd::MipModel model = ctspd::emit_mip(inst, ctspd::variant_from_name(variant), opt);
        std::string file = out_dir + "/" + inst.name + "." + variant + ".lp";
        ctspd::write_text_file(file, ctspd::write_lp(model));
        std::cout << inst.name << " " << variant << " vars=" << model.vars.size()
                  << " rows=" << model.rows.size() << " -> " << file << "\n";
        return 0;
    }

    ctspd::Route best;
    double seconds = 0.0;
    if (mode == "ils") {
        ctspd::SearchParams params = preset_params(preset);
        params.seed = seed;
        if (k > 0) params.k = k;
        ctspd::SolveResult res = ctspd::solve(inst, params);
        best = res.best;
        seconds = res.seconds;
    } else if (mode == "dp" || mode == "brute") {
        auto t0 = std::chrono::steady_clock::now();
        ctspd::ExactResult res = mode == "dp" ? ctspd::dp_exact(inst) : ctspd::brute_force(inst);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = res.route;
    } else {
        throw CLI::ValidationError("--mode", "unknown mode: " + mode);
    }

    bool feasible = ctspd::is_feasible(best, inst);
    std::string file = out_dir + "/" + inst.name + ".tour";
    ctspd::write_text_file(file, ctspd::solution_to_text(inst.name, inst, best));
    std::cout << inst.name << " cost=" << best.cost << " feasible=" << (feasible ? "yes" : "no")
              << " seconds=" << ctspd::detail::fixed2(seconds) << " -> " << file << "\n";
    return feasible ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& paths, const std::string& preset, int runs,
              std::uint64_t seed, int k, const std::string& out_dir, bool stable) {
    ctspd::SearchParams params = preset_params(preset);
    if (k > 0) params.k = k;
    fs::create_directories(out_dir);

    std::vector<ctspd::RunReport> reports;
    for (const auto& path : paths) {
        ctspd::Instance inst = load_labeled(path);
        reports.push_back(ctspd::run_benchmark_instance(inst, inst.name, params, runs, seed));
        const auto& rep = reports.back();
        std::cout << rep.label << " BKS=" << rep.bks()
                  << " AvgSol=" << ctspd::detail::fixed2(rep.avg_sol())
                  << " AvgGap=" << ctspd::detail::fixed2(rep.avg_gap()) << "\n";
    }

    ctspd::write_text_file(out_dir + "/report.csv", ctspd::reports_to_csv(reports, stable));
    ctspd::write_text_file(out_dir + "/report_runs.csv", ctspd::runs_to_csv(reports, stable));
    ctspd::write_text_file(out_dir + "/report.md", ctspd::reports_to_markdown(reports, stable));
    std::cout << "reports written to " << out_dir << "\n";
    return 0;
}

int cmd_validate(const std::string& instance_path, const std::string& tour_path) {
    ctspd::Instance inst = load_labeled(instance_path);
    ctspd::Route route = read_tour(tour_path, inst);
    if (!route.is_permutation(inst)) {
        std::cout << "invalid: not a depot-first permutation of all nodes\n";
        return 1;
    }
    bool ok = ctspd::is_feasible(route, inst);
    std::cout << (ok ? "feasible" : "infeasible") << " cost=" << route.cost << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver toolkit for the clustered TSP with relaxed priorities"};
    app.require_subcommand(1);

    std::vector<std::string> bases;
    std::string out_dir = ".";
    std::uint64_t seed = 2024;
    int g = 0, d = 0;
    std::string grouping = "R", replicate;

    auto* gen = app.add_subcommand("generate", "Generate benchmark instances from base files");
    gen->add_option("bases", bases, "base TSPLIB files")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", out_dir, "output directory");
    gen->add_option("--seed", seed, "base seed");
    gen->add_option("--g", g, "group count (omit to emit the full suite)");
    gen->add_option("--d", d, "relaxation parameter");
    gen->add_option("--grouping", grouping, "R or C")->check(CLI::IsMember({"R", "C"}));
    gen->add_option("--replicate", replicate, "replicate letter a/b/c");

    std::string solve_path, mode = "ils", preset = "fast", variant = "F2s", pattern = "all";
    int k = 0;

    auto* solve = app.add_subcommand("solve", "Solve one instance or emit its MIP model");
    solve->add_option("instance", solve_path, "instance file")->required()->check(CLI::ExistingFile);
    solve->add_option("--mode", mode, "ils | dp | brute | emit-mip")
        ->check(CLI::IsMember({"ils", "dp", "brute", "emit-mip"}));
    solve->add_option("--preset", preset, "fast (5,500) or large (5,1000)");
    solve->add_option("--seed", seed, "seed");
    solve->add_option("--k", k, "restricted candidate list size");
    solve->add_option("--out", out_dir, "output directory");
    solve->add_option("--variant", variant, "MIP formulation: F1 | F1s | F2 | F2s");
    solve->add_option("--pattern", pattern, "precedence pattern: all | single")
        ->check(CLI::IsMember({"all", "single"}));

    std::vector<std::string> bench_paths;
    int runs = 10;
    bool stable = false;

    auto* bench = app.add_subcommand("bench", "Benchmark instances and write CSV/Markdown reports");
    bench->add_option("instances", bench_paths, "instance files")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("--preset", preset, "fast or large");
    bench->add_option("--runs", runs, "repetitions per instance");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--k", k, "restricted candidate list size");
    bench->add_option("--out", out_dir, "output directory");
    bench->add_flag("--stable", stable, "omit wall-clock columns for byte-stable reports");

    std::string val_instance, val_tour;
    auto* validate = app.add_subcommand("validate", "Check a tour file against an instance");
    validate->add_option("instance", val_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("tour", val_tour, "tour file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(bases, out_dir, seed, g, d, grouping, replicate);
        if (solve->parsed())
            return cmd_solve(solve_path, mode, preset, seed, k, out_dir, variant, pattern);
        if (bench->parsed())
            return cmd_bench(bench_paths, preset, runs, seed, k, out_dir, stable);
        if (validate->parsed()) return cmd_validate(val_instance, val_tour);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
