// Command-line experiment runner: benchmark studies, TAO-vs-PSO comparison
// tables, constrained design problems and the harvesting study, with CSV and
// optional SVG outputs.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "angio/harness.hpp"

namespace {

using angio::Algorithm;
using angio::ExperimentConfig;
using angio::Overrides;
using angio::RunRecord;
using angio::StatsSummary;

struct CommonOpts {
    std::string algorithm = "tao";
    std::size_t trials = 50;
    std::size_t pop = 100;
    std::size_t iters = 500;
    std::uint64_t seed = angio::kDefaultMasterSeed;
    std::string out = "out";
    std::vector<std::string> sets;
    std::vector<std::string> functions;
    bool svg = false;
    std::string config;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool with_algorithm = true) {
    if (with_algorithm)
        cmd->add_option("--algorithm", opts.algorithm, "Optimizer to run (tao or pso)")
            ->check(CLI::IsMember({"tao", "pso"}))
            ->capture_default_str();
    cmd->add_option("--trials", opts.trials, "Number of independent trials")->capture_default_str();
    cmd->add_option("--pop", opts.pop, "Population size")->capture_default_str();
    cmd->add_option("--iters", opts.iters, "Iterations per trial")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Master seed; trial seeds derive from it")
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
    cmd->add_option("--set", opts.sets, "Parameter override, e.g. --set gamma=0.8")
        ->type_name("KEY=VALUE");
    cmd->add_flag("--svg", opts.svg, "Also render SVG plots");
    cmd->add_option("--config", opts.config,
                    "Key = value file mirroring these flags; flags given here win");
}

// Applies config-file entries for every option the command line left at its
// default. Command-line --set entries are appended after the file's so they
// win on key collisions.
void apply_config_file(const CLI::App& cmd, CommonOpts& opts) {
    if (opts.config.empty()) return;
    const bool has_algorithm = cmd.get_option_no_throw("--algorithm") != nullptr;
    const bool has_function = cmd.get_option_no_throw("--function") != nullptr;
    std::vector<std::string> file_sets;
    for (const auto& [key, value] : angio::parse_config_file(opts.config)) {
        if (key == "algorithm" && has_algorithm) {
            if (cmd.count("--algorithm") == 0) opts.algorithm = value;
        } else if (key == "trials") {
            if (cmd.count("--trials") == 0) opts.trials = std::stoul(value);
        } else if (key == "pop") {
            if (cmd.count("--pop") == 0) opts.pop = std::stoul(value);
        } else if (key == "iters") {
            if (cmd.count("--iters") == 0) opts.iters = std::stoul(value);
        } else if (key == "seed") {
            if (cmd.count("--seed") == 0) opts.seed = std::stoull(value);
        } else if (key == "out") {
            if (cmd.count("--out") == 0) opts.out = value;
        } else if (key == "svg") {
            if (cmd.count("--svg") == 0) opts.svg = value == "1" || value == "true" || value == "on";
        } else if (key == "function" && has_function) {
            if (cmd.count("--function") == 0) opts.functions.push_back(value);
        } else if (key == "set") {
            file_sets.push_back(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key +
                                        "' (expected algorithm, trials, pop, iters, seed, out, "
                                        "svg, function or set)");
        }
    }
    file_sets.insert(file_sets.end(), opts.sets.begin(), opts.sets.end());
    opts.sets = std::move(file_sets);
}

Overrides parse_sets(const std::vector<std::string>& sets) {
    Overrides overrides;
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--set expects KEY=VALUE, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        try {
            overrides[key] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("--set: cannot parse a number in '" + kv + "'");
        }
    }
    return overrides;
}

ExperimentConfig make_config(const CommonOpts& opts, const std::string& problem_id) {
    ExperimentConfig cfg;
    cfg.algorithm = *angio::parse_algorithm(opts.algorithm);
    cfg.problem_id = problem_id;
    cfg.n_trials = opts.trials;
    cfg.population_size = opts.pop;
    cfg.max_iterations = opts.iters;
    cfg.master_seed = opts.seed;
    cfg.overrides = parse_sets(opts.sets);
    cfg.output_directory = opts.out;
    return cfg;
}

void print_summary_row(const std::string& problem, const std::string& algo, const StatsSummary& s) {
    std::cout << std::left << std::setw(24) << problem << std::setw(6) << algo << std::right
              << std::fixed << std::setprecision(7) << "best " << std::setw(14) << s.best
              << "  mean " << std::setw(14) << s.mean << "  std " << std::setw(14) << s.std
              << '\n';
}

std::vector<double> mean_trace(const std::vector<RunRecord>& records) {
    std::vector<double> mean(records.front().best_fitness_trace.size(), 0.0);
    for (const auto& r : records)
        for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += r.best_fitness_trace[t];
    for (auto& v : mean) v /= static_cast<double>(records.size());
    return mean;
}

void maybe_emit_convergence_svg(const CommonOpts& opts, const std::string& stem,
                                const std::vector<angio::SvgSeries>& series) {
    if (!opts.svg) return;
    angio::emit_svg_line_chart(std::filesystem::path(opts.out) / (stem + ".svg"),
                               stem, "iteration", "best fitness", series);
}

std::vector<std::string> select_functions(const std::vector<std::string>& requested) {
    if (requested.empty())
        return {"F1", "F2", "F3", "F4", "F5", "F6", "F7"};
    return requested;
}

int run_bench(const CommonOpts& opts) {
    std::map<std::string, std::map<std::string, StatsSummary>> summaries;
    for (const auto& id : select_functions(opts.functions)) {
        auto [summary, records] = angio::run_experiment(make_config(opts, id));
        summaries[id][opts.algorithm] = summary;
        print_summary_row(id, opts.algorithm, summary);
        maybe_emit_convergence_svg(opts, id + "_" + opts.algorithm + "_convergence",
                                   {{opts.algorithm, mean_trace(records)}});
    }
    angio::emit_stats_table(summaries, std::filesystem::path(opts.out) / "stats.csv");
    std::cout << "stats table written to " << (std::filesystem::path(opts.out) / "stats.csv")
              << '\n';
    return 0;
}

int run_compare(const CommonOpts& opts) {
    std::map<std::string, std::map<std::string, StatsSummary>> summaries;
    std::size_t tao_wins = 0, rows = 0;
    for (const auto& id : select_functions(opts.functions)) {
        CommonOpts tao_opts = opts, pso_opts = opts;
        tao_opts.algorithm = "tao";
        pso_opts.algorithm = "pso";
        auto [tao_summary, tao_records] = angio::run_experiment(make_config(tao_opts, id));
        auto [pso_summary, pso_records] = angio::run_experiment(make_config(pso_opts, id));
        summaries[id]["tao"] = tao_summary;
        summaries[id]["pso"] = pso_summary;
        print_summary_row(id, "tao", tao_summary);
        print_summary_row(id, "pso", pso_summary);
        if (tao_summary.mean <= pso_summary.mean) ++tao_wins;
        ++rows;
        maybe_emit_convergence_svg(opts, id + "_compare_convergence",
                                   {{"tao", mean_trace(tao_records)},
                                    {"pso", mean_trace(pso_records)}});
    }
    angio::emit_stats_table(summaries, std::filesystem::path(opts.out) / "stats.csv");
    std::cout << "tao wins on mean: " << tao_wins << "/" << rows << '\n';
    std::cout << "stats table written to " << (std::filesystem::path(opts.out) / "stats.csv")
              << '\n';
    return 0;
}

int run_solve(const CommonOpts& opts, const std::string& problem_id) {
    auto [summary, records] = angio::run_experiment(make_config(opts, problem_id));
    const RunRecord* best = &records.front();
    for (const auto& r : records)
        if (r.final_best_fitness < best->final_best_fitness) best = &r;

    print_summary_row(problem_id, opts.algorithm, summary);
    std::cout << "best solution (trial seed " << best->trial_seed << "):\n";
    std::string solution_body = "variable,value\n";
    for (std::size_t h = 0; h < best->final_best_position.size(); ++h) {
        std::cout << "  x" << h + 1 << " = " << std::setprecision(10) << std::defaultfloat
                  << best->final_best_position[h] << '\n';
        solution_body += "x" + std::to_string(h + 1) + "," +
                         std::to_string(best->final_best_position[h]) + "\n";
    }
    std::cout << "  objective = " << std::setprecision(12) << best->final_best_fitness << '\n';
    angio::write_file_atomic(std::filesystem::path(opts.out) / (problem_id + "_best_solution.csv"),
                             solution_body);
    maybe_emit_convergence_svg(opts, problem_id + "_" + opts.algorithm + "_convergence",
                               {{opts.algorithm, mean_trace(records)}});
    return 0;
}

int run_fishery(const CommonOpts& opts) {
    auto cfg = make_config(opts, "fishery");
    auto [summary, records] = angio::run_experiment(cfg);
    const angio::FisheryModel model = angio::fishery_model_from_overrides(cfg.overrides);

    const RunRecord* best = &records.front();
    for (const auto& r : records)
        if (r.final_best_fitness < best->final_best_fitness) best = &r;

    std::vector<std::vector<double>> efforts;
    efforts.reserve(records.size());
    for (const auto& r : records) efforts.push_back(r.final_best_position);

    const std::filesystem::path out(opts.out);
    angio::emit_fishery_report(best->final_best_position, model, out);
    angio::emit_fishery_mean_report(efforts, model, out);

    const auto biomass = angio::simulate_biomass(best->final_best_position, model);
    double min_b = biomass[0];
    for (double b : biomass) min_b = std::min(min_b, b);
    print_summary_row("fishery", opts.algorithm, summary);
    std::cout << std::setprecision(10) << std::defaultfloat
              << "best discounted gain: " << -best->final_best_fitness
              << "  final biomass: " << biomass.back() << "  min biomass: " << min_b << '\n';
    std::cout << "reports written to " << out << '\n';

    if (opts.svg) {
        angio::emit_svg_line_chart(out / "biomass.svg", "biomass trajectory", "year", "tonnes",
                                   std::vector<angio::SvgSeries>{{"best", biomass}});
        angio::emit_svg_line_chart(out / "effort.svg", "fishing effort", "year", "boat-years",
                                   std::vector<angio::SvgSeries>{{"best", best->final_best_position}});
        maybe_emit_convergence_svg(opts, "fishery_" + opts.algorithm + "_convergence",
                                   {{opts.algorithm, mean_trace(records)}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"angio: angiogenesis-inspired optimizer and experiment harness"};
    app.require_subcommand(1);

    CommonOpts bench_opts;
    auto* bench = app.add_subcommand("bench", "Run benchmark functions with one optimizer");
    add_common_options(bench, bench_opts);
    bench->add_option("--function", bench_opts.functions, "Benchmark ids (default: F1..F7)");

    CommonOpts compare_opts;
    auto* compare = app.add_subcommand("compare", "Run TAO and PSO side by side");
    add_common_options(compare, compare_opts, /*with_algorithm=*/false);
    compare->add_option("--function", compare_opts.functions, "Benchmark ids (default: F1..F7)");

    CommonOpts solve_opts;
    solve_opts.trials = 20;
    solve_opts.iters = 300;
    std::string solve_problem;
    auto* solve = app.add_subcommand("solve", "Solve a registered problem by id");
    solve->add_option("problem", solve_problem, "Problem id")->required();
    add_common_options(solve, solve_opts);

    CommonOpts fishery_opts;
    fishery_opts.trials = 100;
    fishery_opts.pop = 50;
    fishery_opts.iters = 100;
    auto* fishery = app.add_subcommand("fishery", "Run the sustainable harvesting study");
    add_common_options(fishery, fishery_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            apply_config_file(*bench, bench_opts);
            return run_bench(bench_opts);
        }
        if (compare->parsed()) {
            apply_config_file(*compare, compare_opts);
            return run_compare(compare_opts);
        }
        if (solve->parsed()) {
            apply_config_file(*solve, solve_opts);
            return run_solve(solve_opts, solve_problem);
        }
        if (fishery->parsed()) {
            apply_config_file(*fishery, fishery_opts);
            return run_fishery(fishery_opts);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
